#include "qdslim/rng.hpp"

#include <cmath>

namespace qdslim {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& s : state_) s = splitmix64(x);
}

Rng Rng::substream(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t x = seed;
    std::uint64_t a = splitmix64(x);
    std::uint64_t y = stream ^ 0xd1b54a32d192ed03ULL;
    std::uint64_t b = splitmix64(y);
    return Rng(a ^ rotl(b, 17) ^ (stream * 0x9e3779b97f4a7c15ULL));
}

std::uint64_t Rng::next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = 0.0;
    do {
        u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
}

std::complex<double> Rng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
}

std::vector<double> Rng::dirichlet(int k) {
    std::vector<double> w(static_cast<std::size_t>(k));
    double total = 0.0;
    for (auto& v : w) {
        double u = 0.0;
        do {
            u = uniform();
        } while (u <= 0.0);
        v = -std::log(u);
        total += v;
    }
    for (auto& v : w) v /= total;
    return w;
}

int Rng::uniform_int(int n) {
    return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n));
}

}  // namespace qdslim
