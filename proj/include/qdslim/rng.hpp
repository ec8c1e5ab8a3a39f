#ifndef QDSLIM_RNG_HPP
#define QDSLIM_RNG_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

namespace qdslim {

// xoshiro256++ seeded through splitmix64. Self-contained so that streams are
// reproducible bit-for-bit independent of the standard library.
class Rng {
  public:
    explicit Rng(std::uint64_t seed);

    // Independent stream derived from (seed, stream); used to give every
    // sample its own generator so parallel evaluation order cannot matter.
    static Rng substream(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64();
    double uniform();      // [0, 1)
    double normal();       // standard normal, Box-Muller
    std::complex<double> complex_normal();

    // Flat Dirichlet weights (k entries summing to one).
    std::vector<double> dirichlet(int k);

    // Uniform integer in [0, n).
    int uniform_int(int n);

  private:
    std::array<std::uint64_t, 4> state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace qdslim

#endif
