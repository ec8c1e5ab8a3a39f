#include "qdslim/capacity.hpp"

#include <cmath>

#include "qdslim/entropy.hpp"
#include "qdslim/errors.hpp"
#include "qdslim/parallel.hpp"
#include "qdslim/sampling.hpp"

namespace qdslim::capacity {

DiscreteEnsemble::DiscreteEnsemble(std::vector<double> weights_,
                                   std::vector<DensityMatrix> states_)
    : weights(std::move(weights_)), states(std::move(states_)) {
    if (weights.empty() || weights.size() != states.size()) {
        throw ShapeError("ensemble needs matching nonempty weights and states");
    }
    double total = 0.0;
    for (double w : weights) {
        if (w < -1e-14) throw DomainError("ensemble weights must be nonnegative");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw DomainError("ensemble weights must sum to 1 (got " + format_double(total) +
                          ")");
    }
    const int dim = states.front().dim();
    for (const auto& s : states) {
        if (s.dim() != dim) throw ShapeError("ensemble states must share a dimension");
    }
}

DensityMatrix DiscreteEnsemble::barycenter() const {
    Matrix acc = Matrix::Zero(states.front().dim(), states.front().dim());
    for (std::size_t i = 0; i < states.size(); ++i) {
        acc += weights[i] * states[i].matrix();
    }
    return DensityMatrix(hermitize(acc));
}

double holevo_quantity(const DiscreteEnsemble& mu) {
    double member_entropy = 0.0;
    for (std::size_t i = 0; i < mu.states.size(); ++i) {
        if (mu.weights[i] > 0.0) {
            member_entropy += mu.weights[i] * entropy::von_neumann(mu.states[i]);
        }
    }
    return entropy::von_neumann(mu.barycenter()) - member_entropy;
}

DiscreteEnsemble pushforward(const DiscreteEnsemble& mu, const ChannelFamily& channel,
                             double t) {
    std::vector<DensityMatrix> out;
    out.reserve(mu.states.size());
    for (const auto& s : mu.states) out.push_back(channel.apply(s, t));
    return DiscreteEnsemble(mu.weights, std::move(out));
}

namespace {

void validate(const CapacityBoundParams& p) {
    if (p.epsilon <= 0.0 || p.epsilon >= 1.0) throw DomainError("epsilon must be in (0, 1)");
    if (p.t <= 0.0 || p.t > 1.0 / (2.0 * p.epsilon)) {
        throw DomainError("t must lie in (0, 1/(2 epsilon)]");
    }
    if (p.energy <= 0.0) throw DomainError("energy must be positive");
    if (p.eta <= 0.0) throw DomainError("eta must be positive");
    if (p.k_of_e < 0.0) throw DomainError("k(E) must be nonnegative");
    if (p.n < 1) throw DomainError("copy count n must be >= 1");
}

double entropy_factor(const CapacityBoundParams& p, double argument, bool& asymptotic) {
    if (p.spectrum.has_value()) {
        asymptotic = false;
        return gibbs::gibbs_entropy(*p.spectrum, argument);
    }
    asymptotic = true;
    return p.eta * std::log(argument);
}

}  // namespace

CapacityBoundResult capacity_continuity(const CapacityBoundParams& params,
                                        CapacityBoundKind which) {
    validate(params);
    const double eps = params.epsilon;
    const double t = params.t;
    const double r = entropy::r_eps(eps, t);
    const double common = eps * (2.0 * t + r);
    const double g_term = 2.0 * entropy::g_aux(eps * r);
    const double h_term = entropy::binary_entropy(eps * t);

    CapacityBoundResult out;
    out.used_t = t;
    switch (which) {
        case CapacityBoundKind::c_one: {
            out.factor_argument = params.k_of_e * params.energy / (eps * t);
            const double f = entropy_factor(params, out.factor_argument, out.asymptotic);
            out.entropy_factor = f;
            out.bound = common * f + g_term + 2.0 * h_term;
            break;
        }
        case CapacityBoundKind::c_full: {
            out.factor_argument = params.k_of_e * params.energy / (eps * t);
            const double f = entropy_factor(params, out.factor_argument, out.asymptotic);
            out.entropy_factor = f;
            out.bound = 2.0 * common * f + g_term + 4.0 * h_term;
            break;
        }
        case CapacityBoundKind::eac: {
            out.factor_argument = params.energy / (eps * t);
            const double f = entropy_factor(params, out.factor_argument, out.asymptotic);
            out.entropy_factor = f;
            out.bound = 2.0 * common * f + g_term + 4.0 * h_term;
            break;
        }
        case CapacityBoundKind::qmi: {
            out.factor_argument = params.energy / (eps * t);
            const double f = entropy_factor(params, out.factor_argument, out.asymptotic);
            out.entropy_factor = f;
            out.bound =
                params.n * (2.0 * common * f + g_term + 4.0 * h_term);
            break;
        }
        case CapacityBoundKind::holevo_chi: {
            out.factor_argument = params.energy / (eps * t);
            const double f = entropy_factor(params, out.factor_argument, out.asymptotic);
            out.entropy_factor = f;
            out.bound = common * f + g_term + 2.0 * h_term;
            break;
        }
    }
    return out;
}

CapacityBoundResult capacity_continuity_best_t(const CapacityBoundParams& params,
                                               CapacityBoundKind which, int grid) {
    if (grid < 1) throw DomainError("grid must be positive");
    CapacityBoundParams p = params;
    std::optional<CapacityBoundResult> best;
    const double t_max = 1.0 / (2.0 * params.epsilon);
    for (int j = 1; j <= grid; ++j) {
        p.t = t_max * static_cast<double>(j) / static_cast<double>(grid);
        const CapacityBoundResult r = capacity_continuity(p, which);
        if (!best.has_value() || r.bound < best->bound) best = r;
    }
    return *best;
}

double energy_factor_probe(const ChannelFamily& channel, double t,
                           const HermitianOperator& in_op, const HermitianOperator& out_op,
                           double energy, int samples, std::uint64_t seed) {
    if (samples < 1) throw DomainError("need at least one sample");
    if (channel.dim() != in_op.dim() || channel.dim() != out_op.dim()) {
        throw ShapeError("probe operators must match the channel dimension");
    }
    // alpha = 1/2 turns the constraint into tr(in_op rho) <= E.
    metrics::EnergyConstraint constraint(in_op, energy, 0.5);
    sampling::AdmissibleSampler sampler(constraint, 1);
    std::vector<double> ratio(static_cast<std::size_t>(samples), 0.0);
    parallel_for(samples, [&](long i) {
        const DensityMatrix rho =
            sampler.sample_indexed(seed, static_cast<std::uint64_t>(i));
        const DensityMatrix out = channel.apply(rho, t);
        ratio[static_cast<std::size_t>(i)] =
            expected_energy(out, out_op, 1.0) / energy;
    });
    double best = 0.0;
    for (double v : ratio) best = std::max(best, v);
    return best;
}

}  // namespace qdslim::capacity
