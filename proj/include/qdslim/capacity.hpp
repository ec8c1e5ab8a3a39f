#ifndef QDSLIM_CAPACITY_HPP
#define QDSLIM_CAPACITY_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "qdslim/channels.hpp"
#include "qdslim/gibbs.hpp"
#include "qdslim/states.hpp"

namespace qdslim::capacity {

struct DiscreteEnsemble {
    std::vector<double> weights;  // p_i >= 0, sum 1 within 1e-12
    std::vector<DensityMatrix> states;

    DiscreteEnsemble(std::vector<double> weights_, std::vector<DensityMatrix> states_);
    DensityMatrix barycenter() const;
};

// chi(mu) = S(barycenter) - sum p_i S(rho_i) >= 0.
double holevo_quantity(const DiscreteEnsemble& mu);

DiscreteEnsemble pushforward(const DiscreteEnsemble& mu, const ChannelFamily& channel,
                             double t);

struct CapacityBoundParams {
    double energy = 1.0;
    double epsilon = 0.1;       // in (0, 1)
    double t = 1.0;             // in (0, 1/(2 eps)]
    double eta = 1.0;
    double k_of_e = 1.0;        // output-energy factor k(E)
    int n = 1;                  // copies, for the mutual-information bound
    std::optional<gibbs::Spectrum> spectrum;  // set = exact-Gibbs mode
};

enum class CapacityBoundKind { c_one, c_full, eac, qmi, holevo_chi };

struct CapacityBoundResult {
    double bound;
    double entropy_factor;   // S(gamma(.)) or eta log(.)
    bool asymptotic;
    double factor_argument;  // k(E)E/(eps t) or E/(eps t)
    double used_t;           // the free parameter the bound was evaluated at
};

// Continuity-bound formulas for the constrained capacities; the capacities
// themselves are never evaluated. The product-state and full classical
// capacity forms use k(E)E/(eps t) in the entropy factor, the
// entanglement-assisted / mutual-information / Holevo forms use E/(eps t).
CapacityBoundResult capacity_continuity(const CapacityBoundParams& params,
                                        CapacityBoundKind which);

// Grid minimization over t in (0, 1/(2 eps)] of the selected bound.
CapacityBoundResult capacity_continuity_best_t(const CapacityBoundParams& params,
                                               CapacityBoundKind which, int grid = 64);

// Empirical sup of tr(out_op Phi_t(rho))/E over sampled states with
// tr(in_op rho) <= E. A lower estimate of the true k(E).
double energy_factor_probe(const ChannelFamily& channel, double t,
                           const HermitianOperator& in_op,
                           const HermitianOperator& out_op, double energy, int samples,
                           std::uint64_t seed);

}  // namespace qdslim::capacity

#endif
