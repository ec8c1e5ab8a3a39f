#ifndef QDSLIM_METRICS_HPP
#define QDSLIM_METRICS_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "qdslim/bounds.hpp"
#include "qdslim/channels.hpp"
#include "qdslim/operators.hpp"
#include "qdslim/states.hpp"

namespace qdslim::metrics {

// Sum of singular values (|eigenvalues| for Hermitian input).
double trace_norm(const Matrix& a);

// Schatten q-norm.
double schatten_norm(const Matrix& a, double q);

// F(rho, sigma) = tr sqrt(sqrt(rho) sigma sqrt(rho)); the inner product is
// hermitized and eigenvalues clipped at zero before the square roots.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

struct BuresResult {
    double angle;     // arccos F in [0, pi/2]
    double distance;  // sqrt(2 (1 - F))
};

BuresResult bures(const DensityMatrix& rho, const DensityMatrix& sigma);

struct HalfDivergences {
    double tsallis_half;   // ||sqrt(rho) - sqrt(sigma)||_2^2 = 2 (1 - A)
    double renyi_half;     // -2 log A; +infinity when A = 0
    double bhattacharyya;  // A = tr(sqrt(rho) sqrt(sigma))
};

HalfDivergences divergences_half(const DensityMatrix& rho, const DensityMatrix& sigma);

// Fuchs-van de Graaf sandwich and Powers-Stormer, as three certified slacks:
// [0] ||rho-sigma||_1 - 2(1-F), [1] 2 sqrt(1-F^2) - ||rho-sigma||_1,
// [2] ||rho-sigma||_1 - Tsallis_1/2.
std::array<bounds::BoundReport, 3> check_fvg_ps(const DensityMatrix& rho,
                                                const DensityMatrix& sigma);

// Energy constraint tr(S^{2 alpha} rho_system) <= E^{2 alpha}.
struct EnergyConstraint {
    HermitianOperator constraint_op;
    double energy;
    double alpha;

    EnergyConstraint(HermitianOperator op, double energy_, double alpha_);
    double budget() const;  // E^{2 alpha}
    double cost(const DensityMatrix& rho, int ancilla_dim = 1) const;
    bool admissible(const DensityMatrix& rho, int ancilla_dim = 1) const;
};

struct EcdEstimate {
    double lower_bound = 0.0;  // <= 2
    std::shared_ptr<const DensityMatrix> witness_state;
    int samples_used = 0;
    int ancilla_dim = 1;
};

// Certified lower bound on || Lambda_A(t) - Lambda_B(s) ||_{diamond^{2 alpha}}^{S,E}:
// max over sampled admissible states (eigenvector mixtures rescaled to the
// energy shell, coherent states when S is the number operator, and
// system-ancilla pure states with Schmidt vectors from low-S eigenspaces) of
// the output trace distance. Deterministic for a fixed seed; per-sample
// streams are derived by counter so evaluation order cannot matter.
// `extra_states` are evaluated alongside the generated samples (used to reuse
// an admissible set across energies).
EcdEstimate ecd_lower_bound(const ChannelFamily& channel_a, double t,
                            const ChannelFamily& channel_b, double s,
                            const EnergyConstraint& constraint, int samples,
                            int ancilla_dim, std::uint64_t seed,
                            const std::vector<DensityMatrix>* extra_states = nullptr);

}  // namespace qdslim::metrics

#endif
