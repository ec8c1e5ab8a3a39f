#ifndef QDSLIM_SAMPLING_HPP
#define QDSLIM_SAMPLING_HPP

#include <cstdint>
#include <vector>

#include "qdslim/metrics.hpp"
#include "qdslim/operators.hpp"
#include "qdslim/rng.hpp"
#include "qdslim/states.hpp"

namespace qdslim::sampling {

Vector random_unit_vector(int dim, Rng& rng);

// Full-rank state from a Ginibre draw.
DensityMatrix random_density(int dim, Rng& rng);

// Random mixture of rank <= rank_cap pure states.
DensityMatrix random_low_rank_density(int dim, int rank_cap, Rng& rng);

// Random Hermitian matrix with Gaussian entries, operator norm scaled to `norm`.
HermitianOperator random_hermitian(int dim, double norm, Rng& rng);

// Admissible-state samplers for tr(S^{2 alpha} rho_sys) <= E^{2 alpha}.
// Dirichlet mixtures over the lowest 2 ceil(E) eigenvectors of S, rescaled
// toward the constraint boundary; coherent states when S is the number
// operator; Schmidt-entangled pure states with vectors from low-S eigenspaces
// when ancilla_dim > 1. Every returned state satisfies the constraint.
struct AdmissibleSampler {
    AdmissibleSampler(const metrics::EnergyConstraint& constraint, int ancilla_dim);

    DensityMatrix sample(Rng& rng) const;
    // Deterministic per (seed, index); mixes the sample kinds round-robin.
    DensityMatrix sample_indexed(std::uint64_t seed, std::uint64_t index) const;

    const metrics::EnergyConstraint& constraint() const { return *constraint_; }
    int pool_size() const { return pool_; }
    int ancilla_dim() const { return ancilla_; }

  private:
    DensityMatrix mixture_sample(Rng& rng) const;
    DensityMatrix coherent_sample(Rng& rng) const;
    DensityMatrix entangled_sample(Rng& rng) const;

    const metrics::EnergyConstraint* constraint_;
    int ancilla_ = 1;
    int pool_ = 2;
    bool coherent_ok_ = false;
};

// Random state with tr(H rho) = energy within 1e-9, by blending a random
// state with eigenvector mixtures that straddle the target.
DensityMatrix random_state_with_energy(const HermitianOperator& h, double energy,
                                       Rng& rng);

}  // namespace qdslim::sampling

#endif
