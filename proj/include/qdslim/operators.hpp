#ifndef QDSLIM_OPERATORS_HPP
#define QDSLIM_OPERATORS_HPP

#include <complex>
#include <functional>
#include <memory>

#include "qdslim/linalg.hpp"
#include "qdslim/states.hpp"

namespace qdslim {

// Dense self-adjoint matrix on a finite truncation, with lazily cached
// eigendecomposition. Immutable after construction; copies share storage.
class HermitianOperator {
  public:
    // Requires m == m^dagger within 1e-12 elementwise; residual asymmetry is
    // hermitized away so the spectral calculus sees an exactly Hermitian matrix.
    explicit HermitianOperator(Matrix m);

    int dim() const { return static_cast<int>(mat_->rows()); }
    const Matrix& matrix() const { return *mat_; }

    const Eigensystem& eig() const;
    double min_eigenvalue() const;
    double max_eigenvalue() const;

  private:
    struct Cache;
    std::shared_ptr<const Matrix> mat_;
    std::shared_ptr<Cache> cache_;
};

// Truncated annihilation/creation pair in the Fock basis. Only the
// superdiagonal of `lower` is populated; the commutator [lower, raise]
// equals the identity except in the last diagonal entry.
struct LadderPair {
    int dim;
    Matrix lower;
    Matrix raise;
};

struct FockBasis {
    LadderPair ladder;
    HermitianOperator number_op;        // diag(0, 1, ..., dim-1)
    HermitianOperator osc_hamiltonian;  // diag(n + 1/2)
};

FockBasis build_fock(int dim);

// Truncated coherent state, renormalized. Enforces Poisson tail leakage
// <= 1e-10; on violation throws TruncationError carrying a sufficient dim.
StateVector coherent_state(Complex alpha, int dim);

// f applied through the eigendecomposition: V diag(f(lambda)) V^dagger.
// Non-finite f(lambda) raises DomainError naming the offending eigenvalue.
HermitianOperator spectral_function(const HermitianOperator& op,
                                    const std::function<double(double)>& f);

// |op| via spectral calculus.
HermitianOperator abs_op(const HermitianOperator& op);

// tr(op^power rho). For non-integer power, op must be positive semi-definite
// (eigenvalues >= -1e-10; small negatives are clipped).
double expected_energy(const DensityMatrix& rho, const HermitianOperator& op,
                       double power);

// True when op is diag(0, 1, ..., dim-1) within 1e-9; enables coherent-state
// sampling in the energy-constrained samplers.
bool is_number_operator(const HermitianOperator& op);

}  // namespace qdslim

#endif
