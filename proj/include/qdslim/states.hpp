#ifndef QDSLIM_STATES_HPP
#define QDSLIM_STATES_HPP

#include <memory>

#include "qdslim/linalg.hpp"

namespace qdslim {

class StateVector {
  public:
    // Requires unit Euclidean norm within 1e-12.
    explicit StateVector(Vector amplitudes);

    int dim() const { return static_cast<int>(amps_->size()); }
    const Vector& amplitudes() const { return *amps_; }

  private:
    std::shared_ptr<const Vector> amps_;
};

// Positive unit-trace matrix. Validation tolerances: hermitian 1e-12
// elementwise, eigenvalues >= -psd_tol, trace 1 within trace_tol. Channel
// outputs are validated at their advertised looser tolerances (1e-8).
class DensityMatrix {
  public:
    explicit DensityMatrix(Matrix m, double psd_tol = 1e-10, double trace_tol = 1e-10);

    static DensityMatrix pure(const Vector& v);
    static DensityMatrix pure(const StateVector& v);

    int dim() const { return static_cast<int>(mat_->rows()); }
    const Matrix& matrix() const { return *mat_; }

    // Ascending eigenvalues; computed lazily, cached, shared across copies.
    const Eigensystem& eig() const;

    double purity() const;

  private:
    struct Cache;
    std::shared_ptr<const Matrix> mat_;
    std::shared_ptr<Cache> cache_;
};

}  // namespace qdslim

#endif
