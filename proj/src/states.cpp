#include "qdslim/states.hpp"

#include <cmath>
#include <mutex>
#include <optional>

#include "qdslim/errors.hpp"

namespace qdslim {

StateVector::StateVector(Vector amplitudes) {
    if (amplitudes.size() < 1) {
        throw InvalidDimensionError("state vector must have dimension >= 1");
    }
    const double norm = amplitudes.norm();
    if (std::abs(norm - 1.0) > 1e-12) {
        throw DomainError("state vector norm deviates from 1 by " +
                          format_double(std::abs(norm - 1.0)));
    }
    amps_ = std::make_shared<const Vector>(std::move(amplitudes));
}

struct DensityMatrix::Cache {
    std::once_flag flag;
    std::optional<Eigensystem> sys;
};

DensityMatrix::DensityMatrix(Matrix m, double psd_tol, double trace_tol) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw ShapeError("density matrix must be square");
    }
    if (!is_hermitian(m, 1e-12)) {
        throw DomainError("density matrix is not Hermitian within 1e-12");
    }
    const double tr = m.trace().real();
    if (std::abs(tr - 1.0) > trace_tol) {
        throw DomainError("density matrix trace deviates from 1 by " +
                          format_double(std::abs(tr - 1.0)));
    }
    Matrix h = hermitize(m);
    const Eigensystem sys = eigh(h);
    if (sys.values.minCoeff() < -psd_tol) {
        throw DomainError("density matrix has eigenvalue " +
                          format_double(sys.values.minCoeff()) + " below -" +
                          format_double(psd_tol));
    }
    mat_ = std::make_shared<const Matrix>(std::move(h));
    cache_ = std::make_shared<Cache>();
    std::call_once(cache_->flag, [&] { cache_->sys = sys; });
}

DensityMatrix DensityMatrix::pure(const Vector& v) {
    const double n = v.norm();
    if (n <= 0.0) throw DomainError("cannot normalize the zero vector");
    Vector u = v / n;
    return DensityMatrix(u * u.adjoint());
}

DensityMatrix DensityMatrix::pure(const StateVector& v) { return pure(v.amplitudes()); }

const Eigensystem& DensityMatrix::eig() const {
    std::call_once(cache_->flag, [&] { cache_->sys = eigh(*mat_); });
    return *cache_->sys;
}

double DensityMatrix::purity() const {
    return (matrix() * matrix()).trace().real();
}

}  // namespace qdslim
