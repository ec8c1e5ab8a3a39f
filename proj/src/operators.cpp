#include "qdslim/operators.hpp"

#include <cmath>
#include <mutex>
#include <optional>

#include "qdslim/errors.hpp"

namespace qdslim {

struct HermitianOperator::Cache {
    std::once_flag flag;
    std::optional<Eigensystem> sys;
};

HermitianOperator::HermitianOperator(Matrix m) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw ShapeError("operator matrix must be square");
    }
    if (!is_hermitian(m, 1e-12)) {
        throw DomainError("operator is not Hermitian within 1e-12");
    }
    warn_soft_limit("operator dim", m.rows(), 200);
    mat_ = std::make_shared<const Matrix>(hermitize(m));
    cache_ = std::make_shared<Cache>();
}

const Eigensystem& HermitianOperator::eig() const {
    std::call_once(cache_->flag, [&] { cache_->sys = eigh(*mat_); });
    return *cache_->sys;
}

double HermitianOperator::min_eigenvalue() const { return eig().values.minCoeff(); }
double HermitianOperator::max_eigenvalue() const { return eig().values.maxCoeff(); }

FockBasis build_fock(int dim) {
    if (dim < 2) throw InvalidDimensionError("Fock truncation needs dim >= 2");
    Matrix lower = Matrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) {
        lower(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    Matrix number = Matrix::Zero(dim, dim);
    Matrix osc = Matrix::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) {
        number(n, n) = static_cast<double>(n);
        osc(n, n) = n + 0.5;
    }
    return FockBasis{LadderPair{dim, lower, lower.adjoint()},
                     HermitianOperator(std::move(number)), HermitianOperator(std::move(osc))};
}

StateVector coherent_state(Complex alpha, int dim) {
    if (dim < 1) throw InvalidDimensionError("coherent state needs dim >= 1");
    const double nbar = std::norm(alpha);
    // Poisson weights e^{-|a|^2} |a|^{2n} / n!, accumulated in place.
    double weight = std::exp(-nbar);
    double kept = 0.0;
    std::vector<double> weights(static_cast<std::size_t>(dim));
    for (int n = 0; n < dim; ++n) {
        weights[static_cast<std::size_t>(n)] = weight;
        kept += weight;
        weight *= nbar / (n + 1);
    }
    double leak = 1.0 - kept;
    if (leak > 1e-10) {
        int need = dim;
        double w = weight;
        double tail = leak;
        while (tail > 1e-10 && need < 100000) {
            tail -= w;
            w *= nbar / (need + 1);
            ++need;
        }
        throw TruncationError("coherent-state truncation leak " + format_double(leak) +
                                  " exceeds 1e-10; need dim >= " + std::to_string(need),
                              need);
    }
    const Complex unit = std::abs(alpha) > 0.0 ? alpha / std::abs(alpha) : Complex(1.0, 0.0);
    Vector amps(dim);
    Complex phase = 1.0;
    for (int n = 0; n < dim; ++n) {
        amps(n) = phase * std::sqrt(weights[static_cast<std::size_t>(n)]);
        phase *= unit;
    }
    amps /= amps.norm();
    return StateVector(std::move(amps));
}

HermitianOperator spectral_function(const HermitianOperator& op,
                                    const std::function<double(double)>& f) {
    const Eigensystem& sys = op.eig();
    RealVector mapped(sys.values.size());
    for (Eigen::Index i = 0; i < sys.values.size(); ++i) {
        const double y = f(sys.values(i));
        if (!std::isfinite(y)) {
            throw DomainError("spectral function is not finite at eigenvalue " +
                              format_double(sys.values(i)));
        }
        mapped(i) = y;
    }
    Matrix out = sys.vectors * mapped.asDiagonal() * sys.vectors.adjoint();
    return HermitianOperator(hermitize(out));
}

HermitianOperator abs_op(const HermitianOperator& op) {
    return spectral_function(op, [](double x) { return std::abs(x); });
}

double expected_energy(const DensityMatrix& rho, const HermitianOperator& op,
                       double power) {
    if (rho.dim() != op.dim()) {
        throw ShapeError("state and operator dimensions differ");
    }
    const bool integer_power = std::abs(power - std::round(power)) < 1e-12;
    const Eigensystem& sys = op.eig();
    if (!integer_power && sys.values.minCoeff() < -1e-10) {
        throw DomainError("non-integer power requires a positive semi-definite operator");
    }
    double acc = 0.0;
    for (Eigen::Index i = 0; i < sys.values.size(); ++i) {
        double lambda = sys.values(i);
        if (!integer_power && lambda < 0.0) lambda = 0.0;
        const double occupancy =
            (sys.vectors.col(i).adjoint() * rho.matrix() * sys.vectors.col(i))(0).real();
        acc += std::pow(lambda, power) * occupancy;
    }
    return acc;
}

bool is_number_operator(const HermitianOperator& op) {
    const Matrix& m = op.matrix();
    for (int i = 0; i < op.dim(); ++i) {
        for (int j = 0; j < op.dim(); ++j) {
            const Complex want = (i == j) ? Complex(i, 0.0) : Complex(0.0, 0.0);
            if (std::abs(m(i, j) - want) > 1e-9) return false;
        }
    }
    return true;
}

}  // namespace qdslim
