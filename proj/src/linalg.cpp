#include "qdslim/linalg.hpp"

#include <charconv>
#include <cstdio>
#include <mutex>
#include <set>

#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "qdslim/errors.hpp"

namespace qdslim {

Eigensystem eigh(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("eigendecomposition failed");
    }
    return Eigensystem{solver.eigenvalues(), solver.eigenvectors()};
}

bool is_hermitian(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

Matrix kron(const Matrix& a, const Matrix& b) {
    return Eigen::kroneckerProduct(a, b).eval();
}

Matrix partial_trace_first(const Matrix& joint, int dim_a, int dim_b) {
    Matrix out = Matrix::Zero(dim_b, dim_b);
    for (int b = 0; b < dim_b; ++b) {
        for (int bp = 0; bp < dim_b; ++bp) {
            Complex acc = 0.0;
            for (int a = 0; a < dim_a; ++a) {
                acc += joint(a * dim_b + b, a * dim_b + bp);
            }
            out(b, bp) = acc;
        }
    }
    return out;
}

Matrix partial_trace_second(const Matrix& joint, int dim_a, int dim_b) {
    Matrix out = Matrix::Zero(dim_a, dim_a);
    for (int a = 0; a < dim_a; ++a) {
        for (int ap = 0; ap < dim_a; ++ap) {
            Complex acc = 0.0;
            for (int b = 0; b < dim_b; ++b) {
                acc += joint(a * dim_b + b, ap * dim_b + b);
            }
            out(a, ap) = acc;
        }
    }
    return out;
}

Matrix expm(const Matrix& m) { return m.exp(); }

double operator_norm(const Matrix& m) {
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    }
    return std::string(buf, ptr);
}

void warn_soft_limit(const std::string& what, long value, long limit) {
    static std::mutex mu;
    static std::set<std::string> seen;
    std::lock_guard<std::mutex> lock(mu);
    if (value <= limit || !seen.insert(what).second) return;
    std::fprintf(stderr, "qdslim: warning: %s = %ld exceeds the supported dense limit %ld\n",
                 what.c_str(), value, limit);
}

}  // namespace qdslim
