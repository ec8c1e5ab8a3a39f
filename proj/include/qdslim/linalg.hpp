#ifndef QDSLIM_LINALG_HPP
#define QDSLIM_LINALG_HPP

#include <complex>
#include <string>

#include <Eigen/Dense>

namespace qdslim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Eigenvalues ascending, columns of `vectors` are the matching orthonormal
// eigenvectors. Ties keep the solver's order (stable for identical input).
struct Eigensystem {
    RealVector values;
    Matrix vectors;
};

Eigensystem eigh(const Matrix& m);

bool is_hermitian(const Matrix& m, double tol);

// (m + m^dagger)/2; used to strip roundoff before spectral calculus.
Matrix hermitize(const Matrix& m);

Matrix kron(const Matrix& a, const Matrix& b);

// Joint index convention (a, b) -> a * dim_b + b.
Matrix partial_trace_first(const Matrix& joint, int dim_a, int dim_b);
Matrix partial_trace_second(const Matrix& joint, int dim_a, int dim_b);

// Pade scaling-and-squaring exponential (dense, general complex matrix).
Matrix expm(const Matrix& m);

// Largest singular value.
double operator_norm(const Matrix& m);

// Shortest round-trip decimal representation; identical input bits give
// identical strings, which the deterministic-output contract relies on.
std::string format_double(double v);

// Soft dimension limits: warn on stderr, never fail.
void warn_soft_limit(const std::string& what, long value, long limit);

}  // namespace qdslim

#endif
