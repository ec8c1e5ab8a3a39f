#ifndef QDSLIM_ENTROPY_HPP
#define QDSLIM_ENTROPY_HPP

#include <optional>

#include "qdslim/bounds.hpp"
#include "qdslim/gibbs.hpp"
#include "qdslim/states.hpp"

namespace qdslim::entropy {

// Natural logarithms throughout. Eigenvalues below 1e-15 are clipped to zero
// before any log; 0 log 0 = 0.
double von_neumann(const DensityMatrix& rho);

// H(A|B) = S(rho_AB) - S(rho_B) for the declared (dim_a, dim_b) factorization,
// joint index (a, b) -> a * dim_b + b.
double conditional(const DensityMatrix& rho_ab, int dim_a, int dim_b);

// tr(rho (log rho - log sigma)); +infinity when supp(rho) leaves supp(sigma)
// (sigma eigenvalues below 1e-12 count as kernel).
double relative(const DensityMatrix& rho, const DensityMatrix& sigma);

// I(A;B) = S(A) + S(B) - S(AB) = D(rho_AB || rho_A x rho_B).
double mutual_information(const DensityMatrix& rho_ab, int dim_a, int dim_b);

// T_q = (1 - ||rho||_q^q)/(q - 1); S_q = log(||rho||_q^q)/(1 - q). q > 1.
double tsallis_q(const DensityMatrix& rho, double q);
double renyi_q(const DensityMatrix& rho, double q);

// |T_q(rho) - T_q(sigma)| <= q/(q-1) ||rho - sigma||_q.
bounds::BoundReport check_tsallis_lipschitz(const DensityMatrix& rho,
                                            const DensityMatrix& sigma, double q);

// |S_q(rho) - S_q(sigma)| <= q / ((q-1)(delta - eps)) ||rho - sigma||_q,
// valid when ||rho||_q >= delta_floor and eps = ||rho - sigma||_q < delta_floor;
// otherwise the report is marked inapplicable.
bounds::BoundReport check_renyi_lipschitz(const DensityMatrix& rho,
                                          const DensityMatrix& sigma, double q,
                                          double delta_floor);

// Binary entropy h, g(x) = (x+1)log(x+1) - x log x, and r_eps(t) = (1+t/2)/(1-eps t).
double binary_entropy(double x);
double g_aux(double x);
double r_eps(double eps, double t);

struct ContinuityParams {
    double energy = 1.0;
    double epsilon = 0.1;                   // half trace distance bound, in (0, 1]
    std::optional<double> epsilon_prime;    // eps < eps' <= 1 for the two-eps forms
    double eta = 1.0;                       // asymptotic mode factor
    std::optional<gibbs::Spectrum> spectrum;  // set = exact-Gibbs mode

    double delta() const;  // (eps' - eps)/(1 + eps')
};

enum class ContinuityForm { vn_simple, vn_two_eps, conditional };

// Both the exact-Gibbs factor S(gamma(E/eps or E/delta)) and its asymptotic
// replacement eta log(...) are reported; `bound` carries the requested mode.
struct ContinuityBound {
    double bound;
    double entropy_factor;            // factor used in `bound`
    bool asymptotic;                  // which mode `bound` is
    std::optional<double> gibbs_factor;      // S(gamma(.)) when a spectrum is set
    double asymptotic_factor;                // eta log(.)
    double factor_argument;                  // E/eps or E/delta
};

ContinuityBound entropy_continuity_bound(const ContinuityParams& params,
                                         ContinuityForm which);

}  // namespace qdslim::entropy

#endif
