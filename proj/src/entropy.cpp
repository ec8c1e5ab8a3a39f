#include "qdslim/entropy.hpp"

#include <cmath>
#include <limits>

#include "qdslim/errors.hpp"
#include "qdslim/metrics.hpp"

namespace qdslim::entropy {

namespace {

constexpr double kEigFloor = 1e-15;

double entropy_of_values(const RealVector& values) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        const double p = values(i);
        if (p > kEigFloor) s -= p * std::log(p);
    }
    return s;
}

}  // namespace

double von_neumann(const DensityMatrix& rho) { return entropy_of_values(rho.eig().values); }

double conditional(const DensityMatrix& rho_ab, int dim_a, int dim_b) {
    if (dim_a < 1 || dim_b < 1 || rho_ab.dim() != dim_a * dim_b) {
        throw ShapeError("joint dimension does not factor as dim_a * dim_b");
    }
    const Matrix rho_b = partial_trace_first(rho_ab.matrix(), dim_a, dim_b);
    return von_neumann(rho_ab) - entropy_of_values(eigh(hermitize(rho_b)).values);
}

double relative(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) throw ShapeError("states must share a dimension");
    const Eigensystem& ssys = sigma.eig();
    // Weight of rho outside the support of sigma decides finiteness.
    double kernel_weight = 0.0;
    for (Eigen::Index j = 0; j < ssys.values.size(); ++j) {
        if (ssys.values(j) < 1e-12) {
            kernel_weight +=
                (ssys.vectors.col(j).adjoint() * rho.matrix() * ssys.vectors.col(j))(0)
                    .real();
        }
    }
    if (kernel_weight > 1e-12) return std::numeric_limits<double>::infinity();

    double cross = 0.0;  // tr(rho log sigma) over the support
    for (Eigen::Index j = 0; j < ssys.values.size(); ++j) {
        if (ssys.values(j) >= 1e-12) {
            const double occ =
                (ssys.vectors.col(j).adjoint() * rho.matrix() * ssys.vectors.col(j))(0)
                    .real();
            cross += occ * std::log(ssys.values(j));
        }
    }
    return -von_neumann(rho) - cross;
}

double mutual_information(const DensityMatrix& rho_ab, int dim_a, int dim_b) {
    if (dim_a < 1 || dim_b < 1 || rho_ab.dim() != dim_a * dim_b) {
        throw ShapeError("joint dimension does not factor as dim_a * dim_b");
    }
    const Matrix rho_a = partial_trace_second(rho_ab.matrix(), dim_a, dim_b);
    const Matrix rho_b = partial_trace_first(rho_ab.matrix(), dim_a, dim_b);
    return entropy_of_values(eigh(hermitize(rho_a)).values) +
           entropy_of_values(eigh(hermitize(rho_b)).values) - von_neumann(rho_ab);
}

double tsallis_q(const DensityMatrix& rho, double q) {
    if (q <= 1.0) throw DomainError("Tsallis entropy needs q > 1");
    double s = 0.0;
    const RealVector& v = rho.eig().values;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (v(i) > kEigFloor) s += std::pow(v(i), q);
    }
    return (1.0 - s) / (q - 1.0);
}

double renyi_q(const DensityMatrix& rho, double q) {
    if (q <= 1.0) throw DomainError("Renyi entropy needs q > 1");
    double s = 0.0;
    const RealVector& v = rho.eig().values;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (v(i) > kEigFloor) s += std::pow(v(i), q);
    }
    return std::log(s) / (1.0 - q);
}

bounds::BoundReport check_tsallis_lipschitz(const DensityMatrix& rho,
                                            const DensityMatrix& sigma, double q) {
    const double dist_q = metrics::schatten_norm(rho.matrix() - sigma.matrix(), q);
    const double observed = std::abs(tsallis_q(rho, q) - tsallis_q(sigma, q));
    nlohmann::json params = {{"q", q}, {"schatten_q_distance", dist_q}};
    return bounds::certify(q / (q - 1.0) * dist_q, observed, params, "tsallis_lipschitz",
                           1e-10);
}

bounds::BoundReport check_renyi_lipschitz(const DensityMatrix& rho,
                                          const DensityMatrix& sigma, double q,
                                          double delta_floor) {
    const double rho_q = metrics::schatten_norm(rho.matrix(), q);
    const double dist_q = metrics::schatten_norm(rho.matrix() - sigma.matrix(), q);
    nlohmann::json params = {{"q", q},
                             {"delta_floor", delta_floor},
                             {"rho_q_norm", rho_q},
                             {"schatten_q_distance", dist_q}};
    if (rho_q < delta_floor || dist_q >= delta_floor) {
        bounds::BoundReport report;
        report.formula_id = "renyi_lipschitz";
        report.status = bounds::ReportStatus::inapplicable;
        report.params = std::move(params);
        return report;
    }
    const double constant = q / ((q - 1.0) * (delta_floor - dist_q));
    const double observed = std::abs(renyi_q(rho, q) - renyi_q(sigma, q));
    return bounds::certify(constant * dist_q, observed, params, "renyi_lipschitz", 1e-10);
}

double binary_entropy(double x) {
    if (x < 0.0 || x > 1.0) throw DomainError("binary entropy needs x in [0, 1]");
    double s = 0.0;
    if (x > 0.0) s -= x * std::log(x);
    if (x < 1.0) s -= (1.0 - x) * std::log(1.0 - x);
    return s;
}

double g_aux(double x) {
    if (x < 0.0) throw DomainError("g needs x >= 0");
    if (x == 0.0) return 0.0;
    return (x + 1.0) * std::log(x + 1.0) - x * std::log(x);
}

double r_eps(double eps, double t) {
    if (eps <= 0.0 || eps >= 1.0) throw DomainError("r_eps needs eps in (0, 1)");
    if (t <= 0.0 || t > 1.0 / (2.0 * eps)) {
        throw DomainError("r_eps needs t in (0, 1/(2 eps)]");
    }
    return (1.0 + 0.5 * t) / (1.0 - eps * t);
}

double ContinuityParams::delta() const {
    if (!epsilon_prime.has_value()) {
        throw DomainError("delta needs epsilon_prime");
    }
    return (*epsilon_prime - epsilon) / (1.0 + *epsilon_prime);
}

ContinuityBound entropy_continuity_bound(const ContinuityParams& params,
                                         ContinuityForm which) {
    if (params.epsilon <= 0.0 || params.epsilon > 1.0) {
        throw DomainError("epsilon must lie in (0, 1]");
    }
    double coefficient;
    double argument;
    double additive;
    if (which == ContinuityForm::vn_simple) {
        coefficient = 2.0 * params.epsilon;
        argument = params.energy / params.epsilon;
        additive = binary_entropy(params.epsilon);
    } else {
        if (!params.epsilon_prime.has_value() || *params.epsilon_prime <= params.epsilon ||
            *params.epsilon_prime > 1.0) {
            throw DomainError("two-epsilon forms need epsilon < epsilon_prime <= 1");
        }
        const double ep = *params.epsilon_prime;
        const double d = params.delta();
        argument = params.energy / d;
        if (which == ContinuityForm::vn_two_eps) {
            coefficient = ep + 2.0 * d;
            additive = binary_entropy(ep) + binary_entropy(d);
        } else {
            coefficient = 2.0 * (ep + 4.0 * d);
            additive = (1.0 + ep) * binary_entropy(ep / (1.0 + ep)) + 2.0 * binary_entropy(d);
        }
    }

    ContinuityBound out;
    out.factor_argument = argument;
    out.asymptotic_factor = params.eta * std::log(argument);
    if (params.spectrum.has_value()) {
        out.gibbs_factor = gibbs::gibbs_entropy(*params.spectrum, argument);
        out.entropy_factor = *out.gibbs_factor;
        out.asymptotic = false;
    } else {
        out.entropy_factor = out.asymptotic_factor;
        out.asymptotic = true;
    }
    out.bound = coefficient * out.entropy_factor + additive;
    return out;
}

}  // namespace qdslim::entropy
