#include "qdslim/bounds.hpp"

#include <cmath>

#include "qdslim/errors.hpp"
#include "qdslim/linalg.hpp"

namespace qdslim::bounds {

BoundConstants constants(double alpha) {
    if (alpha <= 0.0 || alpha > 1.0) throw DomainError("alpha must be in (0, 1]");
    if (alpha == 1.0) return BoundConstants{1.0, 1.0, 1.0};
    const double ratio = 2.0 * alpha / (1.0 - alpha);
    const double zeta = std::pow(ratio, 1.0 - alpha) + 2.0 * std::pow(ratio, -alpha);
    const double g =
        zeta * std::pow(1.0 - alpha, 0.5 * (1.0 - alpha)) * std::pow(alpha, 0.5 * alpha);
    return BoundConstants{alpha, zeta, g};
}

namespace {

void require_nonnegative(double v, const char* name) {
    if (v < 0.0) throw DomainError(std::string(name) + " must be nonnegative");
}

// Exponent factors multiplying E^alpha in the two open-system prefactors.
double kappa_h(double alpha) {
    if (alpha == 1.0) return 1.0;
    return std::pow(1.0 - alpha, 0.5 * (1.0 - alpha)) * std::pow(alpha, 0.5 * alpha);
}

double kappa_k(double alpha) {
    if (alpha == 1.0) return 1.0;
    return std::pow(1.0 - alpha, 1.0 - alpha) * std::pow(alpha, alpha);
}

double omega_at_c(const OpenSystemParams& p, double c) {
    const BoundConstants bc = constants(p.alpha);
    const double kappa =
        p.which == OpenSystemParams::Case::omega_H ? kappa_h(p.alpha) : kappa_k(p.alpha);
    const double drive = (1.0 + 3.0 * p.a) * kappa * std::pow(p.energy, p.alpha);
    double branch_low;   // 2 c^alpha
    double branch_high;  // 3b c^{alpha-1} + drive
    if (c == 0.0) {
        if (p.alpha < 1.0 && p.b > 0.0) {
            throw DomainError("c = 0 is only admissible for alpha = 1 or b = 0");
        }
        branch_low = 0.0;
        branch_high = (p.alpha == 1.0 ? 3.0 * p.b : 0.0) + drive;
    } else {
        branch_low = 2.0 * std::pow(c, p.alpha);
        branch_high = 3.0 * p.b * std::pow(c, p.alpha - 1.0) + drive;
    }
    return 4.0 * bc.zeta * std::max(branch_low, branch_high);
}

// The two branches are increasing/decreasing in c, so their max is unimodal;
// golden-section on log c.
double omega_minimized(const OpenSystemParams& p) {
    const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = std::log(1e-6);
    double hi = std::log(1e6);
    double x1 = hi - golden * (hi - lo);
    double x2 = lo + golden * (hi - lo);
    double f1 = omega_at_c(p, std::exp(x1));
    double f2 = omega_at_c(p, std::exp(x2));
    while (hi - lo > 1e-10 * std::max(1.0, std::abs(hi) + std::abs(lo))) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - golden * (hi - lo);
            f1 = omega_at_c(p, std::exp(x1));
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + golden * (hi - lo);
            f2 = omega_at_c(p, std::exp(x2));
        }
    }
    double best = std::min(f1, f2);
    // The infimum can sit at the c -> 0 edge (b = 0 or alpha = 1).
    if (p.b == 0.0 || p.alpha == 1.0) {
        best = std::min(best, omega_at_c(p, 0.0));
    }
    return best;
}

}  // namespace

double closed_schrodinger_bound(double alpha, double energy_norm, double dt) {
    require_nonnegative(dt, "dt");
    require_nonnegative(energy_norm, "energy norm");
    if (dt == 0.0) return 0.0;
    return constants(alpha).g * energy_norm * std::pow(dt, alpha);
}

double nonautonomous_bound(double alpha, double energy_norm, double dt,
                           double potential_integral) {
    require_nonnegative(potential_integral, "potential integral");
    return closed_schrodinger_bound(alpha, energy_norm, dt) + potential_integral;
}

double closed_vn_bound(double alpha, double energy, double dt) {
    require_nonnegative(dt, "dt");
    if (energy <= 0.0) throw DomainError("energy must be positive");
    if (dt == 0.0) return 0.0;
    return 2.0 * constants(alpha).g * std::pow(energy, alpha) * std::pow(dt, alpha);
}

double pure_state_max_dt(double alpha) {
    const BoundConstants bc = constants(alpha);
    return std::pow(1.0 / (std::sqrt(2.0) * bc.g), 1.0 / alpha);
}

double pure_state_bound(double alpha, double energy, double dt) {
    require_nonnegative(dt, "dt");
    if (energy <= 0.0) throw DomainError("energy must be positive");
    const double max_dt = pure_state_max_dt(alpha);
    if (dt > max_dt * (1.0 + 1e-12)) {
        throw TimeWindowError("pure-state bound requires dt <= " + format_double(max_dt),
                              max_dt);
    }
    if (dt == 0.0) return 0.0;
    const BoundConstants bc = constants(alpha);
    const double base = 2.0 * bc.g * std::pow(energy, alpha) * std::pow(dt, alpha);
    const double shrink =
        1.0 - bc.g * bc.g * std::pow(energy, 2.0 * alpha) * std::pow(dt, 2.0 * alpha) / 4.0;
    return base * std::sqrt(std::max(0.0, shrink));
}

double omega(const OpenSystemParams& params) {
    if (params.alpha <= 0.0 || params.alpha > 1.0) {
        throw DomainError("alpha must be in (0, 1]");
    }
    require_nonnegative(params.a, "relative bound a");
    require_nonnegative(params.b, "bound b");
    if (params.energy <= 0.0) throw DomainError("energy must be positive");
    if (params.c.has_value()) {
        if (*params.c < 0.0) throw DomainError("c must be nonnegative");
        return omega_at_c(params, *params.c);
    }
    return omega_minimized(params);
}

double open_system_bound(const OpenSystemParams& params, double dt) {
    require_nonnegative(dt, "dt");
    if (dt == 0.0) return 0.0;
    return omega(params) * std::pow(dt, params.alpha);
}

double attenuator_coefficient(double alpha, double energy) {
    if (energy <= 0.0) throw DomainError("energy must be positive");
    const BoundConstants bc = constants(alpha);
    return 4.0 * bc.zeta * kappa_k(alpha) * std::pow(energy, alpha);
}

double transferred_energy(double alpha, double rel_a, double rel_b, double energy) {
    if (alpha <= 0.0 || alpha > 1.0) throw DomainError("alpha must be in (0, 1]");
    require_nonnegative(rel_a, "relative bound a");
    require_nonnegative(rel_b, "bound b");
    if (energy <= 0.0) throw DomainError("energy must be positive");
    const double shifted = rel_a * std::pow(energy, 2.0 * alpha) + rel_b;
    if (shifted <= 0.0) throw DomainError("transferred energy vanishes (a = b = 0)");
    return std::pow(shifted, 1.0 / (2.0 * alpha));
}

double speed_limit(SpeedLimitCase which, double alpha, double energy, double theta,
                   const std::optional<OpenSystemParams>& open_params) {
    const double theta_max = which == SpeedLimitCase::schrodinger ? M_PI : M_PI / 2.0;
    if (theta < 0.0 || theta > theta_max * (1.0 + 1e-12)) {
        throw DomainError("theta must lie in [0, " + format_double(theta_max) + "]");
    }
    if (theta == 0.0) return 0.0;
    switch (which) {
        case SpeedLimitCase::schrodinger: {
            if (energy <= 0.0) throw DomainError("energy must be positive");
            const double g = constants(alpha).g;
            return std::pow((2.0 - 2.0 * std::cos(theta)) / (g * g), 1.0 / (2.0 * alpha)) /
                   energy;
        }
        case SpeedLimitCase::von_neumann: {
            if (energy <= 0.0) throw DomainError("energy must be positive");
            const double g = constants(alpha).g;
            return std::pow((1.0 - std::cos(theta)) / g, 1.0 / alpha) / energy;
        }
        case SpeedLimitCase::open: {
            if (!open_params.has_value()) {
                throw DomainError("open-system speed limit needs omega parameters");
            }
            const double w = omega(*open_params);
            return std::pow((2.0 - 2.0 * std::cos(theta)) / w, 1.0 / open_params->alpha);
        }
    }
    throw DomainError("unreachable speed-limit case");
}

double purity_change_bound(const OpenSystemParams& params, double dt) {
    require_nonnegative(dt, "dt");
    if (dt == 0.0) return 0.0;
    return 2.0 * omega(params) * std::pow(dt, params.alpha);
}

double purity_time(const OpenSystemParams& params, double p_start, double p_fin) {
    if (p_start <= 0.0 || p_start > 1.0 || p_fin <= 0.0 || p_fin > 1.0) {
        throw DomainError("purities must lie in (0, 1]");
    }
    if (p_start == p_fin) return 0.0;
    return std::pow(std::abs(p_start - p_fin) / omega(params), 1.0 / params.alpha);
}

nlohmann::json BoundReport::to_json() const {
    nlohmann::json j;
    j["formula"] = formula_id;
    j["bound"] = bound_value;
    if (observed_value) j["observed"] = *observed_value;
    if (margin) j["margin"] = *margin;
    j["tolerance"] = tolerance;
    switch (status) {
        case ReportStatus::pass: j["status"] = "pass"; break;
        case ReportStatus::fail: j["status"] = "fail"; break;
        case ReportStatus::vacuous_pass: j["status"] = "pass (vacuous bound)"; break;
        case ReportStatus::inapplicable: j["status"] = "inapplicable"; break;
    }
    j["params"] = params;
    return j;
}

BoundReport certify(double bound_value, double observed_value, nlohmann::json params,
                    const std::string& formula_id, double tolerance,
                    std::optional<double> cap) {
    if (!std::isfinite(bound_value) || !std::isfinite(observed_value)) {
        throw DomainError("certify needs finite bound and observation");
    }
    BoundReport report;
    report.formula_id = formula_id;
    report.bound_value = bound_value;
    report.observed_value = observed_value;
    report.margin = bound_value - observed_value;
    report.tolerance = tolerance;
    report.params = std::move(params);
    const bool ok = *report.margin >= -tolerance;
    const bool vacuous = cap.has_value() && bound_value > *cap;
    report.status = ok ? (vacuous ? ReportStatus::vacuous_pass : ReportStatus::pass)
                       : ReportStatus::fail;
    return report;
}

}  // namespace qdslim::bounds
