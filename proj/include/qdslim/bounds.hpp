#ifndef QDSLIM_BOUNDS_HPP
#define QDSLIM_BOUNDS_HPP

#include <optional>
#include <string>

#include <json.hpp>

namespace qdslim::bounds {

// zeta = (2a/(1-a))^{1-a} + 2 (2a/(1-a))^{-a} with zeta(1) = 1,
// g = zeta (1-a)^{(1-a)/2} a^{a/2}. Continuous on (0, 1].
struct BoundConstants {
    double alpha;
    double zeta;
    double g;
};

BoundConstants constants(double alpha);

// g_a ||H|^a phi_0|| dt^a.
double closed_schrodinger_bound(double alpha, double energy_norm, double dt);

// Autonomous bound plus the caller-supplied integral of the potential norm.
double nonautonomous_bound(double alpha, double energy_norm, double dt,
                           double potential_integral);

// 2 g_a E^a dt^a.
double closed_vn_bound(double alpha, double energy, double dt);

// Ameliorated pure-state variant; only valid for dt^a <= 1/(sqrt(2) g_a),
// outside the window raises TimeWindowError carrying the max admissible dt.
double pure_state_bound(double alpha, double energy, double dt);
double pure_state_max_dt(double alpha);

struct OpenSystemParams {
    enum class Case { omega_H, omega_K };

    double alpha = 0.5;
    double a = 0.0;  // relative bound
    double b = 0.0;
    std::optional<double> c;  // empty = minimize over c; 0 only valid for b=0 or alpha=1
    double energy = 1.0;
    Case which = Case::omega_H;
};

// 4 zeta_a max{2c^a, 3b c^{a-1} + (1+3a') kappa E^a} where kappa carries the
// exponents (1-a)^{(1-a)/2} a^{a/2} for omega_H and (1-a)^{1-a} a^a for omega_K.
// With c unset, minimized by golden-section on log c over [1e-6, 1e6].
double omega(const OpenSystemParams& params);

double open_system_bound(const OpenSystemParams& params, double dt);

// c -> 0 limit of omega_K with a = b = 0: 4 zeta_a (1-a)^{1-a} a^a E^a.
// Certifies the attenuator and amplifier semigroups.
double attenuator_coefficient(double alpha, double energy);

// Norm transfer between constraint operators: when ||S^a phi||^2 <=
// a ||S'^a phi||^2 + b ||phi||^2, a bound stated at energy E against S'
// holds against S at the transferred energy (a E^{2 alpha} + b)^{1/(2 alpha)}.
double transferred_energy(double alpha, double rel_a, double rel_b, double energy);

enum class SpeedLimitCase { schrodinger, von_neumann, open };

// Minimal evolution time to reach angle theta. theta in [0, pi] for the
// Schroedinger case (relative angle), [0, pi/2] otherwise (Bures angle).
double speed_limit(SpeedLimitCase which, double alpha, double energy, double theta,
                   const std::optional<OpenSystemParams>& open_params = std::nullopt);

// |tr(rho_t^2) - tr(rho_s^2)| <= 2 omega dt^a.
double purity_change_bound(const OpenSystemParams& params, double dt);

// Minimal time for the purity to move from p_start to p_fin.
double purity_time(const OpenSystemParams& params, double p_start, double p_fin);

enum class ReportStatus { pass, fail, vacuous_pass, inapplicable };

// Evaluated bound paired with an observed quantity. pass <=> margin >= -tolerance.
// Channel-distance bounds above the diamond-norm cap two are annotated vacuous.
struct BoundReport {
    std::string formula_id;
    double bound_value = 0.0;
    std::optional<double> observed_value;
    std::optional<double> margin;
    double tolerance = 1e-9;
    ReportStatus status = ReportStatus::pass;
    nlohmann::json params;

    bool passed() const {
        return status == ReportStatus::pass || status == ReportStatus::vacuous_pass;
    }
    nlohmann::json to_json() const;
};

BoundReport certify(double bound_value, double observed_value, nlohmann::json params,
                    const std::string& formula_id, double tolerance = 1e-9,
                    std::optional<double> cap = std::nullopt);

}  // namespace qdslim::bounds

#endif
