#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qdslim/bounds.hpp"
#include "qdslim/capacity.hpp"
#include "qdslim/entropy.hpp"
#include "qdslim/errors.hpp"
#include "qdslim/gibbs.hpp"
#include "qdslim/verify.hpp"
#include "qdslim/version.hpp"

namespace {

using qdslim::format_double;

std::vector<double> parse_double_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    if (out.empty()) throw qdslim::DomainError("expected a comma-separated list of numbers");
    return out;
}

qdslim::gibbs::Spectrum parse_spectrum(const std::string& name) {
    if (name == "ho") return qdslim::gibbs::Spectrum::harmonic_oscillator();
    if (name == "box") return qdslim::gibbs::Spectrum::box();
    if (name.rfind("weyl:", 0) == 0) {
        const auto params = parse_double_list(name.substr(5));
        if (params.size() != 2) {
            throw qdslim::DomainError("weyl spectrum needs 'weyl:n,volume'");
        }
        return qdslim::gibbs::Spectrum::weyl(static_cast<int>(params[0]), params[1]);
    }
    if (name.rfind("file:", 0) == 0) {
        return qdslim::gibbs::Spectrum::from_file(name.substr(5));
    }
    throw qdslim::DomainError("unknown spectrum '" + name +
                              "' (expected ho|box|weyl:n,vol|file:path)");
}

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::fputs(content.c_str(), stdout);
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw qdslim::Error("cannot open output file '" + out_path + "'");
    f << content;
}

std::string csv_row(const std::vector<std::string>& cells) {
    std::string row;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) row += ',';
        row += cells[i];
    }
    row += '\n';
    return row;
}

nlohmann::json base_json(const std::string& command) {
    nlohmann::json j;
    j["artifact"] = "qdslim";
    j["version"] = qdslim::kVersion;
    j["command"] = command;
    return j;
}

struct BoundsOptions {
    double alpha = 0.5;
    double energy = 1.0;
    double dt = 1.0;
    double energy_norm = 1.0;
    double potential_integral = 0.0;
    double a = 0.0;
    double b = 0.0;
    std::string c = "auto";
    std::string omega_case = "H";
    std::string limit_case = "schrodinger";
    double theta = 0.0;
    double p_start = 1.0;
    double p_fin = 1.0;
    std::string capacity_kind = "c_one";
    double epsilon = 0.1;
    std::string t_param = "best";
    double eta = 1.0;
    double k_of_e = 1.0;
    int copies = 1;
    std::string spectrum;
    std::string out;
};

qdslim::bounds::OpenSystemParams open_params_from(const BoundsOptions& opt) {
    qdslim::bounds::OpenSystemParams p;
    p.alpha = opt.alpha;
    p.a = opt.a;
    p.b = opt.b;
    p.energy = opt.energy;
    p.which = opt.omega_case == "K" ? qdslim::bounds::OpenSystemParams::Case::omega_K
                                    : qdslim::bounds::OpenSystemParams::Case::omega_H;
    if (opt.c != "auto") p.c = std::stod(opt.c);
    return p;
}

struct GibbsOptions {
    std::string spectrum = "ho";
    std::vector<double> energies;
    std::string cutoffs;
    double cutoff_max = 0.0;
    std::string eta = "auto";
    std::string out;
};

struct VerifyOptions {
    std::string target;
    int dim = 30;
    double alpha = 0.5;
    double energy = 2.0;
    int samples = 200;
    std::uint64_t seed = 0;
    std::string t_grid = "0,0.2,0.4,0.6,0.8,1.0";
    int ancilla = 1;
    double tolerance = 1e-9;
    std::string out;
};

struct FiguresOptions {
    int points = 400;
    double alpha = 0.5;
    double energy = 1.0;
    double t_max = 0.25;
    double t13_constant = 0.0;
    std::string spectrum = "ho";
    std::vector<double> energies;
    std::string out;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qdslim: convergence-rate bounds, Gibbs asymptotics, and certification "
                 "campaigns for quantum dynamical semigroups on finite truncations"};
    app.require_subcommand(1);

    BoundsOptions bopt;
    GibbsOptions gopt;
    VerifyOptions vopt;
    FiguresOptions fopt;

    // ---- bounds ----------------------------------------------------------
    auto* bounds_cmd = app.add_subcommand("bounds", "evaluate an analytic bound");
    bounds_cmd->require_subcommand(1);

    auto* b_constants = bounds_cmd->add_subcommand("constants", "zeta and g prefactors");
    b_constants->add_option("--alpha", bopt.alpha)->required();
    b_constants->add_option("--out", bopt.out);

    auto* b_closed = bounds_cmd->add_subcommand(
        "closed", "energy-constrained bound on closed-system evolution");
    b_closed->add_option("--alpha", bopt.alpha)->required();
    b_closed->add_option("--E", bopt.energy)->required();
    b_closed->add_option("--dt", bopt.dt)->required();
    b_closed->add_option("--out", bopt.out);

    auto* b_pure = bounds_cmd->add_subcommand("pure", "ameliorated pure-state bound");
    b_pure->add_option("--alpha", bopt.alpha)->required();
    b_pure->add_option("--E", bopt.energy)->required();
    b_pure->add_option("--dt", bopt.dt)->required();
    b_pure->add_option("--out", bopt.out);

    auto* b_schroe = bounds_cmd->add_subcommand(
        "schrodinger", "state-norm bound on Schrodinger evolution");
    b_schroe->add_option("--alpha", bopt.alpha)->required();
    b_schroe->add_option("--energy-norm", bopt.energy_norm)->required();
    b_schroe->add_option("--dt", bopt.dt)->required();
    b_schroe->add_option("--potential-integral", bopt.potential_integral);
    b_schroe->add_option("--out", bopt.out);

    auto* b_open = bounds_cmd->add_subcommand("open", "open-system omega bound");
    b_open->add_option("--alpha", bopt.alpha)->required();
    b_open->add_option("--a", bopt.a);
    b_open->add_option("--b", bopt.b);
    b_open->add_option("--c", bopt.c, "positive number, 0 (limit), or 'auto'");
    b_open->add_option("--E", bopt.energy)->required();
    b_open->add_option("--case", bopt.omega_case)->check(CLI::IsMember({"H", "K"}));
    b_open->add_option("--dt", bopt.dt);
    b_open->add_option("--out", bopt.out);

    auto* b_speed = bounds_cmd->add_subcommand("speedlimit", "minimal evolution time");
    b_speed->add_option("--case", bopt.limit_case)
        ->check(CLI::IsMember({"schrodinger", "von_neumann", "open"}));
    b_speed->add_option("--alpha", bopt.alpha)->required();
    b_speed->add_option("--theta", bopt.theta)->required();
    b_speed->add_option("--E", bopt.energy);
    b_speed->add_option("--a", bopt.a);
    b_speed->add_option("--b", bopt.b);
    b_speed->add_option("--c", bopt.c);
    b_speed->add_option("--omega-case", bopt.omega_case)->check(CLI::IsMember({"H", "K"}));
    b_speed->add_option("--out", bopt.out);

    auto* b_capacity = bounds_cmd->add_subcommand(
        "capacity", "continuity bound for constrained capacities / Holevo / QMI");
    b_capacity->add_option("--which", bopt.capacity_kind)
        ->check(CLI::IsMember({"c_one", "c_full", "eac", "qmi", "holevo"}));
    b_capacity->add_option("--E", bopt.energy)->required();
    b_capacity->add_option("--eps", bopt.epsilon)->required();
    b_capacity->add_option("--t", bopt.t_param, "number in (0, 1/(2 eps)] or 'best'");
    b_capacity->add_option("--eta", bopt.eta);
    b_capacity->add_option("--kE", bopt.k_of_e, "output-energy factor k(E)");
    b_capacity->add_option("--n", bopt.copies, "copies, mutual-information bound only");
    b_capacity->add_option("--spectrum", bopt.spectrum,
                           "evaluate the exact-Gibbs factor on this spectrum");
    b_capacity->add_option("--out", bopt.out);

    auto* b_purity = bounds_cmd->add_subcommand("purity", "purity change bound / minimal time");
    b_purity->add_option("--alpha", bopt.alpha)->required();
    b_purity->add_option("--a", bopt.a);
    b_purity->add_option("--b", bopt.b);
    b_purity->add_option("--c", bopt.c);
    b_purity->add_option("--E", bopt.energy)->required();
    b_purity->add_option("--case", bopt.omega_case)->check(CLI::IsMember({"H", "K"}));
    auto* dt_opt = b_purity->add_option("--dt", bopt.dt);
    auto* ps_opt = b_purity->add_option("--p-start", bopt.p_start);
    b_purity->add_option("--p-fin", bopt.p_fin)->needs(ps_opt);
    b_purity->add_option("--out", bopt.out);

    // ---- gibbs -----------------------------------------------------------
    auto* gibbs_cmd = app.add_subcommand("gibbs", "Gibbs-state numerics");
    gibbs_cmd->require_subcommand(1);

    auto* g_beta = gibbs_cmd->add_subcommand("beta", "inverse temperature at energies");
    auto* g_entropy = gibbs_cmd->add_subcommand("entropy", "Gibbs entropy at energies");
    for (auto* sub : {g_beta, g_entropy}) {
        sub->add_option("--spectrum", gopt.spectrum)->required();
        sub->add_option("--E", gopt.energies, "one or more energies")->delimiter(',');
        sub->add_option("--E-grid", gopt.energies, "alias of --E")->delimiter(',');
        sub->add_option("--out", gopt.out);
    }

    auto* g_eta = gibbs_cmd->add_subcommand("eta", "spectral-pair asymptotics");
    g_eta->add_option("--spectrum", gopt.spectrum)->required();
    g_eta->add_option("--cutoff", gopt.cutoff_max, "largest pair-sum cutoff");
    g_eta->add_option("--cutoffs", gopt.cutoffs, "explicit comma-separated cutoffs");
    g_eta->add_option("--out", gopt.out);

    auto* g_asym = gibbs_cmd->add_subcommand("asymptotics", "inverse-temperature asymptotics");
    g_asym->add_option("--spectrum", gopt.spectrum)->required();
    g_asym->add_option("--E-grid", gopt.energies)->required()->delimiter(',');
    g_asym->add_option("--eta", gopt.eta, "'auto' or a numeric eta");
    g_asym->add_option("--out", gopt.out);

    // ---- verify ----------------------------------------------------------
    auto* verify_cmd =
        app.add_subcommand("verify", "sampling campaign certifying a channel bound");
    verify_cmd->add_option("target", vopt.target, "attenuator | closed | preset:NAME")
        ->required();
    verify_cmd->add_option("--dim", vopt.dim);
    verify_cmd->add_option("--alpha", vopt.alpha);
    verify_cmd->add_option("--E", vopt.energy);
    verify_cmd->add_option("--samples", vopt.samples);
    verify_cmd->add_option("--seed", vopt.seed)->required();
    verify_cmd->add_option("--t-grid", vopt.t_grid);
    verify_cmd->add_option("--ancilla", vopt.ancilla);
    verify_cmd->add_option("--tolerance", vopt.tolerance);
    verify_cmd->add_option("--out", vopt.out);

    // ---- figures ---------------------------------------------------------
    auto* figures_cmd = app.add_subcommand("figures", "CSV data series for the figures");
    figures_cmd->require_subcommand(1);

    auto* f_galpha = figures_cmd->add_subcommand("g-alpha", "prefactor g over alpha");
    f_galpha->add_option("--points", fopt.points);
    f_galpha->add_option("--out", fopt.out);

    auto* f_compare =
        figures_cmd->add_subcommand("bound-compare", "general vs pure-state bound");
    f_compare->add_option("--E", fopt.energy)->required();
    f_compare->add_option("--alpha", fopt.alpha);
    f_compare->add_option("--t-max", fopt.t_max);
    f_compare->add_option("--points", fopt.points);
    f_compare->add_option("--t13-constant", fopt.t13_constant,
                          "optional external t^{1/3} curve constant");
    f_compare->add_option("--out", fopt.out);

    auto* f_beta = figures_cmd->add_subcommand("beta-asymptotics",
                                               "exact inverse temperature vs eta/E");
    f_beta->add_option("--spectrum", fopt.spectrum)->required();
    f_beta->add_option("--E-grid", fopt.energies)->required()->delimiter(',');
    f_beta->add_option("--out", fopt.out);

    try {
        app.parse(argc, argv);

        using namespace qdslim;

        // bounds ------------------------------------------------------------
        if (b_constants->parsed()) {
            const bounds::BoundConstants c = bounds::constants(bopt.alpha);
            nlohmann::json j = base_json("bounds constants");
            j["params"] = {{"alpha", bopt.alpha}};
            j["zeta"] = c.zeta;
            j["g"] = c.g;
            emit(j.dump() + "\n", bopt.out);
        } else if (b_closed->parsed()) {
            nlohmann::json j = base_json("bounds closed");
            j["params"] = {{"alpha", bopt.alpha}, {"E", bopt.energy}, {"dt", bopt.dt}};
            j["formula"] = "2 g_a E^a dt^a";
            j["bound"] = bounds::closed_vn_bound(bopt.alpha, bopt.energy, bopt.dt);
            j["vacuous"] = j["bound"].get<double>() > 2.0;
            emit(j.dump() + "\n", bopt.out);
        } else if (b_pure->parsed()) {
            nlohmann::json j = base_json("bounds pure");
            j["params"] = {{"alpha", bopt.alpha}, {"E", bopt.energy}, {"dt", bopt.dt}};
            j["formula"] = "2 g_a E^a dt^a sqrt(1 - g_a^2 E^{2a} dt^{2a}/4)";
            j["window_max_dt"] = bounds::pure_state_max_dt(bopt.alpha);
            j["bound"] = bounds::pure_state_bound(bopt.alpha, bopt.energy, bopt.dt);
            emit(j.dump() + "\n", bopt.out);
        } else if (b_schroe->parsed()) {
            nlohmann::json j = base_json("bounds schrodinger");
            j["params"] = {{"alpha", bopt.alpha},
                           {"energy_norm", bopt.energy_norm},
                           {"dt", bopt.dt},
                           {"potential_integral", bopt.potential_integral}};
            j["formula"] = "g_a ||H|^a phi|| dt^a + integral";
            j["bound"] = bounds::nonautonomous_bound(bopt.alpha, bopt.energy_norm, bopt.dt,
                                                     bopt.potential_integral);
            emit(j.dump() + "\n", bopt.out);
        } else if (b_open->parsed()) {
            const bounds::OpenSystemParams p = open_params_from(bopt);
            const double omega_value = bounds::omega(p);
            nlohmann::json j = base_json("bounds open");
            j["params"] = {{"alpha", bopt.alpha}, {"a", bopt.a},    {"b", bopt.b},
                           {"c", bopt.c},         {"E", bopt.energy}, {"dt", bopt.dt},
                           {"case", std::string("omega_") + bopt.omega_case}};
            j["omega"] = omega_value;
            j["bound"] = bounds::open_system_bound(p, bopt.dt);
            j["vacuous"] = j["bound"].get<double>() > 2.0;
            emit(j.dump() + "\n", bopt.out);
        } else if (b_speed->parsed()) {
            nlohmann::json j = base_json("bounds speedlimit");
            j["params"] = {{"case", bopt.limit_case},
                           {"alpha", bopt.alpha},
                           {"theta", bopt.theta},
                           {"E", bopt.energy}};
            double tmin;
            if (bopt.limit_case == "schrodinger") {
                tmin = bounds::speed_limit(bounds::SpeedLimitCase::schrodinger, bopt.alpha,
                                           bopt.energy, bopt.theta);
            } else if (bopt.limit_case == "von_neumann") {
                tmin = bounds::speed_limit(bounds::SpeedLimitCase::von_neumann, bopt.alpha,
                                           bopt.energy, bopt.theta);
            } else {
                const bounds::OpenSystemParams p = open_params_from(bopt);
                j["params"]["a"] = bopt.a;
                j["params"]["b"] = bopt.b;
                j["params"]["c"] = bopt.c;
                j["params"]["omega_case"] = std::string("omega_") + bopt.omega_case;
                tmin = bounds::speed_limit(bounds::SpeedLimitCase::open, bopt.alpha,
                                           bopt.energy, bopt.theta, p);
            }
            j["t_min"] = tmin;
            emit(j.dump() + "\n", bopt.out);
        } else if (b_capacity->parsed()) {
            capacity::CapacityBoundParams p;
            p.energy = bopt.energy;
            p.epsilon = bopt.epsilon;
            p.eta = bopt.eta;
            p.k_of_e = bopt.k_of_e;
            p.n = bopt.copies;
            if (!bopt.spectrum.empty()) p.spectrum = parse_spectrum(bopt.spectrum);
            capacity::CapacityBoundKind kind;
            if (bopt.capacity_kind == "c_one") kind = capacity::CapacityBoundKind::c_one;
            else if (bopt.capacity_kind == "c_full") kind = capacity::CapacityBoundKind::c_full;
            else if (bopt.capacity_kind == "eac") kind = capacity::CapacityBoundKind::eac;
            else if (bopt.capacity_kind == "qmi") kind = capacity::CapacityBoundKind::qmi;
            else kind = capacity::CapacityBoundKind::holevo_chi;

            nlohmann::json j = base_json("bounds capacity");
            j["params"] = {{"which", bopt.capacity_kind}, {"E", bopt.energy},
                           {"eps", bopt.epsilon},         {"eta", bopt.eta},
                           {"kE", bopt.k_of_e},           {"n", bopt.copies},
                           {"t", bopt.t_param}};
            capacity::CapacityBoundResult result;
            if (bopt.t_param == "best") {
                result = capacity::capacity_continuity_best_t(p, kind, 64);
                j["t_minimized"] = true;
            } else {
                p.t = std::stod(bopt.t_param);
                result = capacity_continuity(p, kind);
                j["t_minimized"] = false;
            }
            j["bound"] = result.bound;
            j["used_t"] = result.used_t;
            j["entropy_factor"] = result.entropy_factor;
            j["factor_argument"] = result.factor_argument;
            j["mode"] = result.asymptotic ? "asymptotic eta*log" : "exact Gibbs entropy";
            emit(j.dump() + "\n", bopt.out);
        } else if (b_purity->parsed()) {
            const bounds::OpenSystemParams p = open_params_from(bopt);
            nlohmann::json j = base_json("bounds purity");
            j["params"] = {{"alpha", bopt.alpha}, {"a", bopt.a},    {"b", bopt.b},
                           {"c", bopt.c},         {"E", bopt.energy},
                           {"case", std::string("omega_") + bopt.omega_case}};
            j["omega"] = bounds::omega(p);
            if (ps_opt->count() > 0) {
                j["params"]["p_start"] = bopt.p_start;
                j["params"]["p_fin"] = bopt.p_fin;
                j["t_min"] = bounds::purity_time(p, bopt.p_start, bopt.p_fin);
            } else if (dt_opt->count() > 0) {
                j["params"]["dt"] = bopt.dt;
                j["bound"] = bounds::purity_change_bound(p, bopt.dt);
            } else {
                throw DomainError("purity needs either --dt or --p-start/--p-fin");
            }
            emit(j.dump() + "\n", bopt.out);
        }

        // gibbs ---------------------------------------------------------------
        if (g_beta->parsed() || g_entropy->parsed()) {
            if (gopt.energies.empty()) throw DomainError("need --E or --E-grid");
            const gibbs::Spectrum spec = parse_spectrum(gopt.spectrum);
            std::string csv = csv_row({"E", "beta", "log_Z", "entropy", "terms", "tail_bound"});
            for (double e : gopt.energies) {
                const gibbs::GibbsSolution sol = gibbs::solve_beta(spec, e);
                csv += csv_row({format_double(sol.energy), format_double(sol.beta),
                                format_double(sol.log_z), format_double(sol.entropy),
                                std::to_string(sol.truncation_terms),
                                format_double(sol.tail_bound)});
            }
            emit(csv, gopt.out);
        } else if (g_eta->parsed()) {
            const gibbs::Spectrum spec = parse_spectrum(gopt.spectrum);
            std::vector<double> cutoffs;
            if (!gopt.cutoffs.empty()) {
                cutoffs = parse_double_list(gopt.cutoffs);
            } else if (gopt.cutoff_max > 0.0) {
                cutoffs = gibbs::default_cutoff_grid(gopt.cutoff_max);
            } else {
                throw DomainError("need --cutoff or --cutoffs");
            }
            const gibbs::AsymptoticsReport rep = gibbs::estimate_eta(spec, cutoffs);
            std::string csv =
                csv_row({"cutoff", "n_up", "n_down", "ratio", "xi", "eta", "fit_residual"});
            const std::string xi = rep.xi ? format_double(*rep.xi) : "";
            const std::string eta = rep.eta ? format_double(*rep.eta) : "";
            for (std::size_t i = 0; i < cutoffs.size(); ++i) {
                const auto [up, down] = gibbs::n_updown(spec, cutoffs[i]);
                csv += csv_row({format_double(cutoffs[i]), format_double(up),
                                format_double(down), format_double(rep.xi_estimates[i]), xi,
                                eta, format_double(rep.fit_residual)});
            }
            emit(csv, gopt.out);
            if (!rep.eta.has_value()) {
                std::fprintf(stderr, "qdslim: %s\n", rep.diagnostic.c_str());
                return 1;
            }
        } else if (g_asym->parsed()) {
            const gibbs::Spectrum spec = parse_spectrum(gopt.spectrum);
            std::optional<double> eta;
            if (gopt.eta != "auto") eta = std::stod(gopt.eta);
            const gibbs::AsymptoticsTable table =
                gibbs::asymptotics_check(spec, gopt.energies, eta);
            std::string csv = csv_row({"E", "beta", "beta_E_over_eta", "log_Z",
                                       "log_Z_minus_eta_log_E", "entropy",
                                       "entropy_over_eta_log_E"});
            for (const auto& row : table.rows) {
                csv += csv_row({format_double(row.energy), format_double(row.beta),
                                format_double(row.beta_e_over_eta), format_double(row.log_z),
                                format_double(row.log_z_minus_eta_log_e),
                                format_double(row.entropy), format_double(row.entropy_ratio)});
            }
            emit(csv, gopt.out);
        }

        // verify --------------------------------------------------------------
        if (verify_cmd->parsed()) {
            verify::CampaignConfig config;
            config.target = vopt.target;
            config.dim = vopt.dim;
            config.alpha = vopt.alpha;
            config.energy = vopt.energy;
            config.samples = vopt.samples;
            config.seed = vopt.seed;
            config.t_grid = parse_double_list(vopt.t_grid);
            config.ancilla_dim = vopt.ancilla == 1 && vopt.target == "closed" ? 4 : vopt.ancilla;
            config.tolerance = vopt.tolerance;
            const verify::CampaignOutcome outcome = verify::run_campaign(config);
            emit(outcome.report.dump(2) + "\n", vopt.out);
            if (!outcome.pass) return 1;
        }

        // figures -------------------------------------------------------------
        if (f_galpha->parsed()) {
            if (fopt.points < 2) throw DomainError("need at least two points");
            std::string csv = csv_row({"alpha", "zeta", "g"});
            for (int i = 1; i <= fopt.points; ++i) {
                const double alpha =
                    static_cast<double>(i) / static_cast<double>(fopt.points);
                const bounds::BoundConstants c = bounds::constants(alpha);
                csv += csv_row(
                    {format_double(alpha), format_double(c.zeta), format_double(c.g)});
            }
            emit(csv, fopt.out);
        } else if (f_compare->parsed()) {
            const bool with_t13 = fopt.t13_constant > 0.0;
            const double window = bounds::pure_state_max_dt(fopt.alpha);
            std::string csv = with_t13 ? csv_row({"t", "vn_bound", "pure_bound", "t13_bound"})
                                       : csv_row({"t", "vn_bound", "pure_bound"});
            for (int i = 0; i <= fopt.points; ++i) {
                const double t =
                    fopt.t_max * static_cast<double>(i) / static_cast<double>(fopt.points);
                std::vector<std::string> cells = {
                    format_double(t),
                    format_double(bounds::closed_vn_bound(fopt.alpha, fopt.energy, t)),
                    t <= window
                        ? format_double(bounds::pure_state_bound(fopt.alpha, fopt.energy, t))
                        : ""};
                if (with_t13) {
                    cells.push_back(format_double(fopt.t13_constant * std::cbrt(t)));
                }
                csv += csv_row(cells);
            }
            emit(csv, fopt.out);
        } else if (f_beta->parsed()) {
            const gibbs::Spectrum spec = parse_spectrum(fopt.spectrum);
            const gibbs::AsymptoticsTable table =
                gibbs::asymptotics_check(spec, fopt.energies);
            std::string csv = csv_row({"E", "beta_exact", "beta_asymptotic", "ratio"});
            for (const auto& row : table.rows) {
                const double asym = table.eta / row.energy;
                csv += csv_row({format_double(row.energy), format_double(row.beta),
                                format_double(asym), format_double(row.beta / asym)});
            }
            emit(csv, fopt.out);
        }
        return 0;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const qdslim::Error& e) {
        std::fprintf(stderr, "qdslim: error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "qdslim: error: %s\n", e.what());
        return 1;
    }
}
