#include "qdslim/verify.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "qdslim/bounds.hpp"
#include "qdslim/channels.hpp"
#include "qdslim/errors.hpp"
#include "qdslim/metrics.hpp"
#include "qdslim/parallel.hpp"
#include "qdslim/sampling.hpp"
#include "qdslim/version.hpp"

namespace qdslim::verify {

namespace {

constexpr std::uint64_t kHamiltonianStream = 0x48414d4cULL;  // sampler streams start at 0

struct TargetSetup {
    std::unique_ptr<ChannelFamily> channel;
    std::unique_ptr<metrics::EnergyConstraint> constraint;
    std::function<double(double)> bound_of_dt;
    nlohmann::json target_params;
    bool check_pure_state_bound = false;
    std::unique_ptr<HermitianOperator> hamiltonian;  // closed target only
};

TargetSetup make_target(const CampaignConfig& config) {
    TargetSetup setup;
    const double alpha = config.alpha;
    const double energy = config.energy;
    if (config.target == "attenuator") {
        FockBasis fock = build_fock(config.dim);
        setup.channel =
            std::make_unique<ChannelFamily>(ChannelFamily::kraus_attenuator(config.dim));
        setup.constraint = std::make_unique<metrics::EnergyConstraint>(
            fock.number_op, energy, alpha);
        const double coeff = bounds::attenuator_coefficient(alpha, energy);
        setup.bound_of_dt = [coeff, alpha](double dt) {
            return dt == 0.0 ? 0.0 : coeff * std::pow(dt, alpha);
        };
        setup.target_params = {{"bound_coefficient", coeff},
                               {"constraint_op", "number"},
                               {"route", "kraus"}};
    } else if (config.target == "closed") {
        Rng hrng = Rng::substream(config.seed, kHamiltonianStream);
        HermitianOperator h =
            sampling::random_hermitian(config.dim, config.hamiltonian_norm, hrng);
        setup.hamiltonian = std::make_unique<HermitianOperator>(h);
        setup.channel = std::make_unique<ChannelFamily>(ChannelFamily::unitary(h));
        setup.constraint =
            std::make_unique<metrics::EnergyConstraint>(abs_op(h), energy, alpha);
        setup.bound_of_dt = [alpha, energy](double dt) {
            return bounds::closed_vn_bound(alpha, energy, dt);
        };
        setup.check_pure_state_bound = true;
        setup.target_params = {{"constraint_op", "abs_hamiltonian"},
                               {"hamiltonian_norm", config.hamiltonian_norm},
                               {"route", "unitary"}};
    } else if (config.target.rfind("preset:", 0) == 0) {
        LindbladModel model =
            preset_from_string(config.target.substr(7), config.dim);
        const bool case_h = model.bounded_by == LindbladModel::BoundedBy::H_bounds_K;
        bounds::OpenSystemParams params;
        params.alpha = alpha;
        params.a = model.rel_bound_a;
        params.b = model.rel_bound_b;
        params.energy = energy;
        params.which = case_h ? bounds::OpenSystemParams::Case::omega_H
                              : bounds::OpenSystemParams::Case::omega_K;
        const double omega_value = bounds::omega(params);
        HermitianOperator constraint_op =
            case_h ? abs_op(model.hamiltonian) : abs_op(model.dissipator);
        setup.constraint = std::make_unique<metrics::EnergyConstraint>(
            std::move(constraint_op), energy, alpha);
        setup.channel =
            std::make_unique<ChannelFamily>(ChannelFamily::liouvillian(std::move(model)));
        setup.bound_of_dt = [omega_value, alpha](double dt) {
            return dt == 0.0 ? 0.0 : omega_value * std::pow(dt, alpha);
        };
        setup.target_params = {{"omega", omega_value},
                               {"rel_bound_a", params.a},
                               {"rel_bound_b", params.b},
                               {"case", case_h ? "omega_H" : "omega_K"},
                               {"constraint_op", case_h ? "abs_hamiltonian" : "abs_dissipator"},
                               {"route", "liouvillian"}};
    } else {
        throw DomainError("unknown verify target '" + config.target + "'");
    }
    return setup;
}

}  // namespace

CampaignOutcome run_campaign(const CampaignConfig& config) {
    if (config.samples < 1) throw DomainError("campaign needs at least one sample");
    if (config.t_grid.empty()) throw DomainError("campaign needs a time grid");
    for (double t : config.t_grid) {
        if (t < 0.0) throw DomainError("time grid entries must be nonnegative");
    }

    const TargetSetup setup = make_target(config);
    sampling::AdmissibleSampler sampler(*setup.constraint, config.ancilla_dim);

    const int n_times = static_cast<int>(config.t_grid.size());
    // Liouvillian evolution is cheapest along an increasing grid; remember the
    // sort so the report keeps the caller's order.
    std::vector<int> order(static_cast<std::size_t>(n_times));
    for (int i = 0; i < n_times; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return config.t_grid[static_cast<std::size_t>(a)] <
               config.t_grid[static_cast<std::size_t>(b)];
    });

    struct SampleResult {
        std::vector<Matrix> outputs;  // indexed like t_grid
        double purity = 0.0;
        double constraint_cost = 0.0;
    };
    std::vector<SampleResult> results(static_cast<std::size_t>(config.samples));

    parallel_for(config.samples, [&](long i) {
        SampleResult res;
        const DensityMatrix state =
            sampler.sample_indexed(config.seed, static_cast<std::uint64_t>(i));
        res.purity = state.purity();
        res.constraint_cost = setup.constraint->cost(state, config.ancilla_dim);
        res.outputs.resize(static_cast<std::size_t>(n_times));
        if (setup.channel->kind() == ChannelFamily::Kind::liouvillian &&
            config.ancilla_dim <= 1) {
            // March along the sorted grid through the semigroup property.
            DensityMatrix current = state;
            double t_now = 0.0;
            for (int k : order) {
                const double t = config.t_grid[static_cast<std::size_t>(k)];
                current = setup.channel->apply(current, t - t_now);
                t_now = t;
                res.outputs[static_cast<std::size_t>(k)] = current.matrix();
            }
        } else {
            for (int k = 0; k < n_times; ++k) {
                res.outputs[static_cast<std::size_t>(k)] =
                    setup.channel
                        ->apply_tensored(state, config.t_grid[static_cast<std::size_t>(k)],
                                         config.ancilla_dim)
                        .matrix();
            }
        }
        results[static_cast<std::size_t>(i)] = std::move(res);
    });

    nlohmann::json pair_reports = nlohmann::json::array();
    nlohmann::json pure_reports = nlohmann::json::array();
    bool all_pass = true;
    const double pure_window =
        setup.check_pure_state_bound ? bounds::pure_state_max_dt(config.alpha) : 0.0;

    for (int i = 0; i < n_times; ++i) {
        for (int j = i + 1; j < n_times; ++j) {
            const double t = config.t_grid[static_cast<std::size_t>(i)];
            const double s = config.t_grid[static_cast<std::size_t>(j)];
            const double dt = std::abs(s - t);
            const double bound = setup.bound_of_dt(dt);
            double observed = 0.0;
            int witness = 0;
            for (int m = 0; m < config.samples; ++m) {
                const double d = metrics::trace_norm(
                    results[static_cast<std::size_t>(m)].outputs[static_cast<std::size_t>(i)] -
                    results[static_cast<std::size_t>(m)].outputs[static_cast<std::size_t>(j)]);
                if (d > observed) {
                    observed = d;
                    witness = m;
                }
            }
            const double margin = bound - observed;
            const bool pass = margin >= -config.tolerance;
            all_pass = all_pass && pass;
            pair_reports.push_back({{"t", t},
                                    {"s", s},
                                    {"dt", dt},
                                    {"bound", bound},
                                    {"observed_max", observed},
                                    {"margin", margin},
                                    {"witness_sample", witness},
                                    {"vacuous", bound > 2.0},
                                    {"pass", pass}});

            if (setup.check_pure_state_bound && dt > 0.0 && dt <= pure_window) {
                double observed_pure = 0.0;
                int pure_witness = -1;
                for (int m = 0; m < config.samples; ++m) {
                    if (results[static_cast<std::size_t>(m)].purity < 1.0 - 1e-9) continue;
                    const double d = metrics::trace_norm(
                        results[static_cast<std::size_t>(m)]
                            .outputs[static_cast<std::size_t>(i)] -
                        results[static_cast<std::size_t>(m)]
                            .outputs[static_cast<std::size_t>(j)]);
                    if (d > observed_pure) {
                        observed_pure = d;
                        pure_witness = m;
                    }
                }
                if (pure_witness >= 0) {
                    const double pure_bound =
                        bounds::pure_state_bound(config.alpha, config.energy, dt);
                    const double pure_margin = pure_bound - observed_pure;
                    const bool pure_pass = pure_margin >= -config.tolerance;
                    all_pass = all_pass && pure_pass;
                    pure_reports.push_back({{"t", t},
                                            {"s", s},
                                            {"dt", dt},
                                            {"bound", pure_bound},
                                            {"observed_max", observed_pure},
                                            {"margin", pure_margin},
                                            {"witness_sample", pure_witness},
                                            {"pass", pure_pass}});
                }
            }
        }
    }

    nlohmann::json report;
    report["artifact"] = "qdslim";
    report["version"] = kVersion;
    report["command"] = "verify";
    report["target"] = config.target;
    report["seed"] = config.seed;
    report["params"] = {{"dim", config.dim},
                        {"alpha", config.alpha},
                        {"energy", config.energy},
                        {"samples", config.samples},
                        {"ancilla_dim", config.ancilla_dim},
                        {"t_grid", config.t_grid}};
    for (auto it = setup.target_params.begin(); it != setup.target_params.end(); ++it) {
        report["params"][it.key()] = it.value();
    }
    report["tolerances"] = {{"margin", config.tolerance},
                            {"trace_preservation", 1e-8},
                            {"output_psd", 1e-8},
                            {"support_mass", 1e-12}};
    report["truncation"] = {{"dim", config.dim},
                            {"sampler_pool", sampler.pool_size()},
                            {"ancilla_dim", config.ancilla_dim}};
    report["results"] = pair_reports;
    if (setup.check_pure_state_bound) {
        report["pure_state_results"] = pure_reports;
        report["pure_state_window"] = pure_window;
    }
    report["pass"] = all_pass;

    return CampaignOutcome{all_pass, std::move(report)};
}

}  // namespace qdslim::verify
