// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Criteria mix exact-formula reproduction with randomized bound certification;
// every tolerance is fixed here, not calibrated at runtime.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qdslim/bounds.hpp"
#include "qdslim/channels.hpp"
#include "qdslim/entropy.hpp"
#include "qdslim/gibbs.hpp"
#include "qdslim/metrics.hpp"
#include "qdslim/operators.hpp"
#include "qdslim/rng.hpp"
#include "qdslim/sampling.hpp"
#include "qdslim/verify.hpp"

using namespace qdslim;

namespace {

double ho_beta_closed(double e) { return -std::log((2.0 * e - 1.0) / (2.0 * e + 1.0)); }

bool criterion_prefactors(std::string& detail) {
    const bounds::BoundConstants half = bounds::constants(0.5);
    const bounds::BoundConstants one = bounds::constants(1.0);
    const double err_zeta = std::abs(half.zeta - 2.0 * std::sqrt(2.0));
    const double err_g = std::abs(half.g - 2.0);
    detail = "zeta(1/2) err " + format_double(err_zeta) + ", g(1/2) err " +
             format_double(err_g);
    return err_zeta <= 1e-12 && err_g <= 1e-12 && one.zeta == 1.0 && one.g == 1.0;
}

bool criterion_inverse_temperature(std::string& detail) {
    const gibbs::Spectrum ho = gibbs::Spectrum::harmonic_oscillator();
    double worst = 0.0;
    for (double e : {1.0, 10.0, 100.0, 10000.0}) {
        const double beta = gibbs::solve_beta(ho, e).beta;
        worst = std::max(worst, std::abs(beta - ho_beta_closed(e)));
    }
    detail = "max |beta - closed form| = " + format_double(worst);
    return worst <= 1e-10;
}

bool criterion_entropy_asymptotics(std::string& detail) {
    const double s = gibbs::gibbs_entropy(gibbs::Spectrum::harmonic_oscillator(), 1e4);
    const double err = std::abs(s - (std::log(1e4) + 1.0));
    detail = "|S - (log E + 1)| = " + format_double(err);
    return err <= 1e-6;
}

bool criterion_eta_extraction(std::string& detail) {
    const auto ho = gibbs::estimate_eta(gibbs::Spectrum::harmonic_oscillator(),
                                        gibbs::default_cutoff_grid(4000.0));
    const auto box =
        gibbs::estimate_eta(gibbs::Spectrum::box(), gibbs::default_cutoff_grid(1e6));
    const auto weyl3 =
        gibbs::estimate_eta(gibbs::Spectrum::weyl(3, 1.0), gibbs::default_cutoff_grid(2e4));
    if (!ho.eta || !box.eta || !weyl3.eta) {
        detail = "eta extrapolation rejected a limit";
        return false;
    }
    detail = "eta(ho) = " + format_double(*ho.eta) + ", eta(box) = " +
             format_double(*box.eta) + ", eta(weyl3) = " + format_double(*weyl3.eta);
    return std::abs(*ho.eta - 1.0) <= 0.02 && std::abs(*box.eta - 0.5) <= 0.025 &&
           std::abs(*weyl3.eta - 1.5) <= 0.075;
}

bool criterion_beta_e_limit(std::string& detail) {
    const gibbs::Spectrum box = gibbs::Spectrum::box();
    std::vector<double> products;
    for (double e : {1e2, 1e3, 1e4, 1e5}) {
        products.push_back(gibbs::solve_beta(box, e).beta * e);
    }
    bool monotone = true;
    for (std::size_t i = 1; i < products.size(); ++i) {
        if (std::abs(products[i] - 0.5) > std::abs(products[i - 1] - 0.5)) monotone = false;
    }
    detail = "beta*E at 1e5 = " + format_double(products.back()) +
             (monotone ? ", approach monotone" : ", approach NOT monotone");
    return products.back() >= 0.45 && products.back() <= 0.55 && monotone;
}

bool criterion_attenuator_certification(std::string& detail) {
    double worst_margin = 1e9;
    for (double alpha : {0.25, 0.5, 1.0}) {
        for (double energy : {1.0, 4.0}) {
            verify::CampaignConfig config;
            config.target = "attenuator";
            config.dim = 40;
            config.alpha = alpha;
            config.energy = energy;
            config.samples = 200;
            config.seed = 42;
            config.t_grid = {0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
            const verify::CampaignOutcome out = verify::run_campaign(config);
            if (!out.pass) {
                detail = "campaign failed at alpha " + format_double(alpha) + ", E " +
                         format_double(energy);
                return false;
            }
            for (const auto& r : out.report["results"]) {
                worst_margin = std::min(worst_margin, r["margin"].get<double>());
            }
        }
    }
    detail = "min margin over 6 campaigns = " + format_double(worst_margin);
    return worst_margin >= -1e-9;
}

bool criterion_closed_certification(std::string& detail) {
    double worst_margin = 1e9;
    int pure_checks = 0;
    for (double alpha : {0.5, 1.0}) {
        for (std::uint64_t seed : {101ULL, 102ULL, 103ULL}) {
            verify::CampaignConfig config;
            config.target = "closed";
            config.dim = 12;
            config.alpha = alpha;
            config.energy = 1.0;
            config.samples = 100;
            config.seed = seed;
            config.ancilla_dim = 4;
            config.t_grid = alpha == 0.5 ? std::vector<double>{0.0, 0.04, 0.08, 0.12}
                                         : std::vector<double>{0.0, 0.2, 0.4, 0.6};
            const verify::CampaignOutcome out = verify::run_campaign(config);
            if (!out.pass) {
                detail = "campaign failed at alpha " + format_double(alpha) + ", seed " +
                         std::to_string(seed);
                return false;
            }
            for (const auto& r : out.report["results"]) {
                worst_margin = std::min(worst_margin, r["margin"].get<double>());
            }
            for (const auto& r : out.report["pure_state_results"]) {
                worst_margin = std::min(worst_margin, r["margin"].get<double>());
                ++pure_checks;
            }
        }
    }
    detail = "min margin = " + format_double(worst_margin) + " over 6 campaigns, " +
             std::to_string(pure_checks) + " pure-state checks";
    return worst_margin >= -1e-9 && pure_checks > 0;
}

bool criterion_cross_oracle(std::string& detail) {
    const int dim = 30;
    LindbladModel model = preset_attenuator(dim);
    Rng rng(2024);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const DensityMatrix rho = sampling::random_density(dim, rng);
        for (double t : {0.1, 0.5, 1.0}) {
            const DensityMatrix kraus = attenuator_apply(rho, t);
            const DensityMatrix liouville = evolve_lindblad(rho, model, t);
            worst = std::max(worst,
                             metrics::trace_norm(kraus.matrix() - liouville.matrix()));
        }
    }
    detail = "max trace distance Kraus vs Liouvillian = " + format_double(worst);
    return worst <= 1e-6;
}

bool criterion_energy_laws(std::string& detail) {
    const int dim = 60;
    FockBasis fock = build_fock(dim);
    const Matrix m_mat = fock.ladder.lower * fock.ladder.raise;
    HermitianOperator big_m(hermitize(m_mat));
    LindbladModel amp = preset_amplifier(dim);
    Rng rng(31415);
    double worst = 0.0;
    for (int trial = 0; trial < 3; ++trial) {
        // Low-lying mixtures, <N> <= 3 <= 5. The amplified distribution has
        // combinatorially enhanced upper tails, so the initial support must
        // sit well below the truncation for the laws to hold at 1e-6.
        Matrix rho = Matrix::Zero(dim, dim);
        const std::vector<double> w = rng.dirichlet(4);
        for (int n = 0; n <= 3; ++n) {
            rho(n, n) = w[static_cast<std::size_t>(n)];
        }
        DensityMatrix state(rho);
        const double n0 = expected_energy(state, fock.number_op, 1.0);
        const double m0 = expected_energy(state, big_m, 1.0);

        DensityMatrix att_state = state;
        DensityMatrix amp_state = state;
        double t_now = 0.0;
        for (double t : {0.25, 0.5, 0.75, 1.0}) {
            att_state = attenuator_apply(att_state, t - t_now);
            amp_state = evolve_lindblad(amp_state, amp, t - t_now);
            t_now = t;
            const double nt = expected_energy(att_state, fock.number_op, 1.0);
            const double mt = expected_energy(amp_state, big_m, 1.0);
            worst = std::max(worst, std::abs(nt - n0 * std::exp(-t)));
            worst = std::max(worst, std::abs(mt - m0 * std::exp(t)));
        }
    }
    detail = "max |deviation from exponential law| = " + format_double(worst);
    return worst <= 1e-6;
}

bool criterion_metric_sandwiches(std::string& detail) {
    Rng rng(555);
    double min_slack = 1e9;
    for (int i = 0; i < 500; ++i) {
        const DensityMatrix a = sampling::random_density(8, rng);
        const DensityMatrix b = i % 5 == 0 ? sampling::random_low_rank_density(8, 3, rng)
                                           : sampling::random_density(8, rng);
        for (const auto& report : metrics::check_fvg_ps(a, b)) {
            min_slack = std::min(min_slack, *report.margin);
        }
    }
    detail = "min slack over 1500 inequalities = " + format_double(min_slack);
    return min_slack >= -1e-10;
}

bool criterion_speed_limit(std::string& detail) {
    const int dim = 16;
    FockBasis fock = build_fock(dim);
    Vector v = Vector::Zero(dim);
    v(0) = 1.0 / std::sqrt(2.0);
    v(1) = 1.0 / std::sqrt(2.0);
    const DensityMatrix rho0 = DensityMatrix::pure(v);
    // constraint value consistent with the state: E^{2 alpha} = tr(|H| rho)
    const double energy = expected_energy(rho0, fock.osc_hamiltonian, 1.0);

    const auto angle_at = [&](double t) {
        return metrics::bures(rho0, evolve_von_neumann(rho0, fock.osc_hamiltonian, t)).angle;
    };

    double min_margin = 1e9;
    for (double theta : {M_PI / 8, M_PI / 4, M_PI / 2}) {
        const double t_min =
            bounds::speed_limit(bounds::SpeedLimitCase::von_neumann, 0.5, energy, theta);
        // theta = pi/2 is attained only at an isolated instant where the
        // fidelity crosses zero linearly, so the first-passage time is
        // resolved by bisection at a 1e-6 relative angle tolerance (the angle
        // is monotone along this trajectory).
        const double target = theta * (1.0 - 1e-6);
        double lo = 0.0, hi = M_PI;
        if (angle_at(hi) < target) {
            detail = "angle never reached";
            return false;
        }
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            (angle_at(mid) < target ? lo : hi) = mid;
        }
        min_margin = std::min(min_margin, hi - t_min);
    }
    detail = "min (first-passage - bound) = " + format_double(min_margin) +
             " at E = " + format_double(energy);
    return min_margin >= 0.0;
}

bool criterion_max_entropy(std::string& detail) {
    const int dim = 60;
    FockBasis fock = build_fock(dim);
    const gibbs::Spectrum ho = gibbs::Spectrum::harmonic_oscillator();
    Rng rng(808);
    double max_excess = -1e9;
    for (double e : {2.0, 5.0}) {
        const double gibbs_entropy = gibbs::gibbs_entropy(ho, e);
        for (int i = 0; i < 200; ++i) {
            const DensityMatrix rho =
                sampling::random_state_with_energy(fock.osc_hamiltonian, e, rng);
            max_excess = std::max(max_excess, entropy::von_neumann(rho) - gibbs_entropy);
        }
    }
    detail = "max S(rho) - S(gamma) = " + format_double(max_excess);
    return max_excess <= 1e-8;
}

bool criterion_tsallis_lipschitz(std::string& detail) {
    Rng rng(999);
    double min_slack = 1e9;
    for (int i = 0; i < 500; ++i) {
        const DensityMatrix a = sampling::random_density(6, rng);
        const DensityMatrix b = sampling::random_density(6, rng);
        for (double q : {2.0, 3.0}) {
            const auto report = entropy::check_tsallis_lipschitz(a, b, q);
            if (!report.passed()) {
                detail = "violation at pair " + std::to_string(i);
                return false;
            }
            min_slack = std::min(min_slack, *report.margin);
        }
    }
    detail = "min slack = " + format_double(min_slack);
    return min_slack >= -1e-10;
}

bool criterion_entropy_pipeline(std::string& detail) {
    // Attenuator entropy-continuity scenario: energy observable N, energy
    // budget E, trace-distance budget eps; times inside the window where the
    // ECD bound keeps the channel outputs eps-close.
    const int dim = 50;
    const double energy = 4.0;
    const double eps = 0.05;
    FockBasis fock = build_fock(dim);

    const double g_half = bounds::constants(0.5).g;
    const double t0 = std::pow(2.0 * eps / g_half, 2.0) / energy;
    const double s = 0.5;

    const DensityMatrix rho0 = DensityMatrix::pure(coherent_state(std::sqrt(3.0), dim));
    const DensityMatrix rho_s = attenuator_apply(rho0, s);
    const DensityMatrix rho_ts = attenuator_apply(rho_s, t0);

    // premises: half trace distance below eps, energies below E
    const double half_dist =
        0.5 * metrics::trace_norm(rho_ts.matrix() - rho_s.matrix());
    const double e_s = expected_energy(rho_s, fock.number_op, 1.0);
    const double e_ts = expected_energy(rho_ts, fock.number_op, 1.0);
    if (half_dist > eps || e_s > energy || e_ts > energy) {
        detail = "scenario premises violated (half distance " + format_double(half_dist) +
                 ")";
        return false;
    }

    entropy::ContinuityParams params;
    params.energy = energy;
    params.epsilon = eps;
    params.eta = 1.0;
    params.spectrum = gibbs::Spectrum::linear(0.0);  // spectrum of N
    const entropy::ContinuityBound bound =
        entropy::entropy_continuity_bound(params, entropy::ContinuityForm::vn_simple);

    const double observed =
        std::abs(entropy::von_neumann(rho_ts) - entropy::von_neumann(rho_s));
    const double margin = bound.bound - observed;
    detail = "observed dS = " + format_double(observed) + ", bound = " +
             format_double(bound.bound) + ", margin = " + format_double(margin);
    return margin >= 0.0;
}

bool criterion_determinism(std::string& detail) {
    std::string first, second;
    for (int run = 0; run < 2; ++run) {
        std::string blob;
        for (double alpha : {0.25, 0.5, 1.0}) {
            for (double energy : {1.0, 4.0}) {
                verify::CampaignConfig config;
                config.target = "attenuator";
                config.dim = 40;
                config.alpha = alpha;
                config.energy = energy;
                config.samples = 200;
                config.seed = 42;
                config.t_grid = {0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
                blob += verify::run_campaign(config).report.dump();
                blob += '\n';
            }
        }
        (run == 0 ? first : second) = std::move(blob);
    }
    detail = "report bytes " + std::to_string(first.size());
    return !first.empty() && first == second;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<bool(std::string&)> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "prefactor exactness", criterion_prefactors},
        {2, "oscillator inverse temperature", criterion_inverse_temperature},
        {3, "oscillator Gibbs entropy asymptotics", criterion_entropy_asymptotics},
        {4, "eta extraction (ho, box, weyl3)", criterion_eta_extraction},
        {5, "box beta*E limit", criterion_beta_e_limit},
        {6, "attenuator bound certification", criterion_attenuator_certification},
        {7, "closed-system bound certification", criterion_closed_certification},
        {8, "Kraus vs Liouvillian cross-oracle", criterion_cross_oracle},
        {9, "attenuator/amplifier energy laws", criterion_energy_laws},
        {10, "Fuchs-van de Graaf / Powers-Stormer sandwiches", criterion_metric_sandwiches},
        {11, "speed-limit consistency", criterion_speed_limit},
        {12, "Gibbs max-entropy property", criterion_max_entropy},
        {13, "Tsallis Lipschitz", criterion_tsallis_lipschitz},
        {14, "entropy-continuity pipeline", criterion_entropy_pipeline},
        {15, "campaign determinism", criterion_determinism},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = criterion.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] %2d. %s (%.1fs) %s\n", ok ? "PASS" : "FAIL", criterion.id,
                    criterion.name, secs, detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    if (failures > 0) {
        std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    } else {
        std::printf("all %zu criteria passed\n", criteria.size());
    }
    return failures == 0 ? 0 : 1;
}
