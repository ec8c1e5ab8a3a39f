#ifndef QDSLIM_VERIFY_HPP
#define QDSLIM_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace qdslim::verify {

// Sampling campaign: evolve seeded admissible states along the time grid and
// certify every pairwise output trace distance against the analytic bound.
// Targets: "attenuator" (Kraus route, bound 4 zeta_a (1-a)^{1-a} a^a E^a dt^a),
// "closed" (random Hamiltonian, bound 2 g_a E^a dt^a, plus the pure-state
// variant inside its window), "preset:NAME" (Liouvillian route, omega bound
// with the preset's relative-bound constants and minimized c).
struct CampaignConfig {
    std::string target = "attenuator";
    int dim = 30;
    double alpha = 0.5;
    double energy = 2.0;
    int samples = 200;
    std::uint64_t seed = 42;
    std::vector<double> t_grid = {0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
    int ancilla_dim = 1;     // closed campaigns default to 4
    double tolerance = 1e-9;
    double hamiltonian_norm = 2.0;  // scale of the random closed-system H
};

struct CampaignOutcome {
    bool pass;
    nlohmann::json report;  // deterministic for identical config+seed
};

CampaignOutcome run_campaign(const CampaignConfig& config);

}  // namespace qdslim::verify

#endif
