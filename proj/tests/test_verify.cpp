#include <doctest.h>

#include "qdslim/errors.hpp"
#include "qdslim/verify.hpp"

using namespace qdslim;
using namespace qdslim::verify;

TEST_SUITE_BEGIN("verify");

TEST_CASE("attenuator_campaign_passes") {
    CampaignConfig config;
    config.target = "attenuator";
    config.dim = 16;
    config.alpha = 0.5;
    config.energy = 2.0;
    config.samples = 30;
    config.seed = 42;
    config.t_grid = {0.0, 0.3, 0.8};
    const CampaignOutcome out = run_campaign(config);
    CHECK(out.pass);
    CHECK(out.report["results"].size() == 3);
    for (const auto& r : out.report["results"]) {
        CHECK(r["margin"].get<double>() >= -1e-9);
    }
}

TEST_CASE("campaign_reports_are_byte_identical_for_equal_seeds") {
    CampaignConfig config;
    config.target = "attenuator";
    config.dim = 12;
    config.samples = 20;
    config.seed = 7;
    config.t_grid = {0.0, 0.5};
    const std::string a = run_campaign(config).report.dump();
    const std::string b = run_campaign(config).report.dump();
    CHECK(a == b);

    config.seed = 8;
    const std::string c = run_campaign(config).report.dump();
    CHECK(a != c);
}

TEST_CASE("closed_campaign_with_ancilla_passes") {
    CampaignConfig config;
    config.target = "closed";
    config.dim = 8;
    config.alpha = 0.5;
    config.energy = 1.0;
    config.samples = 25;
    config.seed = 3;
    config.ancilla_dim = 2;
    config.t_grid = {0.0, 0.05, 0.1};
    const CampaignOutcome out = run_campaign(config);
    CHECK(out.pass);
    CHECK(out.report.contains("pure_state_results"));
    CHECK(!out.report["pure_state_results"].empty());
}

TEST_CASE("preset_campaign_passes") {
    CampaignConfig config;
    config.target = "preset:damped_pumped:1,0.5,1";
    config.dim = 16;
    config.alpha = 0.5;
    config.energy = 2.0;
    config.samples = 15;
    config.seed = 11;
    config.t_grid = {0.0, 0.4};
    const CampaignOutcome out = run_campaign(config);
    CHECK(out.pass);
    CHECK(out.report["params"]["omega"].get<double>() > 0.0);
}

TEST_CASE("brownian_and_jaynes_cummings_campaigns_pass") {
    CampaignConfig config;
    config.target = "preset:brownian:0.6,0.2,0.3,0.4";
    config.dim = 12;
    config.alpha = 0.5;
    config.energy = 3.0;
    config.samples = 10;
    config.seed = 21;
    config.t_grid = {0.0, 0.3};
    CHECK(run_campaign(config).pass);

    config.target = "preset:jaynes_cummings:1,0.3,0.5,0.2,0.6";
    config.dim = 12;  // 6 Fock levels x 2
    config.energy = 2.0;
    CHECK(run_campaign(config).pass);
}

TEST_CASE("degenerate_time_grid_passes_trivially") {
    CampaignConfig config;
    config.target = "attenuator";
    config.dim = 10;
    config.samples = 10;
    config.seed = 1;
    config.t_grid = {0.0};
    const CampaignOutcome out = run_campaign(config);
    CHECK(out.pass);
    CHECK(out.report["results"].empty());
}

TEST_CASE("report_embeds_version_seed_and_tolerances") {
    CampaignConfig config;
    config.target = "attenuator";
    config.dim = 10;
    config.samples = 5;
    config.seed = 9;
    config.t_grid = {0.0, 0.2};
    const CampaignOutcome out = run_campaign(config);
    CHECK(out.report.contains("version"));
    CHECK(out.report["seed"].get<std::uint64_t>() == 9);
    CHECK(out.report.contains("tolerances"));
    CHECK(out.report.contains("truncation"));
}

TEST_CASE("unknown_target_rejected") {
    CampaignConfig config;
    config.target = "teleporter";
    CHECK_THROWS_AS(run_campaign(config), DomainError);
}

TEST_SUITE_END();
