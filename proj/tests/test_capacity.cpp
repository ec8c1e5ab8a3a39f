#include <cmath>

#include <doctest.h>

#include "qdslim/capacity.hpp"
#include "qdslim/entropy.hpp"
#include "qdslim/errors.hpp"
#include "qdslim/metrics.hpp"
#include "qdslim/rng.hpp"
#include "qdslim/sampling.hpp"

using namespace qdslim;
using namespace qdslim::capacity;

namespace {

DensityMatrix basis_state(int dim, int n) {
    Vector v = Vector::Zero(dim);
    v(n) = 1.0;
    return DensityMatrix::pure(v);
}

}  // namespace

TEST_SUITE_BEGIN("capacity");

TEST_CASE("ensemble_validation") {
    CHECK_THROWS_AS(DiscreteEnsemble({0.5, 0.4}, {basis_state(2, 0), basis_state(2, 1)}),
                    DomainError);
    CHECK_THROWS_AS(DiscreteEnsemble({1.0}, {}), ShapeError);
    CHECK_THROWS_AS(DiscreteEnsemble({0.5, 0.5}, {basis_state(2, 0), basis_state(3, 1)}),
                    ShapeError);
}

TEST_CASE("holevo_single_state_vanishes") {
    Rng rng(80);
    DiscreteEnsemble mu({1.0}, {sampling::random_density(4, rng)});
    CHECK(std::abs(holevo_quantity(mu)) < 1e-12);
}

TEST_CASE("holevo_orthogonal_pair") {
    DiscreteEnsemble mu({0.5, 0.5}, {basis_state(4, 0), basis_state(4, 1)});
    CHECK(holevo_quantity(mu) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("holevo_nonnegative_and_zero_iff_identical") {
    Rng rng(81);
    for (int i = 0; i < 30; ++i) {
        DiscreteEnsemble mu({0.3, 0.3, 0.4},
                            {sampling::random_density(4, rng),
                             sampling::random_density(4, rng),
                             sampling::random_density(4, rng)});
        CHECK(holevo_quantity(mu) >= -1e-10);
    }
    DensityMatrix rho = sampling::random_density(4, rng);
    DiscreteEnsemble same({0.6, 0.4}, {rho, rho});
    CHECK(std::abs(holevo_quantity(same)) < 1e-10);
}

TEST_CASE("pushforward_identity_channel") {
    Matrix zero = Matrix::Zero(6, 6);
    ChannelFamily id_channel = ChannelFamily::unitary(HermitianOperator(zero));
    DiscreteEnsemble mu({0.5, 0.5}, {basis_state(6, 0), basis_state(6, 2)});
    DiscreteEnsemble out = pushforward(mu, id_channel, 1.3);
    for (std::size_t i = 0; i < mu.states.size(); ++i) {
        CHECK((out.states[i].matrix() - mu.states[i].matrix()).norm() < 1e-12);
    }
}

TEST_CASE("pushforward_through_attenuator") {
    ChannelFamily att = ChannelFamily::kraus_attenuator(16);
    DiscreteEnsemble mu({0.5, 0.5}, {basis_state(16, 1), basis_state(16, 3)});
    DiscreteEnsemble out = pushforward(mu, att, 0.5);
    for (std::size_t i = 0; i < mu.states.size(); ++i) {
        DensityMatrix direct = attenuator_apply(mu.states[i], 0.5);
        CHECK((out.states[i].matrix() - direct.matrix()).norm() < 1e-12);
    }

    // long times collapse everything to the vacuum and kill the information
    DiscreteEnsemble late = pushforward(mu, att, 30.0);
    CHECK(holevo_quantity(late) < 1e-6);
}

TEST_CASE("holevo_data_processing_under_attenuator") {
    Rng rng(82);
    ChannelFamily att = ChannelFamily::kraus_attenuator(12);
    for (int i = 0; i < 10; ++i) {
        DiscreteEnsemble mu({0.25, 0.25, 0.5},
                            {sampling::random_low_rank_density(12, 2, rng),
                             sampling::random_low_rank_density(12, 2, rng),
                             sampling::random_low_rank_density(12, 2, rng)});
        DiscreteEnsemble out = pushforward(mu, att, 0.4);
        CHECK(holevo_quantity(out) <= holevo_quantity(mu) + 1e-9);
    }
}

TEST_CASE("capacity_continuity_asymptotic_example") {
    CapacityBoundParams p;
    p.energy = 10.0;
    p.epsilon = 0.1;
    p.t = 1.0;
    p.eta = 1.0;
    p.k_of_e = 1.0;
    const CapacityBoundResult r = capacity_continuity(p, CapacityBoundKind::c_one);
    const double expected = 0.1 * (2.0 + 5.0 / 3.0) * std::log(100.0) +
                            2.0 * entropy::g_aux(1.0 / 6.0) +
                            2.0 * entropy::binary_entropy(0.1);
    CHECK(r.bound == doctest::Approx(expected).epsilon(1e-12));
    CHECK(r.asymptotic);
}

TEST_CASE("capacity_full_doubles_log_and_h_terms") {
    CapacityBoundParams p;
    p.energy = 7.0;
    p.epsilon = 0.08;
    p.t = 2.0;
    p.eta = 0.5;
    p.k_of_e = 1.3;
    const CapacityBoundResult one = capacity_continuity(p, CapacityBoundKind::c_one);
    const CapacityBoundResult full = capacity_continuity(p, CapacityBoundKind::c_full);
    const double common = p.epsilon * (2.0 * p.t + entropy::r_eps(p.epsilon, p.t));
    const double extra = common * one.entropy_factor +
                         2.0 * entropy::binary_entropy(p.epsilon * p.t);
    CHECK(full.bound == doctest::Approx(one.bound + extra).epsilon(1e-12));
}

TEST_CASE("qmi_bound_is_linear_in_n") {
    CapacityBoundParams p;
    p.energy = 5.0;
    p.epsilon = 0.05;
    p.t = 1.5;
    p.eta = 1.0;
    p.n = 1;
    const double one = capacity_continuity(p, CapacityBoundKind::qmi).bound;
    p.n = 3;
    CHECK(capacity_continuity(p, CapacityBoundKind::qmi).bound ==
          doctest::Approx(3.0 * one).epsilon(1e-14));
}

TEST_CASE("eac_and_holevo_use_plain_energy_argument") {
    CapacityBoundParams p;
    p.energy = 5.0;
    p.epsilon = 0.05;
    p.t = 1.0;
    p.eta = 1.0;
    p.k_of_e = 2.0;
    CHECK(capacity_continuity(p, CapacityBoundKind::eac).factor_argument ==
          doctest::Approx(p.energy / (p.epsilon * p.t)));
    CHECK(capacity_continuity(p, CapacityBoundKind::holevo_chi).factor_argument ==
          doctest::Approx(p.energy / (p.epsilon * p.t)));
    CHECK(capacity_continuity(p, CapacityBoundKind::c_one).factor_argument ==
          doctest::Approx(p.k_of_e * p.energy / (p.epsilon * p.t)));
}

TEST_CASE("capacity_bound_vanishes_for_small_distance") {
    CapacityBoundParams p;
    p.energy = 10.0;
    p.epsilon = 1e-6;
    p.t = 1.0;
    p.eta = 1.0;
    CHECK(capacity_continuity(p, CapacityBoundKind::c_one).bound < 1e-3);
}

TEST_CASE("capacity_bound_exact_gibbs_mode") {
    CapacityBoundParams p;
    p.energy = 10.0;
    p.epsilon = 0.1;
    p.t = 1.0;
    p.eta = 1.0;
    p.spectrum = gibbs::Spectrum::harmonic_oscillator();
    const CapacityBoundResult r = capacity_continuity(p, CapacityBoundKind::c_one);
    CHECK_FALSE(r.asymptotic);
    CHECK(r.entropy_factor ==
          doctest::Approx(gibbs::gibbs_entropy(*p.spectrum, 100.0)).epsilon(1e-12));
}

TEST_CASE("capacity_bound_nondecreasing_in_epsilon") {
    CapacityBoundParams p;
    p.energy = 10.0;
    p.t = 0.5;
    p.eta = 1.0;
    double prev = 0.0;
    for (double eps : {0.01, 0.02, 0.05, 0.1, 0.2}) {
        p.epsilon = eps;
        const double bound = capacity_continuity(p, CapacityBoundKind::c_one).bound;
        CHECK(bound >= prev);
        CHECK(bound >= 0.0);
        prev = bound;
    }
}

TEST_CASE("capacity_best_t_not_worse_than_fixed_t") {
    CapacityBoundParams p;
    p.energy = 10.0;
    p.epsilon = 0.05;
    p.t = 1.0;
    p.eta = 1.0;
    const double fixed = capacity_continuity(p, CapacityBoundKind::c_one).bound;
    const double best = capacity_continuity_best_t(p, CapacityBoundKind::c_one, 64).bound;
    CHECK(best <= fixed + 1e-12);
}

TEST_CASE("capacity_t_domain") {
    CapacityBoundParams p;
    p.epsilon = 0.25;
    p.t = 3.0;  // above 1/(2 eps) = 2
    CHECK_THROWS_AS(capacity_continuity(p, CapacityBoundKind::c_one), DomainError);
}

TEST_CASE("energy_factor_probe_examples") {
    const int dim = 24;
    FockBasis fock = build_fock(dim);

    // identity channel: the sup sits on the constraint boundary
    ChannelFamily id_channel = ChannelFamily::unitary(HermitianOperator(Matrix::Zero(dim, dim)));
    const double k_id =
        energy_factor_probe(id_channel, 1.0, fock.number_op, fock.number_op, 2.0, 100, 5);
    CHECK(k_id <= 1.0 + 1e-9);
    CHECK(k_id >= 0.9);

    // attenuator only loses energy
    ChannelFamily att = ChannelFamily::kraus_attenuator(dim);
    const double k_att =
        energy_factor_probe(att, 0.5, fock.number_op, fock.number_op, 2.0, 100, 5);
    CHECK(k_att <= 1.0 + 1e-9);
    CHECK(k_att == doctest::Approx(std::exp(-0.5)).epsilon(0.1));

    // amplifier gains e^t when measured against M on both sides
    const Matrix m_mat = fock.ladder.lower * fock.ladder.raise;
    HermitianOperator big_m{hermitize(m_mat)};
    ChannelFamily amp = ChannelFamily::liouvillian(preset_amplifier(dim));
    const double t = 0.5;
    const double k_amp = energy_factor_probe(amp, t, big_m, big_m, 3.0, 40, 5);
    CHECK(k_amp <= std::exp(t) + 1e-6);
    CHECK(k_amp >= 0.9 * std::exp(t));
}

TEST_SUITE_END();
