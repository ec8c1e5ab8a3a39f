#include <cmath>

#include <doctest.h>

#include "qdslim/bounds.hpp"
#include "qdslim/channels.hpp"
#include "qdslim/entropy.hpp"
#include "qdslim/errors.hpp"
#include "qdslim/metrics.hpp"
#include "qdslim/rng.hpp"
#include "qdslim/sampling.hpp"

using namespace qdslim;
using namespace qdslim::entropy;

namespace {

DensityMatrix maximally_entangled_two_qubits() {
    Vector v = Vector::Zero(4);
    v(0) = 1.0 / std::sqrt(2.0);  // |00>
    v(3) = 1.0 / std::sqrt(2.0);  // |11>
    return DensityMatrix::pure(v);
}

}  // namespace

TEST_SUITE_BEGIN("entropy");

TEST_CASE("von_neumann_pure_and_maximally_mixed") {
    Rng rng(60);
    const Vector v = sampling::random_unit_vector(6, rng);
    CHECK(von_neumann(DensityMatrix::pure(v)) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(von_neumann(DensityMatrix(0.5 * Matrix::Identity(2, 2))) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("conditional_entropy_of_maximal_entanglement") {
    CHECK(conditional(maximally_entangled_two_qubits(), 2, 2) ==
          doctest::Approx(-std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("conditional_entropy_of_product_states") {
    Rng rng(61);
    for (int i = 0; i < 10; ++i) {
        DensityMatrix a = sampling::random_density(3, rng);
        DensityMatrix b = sampling::random_density(4, rng);
        DensityMatrix joint(kron(a.matrix(), b.matrix()));
        CHECK(std::abs(conditional(joint, 3, 4) - von_neumann(a)) < 1e-9);
    }
}

TEST_CASE("relative_entropy_properties") {
    Rng rng(62);
    for (int i = 0; i < 20; ++i) {
        DensityMatrix a = sampling::random_density(5, rng);
        DensityMatrix b = sampling::random_density(5, rng);
        CHECK(relative(a, b) >= -1e-9);
        CHECK(relative(a, a) == doctest::Approx(0.0).epsilon(1e-9));
    }
}

TEST_CASE("relative_entropy_support_violation_is_infinite") {
    Vector v0 = Vector::Zero(3), v1 = Vector::Zero(3);
    v0(0) = 1.0;
    v1(1) = 1.0;
    CHECK(std::isinf(relative(DensityMatrix::pure(v1), DensityMatrix::pure(v0))));
}

TEST_CASE("relative_entropy_commuting_matches_classical_kl") {
    Rng rng(63);
    const int dim = 5;
    std::vector<double> p = rng.dirichlet(dim);
    std::vector<double> q = rng.dirichlet(dim);
    Matrix pm = Matrix::Zero(dim, dim), qm = Matrix::Zero(dim, dim);
    double kl = 0.0;
    for (int i = 0; i < dim; ++i) {
        pm(i, i) = p[static_cast<std::size_t>(i)];
        qm(i, i) = q[static_cast<std::size_t>(i)];
        kl += p[static_cast<std::size_t>(i)] *
              std::log(p[static_cast<std::size_t>(i)] / q[static_cast<std::size_t>(i)]);
    }
    CHECK(relative(DensityMatrix(pm), DensityMatrix(qm)) ==
          doctest::Approx(kl).epsilon(1e-10));
}

TEST_CASE("mutual_information_examples") {
    Rng rng(64);
    DensityMatrix a = sampling::random_density(3, rng);
    DensityMatrix b = sampling::random_density(3, rng);
    DensityMatrix product(kron(a.matrix(), b.matrix()));
    CHECK(std::abs(mutual_information(product, 3, 3)) < 1e-9);
    CHECK(mutual_information(maximally_entangled_two_qubits(), 2, 2) ==
          doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-10));
    // agrees with the relative-entropy definition on full-rank states
    DensityMatrix joint(0.7 * product.matrix() +
                        0.3 * kron(sampling::random_density(3, rng).matrix(),
                                   sampling::random_density(3, rng).matrix()));
    const Matrix ja = partial_trace_second(joint.matrix(), 3, 3);
    const Matrix jb = partial_trace_first(joint.matrix(), 3, 3);
    DensityMatrix marginal(kron(ja, jb), 1e-8, 1e-8);
    CHECK(mutual_information(joint, 3, 3) ==
          doctest::Approx(relative(joint, marginal)).epsilon(1e-8));
}

TEST_CASE("tsallis_renyi_examples") {
    Rng rng(65);
    const Vector v = sampling::random_unit_vector(4, rng);
    CHECK(tsallis_q(DensityMatrix::pure(v), 2.0) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(renyi_q(DensityMatrix::pure(v), 2.0) == doctest::Approx(0.0).epsilon(1e-10));
    DensityMatrix mixed(0.5 * Matrix::Identity(2, 2));
    CHECK(tsallis_q(mixed, 2.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(renyi_q(mixed, 2.0) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK_THROWS_AS(tsallis_q(mixed, 1.0), DomainError);
    CHECK_THROWS_AS(renyi_q(mixed, 0.5), DomainError);
}

TEST_CASE("tsallis_q3_brute_force") {
    Rng rng(66);
    DensityMatrix rho = sampling::random_density(6, rng);
    long double s3 = 0.0L;
    const RealVector eigs = rho.eig().values;
    for (Eigen::Index i = 0; i < eigs.size(); ++i) {
        s3 += std::pow(static_cast<long double>(std::max(0.0, eigs(i))), 3.0L);
    }
    CHECK(tsallis_q(rho, 3.0) ==
          doctest::Approx((1.0 - static_cast<double>(s3)) / 2.0).epsilon(1e-12));
}

TEST_CASE("tsallis_lipschitz_identical_and_random") {
    Rng rng(67);
    DensityMatrix rho = sampling::random_density(2, rng);
    const bounds::BoundReport same = check_tsallis_lipschitz(rho, rho, 2.0);
    CHECK(same.passed());
    CHECK(*same.observed_value == doctest::Approx(0.0));

    for (int i = 0; i < 500; ++i) {
        DensityMatrix a = sampling::random_density(2, rng);
        DensityMatrix b = sampling::random_density(2, rng);
        CHECK(check_tsallis_lipschitz(a, b, 2.0).passed());
    }
}

TEST_CASE("renyi_lipschitz_applicable_and_not") {
    Rng rng(68);
    DensityMatrix a = sampling::random_density(3, rng);
    DensityMatrix b(0.95 * a.matrix() + 0.05 * Matrix::Identity(3, 3) / 3.0);
    const bounds::BoundReport ok = check_renyi_lipschitz(a, b, 2.0, 0.4);
    CHECK(ok.status != bounds::ReportStatus::inapplicable);
    CHECK(ok.passed());
    // delta floor above ||rho||_q: hypotheses unmet
    const bounds::BoundReport na = check_renyi_lipschitz(a, b, 2.0, 1.5);
    CHECK(na.status == bounds::ReportStatus::inapplicable);
}

TEST_CASE("tsallis_semigroup_corollary_on_attenuator") {
    // |T_q(L_t rho) - T_q(rho)| <= q/(q-1) omega t^alpha with the attenuator
    // coefficient as omega, on energy-constrained states.
    const int dim = 30;
    FockBasis fock = build_fock(dim);
    metrics::EnergyConstraint constraint(fock.number_op, 2.0, 0.5);
    sampling::AdmissibleSampler sampler(constraint, 1);
    const double omega = bounds::attenuator_coefficient(0.5, 2.0);
    const double q = 2.0;
    for (int i = 0; i < 20; ++i) {
        const DensityMatrix rho = sampler.sample_indexed(77, static_cast<std::uint64_t>(i));
        for (double t : {0.05, 0.3, 1.0}) {
            const DensityMatrix out = attenuator_apply(rho, t);
            const double delta = std::abs(tsallis_q(out, q) - tsallis_q(rho, q));
            CHECK(delta <= q / (q - 1.0) * omega * std::sqrt(t) + 1e-10);
        }
    }
}

TEST_CASE("auxiliary_functions") {
    CHECK(binary_entropy(0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(g_aux(0.0) == 0.0);
    CHECK(r_eps(0.1, 1.0) == doctest::Approx(5.0 / 3.0).epsilon(1e-14));
    CHECK_THROWS_AS(binary_entropy(1.2), DomainError);
    CHECK_THROWS_AS(g_aux(-0.1), DomainError);
    CHECK_THROWS_AS(r_eps(0.1, 6.0), DomainError);
}

TEST_CASE("continuity_bound_exact_gibbs_example") {
    // vn_simple on the oscillator at E = 10, eps = 0.1: the factor is the
    // Gibbs entropy at E/eps = 100, evaluated through the closed form.
    ContinuityParams params;
    params.energy = 10.0;
    params.epsilon = 0.1;
    params.eta = 1.0;
    params.spectrum = gibbs::Spectrum::harmonic_oscillator();
    const ContinuityBound bound = entropy_continuity_bound(params, ContinuityForm::vn_simple);
    const double s100 = std::log(std::sqrt(4.0 * 100.0 * 100.0 - 1.0) / 2.0) -
                        std::log(199.0 / 201.0) * 100.0;
    CHECK(bound.bound ==
          doctest::Approx(0.2 * s100 + binary_entropy(0.1)).epsilon(1e-9));
    CHECK_FALSE(bound.asymptotic);
    CHECK(bound.gibbs_factor.has_value());
    CHECK(bound.bound == doctest::Approx(1.4461).epsilon(1e-3));
}

TEST_CASE("continuity_bound_asymptotic_example") {
    ContinuityParams params;
    params.energy = 10.0;
    params.epsilon = 0.1;
    params.eta = 1.0;
    const ContinuityBound bound = entropy_continuity_bound(params, ContinuityForm::vn_simple);
    CHECK(bound.asymptotic);
    CHECK(bound.bound ==
          doctest::Approx(0.2 * std::log(100.0) + binary_entropy(0.1)).epsilon(1e-12));
    CHECK(bound.bound == doctest::Approx(1.2461).epsilon(1e-3));
}

TEST_CASE("continuity_bound_vanishes_with_epsilon") {
    // asymptotic mode reaches arbitrarily small eps
    ContinuityParams params;
    params.energy = 10.0;
    params.epsilon = 1e-8;
    params.eta = 1.0;
    const ContinuityBound asym = entropy_continuity_bound(params, ContinuityForm::vn_simple);
    CHECK(asym.bound < 1e-5);
    CHECK(asym.bound > 0.0);
    // exact-Gibbs mode: the spectral sum at E/eps must stay within the term
    // budget, so exercise a moderate eps
    params.epsilon = 1e-4;
    params.spectrum = gibbs::Spectrum::harmonic_oscillator();
    const ContinuityBound exact = entropy_continuity_bound(params, ContinuityForm::vn_simple);
    CHECK(exact.bound < 1e-2);
    CHECK(exact.bound > 0.0);
}

TEST_CASE("continuity_bound_two_eps_and_conditional_forms") {
    ContinuityParams params;
    params.energy = 10.0;
    params.epsilon = 0.05;
    params.epsilon_prime = 0.2;
    params.eta = 1.0;
    const double delta = (0.2 - 0.05) / 1.2;
    CHECK(params.delta() == doctest::Approx(delta).epsilon(1e-14));
    const ContinuityBound two =
        entropy_continuity_bound(params, ContinuityForm::vn_two_eps);
    CHECK(two.bound == doctest::Approx((0.2 + 2.0 * delta) * std::log(10.0 / delta) +
                                       binary_entropy(0.2) + binary_entropy(delta))
                           .epsilon(1e-12));
    const ContinuityBound cond =
        entropy_continuity_bound(params, ContinuityForm::conditional);
    CHECK(cond.bound ==
          doctest::Approx(2.0 * (0.2 + 4.0 * delta) * std::log(10.0 / delta) +
                          1.2 * binary_entropy(0.2 / 1.2) + 2.0 * binary_entropy(delta))
              .epsilon(1e-12));
    // invalid ordering
    params.epsilon_prime = 0.01;
    CHECK_THROWS_AS(entropy_continuity_bound(params, ContinuityForm::vn_two_eps),
                    DomainError);
}

TEST_CASE("entropy_converges_along_trace_norm_sequences") {
    // Surrogate for lower semicontinuity under bounded energy: a sequence
    // converging in trace norm has converging entropies; the rate is recorded.
    FockBasis fock = build_fock(40);
    Rng rng(70);
    DensityMatrix rho = sampling::random_low_rank_density(10, 3, rng);
    Matrix pad = Matrix::Zero(40, 40);
    pad.topLeftCorner(10, 10) = rho.matrix();
    DensityMatrix target(pad);
    DensityMatrix other = sampling::random_density(40, rng);
    const double s_target = von_neumann(target);
    double first = 0.0, last = 0.0;
    for (int n = 1; n <= 4096; n *= 4) {
        const double p = 1.0 / static_cast<double>(n);
        DensityMatrix mixed((1.0 - p) * target.matrix() + p * other.matrix());
        const double gap = std::abs(von_neumann(mixed) - s_target);
        if (n == 1) first = gap;
        last = gap;
    }
    CHECK(last < 0.01);
    CHECK(last < first / 20.0);
}

TEST_SUITE_END();
