#include "qdslim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/SVD>

#include "qdslim/errors.hpp"
#include "qdslim/parallel.hpp"
#include "qdslim/sampling.hpp"

namespace qdslim::metrics {

double trace_norm(const Matrix& a) {
    if (a.rows() != a.cols()) throw ShapeError("trace norm needs a square matrix");
    if (is_hermitian(a, 1e-12)) {
        return eigh(hermitize(a)).values.cwiseAbs().sum();
    }
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues().sum();
}

double schatten_norm(const Matrix& a, double q) {
    if (a.rows() != a.cols()) throw ShapeError("Schatten norm needs a square matrix");
    if (q < 1.0) throw DomainError("Schatten norm needs q >= 1");
    RealVector sv;
    if (is_hermitian(a, 1e-12)) {
        sv = eigh(hermitize(a)).values.cwiseAbs();
    } else {
        Eigen::JacobiSVD<Matrix> svd(a);
        sv = svd.singularValues();
    }
    double acc = 0.0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) acc += std::pow(sv(i), q);
    return std::pow(acc, 1.0 / q);
}

namespace {

Matrix psd_sqrt(const DensityMatrix& rho) {
    const Eigensystem& sys = rho.eig();
    RealVector roots(sys.values.size());
    for (Eigen::Index i = 0; i < sys.values.size(); ++i) {
        roots(i) = std::sqrt(std::max(0.0, sys.values(i)));
    }
    return sys.vectors * roots.asDiagonal() * sys.vectors.adjoint();
}

}  // namespace

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) throw ShapeError("fidelity needs equal dimensions");
    const Matrix root = psd_sqrt(rho);
    const Matrix inner = hermitize(root * sigma.matrix() * root);
    const Eigensystem sys = eigh(inner);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < sys.values.size(); ++i) {
        acc += std::sqrt(std::max(0.0, sys.values(i)));
    }
    return std::min(acc, 1.0 + 1e-12);
}

BuresResult bures(const DensityMatrix& rho, const DensityMatrix& sigma) {
    const double f = std::clamp(fidelity(rho, sigma), 0.0, 1.0);
    return BuresResult{std::acos(f), std::sqrt(2.0 * (1.0 - f))};
}

HalfDivergences divergences_half(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) throw ShapeError("divergences need equal dimensions");
    const Matrix ra = psd_sqrt(rho);
    const Matrix rb = psd_sqrt(sigma);
    double bhatta = std::max(0.0, (ra * rb).trace().real());
    const double tsallis = 2.0 * (1.0 - bhatta);
    const double renyi = bhatta > 0.0 ? -2.0 * std::log(bhatta)
                                      : std::numeric_limits<double>::infinity();
    return HalfDivergences{tsallis, renyi, bhatta};
}

std::array<bounds::BoundReport, 3> check_fvg_ps(const DensityMatrix& rho,
                                                const DensityMatrix& sigma) {
    const double dist = trace_norm(rho.matrix() - sigma.matrix());
    const double f = fidelity(rho, sigma);
    const double tsallis = divergences_half(rho, sigma).tsallis_half;
    nlohmann::json params = {{"fidelity", f}, {"trace_distance", dist}};
    return {bounds::certify(dist, 2.0 * (1.0 - f), params, "fvg_lower", 1e-10),
            bounds::certify(2.0 * std::sqrt(std::max(0.0, 1.0 - f * f)), dist, params,
                            "fvg_upper", 1e-10),
            bounds::certify(dist, tsallis, params, "powers_stormer", 1e-10)};
}

EnergyConstraint::EnergyConstraint(HermitianOperator op, double energy_, double alpha_)
    : constraint_op(std::move(op)), energy(energy_), alpha(alpha_) {
    if (alpha <= 0.0 || alpha > 1.0) throw DomainError("constraint alpha must be in (0, 1]");
    if (constraint_op.min_eigenvalue() < -1e-10) {
        throw DomainError("constraint operator must be positive semi-definite");
    }
    if (energy <= constraint_op.min_eigenvalue()) {
        throw InfeasibleConstraintError(
            "constraint energy must exceed the bottom of the spectrum (" +
            format_double(constraint_op.min_eigenvalue()) + ")");
    }
}

double EnergyConstraint::budget() const { return std::pow(energy, 2.0 * alpha); }

double EnergyConstraint::cost(const DensityMatrix& rho, int ancilla_dim) const {
    Matrix system = rho.matrix();
    if (ancilla_dim > 1) {
        system = partial_trace_second(rho.matrix(), constraint_op.dim(), ancilla_dim);
    }
    if (system.rows() != constraint_op.dim()) {
        throw ShapeError("state dimension does not match the constraint operator");
    }
    const Eigensystem& sys = constraint_op.eig();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < sys.values.size(); ++i) {
        const double lambda = std::max(0.0, sys.values(i));
        const double occ = (sys.vectors.col(i).adjoint() * system * sys.vectors.col(i))(0).real();
        acc += std::pow(lambda, 2.0 * alpha) * occ;
    }
    return acc;
}

bool EnergyConstraint::admissible(const DensityMatrix& rho, int ancilla_dim) const {
    return cost(rho, ancilla_dim) <= budget() * (1.0 + 1e-12) + 1e-14;
}

EcdEstimate ecd_lower_bound(const ChannelFamily& channel_a, double t,
                            const ChannelFamily& channel_b, double s,
                            const EnergyConstraint& constraint, int samples,
                            int ancilla_dim, std::uint64_t seed,
                            const std::vector<DensityMatrix>* extra_states) {
    if (channel_a.dim() != channel_b.dim()) {
        throw ShapeError("channels must share the system dimension");
    }
    if (channel_a.dim() != constraint.constraint_op.dim()) {
        throw ShapeError("constraint operator dimension differs from the channels");
    }
    if (samples < 1) throw DomainError("need at least one sample");
    if (ancilla_dim < 1) throw DomainError("ancilla dimension must be >= 1");

    sampling::AdmissibleSampler sampler(constraint, ancilla_dim);
    const long extras = extra_states ? static_cast<long>(extra_states->size()) : 0;
    const long total = samples + extras;

    std::vector<double> distance(static_cast<std::size_t>(total), 0.0);
    std::vector<std::shared_ptr<const DensityMatrix>> states(
        static_cast<std::size_t>(total));
    parallel_for(total, [&](long i) {
        DensityMatrix state =
            i < samples ? sampler.sample_indexed(seed, static_cast<std::uint64_t>(i))
                        : (*extra_states)[static_cast<std::size_t>(i - samples)];
        if (!constraint.admissible(state, ancilla_dim)) {
            throw InfeasibleConstraintError("sampler produced an inadmissible state");
        }
        const DensityMatrix out_a = channel_a.apply_tensored(state, t, ancilla_dim);
        const DensityMatrix out_b = channel_b.apply_tensored(state, s, ancilla_dim);
        distance[static_cast<std::size_t>(i)] =
            trace_norm(out_a.matrix() - out_b.matrix());
        states[static_cast<std::size_t>(i)] =
            std::make_shared<const DensityMatrix>(std::move(state));
    });

    long best = 0;
    for (long i = 1; i < total; ++i) {
        if (distance[static_cast<std::size_t>(i)] > distance[static_cast<std::size_t>(best)]) {
            best = i;
        }
    }
    EcdEstimate est;
    est.lower_bound = std::min(distance[static_cast<std::size_t>(best)], 2.0);
    est.witness_state = states[static_cast<std::size_t>(best)];
    est.samples_used = static_cast<int>(total);
    est.ancilla_dim = ancilla_dim;
    return est;
}

}  // namespace qdslim::metrics
