#include "qdslim/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "qdslim/errors.hpp"

namespace qdslim::sampling {

Vector random_unit_vector(int dim, Rng& rng) {
    Vector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = rng.complex_normal();
    v /= v.norm();
    return v;
}

DensityMatrix random_density(int dim, Rng& rng) {
    Matrix g(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) g(i, j) = rng.complex_normal();
    }
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix(hermitize(rho));
}

DensityMatrix random_low_rank_density(int dim, int rank_cap, Rng& rng) {
    const int rank = 1 + rng.uniform_int(std::max(1, rank_cap));
    const std::vector<double> w = rng.dirichlet(rank);
    Matrix rho = Matrix::Zero(dim, dim);
    for (int k = 0; k < rank; ++k) {
        const Vector v = random_unit_vector(dim, rng);
        rho += w[static_cast<std::size_t>(k)] * (v * v.adjoint());
    }
    return DensityMatrix(hermitize(rho));
}

HermitianOperator random_hermitian(int dim, double norm, Rng& rng) {
    Matrix g(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) g(i, j) = rng.complex_normal();
    }
    Matrix h = hermitize(g);
    const double top = eigh(h).values.cwiseAbs().maxCoeff();
    if (top > 0.0) h *= norm / top;
    return HermitianOperator(std::move(h));
}

namespace {

Matrix embed_with_ancilla(const Matrix& system, const Vector& ancilla) {
    return kron(system, Matrix(ancilla * ancilla.adjoint()));
}

}  // namespace

AdmissibleSampler::AdmissibleSampler(const metrics::EnergyConstraint& constraint,
                                     int ancilla_dim)
    : constraint_(&constraint), ancilla_(std::max(1, ancilla_dim)) {
    const int dim = constraint.constraint_op.dim();
    const int want = 2 * static_cast<int>(std::ceil(std::max(1.0, constraint.energy)));
    pool_ = std::clamp(want, 2, dim);
    coherent_ok_ = ancilla_ >= 1 && dim >= 4 && is_number_operator(constraint.constraint_op);
}

DensityMatrix AdmissibleSampler::mixture_sample(Rng& rng) const {
    const auto& sys = constraint_->constraint_op.eig();
    const double two_alpha = 2.0 * constraint_->alpha;
    const double budget = constraint_->budget();
    std::vector<double> w = rng.dirichlet(pool_);
    std::vector<double> cost(static_cast<std::size_t>(pool_));
    for (int i = 0; i < pool_; ++i) {
        cost[static_cast<std::size_t>(i)] =
            std::pow(std::max(0.0, sys.values(i)), two_alpha);
    }
    double mu = 0.0;
    for (int i = 0; i < pool_; ++i) mu += w[static_cast<std::size_t>(i)] * cost[static_cast<std::size_t>(i)];

    const double target = 0.999 * budget;
    if (mu > target) {
        // Blend toward the ground eigenvector until on the shell.
        const double e0 = cost[0];
        const double p = (mu - target) / std::max(mu - e0, 1e-300);
        for (auto& v : w) v *= 1.0 - std::min(1.0, p);
        w[0] += std::min(1.0, p);
    } else if (mu < target) {
        // Push toward the top of the pool to approach the shell from below.
        const double etop = cost[static_cast<std::size_t>(pool_ - 1)];
        if (etop > mu) {
            const double p = std::min(1.0, (target - mu) / (etop - mu));
            for (auto& v : w) v *= 1.0 - p;
            w[static_cast<std::size_t>(pool_ - 1)] += p;
        }
    }

    const int dim = constraint_->constraint_op.dim();
    Matrix rho = Matrix::Zero(dim, dim);
    for (int i = 0; i < pool_; ++i) {
        rho += w[static_cast<std::size_t>(i)] *
               (sys.vectors.col(i) * sys.vectors.col(i).adjoint());
    }
    rho = hermitize(rho);
    if (ancilla_ > 1) {
        Vector anc = random_unit_vector(ancilla_, rng);
        return DensityMatrix(embed_with_ancilla(rho, anc));
    }
    return DensityMatrix(std::move(rho));
}

DensityMatrix AdmissibleSampler::coherent_sample(Rng& rng) const {
    const int dim = constraint_->constraint_op.dim();
    const double phase = 2.0 * M_PI * rng.uniform();
    double nbar = constraint_->energy * rng.uniform();
    for (int attempt = 0; attempt < 200; ++attempt) {
        const Complex alpha = std::sqrt(nbar) * std::exp(Complex(0.0, phase));
        try {
            StateVector sv = coherent_state(alpha, dim);
            DensityMatrix rho = DensityMatrix::pure(sv);
            if (constraint_->admissible(rho)) {
                if (ancilla_ > 1) {
                    Vector anc = Vector::Zero(ancilla_);
                    anc(0) = 1.0;
                    return DensityMatrix(embed_with_ancilla(rho.matrix(), anc));
                }
                return rho;
            }
        } catch (const TruncationError&) {
            // fall through and shrink
        }
        nbar *= 0.8;
        if (nbar < 1e-12) break;
    }
    // Vacuum is always admissible for a number-operator constraint.
    Vector vac = Vector::Zero(dim);
    vac(0) = 1.0;
    Matrix rho = vac * vac.adjoint();
    if (ancilla_ > 1) {
        Vector anc = Vector::Zero(ancilla_);
        anc(0) = 1.0;
        return DensityMatrix(embed_with_ancilla(rho, anc));
    }
    return DensityMatrix(std::move(rho));
}

DensityMatrix AdmissibleSampler::entangled_sample(Rng& rng) const {
    const auto& sys = constraint_->constraint_op.eig();
    const double two_alpha = 2.0 * constraint_->alpha;
    const double budget = constraint_->budget();
    const int dim = constraint_->constraint_op.dim();
    const int schmidt = std::min({ancilla_, pool_, 4});

    // Distinct eigenvector indices from the low-energy pool, ground included.
    std::vector<int> idx(static_cast<std::size_t>(pool_));
    for (int i = 0; i < pool_; ++i) idx[static_cast<std::size_t>(i)] = i;
    for (int i = pool_ - 1; i > 0; --i) {
        std::swap(idx[static_cast<std::size_t>(i)],
                  idx[static_cast<std::size_t>(rng.uniform_int(i + 1))]);
    }
    idx.resize(static_cast<std::size_t>(schmidt));
    std::sort(idx.begin(), idx.end());
    idx[0] = 0;

    std::vector<double> mu = rng.dirichlet(schmidt);
    std::vector<double> cost(static_cast<std::size_t>(schmidt));
    for (int k = 0; k < schmidt; ++k) {
        cost[static_cast<std::size_t>(k)] =
            std::pow(std::max(0.0, sys.values(idx[static_cast<std::size_t>(k)])), two_alpha);
    }
    double en = 0.0;
    for (int k = 0; k < schmidt; ++k) en += mu[static_cast<std::size_t>(k)] * cost[static_cast<std::size_t>(k)];
    const double target = 0.999 * budget;
    if (en > target) {
        const double p = (en - target) / std::max(en - cost[0], 1e-300);
        for (auto& v : mu) v *= 1.0 - std::min(1.0, p);
        mu[0] += std::min(1.0, p);
    }

    Vector joint = Vector::Zero(dim * ancilla_);
    for (int k = 0; k < schmidt; ++k) {
        const double amp = std::sqrt(std::max(0.0, mu[static_cast<std::size_t>(k)]));
        const Complex ph = std::exp(Complex(0.0, 2.0 * M_PI * rng.uniform()));
        const Vector& sysvec = sys.vectors.col(idx[static_cast<std::size_t>(k)]);
        for (int u = 0; u < dim; ++u) {
            joint(u * ancilla_ + k) += amp * ph * sysvec(u);
        }
    }
    joint /= joint.norm();
    return DensityMatrix::pure(joint);
}

DensityMatrix AdmissibleSampler::sample(Rng& rng) const {
    const bool entangled_ok = ancilla_ > 1;
    int kinds = 1 + (coherent_ok_ ? 1 : 0) + (entangled_ok ? 1 : 0);
    const int pick = rng.uniform_int(kinds);
    if (pick == 0) return mixture_sample(rng);
    if (pick == 1 && coherent_ok_) return coherent_sample(rng);
    if (entangled_ok) return entangled_sample(rng);
    return mixture_sample(rng);
}

DensityMatrix AdmissibleSampler::sample_indexed(std::uint64_t seed,
                                                std::uint64_t index) const {
    Rng rng = Rng::substream(seed, index);
    const bool entangled_ok = ancilla_ > 1;
    std::vector<int> kinds = {0};
    if (coherent_ok_) kinds.push_back(1);
    if (entangled_ok) kinds.push_back(2);
    const int kind = kinds[static_cast<std::size_t>(index % kinds.size())];
    if (kind == 1) return coherent_sample(rng);
    if (kind == 2) return entangled_sample(rng);
    return mixture_sample(rng);
}

DensityMatrix random_state_with_energy(const HermitianOperator& h, double energy,
                                       Rng& rng) {
    const Eigensystem& sys = h.eig();
    const double lo = sys.values.minCoeff();
    const double hi = sys.values.maxCoeff();
    if (energy <= lo || energy >= hi) {
        throw InfeasibleConstraintError("target energy must lie inside the spectrum");
    }
    DensityMatrix base = random_low_rank_density(h.dim(), 6, rng);
    const double mu = (h.matrix() * base.matrix()).trace().real();

    // Blend with the extreme eigenprojector on the far side of the target;
    // the blend parameter solving (1-p) mu + p m = E is exact up to roundoff.
    const Vector edge =
        energy > mu ? sys.vectors.col(sys.values.size() - 1) : sys.vectors.col(0);
    const double m = energy > mu ? hi : lo;
    const double p = std::clamp((energy - mu) / (m - mu), 0.0, 1.0);
    Matrix rho = (1.0 - p) * base.matrix() + p * (edge * edge.adjoint());
    return DensityMatrix(hermitize(rho));
}

}  // namespace qdslim::sampling
