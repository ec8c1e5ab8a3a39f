#include "qdslim/channels.hpp"

#include <cmath>
#include <sstream>

#include "qdslim/errors.hpp"

namespace qdslim {

namespace {

bool effectively_zero(const Matrix& m) {
    return m.size() == 0 || m.cwiseAbs().maxCoeff() == 0.0;
}

// Smallest (a, b) >= 0 with y_i <= a x_i + b on every sample: least-squares
// line, negative coefficients clamped, intercept raised to cover all points.
std::pair<double, double> fit_affine_cover(const std::vector<double>& x,
                                           const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double var = sxx - sx * sx / n;
    double a = var > 1e-14 ? (sxy - sx * sy / n) / var : 0.0;
    if (a < 0.0) a = 0.0;
    double b = (sy - a * sx) / n;
    if (b < 0.0) {
        b = 0.0;
        a = sxx > 1e-14 ? sxy / sxx : 0.0;
        if (a < 0.0) a = 0.0;
    }
    double shift = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        shift = std::max(shift, y[i] - a * x[i] - b);
    }
    return {a, b + shift};
}

}  // namespace

LindbladModel LindbladModel::make(HermitianOperator hamiltonian,
                                  std::vector<Matrix> lindblad_ops, BoundedBy bounded_by,
                                  double rel_a, double rel_b) {
    const int dim = hamiltonian.dim();
    Matrix ksum = Matrix::Zero(dim, dim);
    for (const auto& l : lindblad_ops) {
        if (l.rows() != dim || l.cols() != dim) {
            throw ShapeError("Lindblad operator dimension differs from the Hamiltonian");
        }
        ksum -= 0.5 * (l.adjoint() * l);
    }
    HermitianOperator dissipator(hermitize(ksum));
    if (dissipator.max_eigenvalue() > 1e-10) {
        throw DomainError("dissipator is not negative semi-definite (max eigenvalue " +
                          format_double(dissipator.max_eigenvalue()) + ")");
    }
    LindbladModel model{std::move(hamiltonian), std::move(lindblad_ops),
                        std::move(dissipator), rel_a, rel_b, bounded_by};
    return model;
}

LindbladModel LindbladModel::make_fitted(HermitianOperator hamiltonian,
                                         std::vector<Matrix> lindblad_ops,
                                         BoundedBy bounded_by) {
    LindbladModel model =
        make(std::move(hamiltonian), std::move(lindblad_ops), bounded_by, 0.0, 0.0);
    const HermitianOperator& dominating =
        bounded_by == BoundedBy::H_bounds_K ? model.hamiltonian : model.dissipator;
    const Matrix& bounded = bounded_by == BoundedBy::H_bounds_K
                                ? model.dissipator.matrix()
                                : model.hamiltonian.matrix();
    const Eigensystem& sys = dominating.eig();
    std::vector<double> x, y;
    x.reserve(static_cast<std::size_t>(sys.values.size()));
    y.reserve(x.capacity());
    for (Eigen::Index i = 0; i < sys.values.size(); ++i) {
        x.push_back(std::abs(sys.values(i)));
        y.push_back((bounded * sys.vectors.col(i)).norm());
    }
    auto [a, b] = fit_affine_cover(x, y);
    model.rel_bound_a = a;
    model.rel_bound_b = b;
    return model;
}

Matrix LindbladModel::apply_generator(const Matrix& rho) const {
    const int dim = hamiltonian.dim();
    if (rho.rows() != dim || rho.cols() != dim) {
        throw ShapeError("generator applied to a matrix of the wrong dimension");
    }
    Matrix out = Matrix::Zero(dim, dim);
    if (!effectively_zero(hamiltonian.matrix())) {
        out = Complex(0.0, -1.0) * (hamiltonian.matrix() * rho - rho * hamiltonian.matrix());
    }
    for (const auto& l : lindblad_ops) {
        out += l * rho * l.adjoint();
    }
    out += dissipator.matrix() * rho + rho * dissipator.matrix();
    return out;
}

double LindbladModel::generator_norm_bound() const {
    double bound = 2.0 * operator_norm(hamiltonian.matrix());
    for (const auto& l : lindblad_ops) {
        const double n = operator_norm(l);
        bound += 2.0 * n * n;
    }
    return bound;
}

DensityMatrix evolve_von_neumann(const DensityMatrix& rho, const HermitianOperator& h,
                                 double t) {
    if (rho.dim() != h.dim()) throw ShapeError("state and Hamiltonian dimensions differ");
    const Eigensystem& sys = h.eig();
    Vector phases(sys.values.size());
    for (Eigen::Index i = 0; i < sys.values.size(); ++i) {
        phases(i) = std::exp(Complex(0.0, -t * sys.values(i)));
    }
    const Matrix u = sys.vectors * phases.asDiagonal() * sys.vectors.adjoint();
    return DensityMatrix(hermitize(u * rho.matrix() * u.adjoint()), 1e-8, 1e-8);
}

namespace {

// Highest Fock level holding all but 1e-12 of the diagonal mass.
int support_level(const Matrix& rho) {
    const int dim = static_cast<int>(rho.rows());
    double tail = 0.0;
    for (int n = dim - 1; n >= 0; --n) {
        tail += rho(n, n).real();
        if (tail > 1e-12) return n;
    }
    return 0;
}

int auto_l_max(int n_supp, double t) {
    if (n_supp == 0 || t == 0.0) return 0;
    const double p = -std::expm1(-t);  // 1 - e^{-t}
    const double q = std::exp(-t);
    // Completeness defect at level n is the upper binomial tail
    // P(Bin(n, p) > l); it vanishes once l reaches n.
    if (static_cast<double>(n_supp) * std::log(q) < -700.0) return n_supp;
    double term = std::pow(q, n_supp);
    double cum = term;
    int l = 0;
    while (cum < 1.0 - 1e-8 && l < n_supp) {
        term *= (static_cast<double>(n_supp - l) / (l + 1)) * (p / q);
        ++l;
        cum += term;
    }
    return l;
}

Matrix attenuator_apply_raw(const Matrix& rho, double t, int l_max) {
    const int dim = static_cast<int>(rho.rows());
    Matrix lower = Matrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) lower(n - 1, n) = std::sqrt(static_cast<double>(n));
    Vector damp(dim);
    for (int n = 0; n < dim; ++n) damp(n) = std::exp(-0.5 * t * n);
    const double p = -std::expm1(-t);

    Matrix block = rho;
    Matrix out = damp.asDiagonal() * block * damp.asDiagonal();
    double weight = 1.0;
    for (int l = 1; l <= l_max; ++l) {
        block = lower * block * lower.adjoint();
        weight *= p / l;
        out += weight * (damp.asDiagonal() * block * damp.asDiagonal());
    }
    return out;
}

}  // namespace

DensityMatrix attenuator_apply(const DensityMatrix& rho, double t,
                               std::optional<int> l_max) {
    if (t < 0.0) throw DomainError("attenuator time must be nonnegative");
    const int dim = rho.dim();
    const int n_supp = support_level(rho.matrix());
    int terms = 0;
    if (l_max.has_value()) {
        if (*l_max < 0) throw DomainError("l_max must be nonnegative");
        if (n_supp > dim - *l_max) {
            throw TruncationError(
                "state support (level " + std::to_string(n_supp) +
                    ") is too close to the truncation edge for l_max = " +
                    std::to_string(*l_max) + "; need dim >= " +
                    std::to_string(n_supp + *l_max),
                n_supp + *l_max);
        }
        terms = std::min(*l_max, n_supp);
    } else {
        terms = auto_l_max(n_supp, t);
    }
    Matrix out = attenuator_apply_raw(rho.matrix(), t, terms);
    return DensityMatrix(hermitize(out), 1e-8, 1e-8);
}

Matrix lindblad_superoperator(const LindbladModel& model) {
    const int dim = model.dim();
    warn_soft_limit("superoperator dim^2", static_cast<long>(dim) * dim, 4096);
    const Matrix id = Matrix::Identity(dim, dim);
    Matrix super = Matrix::Zero(dim * dim, dim * dim);
    const Matrix& h = model.hamiltonian.matrix();
    if (!effectively_zero(h)) {
        super += Complex(0.0, -1.0) * kron(id, h);
        super += Complex(0.0, 1.0) * kron(h.transpose(), id);
    }
    for (const auto& l : model.lindblad_ops) {
        super += kron(l.conjugate(), l);
    }
    const Matrix& k = model.dissipator.matrix();
    super += kron(id, k) + kron(k.transpose(), id);
    return super;
}

Matrix evolve_lindblad_raw(const Matrix& rho, const LindbladModel& model, double t) {
    if (t < 0.0) throw DomainError("Lindblad evolution time must be nonnegative");
    if (t == 0.0) return rho;
    const double norm_bound = model.generator_norm_bound();
    const long steps = std::max(1L, static_cast<long>(std::ceil(t * norm_bound / 4.0)));
    const double dt = t / static_cast<double>(steps);
    Matrix current = rho;
    for (long s = 0; s < steps; ++s) {
        Matrix term = current;
        Matrix acc = current;
        bool converged = false;
        for (int k = 1; k <= 120; ++k) {
            term = (dt / k) * model.apply_generator(term);
            acc += term;
            if (term.norm() <= 1e-17 * std::max(1.0, acc.norm())) {
                converged = true;
                break;
            }
        }
        if (!converged) throw ConvergenceError("exponential Taylor step did not converge");
        current = std::move(acc);
    }
    return current;
}

DensityMatrix evolve_lindblad(const DensityMatrix& rho, const LindbladModel& model,
                              double t) {
    if (rho.dim() != model.dim()) throw ShapeError("state and model dimensions differ");
    warn_soft_limit("superoperator dim^2", static_cast<long>(rho.dim()) * rho.dim(), 4096);
    return DensityMatrix(hermitize(evolve_lindblad_raw(rho.matrix(), model, t)), 1e-8,
                         1e-8);
}

LindbladModel preset_attenuator(int dim) {
    FockBasis fock = build_fock(dim);
    return LindbladModel::make(HermitianOperator(Matrix::Zero(dim, dim)),
                               {fock.ladder.lower}, LindbladModel::BoundedBy::K_bounds_H,
                               0.0, 0.0);
}

LindbladModel preset_amplifier(int dim) {
    FockBasis fock = build_fock(dim);
    return LindbladModel::make(HermitianOperator(Matrix::Zero(dim, dim)),
                               {fock.ladder.raise}, LindbladModel::BoundedBy::K_bounds_H,
                               0.0, 0.0);
}

LindbladModel preset_damped_pumped(int dim, double gamma_down, double gamma_up,
                                   double zeta) {
    if (gamma_down <= 0.0 || gamma_up <= 0.0 || zeta <= 0.0) {
        throw DomainError("damped_pumped rates must be positive");
    }
    FockBasis fock = build_fock(dim);
    std::vector<Matrix> ls = {std::sqrt(gamma_down) * fock.ladder.lower,
                              std::sqrt(gamma_up) * fock.ladder.raise};
    return LindbladModel::make_fitted(
        HermitianOperator(zeta * fock.number_op.matrix()), std::move(ls),
        LindbladModel::BoundedBy::H_bounds_K);
}

LindbladModel preset_brownian(int dim, double gamma1, double beta1, double gamma2,
                              double beta2) {
    FockBasis fock = build_fock(dim);
    const Matrix x = (fock.ladder.lower + fock.ladder.raise) / std::sqrt(2.0);
    const Matrix d = (fock.ladder.lower - fock.ladder.raise) / std::sqrt(2.0);
    const Matrix h = x * x - d * d;  // -d^2/dx^2 + x^2 on the truncation
    std::vector<Matrix> ls = {gamma1 * x + beta1 * d, gamma2 * x + beta2 * d};
    return LindbladModel::make_fitted(HermitianOperator(hermitize(h)), std::move(ls),
                                      LindbladModel::BoundedBy::H_bounds_K);
}

LindbladModel preset_jaynes_cummings(int dim_fock, double nu, double delta, double rabi,
                                     double lamb_dicke, double decay) {
    if (nu <= 0.0 || decay <= 0.0) {
        throw DomainError("jaynes_cummings trap strength and decay rate must be positive");
    }
    FockBasis fock = build_fock(dim_fock);
    Matrix id2 = Matrix::Identity(2, 2);
    Matrix idf = Matrix::Identity(dim_fock, dim_fock);
    Matrix sigma_z(2, 2), sigma_x(2, 2), sigma_minus(2, 2);
    sigma_z << 1, 0, 0, -1;
    sigma_x << 0, 1, 1, 0;
    sigma_minus << 0, 0, 1, 0;
    HermitianOperator quad(hermitize(lamb_dicke *
                                     (fock.ladder.lower + fock.ladder.raise)));
    const Matrix sin_part =
        spectral_function(quad, [](double v) { return std::sin(v); }).matrix();
    Matrix h = nu * kron(fock.number_op.matrix(), id2) +
               0.5 * delta * kron(idf, sigma_z) - 0.5 * rabi * kron(sin_part, sigma_x);
    std::vector<Matrix> ls = {std::sqrt(decay) * kron(idf, sigma_minus)};
    return LindbladModel::make_fitted(HermitianOperator(hermitize(h)), std::move(ls),
                                      LindbladModel::BoundedBy::H_bounds_K);
}

LindbladModel preset_from_string(const std::string& name, int dim) {
    auto parse_params = [](const std::string& s) {
        std::vector<double> out;
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
        return out;
    };
    const auto colon = name.find(':');
    const std::string head = name.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : name.substr(colon + 1);
    if (head == "attenuator") return preset_attenuator(dim);
    if (head == "amplifier") return preset_amplifier(dim);
    if (head == "damped_pumped") {
        auto p = parse_params(args);
        if (p.size() != 3) throw DomainError("damped_pumped needs gamma_down,gamma_up,zeta");
        return preset_damped_pumped(dim, p[0], p[1], p[2]);
    }
    if (head == "brownian") {
        auto p = parse_params(args);
        if (p.size() != 4) throw DomainError("brownian needs gamma1,beta1,gamma2,beta2");
        return preset_brownian(dim, p[0], p[1], p[2], p[3]);
    }
    if (head == "jaynes_cummings") {
        auto p = parse_params(args);
        if (p.size() != 5) {
            throw DomainError("jaynes_cummings needs nu,delta,rabi,lamb_dicke,decay");
        }
        if (dim % 2 != 0) throw InvalidDimensionError("jaynes_cummings dim must be 2 * fock");
        return preset_jaynes_cummings(dim / 2, p[0], p[1], p[2], p[3], p[4]);
    }
    throw DomainError("unknown preset '" + head + "'");
}

ChannelFamily::ChannelFamily(Kind kind, std::optional<HermitianOperator> h,
                             std::optional<LindbladModel> model, int dim)
    : kind_(kind), hamiltonian_(std::move(h)), dim_(dim) {
    if (model.has_value()) {
        model_ = std::make_shared<const LindbladModel>(std::move(*model));
    }
}

ChannelFamily ChannelFamily::unitary(HermitianOperator h) {
    const int dim = h.dim();
    return ChannelFamily(Kind::unitary, std::move(h), std::nullopt, dim);
}

ChannelFamily ChannelFamily::kraus_attenuator(int dim) {
    if (dim < 2) throw InvalidDimensionError("attenuator needs dim >= 2");
    return ChannelFamily(Kind::kraus_attenuator, std::nullopt, std::nullopt, dim);
}

ChannelFamily ChannelFamily::liouvillian(LindbladModel model) {
    const int dim = model.dim();
    return ChannelFamily(Kind::liouvillian, std::nullopt, std::move(model), dim);
}

int ChannelFamily::dim() const { return dim_; }

const LindbladModel& ChannelFamily::model() const {
    if (!model_) throw DomainError("channel has no Lindblad model");
    return *model_;
}

DensityMatrix ChannelFamily::apply(const DensityMatrix& rho, double t) const {
    if (rho.dim() != dim_) throw ShapeError("state dimension differs from channel");
    switch (kind_) {
        case Kind::unitary:
            return evolve_von_neumann(rho, *hamiltonian_, t);
        case Kind::kraus_attenuator:
            return attenuator_apply(rho, t);
        case Kind::liouvillian:
            return evolve_lindblad(rho, *model_, t);
    }
    throw DomainError("unreachable channel kind");
}

DensityMatrix ChannelFamily::apply_tensored(const DensityMatrix& rho, double t,
                                            int ancilla_dim) const {
    if (ancilla_dim <= 1) return apply(rho, t);
    const int ds = dim_;
    const int da = ancilla_dim;
    if (rho.dim() != ds * da) {
        throw ShapeError("joint state dimension differs from system x ancilla");
    }

    std::function<Matrix(const Matrix&)> map;
    switch (kind_) {
        case Kind::unitary: {
            const Eigensystem& sys = hamiltonian_->eig();
            Vector phases(sys.values.size());
            for (Eigen::Index i = 0; i < sys.values.size(); ++i) {
                phases(i) = std::exp(Complex(0.0, -t * sys.values(i)));
            }
            const Matrix u = sys.vectors * phases.asDiagonal() * sys.vectors.adjoint();
            map = [u](const Matrix& block) { return Matrix(u * block * u.adjoint()); };
            break;
        }
        case Kind::kraus_attenuator: {
            const Matrix reduced = partial_trace_second(rho.matrix(), ds, da);
            const int l_max = auto_l_max(support_level(reduced), t);
            map = [t, l_max](const Matrix& block) {
                return attenuator_apply_raw(block, t, l_max);
            };
            break;
        }
        case Kind::liouvillian: {
            const LindbladModel& m = *model_;
            map = [&m, t](const Matrix& block) { return evolve_lindblad_raw(block, m, t); };
            break;
        }
    }

    // (Lambda x id) acts on each fixed ancilla index pair as Lambda on the
    // system block; joint index (s, a) -> s * da + a.
    Matrix out = Matrix::Zero(ds * da, ds * da);
    Matrix block(ds, ds);
    for (int a = 0; a < da; ++a) {
        for (int ap = 0; ap < da; ++ap) {
            for (int u = 0; u < ds; ++u) {
                for (int v = 0; v < ds; ++v) {
                    block(u, v) = rho.matrix()(u * da + a, v * da + ap);
                }
            }
            const Matrix mapped = map(block);
            for (int u = 0; u < ds; ++u) {
                for (int v = 0; v < ds; ++v) {
                    out(u * da + a, v * da + ap) = mapped(u, v);
                }
            }
        }
    }
    return DensityMatrix(hermitize(out), 1e-8, 1e-8);
}

}  // namespace qdslim
