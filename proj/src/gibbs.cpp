#include "qdslim/gibbs.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "qdslim/errors.hpp"

namespace qdslim::gibbs {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double logsumexp(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const double hi = std::max(a, b);
    return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    double value() const { return sum + comp; }
};

}  // namespace

Spectrum Spectrum::harmonic_oscillator() {
    Spectrum s;
    s.closed_form_ = Form::ho;
    s.tail_ = TailModel{1.0, 1.0, 1};
    s.label_ = "ho";
    return s;
}

Spectrum Spectrum::linear(double offset) {
    if (offset < 0.0) throw DomainError("linear spectrum offset must be nonnegative");
    Spectrum s;
    s.closed_form_ = Form::linear;
    s.p0_ = offset;
    s.tail_ = TailModel{1.0, 1.0, 1};
    s.label_ = "linear:" + format_double(offset);
    return s;
}

Spectrum Spectrum::box() {
    Spectrum s;
    s.closed_form_ = Form::box;
    s.tail_ = TailModel{2.0, 1.0, 1};
    s.label_ = "box";
    return s;
}

Spectrum Spectrum::weyl(int n, double volume) {
    if (n < 1) throw DomainError("weyl spectrum needs dimension n >= 1");
    if (volume <= 0.0) throw DomainError("weyl spectrum needs positive volume");
    const double cn = std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
    const double coeff = 4.0 * M_PI * M_PI / std::pow(cn * volume, 2.0 / n);
    Spectrum s;
    s.closed_form_ = Form::weyl;
    s.p0_ = coeff;
    s.p1_ = 2.0 / static_cast<double>(n);
    s.tail_ = TailModel{2.0 / static_cast<double>(n), coeff, 1};
    s.label_ = "weyl:" + std::to_string(n) + "," + format_double(volume);
    return s;
}

Spectrum Spectrum::from_values(std::vector<double> values, std::optional<TailModel> tail) {
    if (values.empty()) throw DomainError("spectrum needs at least one eigenvalue");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i]) || values[i] < 0.0) {
            throw DomainError("eigenvalues must be finite and nonnegative");
        }
        if (i > 0 && values[i] < values[i - 1]) {
            throw DomainError("eigenvalues must be nondecreasing (violation at index " +
                              std::to_string(i) + ")");
        }
    }
    Spectrum s;
    s.closed_form_ = Form::list;
    s.values_ = std::move(values);
    if (tail.has_value()) {
        s.tail_ = *tail;
    } else {
        // Infer a linear growth floor from the data tail. The Gibbs
        // hypothesis needs lambda_i -> infinity; flat data cannot certify it.
        const std::size_t n = s.values_.size();
        if (n < 2) {
            throw DomainError(
                "a single-eigenvalue spectrum needs an explicit tail declaration");
        }
        const std::size_t k = std::min(n, std::max<std::size_t>(2, n / 4));
        const double gap =
            (s.values_[n - 1] - s.values_[n - k]) / static_cast<double>(k - 1);
        if (gap <= 0.0) {
            throw DomainError(
                "cannot certify the Gibbs hypothesis: data tail is not increasing and "
                "no tail model was declared");
        }
        double coeff = gap;
        for (std::size_t i = 1; i < n; ++i) {
            coeff = std::min(coeff, s.values_[i] / static_cast<double>(i));
        }
        if (coeff <= 0.0) coeff = std::min(gap, s.values_[n - 1] / static_cast<double>(n));
        s.tail_ = TailModel{1.0, std::max(coeff, 1e-12), 1};
    }
    s.label_ = "list[" + std::to_string(s.values_.size()) + "]";
    return s;
}

Spectrum Spectrum::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open spectrum file '" + path + "'");
    std::vector<double> values;
    std::optional<TailModel> tail;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string first;
        if (!(ss >> first)) continue;
        if (first == "tail:") {
            std::string kind;
            ss >> kind;
            if (kind == "power") {
                TailModel t;
                if (!(ss >> t.power >> t.coeff) || t.power <= 0.0 || t.coeff <= 0.0) {
                    throw DomainError("malformed 'tail: power <p> <coeff>' header");
                }
                t.start = 1;
                tail = t;
            } else if (kind == "poly") {
                double degree = 0.0;
                if (!(ss >> degree) || degree <= 0.0) {
                    throw DomainError("malformed 'tail: poly <degree>' header");
                }
                TailModel t;
                t.power = degree;
                t.coeff = -1.0;  // fit from the data below
                t.start = 1;
                tail = t;
            } else {
                throw DomainError("unknown tail declaration '" + kind + "'");
            }
            continue;
        }
        values.push_back(std::stod(first));
    }
    if (tail.has_value() && tail->coeff < 0.0) {
        // 'tail: poly d': floor coefficient fitted from the data.
        double coeff = std::numeric_limits<double>::infinity();
        for (std::size_t i = 1; i < values.size(); ++i) {
            coeff = std::min(coeff, values[i] / std::pow(static_cast<double>(i), tail->power));
        }
        if (!std::isfinite(coeff) || coeff <= 0.0) {
            throw DomainError("cannot fit 'tail: poly' coefficient from the data");
        }
        tail->coeff = coeff;
    }
    Spectrum s = from_values(std::move(values), tail);
    s.label_ = "file:" + path;
    return s;
}

double Spectrum::eigenvalue(long i) const {
    if (i < 0) throw DomainError("eigenvalue index must be nonnegative");
    switch (closed_form_) {
        case Form::ho:
            return static_cast<double>(i) + 0.5;
        case Form::linear:
            return static_cast<double>(i) + p0_;
        case Form::box: {
            const double m = static_cast<double>(i) + 1.0;
            return m * m;
        }
        case Form::weyl:
            return p0_ * std::pow(static_cast<double>(i) + 1.0, p1_);
        case Form::list:
            if (static_cast<std::size_t>(i) >= values_.size()) {
                throw ConvergenceError(
                    "file-backed spectrum exhausted at index " + std::to_string(i) +
                    "; supply more eigenvalues or a smaller energy/temperature");
            }
            return values_[static_cast<std::size_t>(i)];
    }
    throw DomainError("unreachable spectrum form");
}

long Spectrum::available() const {
    return closed_form_ == Form::list ? static_cast<long>(values_.size()) : LONG_MAX;
}

namespace {

// log of an upper bound on sum_{j > n} exp(-s (lambda_j - shift)), from the
// growth floor lambda_j >= coeff j^power, by doubling blocks [m, 2m).
double log_shifted_tail(const TailModel& tail, long n, double s, double shift) {
    double acc = kNegInf;
    double m = static_cast<double>(std::max<long>(n + 1, 1));
    for (int k = 0; k < 500; ++k) {
        const double lam_min = tail.coeff * std::pow(m, tail.power);
        const double term = std::log(m) - s * (lam_min - shift);
        acc = logsumexp(acc, term);
        if (term < acc - 46.0) break;  // block contributions decayed to 1e-20
        if (k == 499) return std::numeric_limits<double>::infinity();
        m *= 2.0;
    }
    return acc;
}

struct Moments {
    double m0 = 0.0;  // sum w
    double m1 = 0.0;  // sum w lambda
    double m2 = 0.0;  // sum w lambda^2
    long terms = 0;
    double log_tail_rel = kNegInf;  // log(tail bound on m0 / m0)
    double lambda0 = 0.0;
};

constexpr long kTermBudget = 50'000'000;

// Shifted Boltzmann moments: w_i = exp(-beta (lambda_i - lambda_0)).
// Terms are added until they fall below 1e-18 of the running sums and the
// model tail is certified below 1e-14 of each moment.
Moments spectral_moments(const Spectrum& spec, double beta, long budget = kTermBudget) {
    if (beta <= 0.0) throw DomainError("inverse temperature must be positive");
    Moments out;
    const double lambda0 = spec.eigenvalue(0);
    out.lambda0 = lambda0;
    KahanSum m0, m1, m2;
    const long avail = spec.available();
    long i = 0;
    int small_run = 0;
    bool certified = false;
    for (; i < budget && i < avail; ++i) {
        const double lam = spec.eigenvalue(i);
        const double w = std::exp(-beta * (lam - lambda0));
        m0.add(w);
        m1.add(w * lam);
        m2.add(w * lam * lam);
        const bool small = w <= 1e-18 * m0.value() &&
                           w * std::abs(lam) <= 1e-18 * std::max(1.0, std::abs(m1.value()));
        small_run = small ? small_run + 1 : 0;
        if (small_run >= 3) {
            // Tail of m0: log sum_{j>i} e^{-beta (lambda_j - lambda0)}.
            const double lt0 = log_shifted_tail(spec.tail(), i, beta, lambda0);
            // Tail of m1 via lambda e^{-beta lambda} <= (2/(e beta)) e^{-beta lambda / 2}.
            const double lt1 = std::log(2.0 / (M_E * beta)) + 0.5 * beta * lambda0 +
                               log_shifted_tail(spec.tail(), i, 0.5 * beta, lambda0);
            const double need0 = std::log(1e-14) + std::log(m0.value());
            const double need1 =
                std::log(1e-14) + std::log(std::max(m1.value(), 1e-300));
            if (lt0 <= need0 && lt1 <= need1) {
                out.log_tail_rel = lt0 - std::log(m0.value());
                certified = true;
                ++i;
                break;
            }
        }
    }
    if (!certified) {
        if (i >= avail && avail < LONG_MAX) {
            // Finite list: moments are exact sums over the data; certify the
            // remainder with the declared/inferred model.
            const double lt0 = log_shifted_tail(spec.tail(), avail - 1, beta, lambda0);
            if (lt0 <= std::log(1e-10) + std::log(std::max(m0.value(), 1e-300))) {
                out.log_tail_rel = lt0 - std::log(m0.value());
            } else {
                throw ConvergenceError(
                    "spectrum data ends before the Boltzmann sum converged");
            }
        } else {
            throw ConvergenceError("term budget exhausted before the tail bound held");
        }
    }
    out.m0 = m0.value();
    out.m1 = m1.value();
    out.m2 = m2.value();
    out.terms = i;
    return out;
}

double mean_energy(const Moments& m) { return m.m1 / m.m0; }

}  // namespace

PartitionResult partition_function(const Spectrum& spec, double beta) {
    const Moments m = spectral_moments(spec, beta);
    PartitionResult out;
    out.log_z = std::log(m.m0) - beta * m.lambda0;
    out.terms = m.terms;
    out.tail_bound = std::exp(m.log_tail_rel);
    return out;
}

GibbsSolution solve_beta(const Spectrum& spec, double energy) {
    const double lambda0 = spec.eigenvalue(0);
    if (!(energy > lambda0)) {
        throw InfeasibleConstraintError("energy " + format_double(energy) +
                                        " must exceed the spectral bottom " +
                                        format_double(lambda0));
    }

    const double beta0 = 1.0 / (energy - lambda0);
    double hi = beta0;
    Moments mhi = spectral_moments(spec, hi);
    int guard = 0;
    while (mean_energy(mhi) > energy) {
        hi *= 2.0;
        mhi = spectral_moments(spec, hi);
        if (++guard > 200) throw ConvergenceError("failed to bracket beta from above");
    }
    double lo = beta0;
    Moments mlo = spectral_moments(spec, lo);
    guard = 0;
    while (mean_energy(mlo) < energy) {
        lo *= 0.5;
        mlo = spectral_moments(spec, lo);
        if (++guard > 200) {
            throw ConvergenceError(
                "failed to bracket beta from below (energy unreachable on this spectrum)");
        }
    }

    // U(beta) is strictly decreasing; bisection then Newton polish.
    double beta = 0.5 * (lo + hi);
    Moments m = spectral_moments(spec, beta);
    for (int it = 0; it < 70 && (hi - lo) > 1e-14 * hi; ++it) {
        if (mean_energy(m) > energy) {
            lo = beta;
        } else {
            hi = beta;
        }
        beta = 0.5 * (lo + hi);
        m = spectral_moments(spec, beta);
    }
    for (int it = 0; it < 4; ++it) {
        const double u = mean_energy(m);
        const double var = m.m2 / m.m0 - u * u;
        if (var <= 0.0) break;
        double next = beta + (u - energy) / var;
        if (!(next > 0.0) || !std::isfinite(next)) break;
        next = std::clamp(next, 0.25 * beta, 4.0 * beta);
        beta = next;
        m = spectral_moments(spec, beta);
        if (std::abs(mean_energy(m) - energy) <= 1e-13 * std::max(1.0, energy)) break;
    }

    GibbsSolution sol;
    sol.energy = energy;
    sol.beta = beta;
    sol.log_z = std::log(m.m0) - beta * m.lambda0;
    sol.entropy = sol.log_z + beta * energy;
    sol.truncation_terms = m.terms;
    sol.tail_bound = std::exp(m.log_tail_rel);
    return sol;
}

double gibbs_entropy(const Spectrum& spec, double energy) {
    return solve_beta(spec, energy).entropy;
}

DensityMatrix gibbs_state(const HermitianOperator& op, double energy) {
    const Eigensystem& sys = op.eig();
    const Eigen::Index dim = sys.values.size();
    const double lambda0 = sys.values(0);
    if (!(energy > lambda0)) {
        throw InfeasibleConstraintError("energy must exceed the spectral bottom");
    }
    double flat_mean = sys.values.sum() / static_cast<double>(dim);
    if (energy >= flat_mean) {
        throw TruncationError(
            "requested energy needs weight beyond this truncation; enlarge dim",
            static_cast<int>(2 * dim));
    }

    auto mean_at = [&](double beta) {
        double z = 0.0, zl = 0.0;
        for (Eigen::Index i = 0; i < dim; ++i) {
            const double w = std::exp(-beta * (sys.values(i) - lambda0));
            z += w;
            zl += w * sys.values(i);
        }
        return zl / z;
    };

    double lo = 1.0 / (energy - lambda0), hi = lo;
    int guard = 0;
    while (mean_at(hi) > energy && ++guard < 300) hi *= 2.0;
    guard = 0;
    while (mean_at(lo) < energy && ++guard < 300) lo *= 0.5;
    double beta = 0.5 * (lo + hi);
    for (int it = 0; it < 200 && (hi - lo) > 1e-15 * hi; ++it) {
        (mean_at(beta) > energy ? lo : hi) = beta;
        beta = 0.5 * (lo + hi);
    }

    RealVector w(dim);
    double z = 0.0;
    for (Eigen::Index i = 0; i < dim; ++i) {
        w(i) = std::exp(-beta * (sys.values(i) - lambda0));
        z += w(i);
    }
    if (w(dim - 1) / z > 1e-12) {
        throw TruncationError(
            "truncation carries insufficient Gibbs weight (top-level occupancy " +
                format_double(w(dim - 1) / z) + "); enlarge dim",
            static_cast<int>(2 * dim));
    }
    w /= z;
    Matrix gamma = sys.vectors * w.asDiagonal() * sys.vectors.adjoint();
    return DensityMatrix(hermitize(gamma));
}

std::pair<double, double> n_updown(const Spectrum& spec, double cutoff) {
    const double lambda0 = spec.eigenvalue(0);
    if (cutoff < 2.0 * lambda0) return {0.0, 0.0};

    constexpr long kPairBudget = 6'000'000;
    std::vector<double> vals;
    const long avail = spec.available();
    for (long i = 0; i < avail; ++i) {
        const double lam = spec.eigenvalue(i);
        if (lam > cutoff - lambda0) break;
        vals.push_back(lam);
        if (static_cast<long>(vals.size()) > kPairBudget) {
            throw ConvergenceError("pair enumeration budget exceeded at cutoff " +
                                   format_double(cutoff));
        }
    }
    const long n = static_cast<long>(vals.size());
    if (n == 0) return {0.0, 0.0};

    std::vector<long double> prefix(static_cast<std::size_t>(n));
    long double run = 0.0L;
    for (long i = 0; i < n; ++i) {
        run += vals[static_cast<std::size_t>(i)];
        prefix[static_cast<std::size_t>(i)] = run;
    }
    long double up = 0.0L, down = 0.0L;
    long j = n - 1;
    for (long i = 0; i < n; ++i) {
        const double lam = vals[static_cast<std::size_t>(i)];
        while (j >= 0 && vals[static_cast<std::size_t>(j)] > cutoff - lam) --j;
        if (j < 0) break;
        const long count = j + 1;
        up += static_cast<long double>(lam) * lam * count;
        down += static_cast<long double>(lam) * prefix[static_cast<std::size_t>(j)];
    }
    return {static_cast<double>(up), static_cast<double>(down)};
}

AsymptoticsReport estimate_eta(const Spectrum& spec, const std::vector<double>& cutoffs) {
    if (cutoffs.size() < 3) throw DomainError("eta extrapolation needs >= 3 cutoffs");
    AsymptoticsReport report;
    report.cutoffs = cutoffs;
    for (double c : cutoffs) {
        auto [up, down] = n_updown(spec, c);
        if (down <= 0.0) {
            throw DomainError("cutoff " + format_double(c) +
                              " admits no eigenvalue pairs; raise the cutoffs");
        }
        report.xi_estimates.push_back(up / down);
    }

    // Least squares for r(c) = xi + k / c.
    const std::size_t n = cutoffs.size();
    double s1 = static_cast<double>(n), sx = 0, sxx = 0, sy = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = 1.0 / cutoffs[i];
        const double y = report.xi_estimates[i];
        sx += x;
        sxx += x * x;
        sy += y;
        sxy += x * y;
    }
    const double det = s1 * sxx - sx * sx;
    if (std::abs(det) < 1e-300) {
        report.diagnostic = "degenerate cutoff grid";
        return report;
    }
    const double xi = (sy * sxx - sx * sxy) / det;
    const double slope = (s1 * sxy - sx * sy) / det;
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double fit = xi + slope / cutoffs[i];
        rss += (report.xi_estimates[i] - fit) * (report.xi_estimates[i] - fit);
    }
    report.fit_residual = std::sqrt(rss / static_cast<double>(n));
    if (report.fit_residual > 1e-3 * std::max(1.0, std::abs(xi))) {
        report.diagnostic = "ratio sequence did not converge (fit residual " +
                            format_double(report.fit_residual) + ")";
        return report;
    }
    if (xi <= 1.0 + 1e-9) {
        report.diagnostic = "extrapolated xi <= 1; eta undefined";
        return report;
    }
    report.xi = xi;
    report.eta = 1.0 / (xi - 1.0);
    return report;
}

std::vector<double> default_cutoff_grid(double cutoff_max) {
    if (cutoff_max <= 0.0) throw DomainError("cutoff must be positive");
    return {cutoff_max / 16.0, cutoff_max / 8.0, cutoff_max / 4.0, cutoff_max / 2.0,
            cutoff_max};
}

AsymptoticsTable asymptotics_check(const Spectrum& spec, const std::vector<double>& energies,
                                   std::optional<double> eta) {
    double eta_val;
    if (eta.has_value()) {
        eta_val = *eta;
    } else {
        double top = 64.0;
        for (double e : energies) top = std::max(top, 4.0 * e);
        // Slowly converging ratio sequences need larger cutoffs before the
        // 1/cutoff fit accepts; escalate until acceptance or the pair budget.
        std::string last_diagnostic;
        std::optional<double> found;
        for (int attempt = 0; attempt < 4 && !found; ++attempt, top *= 16.0) {
            try {
                const AsymptoticsReport rep = estimate_eta(spec, default_cutoff_grid(top));
                if (rep.eta.has_value()) {
                    found = *rep.eta;
                } else {
                    last_diagnostic = rep.diagnostic;
                }
            } catch (const ConvergenceError& e) {
                last_diagnostic = e.what();
                break;
            }
        }
        if (!found) {
            throw ConvergenceError("eta extrapolation failed: " + last_diagnostic);
        }
        eta_val = *found;
    }
    AsymptoticsTable table;
    table.eta = eta_val;
    for (double e : energies) {
        const GibbsSolution sol = solve_beta(spec, e);
        AsymptoticsRow row;
        row.energy = e;
        row.beta = sol.beta;
        row.beta_e_over_eta = sol.beta * e / eta_val;
        row.log_z = sol.log_z;
        row.log_z_minus_eta_log_e = sol.log_z - eta_val * std::log(e);
        row.entropy = sol.entropy;
        row.entropy_ratio = sol.entropy / (eta_val * std::log(e));
        table.rows.push_back(row);
    }
    if (!table.rows.empty()) {
        const AsymptoticsRow& last = table.rows.back();
        table.kappa_estimate = std::exp(last.log_z_minus_eta_log_e);
        table.kappa_estimate_at = last.energy;
    }
    return table;
}

}  // namespace qdslim::gibbs
