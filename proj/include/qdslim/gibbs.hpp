#ifndef QDSLIM_GIBBS_HPP
#define QDSLIM_GIBBS_HPP

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qdslim/operators.hpp"
#include "qdslim/states.hpp"

namespace qdslim::gibbs {

// Growth floor lambda_i >= coeff * i^power for i >= start, used to bound
// truncation tails by geometric/block domination.
struct TailModel {
    double power = 1.0;
    double coeff = 1.0;
    long start = 1;
};

// Ordered eigenvalue source: closed-form generator or explicit list. The
// Gibbs hypothesis (e^{-beta H} trace class for every beta > 0) is certified
// through the tail model.
class Spectrum {
  public:
    static Spectrum harmonic_oscillator();        // i + 1/2
    static Spectrum linear(double offset);        // i + offset
    static Spectrum box();                        // (i+1)^2
    static Spectrum weyl(int n, double volume);   // 4 pi^2 / (C_n vol)^{2/n} (i+1)^{2/n}
    // Plain text, one nondecreasing value per line, '#' comments, optional
    // header "tail: power <p> <coeff>" or "tail: poly <degree>".
    static Spectrum from_file(const std::string& path);
    static Spectrum from_values(std::vector<double> values,
                                std::optional<TailModel> tail = std::nullopt);

    // i >= 0. File-backed spectra throw ConvergenceError past the data.
    double eigenvalue(long i) const;
    double min_eigenvalue() const { return eigenvalue(0); }
    const TailModel& tail() const { return tail_; }
    bool finite() const { return !values_.empty() && closed_form_ == Form::list; }
    long available() const;  // LONG_MAX for closed forms
    std::string describe() const { return label_; }

  private:
    enum class Form { ho, linear, box, weyl, list };
    Form closed_form_ = Form::list;
    double p0_ = 0.0, p1_ = 0.0;  // closed-form parameters
    std::vector<double> values_;
    TailModel tail_;
    std::string label_;
};

struct PartitionResult {
    double log_z;
    long terms;
    double tail_bound;  // on the omitted part of Z, relative target 1e-14
};

// log tr(e^{-beta H}) with certified truncation tail.
PartitionResult partition_function(const Spectrum& spec, double beta);

struct GibbsSolution {
    double energy;
    double beta;
    double log_z;
    double entropy;  // log Z + beta E
    long truncation_terms;
    double tail_bound;
};

// Solves tr(e^{-beta H}(H - E)) = 0 by bracketed bisection plus Newton polish
// on the mean energy; residual |f(beta)|/Z <= 1e-12. Requires E > min eigenvalue.
GibbsSolution solve_beta(const Spectrum& spec, double energy);

double gibbs_entropy(const Spectrum& spec, double energy);

// Truncated Gibbs density matrix of op at expected energy E. The truncation
// must carry essentially all of Z (top-level Boltzmann weight <= 1e-12 of Z),
// otherwise TruncationError suggests a larger dim.
DensityMatrix gibbs_state(const HermitianOperator& op, double energy);

// Literal pair sums over lambda + lambda' <= cutoff:
// first = sum lambda^2, second = sum lambda lambda'.
std::pair<double, double> n_updown(const Spectrum& spec, double cutoff);

struct AsymptoticsReport {
    std::vector<double> cutoffs;
    std::vector<double> xi_estimates;  // N_up / N_down per cutoff
    std::optional<double> xi;          // extrapolated; absent if fit rejected
    std::optional<double> eta;         // 1 / (xi - 1)
    double fit_residual = 0.0;
    std::string diagnostic;
};

// Fits r(cutoff) = xi + c / cutoff by least squares; the limit is accepted
// when the relative RMS residual is <= 1e-3.
AsymptoticsReport estimate_eta(const Spectrum& spec, const std::vector<double>& cutoffs);

// Geometric default grid ending at cutoff_max.
std::vector<double> default_cutoff_grid(double cutoff_max);

struct AsymptoticsRow {
    double energy;
    double beta;
    double beta_e_over_eta;       // -> 1
    double log_z;
    double log_z_minus_eta_log_e; // -> log kappa
    double entropy;
    double entropy_ratio;         // S / (eta log E) -> 1
};

struct AsymptoticsTable {
    double eta;
    std::vector<AsymptoticsRow> rows;
    double kappa_estimate;     // Z / E^eta at the largest listed energy
    double kappa_estimate_at;  // that energy
};

AsymptoticsTable asymptotics_check(const Spectrum& spec, const std::vector<double>& energies,
                                   std::optional<double> eta = std::nullopt);

}  // namespace qdslim::gibbs

#endif
