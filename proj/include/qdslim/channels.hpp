#ifndef QDSLIM_CHANNELS_HPP
#define QDSLIM_CHANNELS_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qdslim/operators.hpp"
#include "qdslim/states.hpp"

namespace qdslim {

// GKLS generator data: L(rho) = -i[H, rho] + sum_l (L rho L^+ - 1/2 {L^+L, rho}).
// `dissipator` is K = -1/2 sum L^+L, kept explicitly so dissipativity and the
// relative-bound bookkeeping are checkable. `bounded_by` selects which of the
// open-system prefactors (omega_H with |H|, omega_K with |K|) certifies the
// semigroup: H_bounds_K means K is relatively H-bounded, K_bounds_H the reverse.
struct LindbladModel {
    enum class BoundedBy { H_bounds_K, K_bounds_H };

    HermitianOperator hamiltonian;
    std::vector<Matrix> lindblad_ops;
    HermitianOperator dissipator;
    double rel_bound_a = 0.0;
    double rel_bound_b = 0.0;
    BoundedBy bounded_by = BoundedBy::H_bounds_K;

    // Builds K from the Lindblad operators and validates dissipativity.
    // With fit_bounds set, (a, b) are the smallest least-squares pair with
    // ||K phi|| <= a ||H phi|| + b ||phi|| on the eigenbasis of H (intercept
    // raised until every eigenvector satisfies the inequality).
    static LindbladModel make(HermitianOperator hamiltonian,
                              std::vector<Matrix> lindblad_ops,
                              BoundedBy bounded_by, double rel_a, double rel_b);
    static LindbladModel make_fitted(HermitianOperator hamiltonian,
                                     std::vector<Matrix> lindblad_ops,
                                     BoundedBy bounded_by);

    int dim() const { return hamiltonian.dim(); }

    // Action of the generator on a (not necessarily Hermitian) matrix.
    Matrix apply_generator(const Matrix& rho) const;

    // Upper bound on the superoperator norm, used to pick exponential steps.
    double generator_norm_bound() const;
};

// rho(t) = e^{-itH} rho e^{itH}.
DensityMatrix evolve_von_neumann(const DensityMatrix& rho, const HermitianOperator& h,
                                 double t);

// Attenuator Kraus series sum_l (1-e^{-t})^l / l! e^{-tN/2} a^l rho (a^+)^l e^{-tN/2}.
// Auto mode picks l_max so the Kraus-completeness defect on the support of rho
// is <= 1e-8 (exact once l_max reaches the top occupied level). A manual l_max
// requires the support to fit dim - l_max and otherwise raises TruncationError.
DensityMatrix attenuator_apply(const DensityMatrix& rho, double t,
                               std::optional<int> l_max = std::nullopt);

// Column-stacking superoperator of the generator: vec(L(rho)) = S vec(rho).
Matrix lindblad_superoperator(const LindbladModel& model);

// exp(t L) applied to rho, evaluated as the matrix exponential of the
// superoperator acting on vec(rho) (computed stepwise through the structured
// generator action; never materializes the dim^2 x dim^2 matrix).
DensityMatrix evolve_lindblad(const DensityMatrix& rho, const LindbladModel& model,
                              double t);
Matrix evolve_lindblad_raw(const Matrix& rho, const LindbladModel& model, double t);

LindbladModel preset_attenuator(int dim);
LindbladModel preset_amplifier(int dim);
LindbladModel preset_damped_pumped(int dim, double gamma_down, double gamma_up,
                                   double zeta);
LindbladModel preset_brownian(int dim, double gamma1, double beta1, double gamma2,
                              double beta2);
// Two-level ion in a harmonic trap; acts on dim_fock x 2 (Fock factor first).
LindbladModel preset_jaynes_cummings(int dim_fock, double nu, double delta,
                                     double rabi, double lamb_dicke, double decay);

// "attenuator", "amplifier", "damped_pumped:gd,gu,zeta", "brownian:g1,b1,g2,b2",
// "jaynes_cummings:nu,delta,rabi,eta,gamma". Unknown names raise DomainError.
LindbladModel preset_from_string(const std::string& name, int dim);

// Time-parametrized CPTP map on a truncation. Unitary and Liouvillian kinds
// exponentiate their generator; the Kraus attenuator uses the explicit series
// (and doubles as the independent oracle for the attenuator Liouvillian).
class ChannelFamily {
  public:
    enum class Kind { unitary, kraus_attenuator, liouvillian };

    static ChannelFamily unitary(HermitianOperator h);
    static ChannelFamily kraus_attenuator(int dim);
    static ChannelFamily liouvillian(LindbladModel model);

    Kind kind() const { return kind_; }
    int dim() const;
    const LindbladModel& model() const;

    DensityMatrix apply(const DensityMatrix& rho, double t) const;

    // (Lambda_t x id_anc)(rho) for rho on system x ancilla, system factor first.
    DensityMatrix apply_tensored(const DensityMatrix& rho, double t,
                                 int ancilla_dim) const;

  private:
    ChannelFamily(Kind kind, std::optional<HermitianOperator> h,
                  std::optional<LindbladModel> model, int dim);

    Kind kind_;
    std::optional<HermitianOperator> hamiltonian_;
    std::shared_ptr<const LindbladModel> model_;
    int dim_;
};

}  // namespace qdslim

#endif
