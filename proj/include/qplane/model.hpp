#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "qplane/cohomology.hpp"

namespace qplane {

/// Unilateral shift T e_n = e_{n+1} and diagonal S e_n = q^n e_n on l_p(Z_+).
struct ModelParams {
  Scalar q{0.5};
  double p = 2.0;
  std::size_t N = 200;

  void validate() const;  // BadParameter unless 0 < |q| < 1, p >= 1, N >= 2
  QPair pair(std::size_t validation_dim = 50) const;
};

enum class ReferenceClass { Resolvent, Spectral, Essential, UnknownBand };
const char* reference_class_name(ReferenceClass c);

struct ReferenceSpectra {
  ComplexSet sigma_T;         // closed unit disk
  ComplexSet sigma_S;         // {q^n} u {0}
  double annulus_inner = 1.0; // sigma_l contains the closed annulus between these radii
  double annulus_outer = 2.0; // and lies inside the disk of radius annulus_outer
  ComplexSet sigma_r;         // {1}
  ComplexSet sigma_e_x;       // circles of radii 1 and |q|^{-1}
};

ReferenceSpectra reference_spectra(const ModelParams& params);

/// Closed-form membership. With band = 0 the radius tests are exact rational
/// comparisons; a positive band widens them (used on grids).
ReferenceClass reference_membership(const ModelParams& params, const CharacterPoint& gamma,
                                    double band = 0.0);

struct AnnulusWitness {
  Eigen::VectorXcd zeta;  // sum_{n<=N} lambda^{-(n+1)} e_n
  Eigen::VectorXcd eta;   // e_0
  double residual = 0.0;           // |(lambda - T) zeta - S eta| including the corner
  double interior_residual = 0.0;  // same without the last component
  double corner_term = 0.0;        // |lambda|^{-N-1}
  double zeta_norm_partial = 0.0;  // l_p norm of the truncated zeta
  double zeta_norm_closed = 0.0;   // (|lambda|^p - 1)^{-1/p}
  std::vector<double> alpha_abs;   // |alpha_n| = 1 / (|lambda| |q lambda|^n), n <= N
  double alpha_liminf = 0.0;       // min over the second half of alpha_abs
  double lift_norm_half = 0.0;     // partial l_p norm of alpha up to N/2 ...
  double lift_norm_full = 0.0;     // ... and up to N
  bool divergence_certificate = false;

  nlohmann::json to_json() const;
};

/// Requires 1 < |lambda| <= |q|^{-1}; throws OutOfAnnulus otherwise.
AnnulusWitness witness_h1_annulus(const ModelParams& params, const Scalar& lambda);

/// eta given by finitely many coefficients beta_0..beta_{L-1}, optionally
/// continued by beta_k = tail_scale * tail_ratio^k for k >= L (|tail_ratio| < 1).
struct TailFunctionalInput {
  std::vector<Complex> beta;
  Complex tail_scale{0.0, 0.0};
  Complex tail_ratio{0.0, 0.0};
  Complex lambda{0.0, 0.0};
  Complex q{0.5, 0.0};

  /// beta_0 = -z q lambda / (1 - z q lambda), beta_n = z^n for n >= 1.
  static TailFunctionalInput geometric(Complex z, Complex lambda, Complex q);
  static TailFunctionalInput finite(std::vector<Complex> beta, Complex lambda, Complex q);

  Complex w() const { return q * lambda; }
  bool has_tail() const { return tail_scale != Complex(0.0, 0.0); }
  Complex beta_at(std::size_t k) const;
  /// (eta, zeta_{lambda q}) = sum_n beta_n (q lambda)^n.
  Complex orthogonality() const;
  /// Sum_{k >= m} |beta_k|^2.
  double norm_squared_from(std::size_t m) const;
  /// Adjusts beta_0 so that eta is orthogonal to zeta_{lambda q}.
  void make_orthogonal();
  /// t_n = sum_{k>n} beta_k (q lambda)^{k-n-1} for n < count.
  std::vector<Complex> tail_sums(std::size_t count) const;

  void validate() const;
};

struct EpsilonResult {
  double partial = 0.0;     // sum_{n<N} |t_n|^2
  double remainder = 0.0;   // sum_{n>=N} |t_n|^2, exact for finite or geometric data
  double tail_bound = 0.0;  // a priori bound on the remainder: |beta_{>N}|^2 / (1 - |q lambda|)^2

  double total() const { return partial + remainder; }
  nlohmann::json to_json() const;
};

EpsilonResult epsilon_lambda(const TailFunctionalInput& inp, std::size_t N);

/// |z / (1 - z q lambda)|^2 / (1 - |z|^2)
double epsilon_geometric_closed_form(Complex z, Complex lambda, Complex q);

enum class Membership { Member, NonMember, Undecided };
const char* membership_name(Membership m);

struct MLambdaOptions {
  double tol = 1e-10;                  // orthogonality
  double cauchy_rel = 1e-2;            // |S_2N - S_N| <= cauchy_rel * S_2N + tol
  double divergence_threshold = 1e12;
};

struct MLambdaVerdict {
  Membership verdict = Membership::Undecided;
  double orthogonality_residual = 0.0;
  double partial_N = 0.0;
  double partial_2N = 0.0;
  double tail_bound = 0.0;
  std::string reason;
  nlohmann::json to_json() const;
};

/// Requires 0 < |lambda| < 1; BadParameter otherwise.
MLambdaVerdict m_lambda_membership(const TailFunctionalInput& inp, std::size_t N,
                                   const MLambdaOptions& opts = {});

struct ReconstructionResult {
  Eigen::VectorXcd alpha;  // alpha_n = -q^{n+1} t_n
  double residual = 0.0;   // |(lambda - T) zeta - S eta| on components 0..N-1
  double orthogonality_residual = 0.0;
  nlohmann::json to_json() const;
};

ReconstructionResult h1_reconstruction_check(const TailFunctionalInput& inp, std::size_t N);

struct RightSolverResult {
  std::size_t k = 0;             // mu = q^k
  Eigen::VectorXcd theta;
  double residual = 0.0;         // |r0 theta - (zeta, eta)| on the input support
  double kernel_residual = 0.0;  // |(mu - S) zeta - T eta| on the input support
  double bound_constant = 0.0;   // sup_{n != k-1} 1 / |mu - q^{n+1}|
  double theta_norm = 0.0;       // l_p norms
  double eta_norm = 0.0;
  bool bound_ok = false;         // |theta|_p <= c |eta|_p + |alpha_k|
  nlohmann::json to_json() const;
};

/// Solves r0_mu theta = (zeta, eta) for mu = q^k, k >= 1, with (zeta, eta) in
/// ker r1_mu given by coefficient vectors of equal length.
RightSolverResult right_spectrum_solver(const ModelParams& params, const Scalar& mu,
                                        const Eigen::VectorXcd& zeta, const Eigen::VectorXcd& eta);

/// Exponent k >= 1 with q^k = mu exactly, if any (k <= 256).
std::optional<std::size_t> positive_power_of(const Scalar& q, const Scalar& mu);

/// Every closed-form and numerical model claim with measured values and pass/fail.
nlohmann::json verify_model(const ModelParams& params);

}  // namespace qplane
