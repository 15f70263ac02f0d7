// Copyright (c) 2026 the conecalc authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef CONECALC_FUCHS_HPP
#define CONECALC_FUCHS_HPP

#include <functional>

#include "conecalc/mero.hpp"
#include "conecalc/spectral.hpp"

namespace conecalc {

/// Fuchs-type operator r^{-mu} sum_j a_j(r) (-r d/dr)^j at spectral truncation,
/// with a_j(r) = sum_i a[j][i] r^i truncated at r-order I_max.
class FuchsOperator {
public:
  FuchsOperator() = default;
  FuchsOperator(int mu, SpectralModel model, std::vector<std::vector<CMatrix>> taylor);

  int mu() const { return mu_; }
  const SpectralModel& model() const { return model_; }
  int r_order() const { return imax_; }
  int size() const { return model_.K; }

  /// Coefficient of (-r d/dr)^j at r-order i; zero matrix outside stored range.
  CMatrix coeff(int j, int i) const;
  const std::vector<std::vector<CMatrix>>& taylor() const { return a_; }

  /// Dispatch label for the closed-form rescaled-symbol check ("" = generic).
  std::string sigma0_form;

private:
  int mu_ = 0;
  int imax_ = 0;
  SpectralModel model_;
  std::vector<std::vector<CMatrix>> a_;  // a_[j][i]
};

/// One term r^{-mu} omega r^j op_M^{gamma_j - n/2}(f_j) omega' of a smoothing
/// Mellin operator; no pole of f_j may sit on Re z = (n+1)/2 - gamma_j.
struct MellinTerm {
  int j = 0;
  double gamma_j = 0;
  MeroMatrix f;
};

class SmoothingMellinPart {
public:
  SmoothingMellinPart() = default;
  /// Validates the weight conditions gamma - j <= gamma_j <= gamma and the
  /// pole-off-line condition for every term.
  SmoothingMellinPart(std::vector<MellinTerm> terms, double gamma, int n,
                      const Tolerances& tol = default_tol());

  bool empty() const { return terms_.empty(); }
  const std::vector<MellinTerm>& terms() const { return terms_; }

private:
  std::vector<MellinTerm> terms_;
};

/// One level of a conormal symbol hierarchy: polynomial part plus an optional
/// meromorphic (smoothing Mellin) part. Kept split so purely differential
/// data stays exact.
struct ConormalLevel {
  MatPolynomial poly;
  std::optional<MeroMatrix> mellin;

  bool is_polynomial() const { return !mellin; }
  MeroMatrix combined(const Tolerances& tol = default_tol()) const;
  bool is_zero() const;
};

/// Conormal symbol hierarchy h[l](z) = sigma_c^{mu-l}: levels 0..depth.
class ConormalHierarchy {
public:
  ConormalHierarchy() = default;
  ConormalHierarchy(int mu, int K, std::vector<ConormalLevel> levels)
      : mu_(mu), K_(K), levels_(std::move(levels)) {}

  int mu() const { return mu_; }
  int size() const { return K_; }
  int depth() const { return static_cast<int>(levels_.size()) - 1; }
  /// Level l, zero beyond the stored depth.
  const ConormalLevel& level(int l) const;
  static ConormalHierarchy identity(int K, int depth);

private:
  int mu_ = 0;
  int K_ = 1;
  std::vector<ConormalLevel> levels_;
};

/// h[l](z) = sum_j a[j][l] z^j + f_l(z).
ConormalHierarchy conormal_hierarchy(const FuchsOperator& a,
                                     const SmoothingMellinPart& mellin, int depth);
inline ConormalHierarchy conormal_hierarchy(const FuchsOperator& a, int depth) {
  return conormal_hierarchy(a, SmoothingMellinPart{}, depth);
}

/// Mellin translation product: level l of A∘B is
///   sum_{i+j=l} (T^{nu-j} h_A[i]) h_B[j],   nu = order of B.
ConormalHierarchy translation_product(const ConormalHierarchy& ha, const ConormalHierarchy& hb,
                                      int depth, const Tolerances& tol = default_tol());

struct ComposeOptions {
  int max_r_order = 32;
  bool error_on_truncate = false;
};

struct ComposeResult {
  FuchsOperator op;
  bool truncated = false;
};

/// Exact symbolic composition of two Fuchs expressions renormalized to
/// r^{-(mu+nu)} sum b_j(r) (-r d/dr)^j; the verification oracle for the
/// translation product. Uses (-r d/dr) r^a = r^a ((-r d/dr) - a).
ComposeResult direct_compose(const FuchsOperator& a, const FuchsOperator& b,
                             const ComposeOptions& opts = {});

struct ConormalEllipticityReport {
  bool elliptic = false;
  double line = 0;  // Re z of the weight line checked
  std::vector<ClusteredZero> zeros;
  double min_distance = 0;
  std::string message;
};

/// Non-linear eigenvalue check of h[0] against the weight line Re z=(n+1)/2-gamma.
ConormalEllipticityReport check_conormal_ellipticity(const ConormalHierarchy& h, double gamma,
                                                     int n, const Tolerances& tol = default_tol());

struct WeightShiftResult {
  MeroMatrix shifted;
  bool legal = true;
  double epsilon_used = 0;
};

/// Commutation of r^beta through a Mellin symbol: shifted = T^{-beta} f when no
/// pole of f meets Re z = (n+1)/2 - (gamma+beta); otherwise the epsilon-adjusted
/// shift beta - epsilon is returned with legal = false.
WeightShiftResult weight_shift_commute(const MeroMatrix& f, double gamma, int n, double beta,
                                       double epsilon_fallback = 0,
                                       const Tolerances& tol = default_tol());

enum class Sigma0Status { elliptic, not_elliptic, undeterminable };

struct Sigma0Report {
  Sigma0Status status = Sigma0Status::undeterminable;
  double min_modulus = 0;
  bool leading_block_only = false;
  std::string message;
};

/// Callback returning the min modulus / min singular value of the rescaled
/// principal symbol at (r, covariable-sphere point).
using Sigma0Callback = std::function<double(double r, const std::vector<double>& covariable)>;

/// Rescaled-symbol nonvanishing up to r = 0. Built-ins evaluate a closed form
/// on a sample grid; otherwise the leading z-degree block is checked (reported
/// as such) or the result is undeterminable.
Sigma0Report check_sigma0_ellipticity(const FuchsOperator& a,
                                      const Sigma0Callback& callback = nullptr,
                                      const Tolerances& tol = default_tol());

}  // namespace conecalc

#endif
