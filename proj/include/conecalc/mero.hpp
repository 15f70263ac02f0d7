// Copyright (c) 2026 the conecalc authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef CONECALC_MERO_HPP
#define CONECALC_MERO_HPP

#include <memory>

#include "conecalc/laurent.hpp"
#include "conecalc/poly.hpp"
#include "conecalc/types.hpp"

namespace conecalc {

/// One pole of a meromorphic matrix function together with its Laurent
/// principal part. principal[k] is the coefficient of (z-p)^{-(k+1)}.
struct PoleDatum {
  Cplx location;
  int order = 1;
  std::vector<CMatrix> principal;
  std::vector<int> ranks;  // rank of each principal part matrix (informational)
};

/// Scalar polynomial kept in factored form: lead * prod (z - root)^mult.
struct FactoredPoly {
  Cplx lead = 1.0;
  std::vector<std::pair<Cplx, int>> factors;

  static FactoredPoly one() { return {}; }
  int degree() const;
  Cplx eval(Cplx z) const;
  Polynomial expand() const;
  FactoredPoly translated(Cplx beta) const;  // roots shift by -beta
  FactoredPoly operator*(const FactoredPoly& o) const;
};

/// Exact rational realization num(z) / den(z) of a meromorphic matrix.
struct RationalForm {
  MatPolynomial num;
  FactoredPoly den;
};

class MeroExpr;
using MeroExprPtr = std::shared_ptr<const MeroExpr>;

/// Candidate pole location with an a-priori order bound, before verification.
struct PoleCandidate {
  Cplx location;
  int order_bound = 1;
};

/// Immutable meromorphic matrix-valued function of one complex variable,
/// realized at spectral truncation. Carries a verified pole list with Laurent
/// data, an evaluator, and (when cheap) an exact rational realization.
class MeroMatrix {
public:
  MeroMatrix() = default;

  static MeroMatrix from_poly(const MatPolynomial& p);
  static MeroMatrix from_rational(MatPolynomial num, FactoredPoly den,
                                  const Tolerances& tol = default_tol());
  static MeroMatrix zero(int size);
  static MeroMatrix identity(int size);

  int size() const { return size_; }
  bool valid() const { return expr_ != nullptr; }

  CMatrix eval(Cplx z) const;
  /// Laurent coefficients around p for powers lead..lead+terms-1 (lead from data).
  LaurentMat series_at(Cplx p, int terms) const;

  const std::vector<PoleDatum>& poles() const { return poles_; }
  const std::optional<RationalForm>& rational() const { return closed_; }
  const std::optional<Interval>& valid_strip() const { return strip_; }
  MeroMatrix with_strip(Interval s) const;

  bool is_polynomial() const;
  std::optional<MatPolynomial> as_polynomial() const;

  /// Re-derive a rational realization from verified pole data for a function
  /// that decays at infinity (proper); used when the closed form was dropped.
  std::optional<RationalForm> reconstruct_rational(const Tolerances& tol = default_tol()) const;

  // Internal assembly (used by the free operations below).
  static MeroMatrix assemble(MeroExprPtr expr, std::vector<PoleCandidate> candidates,
                             std::optional<RationalForm> closed, const Tolerances& tol);
  const MeroExprPtr& expr() const { return expr_; }

private:
  MeroExprPtr expr_;
  std::vector<PoleDatum> poles_;
  std::optional<RationalForm> closed_;
  std::optional<Interval> strip_;
  int size_ = 0;
};

/// (T^beta f)(z) = f(z + beta); pole locations shift by -beta.
MeroMatrix translate(const MeroMatrix& f, double beta, const Tolerances& tol = default_tol());
MatPolynomial translate(const MatPolynomial& f, double beta);

/// Pointwise product extended across poles; cancellations pruned.
MeroMatrix mero_mul(const MeroMatrix& f, const MeroMatrix& g,
                    const Tolerances& tol = default_tol());

MeroMatrix mero_add(const MeroMatrix& f, const MeroMatrix& g,
                    const Tolerances& tol = default_tol());
MeroMatrix mero_scale(const MeroMatrix& f, Cplx s, const Tolerances& tol = default_tol());
MeroMatrix mero_combine(const std::vector<std::pair<Cplx, MeroMatrix>>& terms,
                        const Tolerances& tol = default_tol());

/// h(z)^{-1} for a matrix polynomial; pole set = polyeig zero set.
MeroMatrix mero_inverse(const MatPolynomial& h, const Tolerances& tol = default_tol(),
                        bool allow_infinite = false);

/// Inverse of a general rational meromorphic matrix (needs a rational form).
MeroMatrix mero_inverse(const MeroMatrix& m, const Tolerances& tol = default_tol());

/// l with (1+m)(1+l) = (1+l)(1+m) = 1.
MeroMatrix invert_one_plus(const MeroMatrix& m, const Tolerances& tol = default_tol());

/// Laurent coefficients of f at p: powers (z-p)^{-order(p)} ... (z-p)^{depth}.
struct LaurentData {
  int lead = 0;                  // lowest power reported
  std::vector<CMatrix> coeffs;   // coeffs[k] multiplies (z-p)^(lead+k)
};
LaurentData laurent_at(const MeroMatrix& f, Cplx p, int depth,
                       const Tolerances& tol = default_tol());

/// Max spurious negative-power mass of f minus its stored principal parts on
/// circles around each pole (Cauchy-integral check of the holo remainder).
double holo_remainder_defect(const MeroMatrix& f, int samples = 64);

/// Zeros of det(f) for rational f (finite spectrum), used by ellipticity checks.
std::vector<ClusteredZero> mero_det_zeros(const MeroMatrix& f,
                                          const Tolerances& tol = default_tol());

/// Random sample points avoiding listed poles; deterministic in seed.
std::vector<Cplx> sample_points(int count, const std::vector<Cplx>& avoid, double min_dist,
                                double re_lo, double re_hi, double im_lo, double im_hi,
                                unsigned long long seed);

}  // namespace conecalc

#endif
