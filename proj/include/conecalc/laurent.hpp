// Copyright (c) 2026 the conecalc authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef CONECALC_LAURENT_HPP
#define CONECALC_LAURENT_HPP

#include "conecalc/poly.hpp"
#include "conecalc/types.hpp"

namespace conecalc {

/// Truncated matrix Laurent series in w = z - p:
///   sum_{k >= 0} coeff[k] * w^(lead + k),   valid modulo w^(lead + coeff.size()).
/// All arithmetic keeps track of the guaranteed precision window so that
/// products and inverses never report coefficients they do not know.
class LaurentMat {
public:
  LaurentMat() = default;
  LaurentMat(int lead, std::vector<CMatrix> coeffs);

  static LaurentMat zero(int size, int upto);               // known-zero through w^(upto-1)
  static LaurentMat from_matpoly(const MatPolynomial& h, Cplx p, int terms);
  static LaurentMat monomial(const CMatrix& m, int power, int terms);

  int lead() const { return lead_; }
  int size() const { return c_.empty() ? dim_ : static_cast<int>(c_[0].rows()); }
  int terms() const { return static_cast<int>(c_.size()); }
  /// First exponent beyond the guaranteed window.
  int valid_upto() const { return lead_ + terms(); }
  bool known_zero() const { return c_.empty(); }

  const CMatrix& coeff_at(int power) const;  // zero matrix outside stored range
  const std::vector<CMatrix>& coeffs() const { return c_; }

  LaurentMat operator+(const LaurentMat& o) const;
  LaurentMat operator-(const LaurentMat& o) const;
  LaurentMat operator*(const LaurentMat& o) const;
  LaurentMat scaled(Cplx s) const;

  /// Multiplicative inverse via valuation-pivoted Gaussian elimination over
  /// the Laurent-series field; throws on an (identically) singular series.
  LaurentMat inverse(double zero_tol = 1e-12) const;

  /// Drop leading coefficients whose norm is below tol * (max coefficient norm).
  LaurentMat normalized(double tol) const;

  double max_norm() const;

private:
  int lead_ = 0;
  int dim_ = 0;
  std::vector<CMatrix> c_;
};

/// Scalar series division helper used by the matrix elimination.
struct LaurentScalar {
  int lead = 0;
  std::vector<Cplx> c;
};

}  // namespace conecalc

#endif
