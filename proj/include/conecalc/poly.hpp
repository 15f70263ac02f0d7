// Copyright (c) 2026 the conecalc authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef CONECALC_POLY_HPP
#define CONECALC_POLY_HPP

#include "conecalc/types.hpp"

namespace conecalc {

/// Scalar polynomial over C, coefficient of z^j at index j.
class Polynomial {
public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Cplx> coeffs) : c_(std::move(coeffs)) { trim(); }
  static Polynomial constant(Cplx v) { return Polynomial({v}); }
  static Polynomial monomial(int deg, Cplx v = 1.0);
  static Polynomial from_roots(const std::vector<Cplx>& roots, Cplx lead = 1.0);

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for the zero polynomial
  bool is_zero() const { return c_.empty(); }
  const std::vector<Cplx>& coeffs() const { return c_; }
  Cplx coeff(int j) const { return j >= 0 && j < static_cast<int>(c_.size()) ? c_[j] : Cplx(0); }

  Cplx eval(Cplx z) const;
  Polynomial derivative() const;
  Polynomial translate(Cplx beta) const;  // p(z + beta)

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(Cplx s) const;

  double coeff_norm() const;

  /// All roots via the balanced companion matrix; empty for degree <= 0.
  std::vector<Cplx> roots() const;

  /// Synthetic division by (z - p); remainder = value at p.
  Polynomial deflate(Cplx p, Cplx* remainder = nullptr) const;

private:
  void trim();
  std::vector<Cplx> c_;
};

/// Square-matrix-valued polynomial in one complex variable.
class MatPolynomial {
public:
  MatPolynomial() = default;
  explicit MatPolynomial(std::vector<CMatrix> coeffs);
  static MatPolynomial constant(const CMatrix& m) { return MatPolynomial({m}); }
  static MatPolynomial zero(int size) { return MatPolynomial({CMatrix::Zero(size, size)}); }
  static MatPolynomial from_scalar(const Polynomial& p);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  int size() const { return c_.empty() ? 0 : static_cast<int>(c_[0].rows()); }
  bool is_zero() const;
  const std::vector<CMatrix>& coeffs() const { return c_; }
  const CMatrix& coeff(int j) const;

  CMatrix eval(Cplx z) const;
  MatPolynomial derivative() const;
  MatPolynomial translate(Cplx beta) const;

  MatPolynomial operator+(const MatPolynomial& o) const;
  MatPolynomial operator-(const MatPolynomial& o) const;
  MatPolynomial operator*(const MatPolynomial& o) const;
  MatPolynomial operator*(Cplx s) const;

  double coeff_norm() const;
  void trim(double tol_abs = 0.0);

private:
  std::vector<CMatrix> c_;
};

/// Multiplicity-clustered zero of a determinant / matrix polynomial.
struct ClusteredZero {
  Cplx location;
  int multiplicity = 1;
};

struct PolyeigOptions {
  bool allow_infinite = false;  // accept singular leading coefficient; infinite eigenvalues dropped
  Tolerances tol{};
};

struct PolyeigResult {
  std::vector<ClusteredZero> zeros;
  int dropped_infinite = 0;
  std::vector<std::string> warnings;
};

/// Finite spectrum of det h(z) = 0 with algebraic multiplicities, via companion
/// linearization of the matrix polynomial.
PolyeigResult polyeig(const MatPolynomial& h, const PolyeigOptions& opts = {});

/// Cluster numerically coincident points, merge radius root_merge*(1+|z|).
std::vector<ClusteredZero> cluster_points(std::vector<Cplx> pts, double root_merge);

/// Determinant of h as a scalar polynomial (interpolation on a circle).
Polynomial mat_poly_det(const MatPolynomial& h);

/// Adjugate of h: adj(h)(z) * h(z) = det(h)(z) * I, exact matrix polynomial.
MatPolynomial mat_poly_adjugate(const MatPolynomial& h);

}  // namespace conecalc

#endif
