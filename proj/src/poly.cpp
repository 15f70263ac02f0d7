// Copyright (c) 2026 the conecalc authors.
// SPDX-License-Identifier: Apache-2.0

#include "conecalc/poly.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace conecalc {

namespace {
constexpr double kTrimEps = 0.0;  // exact trim; callers pass explicit tolerances when needed

std::vector<Cplx> binomial_shift(const std::vector<Cplx>& c, Cplx beta) {
  // Horner-style shift: p(z+beta) computed by repeated synthetic division.
  std::vector<Cplx> a = c;
  const int n = static_cast<int>(a.size());
  for (int i = 0; i < n - 1; ++i)
    for (int j = n - 2; j >= i; --j) a[j] += beta * a[j + 1];
  return a;
}
}  // namespace

Polynomial Polynomial::monomial(int deg, Cplx v) {
  std::vector<Cplx> c(deg + 1, Cplx(0));
  c[deg] = v;
  return Polynomial(std::move(c));
}

Polynomial Polynomial::from_roots(const std::vector<Cplx>& roots, Cplx lead) {
  std::vector<Cplx> c{lead};
  for (Cplx r : roots) {
    std::vector<Cplx> next(c.size() + 1, Cplx(0));
    for (size_t j = 0; j < c.size(); ++j) {
      next[j] += -r * c[j];
      next[j + 1] += c[j];
    }
    c = std::move(next);
  }
  return Polynomial(std::move(c));
}

void Polynomial::trim() {
  while (!c_.empty() && std::abs(c_.back()) <= kTrimEps) c_.pop_back();
}

Cplx Polynomial::eval(Cplx z) const {
  Cplx acc(0);
  for (int j = static_cast<int>(c_.size()) - 1; j >= 0; --j) acc = acc * z + c_[j];
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return Polynomial();
  std::vector<Cplx> d(c_.size() - 1);
  for (size_t j = 1; j < c_.size(); ++j) d[j - 1] = double(j) * c_[j];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::translate(Cplx beta) const {
  if (c_.empty() || beta == Cplx(0)) return *this;
  return Polynomial(binomial_shift(c_, beta));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<Cplx> c(std::max(c_.size(), o.c_.size()), Cplx(0));
  for (size_t j = 0; j < c_.size(); ++j) c[j] += c_[j];
  for (size_t j = 0; j < o.c_.size(); ++j) c[j] += o.c_[j];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * Cplx(-1); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (c_.empty() || o.c_.empty()) return Polynomial();
  std::vector<Cplx> c(c_.size() + o.c_.size() - 1, Cplx(0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator*(Cplx s) const {
  std::vector<Cplx> c = c_;
  for (auto& v : c) v *= s;
  return Polynomial(std::move(c));
}

double Polynomial::coeff_norm() const {
  double m = 0;
  for (const auto& v : c_) m = std::max(m, std::abs(v));
  return m;
}

std::vector<Cplx> Polynomial::roots() const {
  // Trim numerically negligible leading coefficients before forming the companion.
  std::vector<Cplx> c = c_;
  const double scale = coeff_norm();
  while (c.size() > 1 && std::abs(c.back()) <= 1e-14 * scale) c.pop_back();
  const int d = static_cast<int>(c.size()) - 1;
  if (d <= 0) return {};
  if (d == 1) return {-c[0] / c[1]};
  CMatrix comp = CMatrix::Zero(d, d);
  for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) comp(i, d - 1) = -c[i] / c[d];
  Eigen::ComplexEigenSolver<CMatrix> es(comp, false);
  std::vector<Cplx> out(es.eigenvalues().data(), es.eigenvalues().data() + d);
  return out;
}

Polynomial Polynomial::deflate(Cplx p, Cplx* remainder) const {
  if (c_.empty()) {
    if (remainder) *remainder = 0;
    return Polynomial();
  }
  std::vector<Cplx> q(c_.size() - 1, Cplx(0));
  Cplx carry = c_.back();
  for (int j = static_cast<int>(c_.size()) - 2; j >= 0; --j) {
    q[j] = carry;
    carry = c_[j] + p * carry;
  }
  if (remainder) *remainder = carry;
  return Polynomial(std::move(q));
}

MatPolynomial::MatPolynomial(std::vector<CMatrix> coeffs) : c_(std::move(coeffs)) {
  for (const auto& m : c_)
    if (m.rows() != m.cols() || (!c_.empty() && m.rows() != c_[0].rows()))
      fail(ErrorCode::schema, "MatPolynomial coefficients must be square and of equal size");
  trim();
}

MatPolynomial MatPolynomial::from_scalar(const Polynomial& p) {
  std::vector<CMatrix> c;
  for (Cplx v : p.coeffs()) c.push_back(CMatrix::Constant(1, 1, v));
  if (c.empty()) c.push_back(CMatrix::Zero(1, 1));
  return MatPolynomial(std::move(c));
}

bool MatPolynomial::is_zero() const {
  for (const auto& m : c_)
    if (m.norm() != 0) return false;
  return true;
}

const CMatrix& MatPolynomial::coeff(int j) const {
  static const CMatrix empty;
  if (j < 0 || j >= static_cast<int>(c_.size())) {
    static thread_local CMatrix zero;
    zero = CMatrix::Zero(size(), size());
    return zero;
  }
  return c_[j];
}

CMatrix MatPolynomial::eval(Cplx z) const {
  if (c_.empty()) return CMatrix();
  CMatrix acc = CMatrix::Zero(size(), size());
  for (int j = static_cast<int>(c_.size()) - 1; j >= 0; --j) acc = acc * z + c_[j];
  return acc;
}

MatPolynomial MatPolynomial::derivative() const {
  if (c_.size() <= 1) return MatPolynomial::zero(size());
  std::vector<CMatrix> d(c_.size() - 1);
  for (size_t j = 1; j < c_.size(); ++j) d[j - 1] = double(j) * c_[j];
  return MatPolynomial(std::move(d));
}

MatPolynomial MatPolynomial::translate(Cplx beta) const {
  if (c_.empty() || beta == Cplx(0)) return *this;
  std::vector<CMatrix> a = c_;
  const int n = static_cast<int>(a.size());
  for (int i = 0; i < n - 1; ++i)
    for (int j = n - 2; j >= i; --j) a[j] += beta * a[j + 1];
  return MatPolynomial(std::move(a));
}

MatPolynomial MatPolynomial::operator+(const MatPolynomial& o) const {
  if (c_.empty()) return o;
  if (o.c_.empty()) return *this;
  std::vector<CMatrix> c(std::max(c_.size(), o.c_.size()), CMatrix::Zero(size(), size()));
  for (size_t j = 0; j < c_.size(); ++j) c[j] += c_[j];
  for (size_t j = 0; j < o.c_.size(); ++j) c[j] += o.c_[j];
  return MatPolynomial(std::move(c));
}

MatPolynomial MatPolynomial::operator-(const MatPolynomial& o) const {
  return *this + o * Cplx(-1);
}

MatPolynomial MatPolynomial::operator*(const MatPolynomial& o) const {
  if (c_.empty() || o.c_.empty()) return MatPolynomial();
  std::vector<CMatrix> c(c_.size() + o.c_.size() - 1,
                         CMatrix::Zero(size(), size()));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
  return MatPolynomial(std::move(c));
}

MatPolynomial MatPolynomial::operator*(Cplx s) const {
  std::vector<CMatrix> c = c_;
  for (auto& m : c) m *= s;
  return MatPolynomial(std::move(c));
}

double MatPolynomial::coeff_norm() const {
  double m = 0;
  for (const auto& mat : c_) m = std::max(m, mat.cwiseAbs().maxCoeff());
  return m;
}

void MatPolynomial::trim(double tol_abs) {
  while (c_.size() > 1 && c_.back().cwiseAbs().maxCoeff() <= tol_abs) c_.pop_back();
}

std::vector<ClusteredZero> cluster_points(std::vector<Cplx> pts, double root_merge) {
  std::vector<ClusteredZero> out;
  std::sort(pts.begin(), pts.end(), [](Cplx a, Cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  std::vector<bool> used(pts.size(), false);
  for (size_t i = 0; i < pts.size(); ++i) {
    if (used[i]) continue;
    Cplx sum = pts[i];
    int count = 1;
    used[i] = true;
    bool grew = true;
    while (grew) {
      grew = false;
      Cplx centroid = sum / double(count);
      double radius = root_merge * (1.0 + std::abs(centroid));
      for (size_t j = 0; j < pts.size(); ++j) {
        if (used[j]) continue;
        if (std::abs(pts[j] - centroid) <= radius) {
          sum += pts[j];
          ++count;
          used[j] = true;
          grew = true;
        }
      }
    }
    out.push_back({sum / double(count), count});
  }
  std::sort(out.begin(), out.end(), [](const ClusteredZero& a, const ClusteredZero& b) {
    if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
    return a.location.imag() < b.location.imag();
  });
  return out;
}

namespace {

// Interpolation nodes: scaled roots of unity with radius beyond the Cauchy
// bound of the determinant's roots, so node evaluations stay well conditioned.
double node_radius(const MatPolynomial& h) {
  double m = std::max(1.0, h.coeff_norm());
  const CMatrix& lead = h.coeffs().back();
  Eigen::JacobiSVD<CMatrix> svd(lead);
  double smin = svd.singularValues().size() ? svd.singularValues().minCoeff() : 0.0;
  double bound = smin > 1e-12 * m ? 1.0 + double(h.size()) * m / smin : 8.0 * (1.0 + m);
  return std::min(std::max(2.0, bound), 64.0);
}

std::vector<Cplx> interp_coeffs(const std::vector<Cplx>& values, double radius) {
  // Inverse DFT on n scaled roots of unity.
  const int n = static_cast<int>(values.size());
  std::vector<Cplx> c(n, Cplx(0));
  for (int k = 0; k < n; ++k) {
    Cplx acc(0);
    for (int j = 0; j < n; ++j) {
      double ang = -2.0 * M_PI * j * k / n;
      acc += values[j] * Cplx(std::cos(ang), std::sin(ang));
    }
    c[k] = acc / (double(n) * std::pow(radius, k));
  }
  return c;
}

}  // namespace

Polynomial mat_poly_det(const MatPolynomial& h) {
  const int K = h.size();
  if (K == 0) return Polynomial();
  const int dmax = K * std::max(h.degree(), 0);
  const int n = dmax + 1;
  const double R = node_radius(h);
  std::vector<Cplx> vals(n);
  for (int j = 0; j < n; ++j) {
    double ang = 2.0 * M_PI * j / n;
    Cplx x = R * Cplx(std::cos(ang), std::sin(ang));
    vals[j] = h.eval(x).determinant();
  }
  std::vector<Cplx> c = interp_coeffs(vals, R);
  // Trim trailing coefficients that are interpolation noise.
  double scale = 0;
  for (auto v : c) scale = std::max(scale, std::abs(v));
  while (c.size() > 1 && std::abs(c.back()) <= 1e-10 * scale) c.pop_back();
  return Polynomial(std::move(c));
}

MatPolynomial mat_poly_adjugate(const MatPolynomial& h) {
  const int K = h.size();
  if (K == 1) return MatPolynomial::constant(CMatrix::Identity(1, 1));
  const int dmax = (K - 1) * std::max(h.degree(), 0);
  const int n = dmax + 1;
  const double R = node_radius(h);
  std::vector<CMatrix> vals(n);
  for (int j = 0; j < n; ++j) {
    double ang = 2.0 * M_PI * j / n;
    Cplx x = R * Cplx(std::cos(ang), std::sin(ang));
    CMatrix hx = h.eval(x);
    Eigen::PartialPivLU<CMatrix> lu(hx);
    vals[j] = lu.inverse() * lu.determinant();
  }
  std::vector<CMatrix> coeffs(n, CMatrix::Zero(K, K));
  for (int r = 0; r < K; ++r)
    for (int cidx = 0; cidx < K; ++cidx) {
      std::vector<Cplx> entry(n);
      for (int j = 0; j < n; ++j) entry[j] = vals[j](r, cidx);
      std::vector<Cplx> cf = interp_coeffs(entry, R);
      for (int k = 0; k < n; ++k) coeffs[k](r, cidx) = cf[k];
    }
  MatPolynomial adj(std::move(coeffs));
  adj.trim(1e-10 * std::max(1.0, adj.coeff_norm()));
  return adj;
}

PolyeigResult polyeig(const MatPolynomial& h, const PolyeigOptions& opts) {
  PolyeigResult res;
  const int K = h.size();
  if (K == 0) fail(ErrorCode::schema, "polyeig: empty matrix polynomial");
  const int d = h.degree();
  if (d <= 0) {
    // Constant symbol: no finite non-linear eigenvalues unless singular everywhere.
    Eigen::JacobiSVD<CMatrix> svd(h.coeff(0));
    double smin = svd.singularValues().minCoeff();
    if (smin <= 1e-13 * std::max(1.0, h.coeff_norm()))
      fail(ErrorCode::numerical, "polyeig: identically singular symbol");
    return res;
  }

  const CMatrix& lead = h.coeffs().back();
  Eigen::JacobiSVD<CMatrix> svd(lead);
  const double lead_smin = svd.singularValues().minCoeff();
  const double scale = std::max(1.0, h.coeff_norm());
  std::vector<Cplx> raw;

  if (lead_smin > 1e-10 * scale) {
    // Block companion linearization with the leading coefficient inverted.
    Eigen::PartialPivLU<CMatrix> lu(lead);
    const int N = K * d;
    CMatrix comp = CMatrix::Zero(N, N);
    for (int b = 1; b < d; ++b) comp.block(b * K, (b - 1) * K, K, K) = CMatrix::Identity(K, K);
    for (int b = 0; b < d; ++b) comp.block(b * K, (d - 1) * K, K, K) = -lu.solve(h.coeff(b));
    Eigen::ComplexEigenSolver<CMatrix> es(comp, false);
    raw.assign(es.eigenvalues().data(), es.eigenvalues().data() + N);
  } else {
    if (!opts.allow_infinite)
      fail(ErrorCode::numerical,
           "polyeig: singular leading coefficient (pass allow_infinite to drop "
           "infinite eigenvalues)");
    // Degenerate leading block: fall back to the companion matrix of det h.
    Polynomial det = mat_poly_det(h);
    if (det.degree() <= 0) {
      if (det.is_zero() || std::abs(det.coeff(0)) <= 1e-12 * scale)
        fail(ErrorCode::numerical, "polyeig: identically singular symbol");
      res.dropped_infinite = K * d;
      return res;
    }
    raw = det.roots();
    res.dropped_infinite = K * d - det.degree();
    res.warnings.push_back("singular leading coefficient: " +
                           std::to_string(res.dropped_infinite) +
                           " infinite eigenvalues dropped");
  }

  res.zeros = cluster_points(std::move(raw), opts.tol.root_merge);

  // Residual sanity: each clustered zero should make h nearly singular.
  for (const auto& zc : res.zeros) {
    Eigen::JacobiSVD<CMatrix> s(h.eval(zc.location));
    double smin = s.singularValues().minCoeff();
    double local = std::max(1.0, h.eval(zc.location).cwiseAbs().maxCoeff());
    if (smin > 1e-5 * local)
      res.warnings.push_back("ill-conditioned linearization near z=" +
                             std::to_string(zc.location.real()) + "+" +
                             std::to_string(zc.location.imag()) +
                             "i, residual smin=" + std::to_string(smin));
  }
  return res;
}

}  // namespace conecalc
