// Copyright (c) 2026 the conecalc authors.
// SPDX-License-Identifier: Apache-2.0

#include "conecalc/laurent.hpp"

#include <algorithm>
#include <cmath>

namespace conecalc {

namespace {

// Scalar truncated Laurent series used inside the elimination:
//   f = sum c[k] w^(lead+k)  known modulo w^prec  (c may be empty: f = O(w^prec), zero as far as known).
struct Ser {
  int lead = 0;
  int prec = 0;
  std::vector<Cplx> c;

  bool zero() const { return c.empty(); }
  double max_abs() const {
    double m = 0;
    for (auto v : c) m = std::max(m, std::abs(v));
    return m;
  }
};

Ser strip(Ser f, double tol) {
  double scale = std::max(f.max_abs(), 1e-300);
  size_t k = 0;
  while (k < f.c.size() && std::abs(f.c[k]) <= tol * scale) ++k;
  f.c.erase(f.c.begin(), f.c.begin() + k);
  f.lead += static_cast<int>(k);
  if (f.c.empty()) f.lead = f.prec;
  return f;
}

Ser add(const Ser& a, const Ser& b, double tol) {
  Ser out;
  out.prec = std::min(a.prec, b.prec);
  int lo = std::min(a.zero() ? out.prec : a.lead, b.zero() ? out.prec : b.lead);
  if (lo >= out.prec) {
    out.lead = out.prec;
    return out;
  }
  out.lead = lo;
  out.c.assign(out.prec - lo, Cplx(0));
  for (size_t k = 0; k < a.c.size(); ++k) {
    int e = a.lead + static_cast<int>(k);
    if (e < out.prec) out.c[e - lo] += a.c[k];
  }
  for (size_t k = 0; k < b.c.size(); ++k) {
    int e = b.lead + static_cast<int>(k);
    if (e < out.prec) out.c[e - lo] += b.c[k];
  }
  return strip(std::move(out), tol);
}

Ser neg(Ser a) {
  for (auto& v : a.c) v = -v;
  return a;
}

Ser mul(const Ser& a, const Ser& b, double tol) {
  Ser out;
  if (a.zero() || b.zero()) {
    out.prec = std::min(a.zero() ? a.prec + (b.zero() ? 0 : b.lead) : a.lead + b.prec,
                        b.zero() ? b.prec + (a.zero() ? 0 : a.lead) : b.lead + a.prec);
    if (a.zero() && b.zero()) out.prec = std::min(a.prec + b.prec, std::max(a.prec, b.prec));
    out.lead = out.prec;
    return out;
  }
  out.lead = a.lead + b.lead;
  out.prec = std::min(a.prec + b.lead, b.prec + a.lead);
  int n = out.prec - out.lead;
  if (n <= 0) {
    out.lead = out.prec;
    return out;
  }
  out.c.assign(n, Cplx(0));
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) {
      int e = static_cast<int>(i + j);
      if (e < n) out.c[e] += a.c[i] * b.c[j];
    }
  return strip(std::move(out), tol);
}

Ser divide(const Ser& a, const Ser& b, double tol) {
  if (b.zero()) fail(ErrorCode::numerical, "Laurent division by a series that is zero to working precision");
  Ser out;
  if (a.zero()) {
    out.prec = a.prec - b.lead;
    out.lead = out.prec;
    return out;
  }
  out.lead = a.lead - b.lead;
  out.prec = std::min(a.prec - b.lead, b.prec - 2 * b.lead + a.lead);
  int n = out.prec - out.lead;
  if (n <= 0) {
    out.lead = out.prec;
    return out;
  }
  out.c.assign(n, Cplx(0));
  // Power-series long division after shifting both leads away.
  for (int k = 0; k < n; ++k) {
    Cplx acc = k < static_cast<int>(a.c.size()) ? a.c[k] : Cplx(0);
    for (int j = 1; j <= k; ++j)
      if (j < static_cast<int>(b.c.size())) acc -= b.c[j] * out.c[k - j];
    out.c[k] = acc / b.c[0];
  }
  return strip(std::move(out), tol);
}

}  // namespace

LaurentMat::LaurentMat(int lead, std::vector<CMatrix> coeffs) : lead_(lead), c_(std::move(coeffs)) {
  if (!c_.empty()) dim_ = static_cast<int>(c_[0].rows());
}

LaurentMat LaurentMat::zero(int size, int upto) {
  LaurentMat out;
  out.lead_ = upto;
  out.dim_ = size;
  return out;
}

LaurentMat LaurentMat::from_matpoly(const MatPolynomial& h, Cplx p, int terms) {
  MatPolynomial sh = h.translate(p);  // h(p + w)
  std::vector<CMatrix> c;
  const int K = h.size();
  for (int k = 0; k < terms; ++k)
    c.push_back(k <= sh.degree() ? sh.coeff(k) : CMatrix::Zero(K, K));
  return LaurentMat(0, std::move(c));
}

LaurentMat LaurentMat::monomial(const CMatrix& m, int power, int terms) {
  std::vector<CMatrix> c(terms, CMatrix::Zero(m.rows(), m.cols()));
  if (!c.empty()) c[0] = m;
  return LaurentMat(power, std::move(c));
}

const CMatrix& LaurentMat::coeff_at(int power) const {
  int idx = power - lead_;
  if (idx >= 0 && idx < static_cast<int>(c_.size())) return c_[idx];
  static thread_local CMatrix zero;
  zero = CMatrix::Zero(size(), size());
  return zero;
}

double LaurentMat::max_norm() const {
  double m = 0;
  for (const auto& mat : c_) m = std::max(m, mat.cwiseAbs().maxCoeff());
  return m;
}

LaurentMat LaurentMat::operator+(const LaurentMat& o) const {
  int upto = std::min(valid_upto(), o.valid_upto());
  int lo = std::min(known_zero() ? upto : lead_, o.known_zero() ? upto : o.lead_);
  if (lo >= upto) return LaurentMat::zero(std::max(size(), o.size()), upto);
  int K = std::max(size(), o.size());
  std::vector<CMatrix> c(upto - lo, CMatrix::Zero(K, K));
  for (int e = lo; e < upto; ++e) {
    if (!known_zero()) c[e - lo] += coeff_at(e);
    if (!o.known_zero()) c[e - lo] += o.coeff_at(e);
  }
  return LaurentMat(lo, std::move(c));
}

LaurentMat LaurentMat::operator-(const LaurentMat& o) const { return *this + o.scaled(-1.0); }

LaurentMat LaurentMat::scaled(Cplx s) const {
  LaurentMat out = *this;
  for (auto& m : out.c_) m *= s;
  return out;
}

LaurentMat LaurentMat::operator*(const LaurentMat& o) const {
  if (known_zero() || o.known_zero())
    return LaurentMat::zero(std::max(size(), o.size()), lead_ + o.lead_);
  int lead = lead_ + o.lead_;
  int upto = std::min(valid_upto() + o.lead_, o.valid_upto() + lead_);
  int n = upto - lead;
  if (n <= 0) return LaurentMat::zero(size(), upto);
  std::vector<CMatrix> c(n, CMatrix::Zero(size(), size()));
  for (int i = 0; i < terms(); ++i)
    for (int j = 0; j < o.terms(); ++j)
      if (i + j < n) c[i + j] += c_[i] * o.c_[j];
  return LaurentMat(lead, std::move(c));
}

LaurentMat LaurentMat::normalized(double tol) const {
  if (known_zero()) return *this;
  double scale = std::max(max_norm(), 1e-300);
  int k = 0;
  while (k < terms() && c_[k].cwiseAbs().maxCoeff() <= tol * scale) ++k;
  if (k == 0) return *this;
  if (k == terms()) return LaurentMat::zero(size(), valid_upto());
  std::vector<CMatrix> c(c_.begin() + k, c_.end());
  return LaurentMat(lead_ + k, std::move(c));
}

LaurentMat LaurentMat::inverse(double zero_tol) const {
  const int K = size();
  if (K == 0 || known_zero())
    fail(ErrorCode::numerical, "LaurentMat::inverse of a zero series");
  const int prec = valid_upto();

  // Build the augmented system [A | I] with scalar Laurent entries.
  std::vector<std::vector<Ser>> a(K, std::vector<Ser>(2 * K));
  for (int i = 0; i < K; ++i)
    for (int j = 0; j < 2 * K; ++j) {
      Ser s;
      s.prec = (j < K) ? prec : prec - lead_;  // identity carries matching window
      if (j < K) {
        s.lead = lead_;
        s.c.resize(terms());
        for (int k = 0; k < terms(); ++k) s.c[k] = c_[k](i, j);
        s = strip(std::move(s), zero_tol);
      } else {
        s.lead = 0;
        if (i == j - K) s.c = {Cplx(1)};
        else s.lead = s.prec;
      }
      a[i][j] = std::move(s);
    }

  std::vector<int> pivot_row(K, -1);
  std::vector<bool> used(K, false);
  for (int col = 0; col < K; ++col) {
    // Valuation pivoting: smallest lead wins, largest leading coefficient breaks ties.
    int best = -1;
    for (int r = 0; r < K; ++r) {
      if (used[r] || a[r][col].zero()) continue;
      if (best < 0 || a[r][col].lead < a[best][col].lead ||
          (a[r][col].lead == a[best][col].lead &&
           std::abs(a[r][col].c[0]) > std::abs(a[best][col].c[0])))
        best = r;
    }
    if (best < 0)
      fail(ErrorCode::numerical, "LaurentMat::inverse: singular series to working precision");
    used[best] = true;
    pivot_row[col] = best;
    const Ser piv = a[best][col];
    for (int j = 0; j < 2 * K; ++j) a[best][j] = divide(a[best][j], piv, zero_tol);
    for (int r = 0; r < K; ++r) {
      if (r == best || a[r][col].zero()) continue;
      Ser factor = a[r][col];
      for (int j = 0; j < 2 * K; ++j)
        a[r][j] = add(a[r][j], neg(mul(factor, a[best][j], zero_tol)), zero_tol);
    }
  }

  // Assemble the right half in pivot order; find the common window.
  int lo = 0, hi = 0;
  bool first = true;
  for (int col = 0; col < K; ++col)
    for (int j = K; j < 2 * K; ++j) {
      const Ser& s = a[pivot_row[col]][j];
      int l = s.zero() ? s.prec : s.lead;
      if (first) {
        lo = l;
        hi = s.prec;
        first = false;
      } else {
        lo = std::min(lo, l);
        hi = std::min(hi, s.prec);
      }
    }
  if (hi <= lo) hi = lo + 1;
  std::vector<CMatrix> out(hi - lo, CMatrix::Zero(K, K));
  for (int col = 0; col < K; ++col) {
    int r = pivot_row[col];
    for (int j = K; j < 2 * K; ++j) {
      const Ser& s = a[r][j];
      for (size_t k = 0; k < s.c.size(); ++k) {
        int e = s.lead + static_cast<int>(k);
        if (e >= lo && e < hi) out[e - lo](col, j - K) = s.c[k];
      }
    }
  }
  return LaurentMat(lo, std::move(out)).normalized(zero_tol);
}

}  // namespace conecalc
