// Copyright (c) 2026 the conecalc authors.
// SPDX-License-Identifier: Apache-2.0

#include "conecalc/mero.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <random>

namespace conecalc {

// ---------------------------------------------------------------------------
// FactoredPoly

int FactoredPoly::degree() const {
  int d = 0;
  for (const auto& [r, m] : factors) d += m;
  return d;
}

Cplx FactoredPoly::eval(Cplx z) const {
  Cplx acc = lead;
  for (const auto& [r, m] : factors)
    for (int k = 0; k < m; ++k) acc *= (z - r);
  return acc;
}

Polynomial FactoredPoly::expand() const {
  std::vector<Cplx> roots;
  for (const auto& [r, m] : factors) roots.insert(roots.end(), m, r);
  return Polynomial::from_roots(roots, lead);
}

FactoredPoly FactoredPoly::translated(Cplx beta) const {
  FactoredPoly out = *this;
  for (auto& [r, m] : out.factors) r -= beta;
  return out;
}

FactoredPoly FactoredPoly::operator*(const FactoredPoly& o) const {
  FactoredPoly out = *this;
  out.lead *= o.lead;
  for (const auto& f : o.factors) {
    bool merged = false;
    for (auto& g : out.factors)
      if (std::abs(g.first - f.first) <= 1e-13 * (1.0 + std::abs(g.first))) {
        g.second += f.second;
        merged = true;
        break;
      }
    if (!merged) out.factors.push_back(f);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Expression DAG

class MeroExpr {
public:
  virtual ~MeroExpr() = default;
  virtual CMatrix eval(Cplx z) const = 0;
  /// Laurent series at p, window aimed at exponents < upto.
  virtual LaurentMat series(Cplx p, int upto) const = 0;
  virtual int size() const = 0;
  const std::vector<PoleCandidate>& candidates() const { return cands_; }

  int bound_at(Cplx p, double merge_tol) const {
    int b = 0;
    for (const auto& c : cands_)
      if (std::abs(c.location - p) <= merge_tol * (1.0 + std::abs(p))) b += c.order_bound;
    return b;
  }

protected:
  std::vector<PoleCandidate> cands_;
};

namespace {

std::vector<PoleCandidate> cluster_candidates(std::vector<PoleCandidate> in, double tol,
                                              bool sum_orders) {
  std::vector<PoleCandidate> out;
  for (const auto& c : in) {
    bool merged = false;
    for (auto& o : out)
      if (std::abs(o.location - c.location) <= tol * (1.0 + std::abs(o.location))) {
        o.order_bound = sum_orders ? o.order_bound + c.order_bound
                                   : std::max(o.order_bound, c.order_bound);
        merged = true;
        break;
      }
    if (!merged) out.push_back(c);
  }
  return out;
}

class RationalNode final : public MeroExpr {
public:
  RationalNode(MatPolynomial num, FactoredPoly den, double merge_tol)
      : num_(std::move(num)), den_(std::move(den)) {
    for (const auto& [r, m] : den_.factors) cands_.push_back({r, m});
    cands_ = cluster_candidates(std::move(cands_), merge_tol, true);
  }

  CMatrix eval(Cplx z) const override { return num_.eval(z) / den_.eval(z); }

  LaurentMat series(Cplx p, int upto) const override {
    // Exact local factorization of the denominator at p; roots that coincide
    // with p (to the clustering that built them) contribute pure powers of w.
    int m_at_p = 0;
    Cplx c0 = den_.lead;
    std::vector<std::pair<Cplx, int>> rest;
    for (const auto& [r, m] : den_.factors) {
      if (std::abs(r - p) <= 1e-12 * (1.0 + std::abs(p))) m_at_p += m;
      else rest.push_back({r, m});
    }
    int need = upto + m_at_p;
    if (need < 1) need = 1;
    // den(p+w) = lead * w^m_at_p * prod (w + (p - r))^m  — invert the regular part.
    std::vector<Cplx> reg(need, Cplx(0));
    reg[0] = c0;
    for (const auto& [r, m] : rest)
      for (int k = 0; k < m; ++k) {
        // multiply series by (w + (p - r))
        Cplx d = p - r;
        for (int j = need - 1; j >= 1; --j) reg[j] = reg[j] * d + reg[j - 1];
        reg[0] *= d;
      }
    std::vector<Cplx> inv(need, Cplx(0));
    inv[0] = 1.0 / reg[0];
    for (int k = 1; k < need; ++k) {
      Cplx acc(0);
      for (int j = 1; j <= k; ++j) acc -= reg[j] * inv[k - j];
      inv[k] = acc * inv[0];
    }
    LaurentMat numser = LaurentMat::from_matpoly(num_, p, need);
    LaurentMat invden =
        LaurentMat::monomial(CMatrix::Identity(num_.size(), num_.size()), -m_at_p, need);
    std::vector<CMatrix> c(need, CMatrix::Zero(num_.size(), num_.size()));
    for (int k = 0; k < need; ++k) c[k] = inv[k] * CMatrix::Identity(num_.size(), num_.size());
    LaurentMat invreg(-m_at_p, std::move(c));
    return numser * invreg;
  }

  int size() const override { return num_.size(); }
  const MatPolynomial& num() const { return num_; }
  const FactoredPoly& den() const { return den_; }

private:
  MatPolynomial num_;
  FactoredPoly den_;
};

class InvPolyNode final : public MeroExpr {
public:
  InvPolyNode(MatPolynomial h, std::vector<ClusteredZero> zeros) : h_(std::move(h)) {
    for (const auto& z : zeros) cands_.push_back({z.location, z.multiplicity});
  }

  CMatrix eval(Cplx z) const override {
    Eigen::PartialPivLU<CMatrix> lu(h_.eval(z));
    return lu.inverse();
  }

  LaurentMat series(Cplx p, int upto) const override {
    int m = bound_at(p, 1e-8);
    int need = upto + 2 * m + 2;
    if (need < 2) need = 2;
    for (int attempt = 0; attempt < 4; ++attempt) {
      LaurentMat hs = LaurentMat::from_matpoly(h_, p, need);
      LaurentMat inv = hs.inverse();
      if (inv.valid_upto() >= upto) return inv;
      need = 2 * need + 2;
    }
    return LaurentMat::from_matpoly(h_, p, need).inverse();
  }

  int size() const override { return h_.size(); }

private:
  MatPolynomial h_;
};

class TranslateNode final : public MeroExpr {
public:
  TranslateNode(MeroExprPtr child, double beta) : child_(std::move(child)), beta_(beta) {
    for (const auto& c : child_->candidates())
      cands_.push_back({c.location - beta_, c.order_bound});
  }
  CMatrix eval(Cplx z) const override { return child_->eval(z + beta_); }
  LaurentMat series(Cplx p, int upto) const override { return child_->series(p + beta_, upto); }
  int size() const override { return child_->size(); }

private:
  MeroExprPtr child_;
  double beta_;
};

class ProductNode final : public MeroExpr {
public:
  ProductNode(MeroExprPtr a, MeroExprPtr b, double merge_tol)
      : a_(std::move(a)), b_(std::move(b)) {
    std::vector<PoleCandidate> all = a_->candidates();
    for (const auto& c : b_->candidates()) all.push_back(c);
    // Orders add where the factors share a location.
    std::vector<PoleCandidate> merged = cluster_candidates(all, merge_tol, false);
    for (auto& c : merged)
      c.order_bound = a_->bound_at(c.location, merge_tol) + b_->bound_at(c.location, merge_tol);
    cands_ = std::move(merged);
  }

  CMatrix eval(Cplx z) const override { return a_->eval(z) * b_->eval(z); }

  LaurentMat series(Cplx p, int upto) const override {
    int ba = a_->bound_at(p, 1e-8), bb = b_->bound_at(p, 1e-8);
    LaurentMat sa = a_->series(p, upto + bb + 1);
    LaurentMat sb = b_->series(p, upto + ba + 1);
    return sa * sb;
  }

  int size() const override { return a_->size(); }

private:
  MeroExprPtr a_, b_;
};

class SumNode final : public MeroExpr {
public:
  SumNode(std::vector<std::pair<Cplx, MeroExprPtr>> terms, double merge_tol)
      : terms_(std::move(terms)) {
    std::vector<PoleCandidate> all;
    for (const auto& [s, t] : terms_)
      for (const auto& c : t->candidates()) all.push_back(c);
    cands_ = cluster_candidates(std::move(all), merge_tol, false);
  }

  CMatrix eval(Cplx z) const override {
    CMatrix acc = CMatrix::Zero(size(), size());
    for (const auto& [s, t] : terms_) acc += s * t->eval(z);
    return acc;
  }

  LaurentMat series(Cplx p, int upto) const override {
    LaurentMat acc = LaurentMat::zero(size(), upto);
    for (const auto& [s, t] : terms_) acc = acc + t->series(p, upto).scaled(s);
    return acc;
  }

  int size() const override { return terms_.empty() ? 0 : terms_[0].second->size(); }

private:
  std::vector<std::pair<Cplx, MeroExprPtr>> terms_;
};

int matrix_rank(const CMatrix& m, double tol) {
  if (m.rows() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  double smax = svd.singularValues().size() ? svd.singularValues().maxCoeff() : 0.0;
  int r = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tol * std::max(smax, 1e-300)) ++r;
  return r;
}

void simplify_rational(RationalForm& rf, const std::vector<PoleDatum>& poles,
                       const Tolerances& tol) {
  // Cancel denominator roots that did not survive pole verification.
  FactoredPoly newden;
  newden.lead = rf.den.lead;
  for (auto [r, m] : rf.den.factors) {
    bool keep = false;
    int kept = m;
    for (const auto& p : poles)
      if (std::abs(p.location - r) <= tol.root_merge * (1.0 + std::abs(r))) {
        keep = true;
        kept = m;  // conservative: keep full multiplicity when a pole is present
        break;
      }
    if (keep) {
      newden.factors.push_back({r, kept});
      continue;
    }
    // Deflate the numerator by (z - r)^m; verify each remainder is small.
    MatPolynomial num = rf.num;
    bool ok = true;
    double scale = std::max(num.coeff_norm(), 1e-300);
    std::vector<CMatrix> work = num.coeffs();
    for (int k = 0; k < m && ok; ++k) {
      CMatrix rem = CMatrix::Zero(num.size(), num.size());
      std::vector<CMatrix> q(work.size() > 1 ? work.size() - 1 : 1,
                             CMatrix::Zero(num.size(), num.size()));
      CMatrix carry = work.back();
      for (int j = static_cast<int>(work.size()) - 2; j >= 0; --j) {
        q[j] = carry;
        carry = work[j] + r * carry;
      }
      rem = carry;
      if (rem.cwiseAbs().maxCoeff() > 1e-7 * scale) ok = false;
      else work = std::move(q);
    }
    if (ok) rf.num = MatPolynomial(work);
    else newden.factors.push_back({r, m});
  }
  rf.den = std::move(newden);
}

}  // namespace

// ---------------------------------------------------------------------------
// MeroMatrix

MeroMatrix MeroMatrix::assemble(MeroExprPtr expr, std::vector<PoleCandidate> candidates,
                                std::optional<RationalForm> closed, const Tolerances& tol) {
  MeroMatrix out;
  out.expr_ = std::move(expr);
  out.size_ = out.expr_->size();
  candidates = cluster_candidates(std::move(candidates), tol.root_merge, false);
  for (const auto& cand : candidates) {
    LaurentMat s = out.expr_->series(cand.location, 1).normalized(tol.prune);
    if (s.known_zero() || s.lead() >= 0) continue;
    PoleDatum pd;
    pd.location = cand.location;
    pd.order = -s.lead();
    for (int k = 0; k < pd.order; ++k) {
      pd.principal.push_back(s.coeff_at(-(k + 1)));
      pd.ranks.push_back(matrix_rank(pd.principal.back(), tol.rank));
    }
    out.poles_.push_back(std::move(pd));
  }
  std::sort(out.poles_.begin(), out.poles_.end(), [](const PoleDatum& a, const PoleDatum& b) {
    if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
    return a.location.imag() < b.location.imag();
  });
  if (closed) {
    simplify_rational(*closed, out.poles_, tol);
    constexpr int kDegCap = 48;
    if (closed->num.degree() <= kDegCap && closed->den.degree() <= kDegCap)
      out.closed_ = std::move(closed);
  }
  return out;
}

MeroMatrix MeroMatrix::from_poly(const MatPolynomial& p) {
  auto node = std::make_shared<RationalNode>(p, FactoredPoly::one(), default_tol().root_merge);
  return assemble(node, {}, RationalForm{p, FactoredPoly::one()}, default_tol());
}

MeroMatrix MeroMatrix::from_rational(MatPolynomial num, FactoredPoly den, const Tolerances& tol) {
  auto node = std::make_shared<RationalNode>(num, den, tol.root_merge);
  std::vector<PoleCandidate> cands = node->candidates();
  return assemble(node, std::move(cands), RationalForm{std::move(num), std::move(den)}, tol);
}

MeroMatrix MeroMatrix::zero(int size) { return from_poly(MatPolynomial::zero(size)); }

MeroMatrix MeroMatrix::identity(int size) {
  return from_poly(MatPolynomial::constant(CMatrix::Identity(size, size)));
}

CMatrix MeroMatrix::eval(Cplx z) const {
  if (!expr_) fail(ErrorCode::numerical, "MeroMatrix: empty value");
  return expr_->eval(z);
}

LaurentMat MeroMatrix::series_at(Cplx p, int terms) const {
  if (!expr_) fail(ErrorCode::numerical, "MeroMatrix: empty value");
  LaurentMat s = expr_->series(p, terms);
  if (s.lead() < 0 && s.valid_upto() < s.lead() + terms)
    s = expr_->series(p, s.lead() + terms);
  return s;
}

MeroMatrix MeroMatrix::with_strip(Interval s) const {
  MeroMatrix out = *this;
  out.strip_ = s;
  return out;
}

bool MeroMatrix::is_polynomial() const {
  return closed_ && closed_->den.degree() == 0 && poles_.empty();
}

std::optional<MatPolynomial> MeroMatrix::as_polynomial() const {
  if (!is_polynomial()) return std::nullopt;
  return closed_->num * (1.0 / closed_->den.lead);
}

std::optional<RationalForm> MeroMatrix::reconstruct_rational(const Tolerances& tol) const {
  if (closed_) return closed_;
  FactoredPoly den;
  for (const auto& p : poles_) den.factors.push_back({p.location, p.order});
  int dd = den.degree();
  double radius = 2.0;
  for (const auto& p : poles_) radius = std::max(radius, 1.5 * std::abs(p.location) + 2.0);
  const int n = dd + 1;  // proper: num degree <= dd - 1, one extra node validates
  std::vector<CMatrix> vals(n);
  for (int j = 0; j < n; ++j) {
    double ang = 2.0 * M_PI * j / n;
    Cplx x = radius * Cplx(std::cos(ang), std::sin(ang));
    vals[j] = eval(x) * den.eval(x);
  }
  std::vector<CMatrix> coeffs(n, CMatrix::Zero(size_, size_));
  for (int r = 0; r < size_; ++r)
    for (int c = 0; c < size_; ++c) {
      for (int k = 0; k < n; ++k) {
        Cplx acc(0);
        for (int j = 0; j < n; ++j) {
          double ang = -2.0 * M_PI * j * k / n;
          acc += vals[j](r, c) * Cplx(std::cos(ang), std::sin(ang));
        }
        coeffs[k](r, c) = acc / (double(n) * std::pow(radius, k));
      }
    }
  MatPolynomial num(coeffs);
  num.trim(1e-9 * std::max(1.0, num.coeff_norm()));
  if (num.degree() >= std::max(dd, 1)) return std::nullopt;  // not proper: refuse
  // Validate at a fresh point.
  Cplx probe(0.37 + radius / 3.0, 0.71);
  CMatrix lhs = eval(probe) * den.eval(probe);
  if ((lhs - num.eval(probe)).cwiseAbs().maxCoeff() >
      1e-6 * std::max(1.0, lhs.cwiseAbs().maxCoeff()))
    return std::nullopt;
  return RationalForm{std::move(num), std::move(den)};
}

// ---------------------------------------------------------------------------
// Operations

MatPolynomial translate(const MatPolynomial& f, double beta) { return f.translate(beta); }

MeroMatrix translate(const MeroMatrix& f, double beta, const Tolerances& tol) {
  if (beta == 0.0) return f;
  auto node = std::make_shared<TranslateNode>(f.expr(), beta);
  std::vector<PoleCandidate> cands;
  for (const auto& p : f.poles()) cands.push_back({p.location - beta, p.order});
  std::optional<RationalForm> closed;
  if (f.rational() && f.rational()->num.degree() <= 24)
    closed = RationalForm{f.rational()->num.translate(beta), f.rational()->den.translated(beta)};
  MeroMatrix out = MeroMatrix::assemble(node, std::move(cands), std::move(closed), tol);
  if (f.valid_strip())
    out = out.with_strip({f.valid_strip()->first - beta, f.valid_strip()->second - beta});
  return out;
}

MeroMatrix mero_mul(const MeroMatrix& f, const MeroMatrix& g, const Tolerances& tol) {
  if (f.size() != g.size()) fail(ErrorCode::schema, "mero_mul: incompatible matrix sizes");
  auto node = std::make_shared<ProductNode>(f.expr(), g.expr(), tol.root_merge);
  std::vector<PoleCandidate> cands = node->candidates();
  std::optional<RationalForm> closed;
  if (f.rational() && g.rational() &&
      f.rational()->num.degree() + g.rational()->num.degree() <= 48)
    closed = RationalForm{f.rational()->num * g.rational()->num,
                          f.rational()->den * g.rational()->den};
  MeroMatrix out = MeroMatrix::assemble(node, std::move(cands), std::move(closed), tol);
  if (f.valid_strip() && g.valid_strip())
    out = out.with_strip({std::max(f.valid_strip()->first, g.valid_strip()->first),
                          std::min(f.valid_strip()->second, g.valid_strip()->second)});
  return out;
}

MeroMatrix mero_combine(const std::vector<std::pair<Cplx, MeroMatrix>>& terms,
                        const Tolerances& tol) {
  if (terms.empty()) fail(ErrorCode::schema, "mero_combine: empty combination");
  std::vector<std::pair<Cplx, MeroExprPtr>> nodes;
  std::vector<PoleCandidate> cands;
  for (const auto& [s, m] : terms) {
    nodes.push_back({s, m.expr()});
    for (const auto& p : m.poles()) cands.push_back({p.location, p.order});
  }
  auto node = std::make_shared<SumNode>(std::move(nodes), tol.root_merge);

  std::optional<RationalForm> closed;
  bool all_closed = true;
  for (const auto& [s, m] : terms)
    if (!m.rational()) all_closed = false;
  if (all_closed) {
    // Common denominator: per root cluster, the max multiplicity over terms.
    FactoredPoly common;
    for (const auto& [s, m] : terms) {
      for (const auto& [r, mult] : m.rational()->den.factors) {
        bool found = false;
        for (auto& [cr, cm] : common.factors)
          if (std::abs(cr - r) <= tol.root_merge * (1.0 + std::abs(r))) {
            cm = std::max(cm, mult);
            found = true;
            break;
          }
        if (!found) common.factors.push_back({r, mult});
      }
    }
    int deg_bound = 0;
    for (const auto& [s, m] : terms)
      deg_bound = std::max(deg_bound, m.rational()->num.degree() - m.rational()->den.degree());
    if (common.degree() + std::max(deg_bound, 0) <= 40) {
      MatPolynomial num;
      bool first = true;
      for (const auto& [s, m] : terms) {
        // cofactor = common / den_m as an expanded polynomial
        FactoredPoly cof;
        cof.lead = 1.0 / m.rational()->den.lead;
        for (const auto& [cr, cm] : common.factors) {
          int used = 0;
          for (const auto& [r, mult] : m.rational()->den.factors)
            if (std::abs(cr - r) <= tol.root_merge * (1.0 + std::abs(r))) used = mult;
          if (cm - used > 0) cof.factors.push_back({cr, cm - used});
        }
        Polynomial cof_poly = cof.expand();
        MatPolynomial term = m.rational()->num * Cplx(s);
        std::vector<CMatrix> tc;
        for (int k = 0; k <= term.degree() + cof_poly.degree(); ++k)
          tc.push_back(CMatrix::Zero(term.size(), term.size()));
        for (int i = 0; i <= term.degree(); ++i)
          for (int j = 0; j <= cof_poly.degree(); ++j)
            tc[i + j] += term.coeff(i) * cof_poly.coeff(j);
        MatPolynomial scaled(tc);
        num = first ? scaled : num + scaled;
        first = false;
      }
      if (num.degree() <= 48) closed = RationalForm{std::move(num), std::move(common)};
    }
  }
  return MeroMatrix::assemble(node, std::move(cands), std::move(closed), tol);
}

MeroMatrix mero_add(const MeroMatrix& f, const MeroMatrix& g, const Tolerances& tol) {
  return mero_combine({{1.0, f}, {1.0, g}}, tol);
}

MeroMatrix mero_scale(const MeroMatrix& f, Cplx s, const Tolerances& tol) {
  return mero_combine({{s, f}}, tol);
}

MeroMatrix mero_inverse(const MatPolynomial& h, const Tolerances& tol, bool allow_infinite) {
  PolyeigOptions opts;
  opts.allow_infinite = allow_infinite;
  opts.tol = tol;
  PolyeigResult pe = polyeig(h, opts);

  // Clustering-ambiguity guard: recluster with a 10x coarser radius; if the
  // partition changes for nearby clusters, refuse and report both.
  {
    std::vector<Cplx> raw;
    for (const auto& z : pe.zeros) raw.insert(raw.end(), z.multiplicity, z.location);
    auto coarse = cluster_points(raw, 10.0 * tol.root_merge);
    if (coarse.size() != pe.zeros.size()) {
      bool genuine = false;
      for (size_t i = 0; i + 1 < pe.zeros.size(); ++i)
        for (size_t j = i + 1; j < pe.zeros.size(); ++j) {
          double d = std::abs(pe.zeros[i].location - pe.zeros[j].location);
          double r = tol.root_merge * (1.0 + std::abs(pe.zeros[i].location));
          if (d > r && d < 10.0 * r) genuine = true;
        }
      if (genuine) {
        std::string msg = "mero_inverse: clustering ambiguity; fine clustering {";
        for (const auto& z : pe.zeros)
          msg += "(" + std::to_string(z.location.real()) + "," +
                 std::to_string(z.location.imag()) + ")x" + std::to_string(z.multiplicity) + " ";
        msg += "} coarse clustering {";
        for (const auto& z : coarse)
          msg += "(" + std::to_string(z.location.real()) + "," +
                 std::to_string(z.location.imag()) + ")x" + std::to_string(z.multiplicity) + " ";
        msg += "}";
        fail(ErrorCode::numerical, msg);
      }
    }
  }

  auto node = std::make_shared<InvPolyNode>(h, pe.zeros);
  std::vector<PoleCandidate> cands;
  for (const auto& z : pe.zeros) cands.push_back({z.location, z.multiplicity});

  std::optional<RationalForm> closed;
  if (h.size() <= 8) {
    FactoredPoly den;
    for (const auto& z : pe.zeros) den.factors.push_back({z.location, z.multiplicity});
    Polynomial det = mat_poly_det(h);
    den.lead = det.coeff(det.degree());
    closed = RationalForm{mat_poly_adjugate(h), std::move(den)};
  }
  return MeroMatrix::assemble(node, std::move(cands), std::move(closed), tol);
}

MeroMatrix mero_inverse(const MeroMatrix& m, const Tolerances& tol) {
  auto rf = m.reconstruct_rational(tol);
  if (!rf) fail(ErrorCode::numerical, "mero_inverse: no rational realization available");
  Polynomial d = rf->den.expand();
  MeroMatrix inv_num = mero_inverse(rf->num, tol, true);
  if (!inv_num.rational())
    fail(ErrorCode::numerical, "mero_inverse: numerator inverse has no closed form");
  // m^{-1} = den * num^{-1} = den * adj(num) / det(num)
  const RationalForm& ni = *inv_num.rational();
  std::vector<CMatrix> c(ni.num.degree() + d.degree() + 2,
                         CMatrix::Zero(m.size(), m.size()));
  for (int i = 0; i <= ni.num.degree(); ++i)
    for (int j = 0; j <= d.degree(); ++j) c[i + j] += ni.num.coeff(i) * d.coeff(j);
  MatPolynomial num(c);
  num.trim(0.0);
  return MeroMatrix::from_rational(std::move(num), ni.den, tol);
}

MeroMatrix invert_one_plus(const MeroMatrix& m, const Tolerances& tol) {
  auto rf = m.reconstruct_rational(tol);
  if (!rf) fail(ErrorCode::numerical, "invert_one_plus: no rational realization available");
  const int K = m.size();
  Polynomial d = rf->den.expand();
  // I + m = (d*I + num) / d
  MatPolynomial M = rf->num;
  {
    std::vector<CMatrix> c(std::max(M.degree(), d.degree()) + 1, CMatrix::Zero(K, K));
    for (int j = 0; j <= M.degree(); ++j) c[j] += M.coeff(j);
    for (int j = 0; j <= d.degree(); ++j) c[j] += d.coeff(j) * CMatrix::Identity(K, K);
    M = MatPolynomial(c);
  }
  Polynomial detM = mat_poly_det(M);
  if (detM.is_zero() || (detM.degree() == 0 && std::abs(detM.coeff(0)) < 1e-13))
    fail(ErrorCode::numerical, "invert_one_plus: 1 + m is identically singular");
  MatPolynomial adjM = mat_poly_adjugate(M);
  // (1+m)^{-1} - 1 = (d*adj(M) - det(M)*I) / det(M)
  std::vector<CMatrix> c(adjM.degree() + d.degree() + 2, CMatrix::Zero(K, K));
  for (int i = 0; i <= adjM.degree(); ++i)
    for (int j = 0; j <= d.degree(); ++j) c[i + j] += adjM.coeff(i) * d.coeff(j);
  for (int j = 0; j <= detM.degree(); ++j) {
    if (j >= static_cast<int>(c.size())) c.resize(j + 1, CMatrix::Zero(K, K));
    c[j] -= detM.coeff(j) * CMatrix::Identity(K, K);
  }
  MatPolynomial num(c);
  num.trim(1e-12 * std::max(1.0, num.coeff_norm()));
  FactoredPoly den;
  den.lead = detM.coeff(detM.degree());
  for (const auto& z : cluster_points(detM.roots(), tol.root_merge))
    den.factors.push_back({z.location, z.multiplicity});
  return MeroMatrix::from_rational(std::move(num), std::move(den), tol);
}

LaurentData laurent_at(const MeroMatrix& f, Cplx p, int depth, const Tolerances& tol) {
  // Snap p onto a stored pole if one is within merge tolerance; reject if two are.
  int hits = 0;
  Cplx snapped = p;
  int order = 0;
  for (const auto& pd : f.poles())
    if (std::abs(pd.location - p) <= tol.root_merge * (1.0 + std::abs(p))) {
      ++hits;
      snapped = pd.location;
      order = pd.order;
    }
  if (hits > 1)
    fail(ErrorCode::numerical, "laurent_at: p lies within merge tolerance of two stored poles");
  LaurentMat s = f.series_at(snapped, depth + order + 1);
  LaurentData out;
  out.lead = -order;
  for (int k = -order; k <= depth; ++k) out.coeffs.push_back(s.coeff_at(k));
  return out;
}

double holo_remainder_defect(const MeroMatrix& f, int samples) {
  double worst = 0;
  for (const auto& pd : f.poles()) {
    double radius = 0.25 * (1.0 + std::abs(pd.location));
    for (const auto& other : f.poles()) {
      if (&other == &pd) continue;
      radius = std::min(radius, 0.45 * std::abs(other.location - pd.location));
    }
    double scale = 0;
    std::vector<CMatrix> g(samples);
    for (int j = 0; j < samples; ++j) {
      double ang = 2.0 * M_PI * j / samples;
      Cplx w = radius * Cplx(std::cos(ang), std::sin(ang));
      CMatrix val = f.eval(pd.location + w);
      for (int k = 0; k < pd.order; ++k) val -= pd.principal[k] * std::pow(w, -(k + 1));
      g[j] = val;
      scale = std::max(scale, val.cwiseAbs().maxCoeff());
    }
    for (int neg = 1; neg <= 3; ++neg) {
      CMatrix acc = CMatrix::Zero(f.size(), f.size());
      for (int j = 0; j < samples; ++j) {
        double ang = 2.0 * M_PI * j / samples;
        Cplx w = radius * Cplx(std::cos(ang), std::sin(ang));
        acc += g[j] * std::pow(w, neg);
      }
      acc /= double(samples);
      worst = std::max(worst, acc.cwiseAbs().maxCoeff() / std::max(scale, 1e-300));
    }
  }
  return worst;
}

std::vector<ClusteredZero> mero_det_zeros(const MeroMatrix& f, const Tolerances& tol) {
  auto rf = f.reconstruct_rational(tol);
  if (!rf) fail(ErrorCode::numerical, "mero_det_zeros: no rational realization available");
  Polynomial det = mat_poly_det(rf->num);
  if (det.is_zero()) fail(ErrorCode::numerical, "mero_det_zeros: identically singular");
  auto zeros = cluster_points(det.roots(), tol.root_merge);
  const int K = f.size();
  std::vector<ClusteredZero> out;
  for (const auto& z : zeros) {
    int den_mult = 0;
    for (const auto& [r, m] : rf->den.factors)
      if (std::abs(r - z.location) <= tol.root_merge * (1.0 + std::abs(r))) den_mult += m;
    int net = z.multiplicity - K * den_mult;
    if (net > 0) out.push_back({z.location, net});
  }
  return out;
}

std::vector<Cplx> sample_points(int count, const std::vector<Cplx>& avoid, double min_dist,
                                double re_lo, double re_hi, double im_lo, double im_hi,
                                unsigned long long seed) {
  std::mt19937_64 rng(seed);
  auto uni = [&rng](double lo, double hi) {
    return lo + (hi - lo) * (double(rng() >> 11) * 0x1.0p-53);
  };
  std::vector<Cplx> out;
  int guard = 0;
  while (static_cast<int>(out.size()) < count && guard < 100000) {
    ++guard;
    Cplx z(uni(re_lo, re_hi), uni(im_lo, im_hi));
    bool ok = true;
    for (Cplx p : avoid)
      if (std::abs(z - p) < min_dist) ok = false;
    if (ok) out.push_back(z);
  }
  if (static_cast<int>(out.size()) < count)
    fail(ErrorCode::numerical, "sample_points: could not avoid poles in the given box");
  return out;
}

}  // namespace conecalc
