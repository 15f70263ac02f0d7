// Copyright (c) 2026 the conecalc authors.
// SPDX-License-Identifier: Apache-2.0

#include "conecalc/fuchs.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace conecalc {

FuchsOperator::FuchsOperator(int mu, SpectralModel model, std::vector<std::vector<CMatrix>> taylor)
    : mu_(mu), model_(std::move(model)), a_(std::move(taylor)) {
  model_.validate();
  if (mu_ < 0) fail(ErrorCode::schema, "FuchsOperator: order must be nonnegative");
  if (static_cast<int>(a_.size()) != mu_ + 1)
    fail(ErrorCode::schema, "FuchsOperator: need mu+1 rows of r-Taylor data");
  imax_ = 0;
  for (const auto& row : a_) {
    imax_ = std::max(imax_, static_cast<int>(row.size()) - 1);
    for (const auto& m : row)
      if (m.rows() != model_.K || m.cols() != model_.K)
        fail(ErrorCode::schema, "FuchsOperator: coefficient size mismatch with model basis");
  }
}

CMatrix FuchsOperator::coeff(int j, int i) const {
  if (j >= 0 && j < static_cast<int>(a_.size()) && i >= 0 && i < static_cast<int>(a_[j].size()))
    return a_[j][i];
  return CMatrix::Zero(model_.K, model_.K);
}

SmoothingMellinPart::SmoothingMellinPart(std::vector<MellinTerm> terms, double gamma, int n,
                                         const Tolerances& tol)
    : terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (t.j < 0) fail(ErrorCode::schema, "SmoothingMellinPart: term index must be >= 0");
    if (t.gamma_j > gamma + 1e-12 || t.gamma_j < gamma - t.j - 1e-12)
      fail(ErrorCode::schema,
           "SmoothingMellinPart: weight gamma_j outside [gamma - j, gamma]");
    double line = weight_line(t.gamma_j, n);
    for (const auto& p : t.f.poles())
      if (std::abs(p.location.real() - line) <= tol.line)
        fail(ErrorCode::schema,
             "SmoothingMellinPart: pole of f_j on its weight line Re z = " +
                 std::to_string(line));
  }
}

MeroMatrix ConormalLevel::combined(const Tolerances& tol) const {
  MeroMatrix p = MeroMatrix::from_poly(poly);
  if (!mellin) return p;
  return mero_add(p, *mellin, tol);
}

bool ConormalLevel::is_zero() const {
  if (mellin && (!mellin->poles().empty() || mellin->eval(Cplx(0.1234, 0.77)).norm() > 1e-300))
    return false;
  return poly.is_zero();
}

const ConormalLevel& ConormalHierarchy::level(int l) const {
  if (l >= 0 && l < static_cast<int>(levels_.size())) return levels_[l];
  static thread_local ConormalLevel zero;
  zero.poly = MatPolynomial::zero(K_);
  zero.mellin.reset();
  return zero;
}

ConormalHierarchy ConormalHierarchy::identity(int K, int depth) {
  std::vector<ConormalLevel> levels(depth + 1);
  levels[0].poly = MatPolynomial::constant(CMatrix::Identity(K, K));
  for (int l = 1; l <= depth; ++l) levels[l].poly = MatPolynomial::zero(K);
  return ConormalHierarchy(0, K, std::move(levels));
}

ConormalHierarchy conormal_hierarchy(const FuchsOperator& a, const SmoothingMellinPart& mellin,
                                     int depth) {
  const int K = a.size();
  std::vector<ConormalLevel> levels(depth + 1);
  for (int l = 0; l <= depth; ++l) {
    std::vector<CMatrix> c(a.mu() + 1, CMatrix::Zero(K, K));
    for (int j = 0; j <= a.mu(); ++j) c[j] = a.coeff(j, l);
    MatPolynomial poly(c);
    poly.trim(0.0);
    levels[l].poly = std::move(poly);
    for (const auto& t : mellin.terms())
      if (t.j == l)
        levels[l].mellin = levels[l].mellin ? mero_add(*levels[l].mellin, t.f) : t.f;
  }
  return ConormalHierarchy(a.mu(), K, std::move(levels));
}

ConormalHierarchy translation_product(const ConormalHierarchy& ha, const ConormalHierarchy& hb,
                                      int depth, const Tolerances& tol) {
  if (ha.size() != hb.size())
    fail(ErrorCode::schema, "translation_product: incompatible matrix sizes");
  const int K = ha.size();
  const double nu = hb.mu();
  std::vector<ConormalLevel> levels(depth + 1);
  for (int l = 0; l <= depth; ++l) {
    MatPolynomial poly = MatPolynomial::zero(K);
    std::vector<std::pair<Cplx, MeroMatrix>> mero_terms;
    for (int i = 0; i <= l; ++i) {
      const int j = l - i;
      const ConormalLevel& xa = ha.level(i);
      const ConormalLevel& xb = hb.level(j);
      if (xa.is_zero() || xb.is_zero()) continue;
      const double shift = nu - j;
      if (xa.is_polynomial() && xb.is_polynomial()) {
        poly = poly + xa.poly.translate(shift) * xb.poly;
      } else {
        MeroMatrix fa = translate(xa.combined(tol), shift, tol);
        mero_terms.push_back({1.0, mero_mul(fa, xb.combined(tol), tol)});
      }
    }
    levels[l].poly = poly;
    if (!mero_terms.empty()) levels[l].mellin = mero_combine(mero_terms, tol);
  }
  return ConormalHierarchy(ha.mu() + hb.mu(), K, std::move(levels));
}

ComposeResult direct_compose(const FuchsOperator& a, const FuchsOperator& b,
                             const ComposeOptions& opts) {
  if (a.model().K != b.model().K || a.model().n != b.model().n)
    fail(ErrorCode::schema, "direct_compose: operators live on different models");
  const int K = a.size();
  const int mu = a.mu(), nu = b.mu();
  const int natural_imax = a.r_order() + b.r_order();
  bool truncated = natural_imax > opts.max_r_order;
  if (truncated && opts.error_on_truncate)
    fail(ErrorCode::numerical, "direct_compose: r-order overflow beyond configured cap");
  const int imax = std::min(natural_imax, opts.max_r_order);

  // c[i][k]: coefficient of r^i (-r d/dr)^k in r^{mu+nu} A B.
  std::vector<std::vector<CMatrix>> c(mu + nu + 1,
                                      std::vector<CMatrix>(imax + 1, CMatrix::Zero(K, K)));
  for (int j = 0; j <= mu; ++j) {
    for (int ia = 0; ia <= a.r_order(); ++ia) {
      CMatrix aj = a.coeff(j, ia);
      if (aj.cwiseAbs().maxCoeff() == 0) continue;
      for (int ib = 0; ib <= b.r_order(); ++ib) {
        int iout = ia + ib;
        if (iout > imax) continue;
        // (D + nu - ib)^j applied from the left of sum_k b[k][ib] D^k.
        Polynomial shift_pow = Polynomial::from_roots(std::vector<Cplx>(j, Cplx(-(nu - ib))));
        for (int k = 0; k <= nu; ++k) {
          CMatrix bk = b.coeff(k, ib);
          if (bk.cwiseAbs().maxCoeff() == 0) continue;
          CMatrix ab = aj * bk;
          for (int s = 0; s <= shift_pow.degree(); ++s)
            c[k + s][iout] += shift_pow.coeff(s) * ab;
        }
      }
    }
  }
  std::vector<std::vector<CMatrix>> taylor(mu + nu + 1);
  for (int j = 0; j <= mu + nu; ++j)
    taylor[j].assign(c[j].begin(), c[j].end());
  SpectralModel model = a.model();
  return ComposeResult{FuchsOperator(mu + nu, std::move(model), std::move(taylor)), truncated};
}

ConormalEllipticityReport check_conormal_ellipticity(const ConormalHierarchy& h, double gamma,
                                                     int n, const Tolerances& tol) {
  ConormalEllipticityReport rep;
  rep.line = weight_line(gamma, n);
  const ConormalLevel& h0 = h.level(0);
  try {
    if (h0.is_polynomial()) {
      PolyeigOptions opts;
      opts.allow_infinite = true;
      opts.tol = tol;
      rep.zeros = polyeig(h0.poly, opts).zeros;
    } else {
      rep.zeros = mero_det_zeros(h0.combined(tol), tol);
    }
  } catch (const Error& e) {
    rep.elliptic = false;
    rep.message = std::string("not sigma_1-elliptic for any gamma: ") + e.what();
    return rep;
  }
  rep.min_distance = std::numeric_limits<double>::infinity();
  for (const auto& z : rep.zeros)
    rep.min_distance = std::min(rep.min_distance, std::abs(z.location.real() - rep.line));
  if (rep.zeros.empty()) rep.min_distance = std::numeric_limits<double>::infinity();
  rep.elliptic = rep.min_distance > tol.line;
  if (!rep.elliptic) rep.message = "conormal symbol has a non-bijectivity point on the weight line";
  return rep;
}

WeightShiftResult weight_shift_commute(const MeroMatrix& f, double gamma, int n, double beta,
                                       double epsilon_fallback, const Tolerances& tol) {
  if (beta < 0) fail(ErrorCode::schema, "weight_shift_commute: beta must be >= 0");
  WeightShiftResult out;
  if (beta == 0) {
    out.shifted = f;
    out.legal = true;
    return out;
  }
  const double target = weight_line(gamma + beta, n);
  auto line_clear = [&](double line) {
    for (const auto& p : f.poles())
      if (std::abs(p.location.real() - line) <= tol.line) return false;
    return true;
  };
  if (line_clear(target)) {
    out.shifted = translate(f, -beta, tol);
    out.legal = true;
    return out;
  }
  out.legal = false;
  double eps = epsilon_fallback;
  if (eps <= 0) {
    eps = std::min(0.25, beta / 2);
    for (int tries = 0; tries < 40 && !line_clear(weight_line(gamma + beta - eps, n)); ++tries)
      eps *= 0.5;
    if (!line_clear(weight_line(gamma + beta - eps, n)))
      fail(ErrorCode::numerical, "weight_shift_commute: no admissible epsilon found");
  }
  if (eps >= beta)
    fail(ErrorCode::schema, "weight_shift_commute: epsilon_fallback must be < beta");
  out.epsilon_used = eps;
  out.shifted = translate(f, -(beta - eps), tol);
  return out;
}

namespace {

double min_singular(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues().size() ? svd.singularValues().minCoeff() : 0.0;
}

CMatrix leading_coeff_at_r(const FuchsOperator& a, double r) {
  CMatrix acc = CMatrix::Zero(a.size(), a.size());
  double rp = 1.0;
  for (int i = 0; i <= a.r_order(); ++i) {
    acc += rp * a.coeff(a.mu(), i);
    rp *= r;
  }
  return acc;
}

}  // namespace

Sigma0Report check_sigma0_ellipticity(const FuchsOperator& a, const Sigma0Callback& callback,
                                      const Tolerances& tol) {
  Sigma0Report rep;
  const int r_samples = 9;

  if (callback) {
    double worst = std::numeric_limits<double>::infinity();
    for (int ri = 0; ri <= r_samples; ++ri) {
      double r = double(ri) / r_samples;
      for (int s = 0; s < 16; ++s) {
        double ang = M_PI * s / 8.0;
        worst = std::min(worst, callback(r, {std::cos(ang), std::sin(ang)}));
      }
    }
    rep.min_modulus = worst;
    rep.status = worst > tol.line ? Sigma0Status::elliptic : Sigma0Status::not_elliptic;
    rep.message = "principal-part callback sampled on (r, covariable sphere) grid";
    return rep;
  }

  if (a.sigma0_form == "laplacian") {
    // Rescaled symbol |rho|^2 + |xi|^2 (+ eta^2 on edges): modulus 1 on the
    // unit covariable sphere, up to the leading scalar factor.
    double lead = std::abs(a.coeff(a.mu(), 0)(0, 0));
    rep.min_modulus = lead > 0 ? lead : 1.0;
    rep.status = Sigma0Status::elliptic;
    rep.message = "closed-form rescaled symbol of Laplace type";
    return rep;
  }

  // Generic fall-back: invertibility of the leading (-r d/dr)-degree block on
  // an r-grid. A definite failure here is a definite non-ellipticity; success
  // is reported as a leading-block criterion only.
  bool any_data = false;
  for (int j = 0; j <= a.mu(); ++j)
    for (int i = 0; i <= a.r_order(); ++i)
      if (a.coeff(j, i).cwiseAbs().maxCoeff() > 0) any_data = true;
  if (!any_data) {
    rep.status = Sigma0Status::not_elliptic;
    rep.message = "zero operator";
    return rep;
  }
  double worst = std::numeric_limits<double>::infinity();
  for (int ri = 0; ri <= r_samples; ++ri)
    worst = std::min(worst, min_singular(leading_coeff_at_r(a, double(ri) / r_samples)));
  rep.min_modulus = worst;
  rep.leading_block_only = true;
  if (worst <= tol.line) {
    rep.status = Sigma0Status::not_elliptic;
    rep.message = "leading coefficient a_mu(r) is singular on [0,1]";
  } else if (a.model().n == 0) {
    // Point cross-section: the leading block is the full rescaled symbol.
    rep.status = Sigma0Status::elliptic;
    rep.leading_block_only = false;
    rep.message = "rescaled symbol a_mu(r) (i rho)^mu nonvanishing";
  } else {
    rep.status = Sigma0Status::undeterminable;
    rep.message =
        "no principal-part data for this cross-section: leading block invertible, "
        "full rescaled symbol undeterminable";
  }
  return rep;
}

}  // namespace conecalc
