// Copyright (c) 2026 the conecalc authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef CONECALC_ASYMP_HPP
#define CONECALC_ASYMP_HPP

#include "conecalc/mero.hpp"
#include "conecalc/spectral.hpp"

namespace conecalc {

/// Weight data g = (gamma, gamma - mu, Theta) with Theta = (theta, 0].
struct WeightData {
  double gamma = 0;
  double gamma_out = 0;
  double theta = -std::numeric_limits<double>::infinity();  // < 0; -inf allowed

  WeightData() = default;
  WeightData(double g, double g_out, double th) : gamma(g), gamma_out(g_out), theta(th) {
    if (!(theta < 0)) fail(ErrorCode::schema, "WeightData: theta must be negative");
  }
  static WeightData for_order(double gamma, double mu, double theta) {
    return WeightData(gamma, gamma - mu, theta);
  }
  bool finite_theta() const { return std::isfinite(theta); }
  WeightData inverse() const { return WeightData(gamma_out, gamma, theta); }
};

/// g o h with the chain condition h.gamma_out == g.gamma and equal Theta.
WeightData compose_weight_data(const WeightData& g, const WeightData& h);

/// Asymptotic point (p, m): terms c_k r^{-p} log^k r for 0 <= k <= m.
struct AsymptoticPoint {
  Cplx p;
  int m = 0;                      // highest log power
  std::vector<CVector> coeff_spaces;  // optional L_j data (spectral vectors)
};

/// Discrete asymptotic type inside the strip fixed by (gamma, Theta, n).
class AsymptoticType {
public:
  AsymptoticType() = default;
  AsymptoticType(std::vector<AsymptoticPoint> pts, double gamma, double theta, int n,
                 const Tolerances& tol = default_tol());

  const std::vector<AsymptoticPoint>& points() const { return pts_; }
  double gamma() const { return gamma_; }
  double theta() const { return theta_; }
  int n() const { return n_; }
  bool empty() const { return pts_.empty(); }

  double strip_hi() const { return weight_line(gamma_, n_); }
  double strip_lo() const { return strip_hi() + theta_; }

private:
  std::vector<AsymptoticPoint> pts_;
  double gamma_ = 0, theta_ = -1;
  int n_ = 0;
};

/// Closure under p -> p - j within the strip, multiplicities max-merged.
AsymptoticType shadow_closure(const AsymptoticType& type,
                              const Tolerances& tol = default_tol());

/// Poles of q inside the (gamma_out, Theta) strip become points (p, order-1).
struct TypeFromPolesResult {
  AsymptoticType type;
  std::vector<std::string> warnings;
};
TypeFromPolesResult type_from_poles(const MeroMatrix& q, const WeightData& g, int n,
                                    const Tolerances& tol = default_tol());

/// Composable remainder labels standing in for the ideals of the calculus:
/// Exact (neutral), Flat(N), SmoothingMellin, Green, GreenFlat.
class RemainderClass {
public:
  static RemainderClass exact() { return RemainderClass(false, false, 0); }
  static RemainderClass flat(int order) {
    if (order < 0) fail(ErrorCode::schema, "RemainderClass: flat order must be >= 0");
    return RemainderClass(false, false, order);
  }
  static RemainderClass smoothing_mellin() { return RemainderClass(false, true, std::nullopt); }
  static RemainderClass green() { return RemainderClass(true, true, std::nullopt); }
  static RemainderClass green_flat(int order = 0) { return RemainderClass(true, true, order); }

  bool is_green() const { return green_; }
  bool is_mellin() const { return mellin_; }
  std::optional<int> flat_order() const { return flat_; }
  bool green_flag() const { return green_flag_; }
  void set_green_flag(bool v) { green_flag_ = v; }

  /// Optional Green payload: the asymptotic type the remainder maps into.
  std::optional<AsymptoticType> payload;

  std::string label() const;
  bool same_label(const RemainderClass& o) const {
    return green_ == o.green_ && mellin_ == o.mellin_ && flat_ == o.flat_;
  }

private:
  RemainderClass(bool green, bool mellin, std::optional<int> flat)
      : green_(green), mellin_(mellin), flat_(flat) {}
  bool green_ = false;
  bool mellin_ = false;
  std::optional<int> flat_;   // nullopt: no flatness guarantee
  bool green_flag_ = false;   // commutation side effects occurred (bookkeeping, path-dependent)
};

/// Composition rules: Green absorbs, SmoothingMellin is an ideal, flat orders
/// add (raising the green side-effect flag), Exact is neutral.
RemainderClass remainder_compose(const RemainderClass& c1, const RemainderClass& c2);

}  // namespace conecalc

#endif
