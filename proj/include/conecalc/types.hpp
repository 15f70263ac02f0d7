// Copyright (c) 2026 the conecalc authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef CONECALC_TYPES_HPP
#define CONECALC_TYPES_HPP

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace conecalc {

using Cplx = std::complex<double>;

/// Dense complex matrix in a fixed spectral basis of the cross-section.
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Error kinds map onto CLI exit codes.
enum class ErrorCode { generic = 1, not_elliptic = 2, schema = 3, numerical = 4 };

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

/// Tolerances used throughout; the defaults are the ones the acceptance
/// suite pins, everything is overridable per run.
struct Tolerances {
  double root_merge = 1e-8;       // zeros within root_merge*(1+|z|) form one multiple zero
  double point_merge = 1e-8;      // absolute merge distance for asymptotic points
  double residual = 1e-10;        // defect-identity / inverse residuals
  double assoc = 1e-12;           // associativity / cross-check comparisons
  double prune = 1e-11;           // relative threshold below which Laurent data counts as zero
  double line = 1e-8;             // distance at which a zero counts as sitting on a weight line
  double coeff_prune = 5e-13;     // relative threshold for dropping expansion terms
  double rank = 1e-10;            // singular-value threshold for recorded ranks
};

inline const Tolerances& default_tol() {
  static const Tolerances t{};
  return t;
}

inline bool near(Cplx a, Cplx b, double tol) { return std::abs(a - b) <= tol; }

/// Relative scale helper: |a| against a reference magnitude.
inline double rel(double value, double scale) { return value / (scale > 0 ? scale : 1.0); }

using Interval = std::pair<double, double>;  // open Re-z interval (lo, hi)

}  // namespace conecalc

#endif
