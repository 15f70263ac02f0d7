// Copyright (c) 2026 the conecalc authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef CONECALC_SPECTRAL_HPP
#define CONECALC_SPECTRAL_HPP

#include <map>
#include <string>
#include <vector>

#include "conecalc/types.hpp"

namespace conecalc {

/// Spectral truncation of the closed cross-section X: a fixed basis of size K
/// in which all cross-section operators are plain matrices.
struct SpectralModel {
  std::string name;                      // "point", "s1", "s2", or user-defined
  int n = 0;                             // dim X
  int K = 1;                             // basis size
  std::vector<std::string> mode_labels;  // e.g. Fourier index, (l,m) pairs
  std::map<std::string, double> metadata;

  void validate() const {
    if (K < 1) fail(ErrorCode::schema, "SpectralModel: basis_size must be >= 1");
    if (n == 0 && K != 1) fail(ErrorCode::schema, "SpectralModel: n = 0 requires K = 1");
  }
};

SpectralModel point_model();
SpectralModel s1_model(int max_mode);  // Fourier modes k = -max_mode..max_mode

/// Weight line Re z = (n+1)/2 - gamma.
inline double weight_line(double gamma, int n) { return 0.5 * (n + 1) - gamma; }

}  // namespace conecalc

#endif
