// Copyright (c) 2026 the conecalc authors.
// SPDX-License-Identifier: Apache-2.0

#include "conecalc/spectral.hpp"

namespace conecalc {

SpectralModel point_model() {
  SpectralModel m;
  m.name = "point";
  m.n = 0;
  m.K = 1;
  m.mode_labels = {"0"};
  return m;
}

SpectralModel s1_model(int max_mode) {
  SpectralModel m;
  m.name = "s1";
  m.n = 1;
  m.K = 2 * max_mode + 1;
  for (int k = -max_mode; k <= max_mode; ++k) m.mode_labels.push_back(std::to_string(k));
  m.metadata["max_mode"] = max_mode;
  return m;
}

}  // namespace conecalc
