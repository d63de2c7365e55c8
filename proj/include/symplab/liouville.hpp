/*
 * Copyright 2026 The symplab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "symplab/geom.hpp"
#include "symplab/numeric.hpp"

namespace symplab {

// Random smooth expressions for bracket experiments.  Mean-zero ones integrate to zero
// exactly on Torus2/Sphere2; on PlaneR2 every expression is a bump-localized function.
std::string random_mean_zero_expression(const Manifold& m, Rng& rng);
std::string random_expression(const Manifold& m, Rng& rng);

struct BracketPair {
  std::string f, g;
  double integral = 0.0;    // integral of {F, G} over M (the window on PlaneR2)
  bool support_ok = true;   // {F, G} != 0 only where F != 0 and G != 0, on quadrature nodes
};

struct LiouvilleResult {
  std::vector<BracketPair> pairs;
  double worst = 0.0;       // max |integral|
  double tolerance = 0.0;   // 1e-6 * total area (window area on PlaneR2)
  bool support_ok = true;
  bool pass = false;
};

// F mean-zero (compactly supported on PlaneR2), G arbitrary.
LiouvilleResult liouville_check(const Manifold& m, int pairs = 20, std::uint64_t seed = 0);

struct MinNormalizationSearch {
  bool found = false;
  int trials = 0;
  std::string f, g;         // F with min F = 0 on the grid, and G
  double min_bracket = 0.0; // min of {F, G}; nonzero means {F, G} is not min-normalized
};

// Looks for F with min F = 0 and G such that min {F, G} < -tol on the quadrature grid.
MinNormalizationSearch search_min_normalization_counterexample(const Manifold& m, int trials = 20,
                                                                std::uint64_t seed = 0, double tol = 1e-6);

}  // namespace symplab
