// Copyright 2026 The lapdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cstddef>

#ifdef LAPDP_HAVE_OPENMP
#include <omp.h>
#endif

namespace lapdp::parallel {

// Process-wide switch between the OpenMP kernels and the serial reference
// path. Every parallel loop in the library writes disjoint output slots and
// reduces in index order, so both paths produce bitwise-identical results;
// the serial path is kept for testing exactly that.
void set_enabled(bool enabled);
bool enabled();

inline int max_threads() {
#ifdef LAPDP_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// Runs fn(i) for i in [0, n). Iterations must be independent.
template <typename Fn>
void for_each_index(std::ptrdiff_t n, Fn&& fn) {
#ifdef LAPDP_HAVE_OPENMP
  if (enabled() && n > 1) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      fn(i);
    }
    return;
  }
#endif
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    fn(i);
  }
}

}  // namespace lapdp::parallel
