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
//
// The OpenMP kernels and the serial reference path must agree bitwise:
// every parallel loop writes disjoint slots and reduces in index order.
#include "lapdp/parallel.hpp"

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "lapdp/composition.hpp"
#include "lapdp/core.hpp"
#include "lapdp/fft.hpp"
#include "lapdp/laplace.hpp"
#include "lapdp/mechanisms.hpp"
#include "lapdp/oracle.hpp"

namespace lapdp {
namespace {

class ParallelToggle : public ::testing::Test {
 protected:
  void TearDown() override { parallel::set_enabled(true); }
};

TEST_F(ParallelToggle, ProfileGridMatchesSerialBitwise) {
  const auto prof = gaussian_profile_curve(GaussianParams{0.5});
  std::vector<double> grid;
  for (int i = 0; i < 4096; ++i) grid.push_back(-4.0 + 10.0 * i / 4095.0);

  parallel::set_enabled(true);
  const auto par = eval_profile_grid(prof, grid);
  parallel::set_enabled(false);
  const auto ser = eval_profile_grid(prof, grid);
  ASSERT_EQ(par.size(), ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    EXPECT_EQ(par[i], ser[i]);
  }
}

TEST_F(ParallelToggle, DirectConvolutionMatchesSerialBitwise) {
  std::vector<double> a(1537), b(911);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::sin(0.01 * double(i));
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = std::cos(0.02 * double(i));

  parallel::set_enabled(true);
  const auto par = fft::convolve_direct(a, b);
  parallel::set_enabled(false);
  const auto ser_toggle = fft::convolve_direct(a, b);
  const auto ser = fft::convolve_direct_serial(a, b);
  ASSERT_EQ(par.size(), ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    EXPECT_EQ(par[i], ser[i]);
    EXPECT_EQ(ser_toggle[i], ser[i]);
  }
}

TEST_F(ParallelToggle, FftConvolutionMatchesDirectReference) {
  std::vector<double> a(777), b(450);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::exp(-1e-3 * double(i));
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = 1.0 / (1.0 + double(i));
  const auto direct = fft::convolve_direct_serial(a, b);
  const auto fast = fft::convolve(a, b);
  ASSERT_EQ(direct.size(), fast.size());
  for (std::size_t i = 0; i < direct.size(); ++i) {
    EXPECT_NEAR(fast[i], direct[i], 1e-9);
  }
}

TEST_F(ParallelToggle, SelfConvolvePowerMatchesRepeatedDirect) {
  std::vector<double> a{0.2, 0.5, 0.3};
  std::vector<double> ref{1.0};
  for (int i = 0; i < 5; ++i) ref = fft::convolve_direct_serial(ref, a);
  const auto fast = fft::self_convolve_power(a, 5);
  ASSERT_EQ(ref.size(), fast.size());
  for (std::size_t i = 0; i < ref.size(); ++i) {
    EXPECT_NEAR(fast[i], ref[i], 1e-13);
  }
}

TEST_F(ParallelToggle, BromwichMatchesSerialBitwise) {
  const auto curve = gaussian_renyi_curve(GaussianParams{0.5});
  parallel::set_enabled(true);
  const double par = profile_from_renyi(curve, 1.0);
  parallel::set_enabled(false);
  const double ser = profile_from_renyi(curve, 1.0);
  EXPECT_EQ(par, ser);
}

TEST_F(ParallelToggle, GridAccountantMatchesSerialBitwise) {
  const Pld kernel =
      pld_from_discrete(rr_discrete_pair(RRParams{0.3, 1e-6}));
  std::vector<double> grid;
  for (int i = 0; i <= 64; ++i) grid.push_back(-1.0 + 4.0 * i / 64.0);

  parallel::set_enabled(true);
  const auto par = grid_accountant(kernel, 9, grid, 1e-4);
  parallel::set_enabled(false);
  const auto ser = grid_accountant(kernel, 9, grid, 1e-4);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_EQ(par.delta[i], ser.delta[i]);
  }
}

}  // namespace
}  // namespace lapdp
