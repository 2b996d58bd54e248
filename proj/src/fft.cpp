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
#include "lapdp/fft.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>

#include "lapdp/parallel.hpp"

namespace lapdp::fft {

namespace {
constexpr double kPi = 3.14159265358979323846;

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}
}  // namespace

void transform(std::vector<std::complex<double>>& data, bool inverse) {
  const std::size_t n = data.size();
  if (n < 2) return;
  // Bit-reversal permutation.
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double angle = (inverse ? 2.0 : -2.0) * kPi / double(len);
    const std::complex<double> wn{std::cos(angle), std::sin(angle)};
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w{1.0, 0.0};
      for (std::size_t j = 0; j < len / 2; ++j) {
        const std::complex<double> u = data[i + j];
        const std::complex<double> v = data[i + j + len / 2] * w;
        data[i + j] = u + v;
        data[i + j + len / 2] = u - v;
        w *= wn;
      }
    }
  }
  if (inverse) {
    for (auto& x : data) x /= double(n);
  }
}

std::vector<double> convolve(const std::vector<double>& a,
                             const std::vector<double>& b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t out_len = a.size() + b.size() - 1;
  const std::size_t n = next_pow2(out_len);
  std::vector<std::complex<double>> fa(n), fb(n);
  for (std::size_t i = 0; i < a.size(); ++i) fa[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) fb[i] = b[i];
  transform(fa, false);
  transform(fb, false);
  for (std::size_t i = 0; i < n; ++i) fa[i] *= fb[i];
  transform(fa, true);
  std::vector<double> out(out_len);
  for (std::size_t i = 0; i < out_len; ++i) out[i] = fa[i].real();
  return out;
}

std::vector<double> self_convolve_power(const std::vector<double>& a, long k) {
  if (k <= 0) return {1.0};
  if (k == 1) return a;
  const std::size_t out_len = std::size_t(k) * (a.size() - 1) + 1;
  const std::size_t n = next_pow2(out_len);
  std::vector<std::complex<double>> fa(n);
  for (std::size_t i = 0; i < a.size(); ++i) fa[i] = a[i];
  transform(fa, false);
  for (std::size_t i = 0; i < n; ++i) {
    // Integer power by squaring keeps the error growth ~ log2(k) ulps.
    std::complex<double> base = fa[i], acc{1.0, 0.0};
    long e = k;
    while (e > 0) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    fa[i] = acc;
  }
  transform(fa, true);
  std::vector<double> out(out_len);
  for (std::size_t i = 0; i < out_len; ++i) out[i] = fa[i].real();
  return out;
}

std::vector<double> convolve_direct_serial(const std::vector<double>& a,
                                           const std::vector<double>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t k = 0; k < out.size(); ++k) {
    const std::size_t i_lo = k >= b.size() - 1 ? k - (b.size() - 1) : 0;
    const std::size_t i_hi = std::min(k, a.size() - 1);
    double s = 0.0;
    for (std::size_t i = i_lo; i <= i_hi; ++i) s += a[i] * b[k - i];
    out[k] = s;
  }
  return out;
}

std::vector<double> convolve_direct(const std::vector<double>& a,
                                    const std::vector<double>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  parallel::for_each_index(std::ptrdiff_t(out.size()), [&](std::ptrdiff_t kk) {
    const std::size_t k = std::size_t(kk);
    const std::size_t i_lo = k >= b.size() - 1 ? k - (b.size() - 1) : 0;
    const std::size_t i_hi = std::min(k, a.size() - 1);
    double s = 0.0;
    for (std::size_t i = i_lo; i <= i_hi; ++i) s += a[i] * b[k - i];
    out[k] = s;
  });
  return out;
}

}  // namespace lapdp::fft
