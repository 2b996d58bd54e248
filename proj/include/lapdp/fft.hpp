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

#include <complex>
#include <vector>

namespace lapdp::fft {

// In-place iterative radix-2 transform; size must be a power of two.
void transform(std::vector<std::complex<double>>& data, bool inverse);

// Linear convolution of two real sequences via zero-padded FFT.
std::vector<double> convolve(const std::vector<double>& a,
                             const std::vector<double>& b);

// k-fold self-convolution via pointwise powers in the frequency domain;
// the output has length k*(n-1)+1.
std::vector<double> self_convolve_power(const std::vector<double>& a, long k);

// Direct O(n*m) convolutions: the serial one is the reference the FFT and
// OpenMP paths are tested against.
std::vector<double> convolve_direct_serial(const std::vector<double>& a,
                                           const std::vector<double>& b);
std::vector<double> convolve_direct(const std::vector<double>& a,
                                    const std::vector<double>& b);

}  // namespace lapdp::fft
