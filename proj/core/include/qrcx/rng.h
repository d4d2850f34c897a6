// Copyright 2026 The qrcx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

#include "qrcx/linalg.h"

namespace qrcx {

/// Seeded random source used for every stochastic draw in qrcx.
///
/// The stream is std::mt19937_64 (its output sequence is fixed by the C++
/// standard). Derived quantities avoid the implementation-defined std
/// distributions so a reimplementation can reproduce draws bit-exactly:
///   uniform()  = (next_u64() >> 11) * 2^-53, in [0, 1)
///   normal()   = Box-Muller on two uniforms, both outputs used in order
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t next_u64() { return engine_(); }
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal();

  private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Child seed for a (base, tag...) tuple; used to give every realization of a
/// sweep its own independent stream regardless of scheduling order.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> tags);

/// Haar-random pure state: normalized vector of i.i.d. complex Gaussians.
CVector haar_state(int n_qubits, Rng& rng);

}  // namespace qrcx
