// Copyright 2026 The ibrl Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IBRL_COMMON_RNG_H_
#define IBRL_COMMON_RNG_H_

#include <cstdint>
#include <random>
#include <string>

namespace ibrl {

// Mixes a base seed with a stream index so that replicas, policies and
// network initialisations draw from unrelated sequences.
uint64_t DeriveSeed(uint64_t base, uint64_t stream);

// Seeded generator used everywhere randomness enters the simulation. The
// uniform draw is built from the raw 64-bit output so traces do not depend
// on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed = 0) : engine_(seed) {}

  // Uniform on [0, 1).
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer on [0, n). n must be positive.
  int UniformInt(int n);

  bool Bernoulli(double p) { return Uniform() < p; }

  // Standard normal via Box-Muller on two Uniform() draws.
  double Normal();

  std::string SaveState() const;
  void LoadState(const std::string& state);

 private:
  std::mt19937_64 engine_;
};

}  // namespace ibrl

#endif  // IBRL_COMMON_RNG_H_
