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

#include "ibrl/common/rng.h"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace ibrl {

uint64_t DeriveSeed(uint64_t base, uint64_t stream) {
  // splitmix64 finaliser over the combined value.
  uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int Rng::UniformInt(int n) {
  if (n <= 0) throw std::invalid_argument("UniformInt: n must be positive");
  // Rejection sampling keeps the draw unbiased for any n.
  const uint64_t range = static_cast<uint64_t>(n);
  const uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % range;
  uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return static_cast<int>(v % range);
}

double Rng::Normal() {
  double u1 = Uniform();
  while (u1 <= 0.0) u1 = Uniform();
  const double u2 = Uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::string Rng::SaveState() const {
  std::ostringstream out;
  out << engine_;
  return out.str();
}

void Rng::LoadState(const std::string& state) {
  std::istringstream in(state);
  in >> engine_;
  if (!in) throw std::invalid_argument("Rng::LoadState: malformed state");
}

}  // namespace ibrl
