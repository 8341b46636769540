// Copyright 2026 The ATP Authors.
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


#ifndef ATP_RNG_HPP_
#define ATP_RNG_HPP_

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace atp {

// mt19937_64 output is fixed by the standard, but the distribution classes
// are not. Everything seeded goes through the helpers below so that outputs
// are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound);
  // Uniform in [0, 1) with 53 random bits.
  double uniform();
  double normal();
  bool bernoulli(double p) { return uniform() < p; }

  // k distinct values from [0, n) by partial Fisher-Yates, in draw order.
  std::vector<std::uint64_t> sample_without_replacement(std::uint64_t n,
                                                        std::uint64_t k);

 private:
  std::mt19937_64 engine_;
};

// Derives an independent seed for a named stage from the root seed.
std::uint64_t sub_seed(std::uint64_t root, std::string_view label);

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace atp

#endif  // ATP_RNG_HPP_
