// Copyright 2026 The Contig Authors.
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

// Generated by tools/derive_roof.py. Do not edit by hand.
// Exponent order: y, z, x00, x01, x10, x11.

#pragma once

#include <cstdint>

namespace contig::roof_detail {

struct RoofTerm {
  std::int64_t num;
  std::int64_t den;
  int exp[6];
};

inline constexpr RoofTerm kRhoPlus[] = {
    {1, 24, {0, 0, 0, 0, 0, 3}},
    {-1, 8, {0, 0, 0, 0, 2, 1}},
    {1, 12, {0, 0, 0, 0, 3, 0}},
    {-1, 8, {0, 0, 0, 2, 0, 1}},
    {1, 12, {0, 0, 0, 3, 0, 0}},
    {-1, 8, {0, 0, 1, 0, 0, 2}},
    {1, 4, {0, 0, 1, 0, 1, 1}},
    {-1, 8, {0, 0, 1, 0, 2, 0}},
    {1, 4, {0, 0, 1, 1, 0, 1}},
    {-1, 8, {0, 0, 1, 2, 0, 0}},
    {-1, 8, {0, 0, 2, 0, 0, 1}},
    {1, 24, {0, 0, 3, 0, 0, 0}},
    {-1, 8, {0, 1, 0, 0, 0, 2}},
    {-1, 8, {0, 1, 0, 0, 2, 0}},
    {1, 4, {0, 1, 0, 1, 0, 1}},
    {-1, 8, {0, 1, 0, 2, 0, 0}},
    {1, 4, {0, 1, 1, 0, 1, 0}},
    {-1, 8, {0, 1, 2, 0, 0, 0}},
    {-1, 8, {1, 0, 0, 0, 0, 2}},
    {1, 4, {1, 0, 0, 0, 1, 1}},
    {-1, 8, {1, 0, 0, 0, 2, 0}},
    {-1, 8, {1, 0, 0, 2, 0, 0}},
    {1, 4, {1, 0, 1, 1, 0, 0}},
    {-1, 8, {1, 0, 2, 0, 0, 0}},
    {1, 4, {1, 1, 0, 0, 0, 1}},
    {1, 4, {1, 1, 0, 0, 1, 0}},
    {1, 4, {1, 1, 0, 1, 0, 0}},
    {1, 4, {1, 1, 1, 0, 0, 0}},
    {1, 4, {1, 2, 0, 0, 0, 0}},
    {1, 4, {2, 1, 0, 0, 0, 0}},
};

inline constexpr RoofTerm kRhoMinus[] = {
    {1, 12, {0, 0, 0, 0, 0, 3}},
    {-1, 8, {0, 0, 0, 0, 1, 2}},
    {1, 24, {0, 0, 0, 0, 3, 0}},
    {-1, 8, {0, 0, 0, 1, 0, 2}},
    {1, 4, {0, 0, 0, 1, 1, 1}},
    {-1, 8, {0, 0, 0, 1, 2, 0}},
    {-1, 8, {0, 0, 0, 2, 1, 0}},
    {1, 24, {0, 0, 0, 3, 0, 0}},
    {1, 4, {0, 0, 1, 1, 1, 0}},
    {-1, 8, {0, 0, 2, 0, 1, 0}},
    {-1, 8, {0, 0, 2, 1, 0, 0}},
    {1, 12, {0, 0, 3, 0, 0, 0}},
    {-1, 8, {0, 1, 0, 0, 0, 2}},
    {-1, 8, {0, 1, 0, 0, 2, 0}},
    {1, 4, {0, 1, 0, 1, 0, 1}},
    {-1, 8, {0, 1, 0, 2, 0, 0}},
    {1, 4, {0, 1, 1, 0, 1, 0}},
    {-1, 8, {0, 1, 2, 0, 0, 0}},
    {-1, 8, {1, 0, 0, 0, 0, 2}},
    {1, 4, {1, 0, 0, 0, 1, 1}},
    {-1, 8, {1, 0, 0, 0, 2, 0}},
    {-1, 8, {1, 0, 0, 2, 0, 0}},
    {1, 4, {1, 0, 1, 1, 0, 0}},
    {-1, 8, {1, 0, 2, 0, 0, 0}},
    {1, 4, {1, 1, 0, 0, 0, 1}},
    {1, 4, {1, 1, 0, 0, 1, 0}},
    {1, 4, {1, 1, 0, 1, 0, 0}},
    {1, 4, {1, 1, 1, 0, 0, 0}},
    {1, 4, {1, 2, 0, 0, 0, 0}},
    {1, 4, {2, 1, 0, 0, 0, 0}},
};

}  // namespace contig::roof_detail
