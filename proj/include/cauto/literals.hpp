/*
 *  Copyright (C) 2026  The cauto authors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 *
 */

#ifndef CAUTO_LITERALS_HPP
#define CAUTO_LITERALS_HPP

#include <cstdint>
#include <vector>

namespace cauto {

using Var = int32_t;

/// Literal over the clausal variable space (atoms plus auxiliary body and
/// selector variables). sign()==true is the negative literal.
struct Lit {
    int32_t x = -2;

    bool operator==(const Lit& other) const = default;
};

constexpr Lit mkLit(Var v, bool sign = false) { return Lit{v + v + static_cast<int>(sign)}; }
constexpr Lit operator~(Lit l) { return Lit{l.x ^ 1}; }
constexpr bool sign(Lit l) { return l.x & 1; }
constexpr Var var(Lit l) { return l.x >> 1; }
constexpr Lit kLitUndef{-2};

enum lbool : uint8_t { l_False = 0, l_True = 1, l_Undef = 2 };

inline lbool boolToLbool(bool b) { return b ? l_True : l_False; }

using Clause = std::vector<Lit>;

}  // namespace cauto

#endif
