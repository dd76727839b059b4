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

#ifndef CAUTO_ORACLE_HPP
#define CAUTO_ORACLE_HPP

#include <stdexcept>
#include <vector>

#include "cauto/program.hpp"

namespace cauto {

/// Exhaustive reference implementation of the stable-model semantics.
/// Deliberately shares nothing with the search engine beyond the program
/// types: every interpretation is checked directly against the reduct.
struct OracleResult {
    std::vector<Interpretation> stableModels;
    AtomSet cautious;  // intersection of the stable models
    bool incoherent = false;
};

class OracleBoundExceeded : public std::runtime_error {
public:
    explicit OracleBoundExceeded(size_t n)
        : std::runtime_error("oracle bound exceeded: " + std::to_string(n) + " atoms") {}
};

constexpr size_t kOracleDefaultBound = 20;

/// Enumerates all 2^n interpretations, keeping those equal to the least
/// model of their reduct. Throws OracleBoundExceeded above the bound.
OracleResult enumerateStableModels(const Program& p, size_t maxAtoms = kOracleDefaultBound);

/// Least model of the reduct P^I, computed by positive fixpoint iteration.
/// The false-atom may appear in the result (a violated constraint).
AtomSet reductLeastModel(const Program& p, const Interpretation& i);

/// True iff I is a stable model of p (least-model equality on the reduct).
bool isStableModel(const Program& p, const Interpretation& i);

}  // namespace cauto

#endif
