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

#ifndef CAUTO_PREPROCESS_HPP
#define CAUTO_PREPROCESS_HPP

#include <vector>

#include "cauto/completion.hpp"
#include "cauto/literals.hpp"
#include "cauto/program.hpp"

namespace cauto {

struct SimplificationReport {
    AtomSet fixedTrue;   // atoms forced true at level 0
    AtomSet fixedFalse;  // atoms forced false at level 0
    AtomSet eliminated;  // atoms removed by resolution
    int removedRuleCount = 0;
    bool incoherent = false;  // empty clause derived
};

/// Reconstructs values of eliminated variables from a total assignment of
/// the surviving ones. Records are replayed in reverse elimination order;
/// each variable defaults to false and flips to true only when one of its
/// recorded clauses would otherwise be falsified.
class ModelExtender {
public:
    struct Record {
        Var v;
        std::vector<Clause> clauses;  // original clauses mentioning v
    };

    std::vector<Record> records;  // in elimination order

    void extend(std::vector<lbool>& vals) const;
};

struct SimplifyResult {
    std::vector<Clause> clauses;         // simplified set, fixed vars as units
    std::vector<uint8_t> varEliminated;  // indexed by Var
    ModelExtender extender;
    SimplificationReport report;
};

/// Level-0 simplification pass, run once before search:
/// (i) unit-propagation fixpoint, (ii) subsumption and self-subsuming
/// strengthening, (iii) bounded variable elimination (strict non-growth).
/// Elimination never touches query atoms, atoms on positive cycles, or the
/// body variables of rules defining those atoms, so loop nogoods stay
/// expressible.
SimplifyResult simplify(const ClauseSet& cs, const AtomSet& query, const Program& p);

}  // namespace cauto

#endif
