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

#ifndef CAUTO_COMPLETION_HPP
#define CAUTO_COMPLETION_HPP

#include <optional>
#include <vector>

#include "cauto/literals.hpp"
#include "cauto/program.hpp"

namespace cauto {

/// Clark completion of a program. Variables [0, numAtoms) are the program
/// atoms (0 = false-atom, fixed false); variables [numAtoms, numVars) are
/// one auxiliary body variable per rule. Classical models of the clauses are
/// a superset of the stable models; equality holds exactly for tight
/// programs, and the gap is closed lazily with loop nogoods.
struct ClauseSet {
    Var numVars = 0;
    Var numAtoms = 0;
    std::vector<Clause> clauses;
    std::vector<Var> bodyVarOfRule;          // rule index -> its body variable
    std::vector<std::vector<Var>> supports;  // atom -> body vars of its defining rules

    bool isAtomVar(Var v) const { return v < numAtoms; }
};

ClauseSet complete(const Program& p);

/// Forbids the loop atoms being true while every external support body is
/// false; one clause per loop atom (¬a ∨ β_r1 ∨ … ∨ β_rk).
struct LoopNogood {
    AtomSet loopAtoms;
    std::vector<Var> externalSupports;  // body vars of rules defining loop
                                        // atoms from outside the loop
    std::vector<Clause> toClauses() const;
};

/// Stability guard: computes the least model of the reduct P^I and accepts
/// (nullopt) iff it equals I; otherwise returns a loop nogood built from a
/// strongly connected component of I minus the least model. Requires the
/// completion's body-variable layout for the support literals.
std::optional<LoopNogood> unfoundedCheck(const Program& p, const ClauseSet& cs,
                                         const Interpretation& i);

/// Atoms lying on a cycle through positive rule bodies. Empty for tight
/// programs; these atoms (and their rules' body variables) must survive
/// preprocessing because loop nogoods may mention them later.
AtomSet positiveCycleAtoms(const Program& p);

}  // namespace cauto

#endif
