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

#ifndef CAUTO_SOLVER_HPP
#define CAUTO_SOLVER_HPP

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "cauto/literals.hpp"
#include "cauto/program.hpp"

namespace cauto {

enum class Outcome { Model, Unsat, Restarted, Interrupted };

struct SolveResult {
    Outcome outcome;
    Interpretation model;  // meaningful for Outcome::Model only
};

struct SolverStats {
    uint64_t conflicts = 0;
    uint64_t decisions = 0;
    uint64_t restarts = 0;
    uint64_t propagations = 0;
};

/// Result of validating a total assignment: either the accepted model
/// (values of eliminated variables already reconstructed) or the loop
/// clauses that refute it.
struct StabilityOutcome {
    std::optional<Interpretation> model;
    std::vector<Clause> loopClauses;
};

struct SolverInput {
    Var numVars = 0;
    Var numAtoms = 0;  // vars below this are program atoms, var 0 the false-atom
    std::vector<Clause> clauses;
    std::vector<uint8_t> varEliminated;  // empty means none
    /// Called on every total assignment; null accepts everything.
    std::function<StabilityOutcome(const std::vector<lbool>&)> stability;
};

struct SolverOptions {
    int restartBase = 32;  // Luby unit in conflicts; 0 disables restarts
    uint64_t seed = 0;     // nonzero perturbs initial activities
    uint64_t conflictBudget = UINT64_MAX;
    std::atomic<bool>* cancel = nullptr;
};

struct SolverHooks {
    /// Fires at level 0 whenever a restart threshold triggers (both the
    /// internal restarts of solve() and the surfaced ones). Safe point for
    /// importing clauses.
    std::function<void()> atRestart;
    /// Every learned clause (conflict analysis and loop nogoods).
    std::function<void(const Clause&)> onLearned;
};

using ConstraintGroupId = uint32_t;

/// Conflict-driven stable-model search over a clausal program translation.
/// Branching assigns false; a singleton branch restriction is pinned as a
/// pseudo-decision at level 1 and re-established whenever the trail returns
/// to level 0. One instance is strictly single-threaded.
class Solver {
public:
    Solver(SolverInput input, SolverOptions opts = {}, SolverHooks hooks = {});
    ~Solver();

    Solver(const Solver&) = delete;
    Solver& operator=(const Solver&) = delete;

    /// Stable model search. `candidate` empty means unrestricted branching;
    /// {a} forces a false for the whole search, so Unsat certifies that every
    /// stable model of the current clause store contains a.
    SolveResult solve(std::optional<Atom> candidate);

    /// As solve(), but surfaces the first restart as Outcome::Restarted with
    /// the trail unwound to level 0 and the branch restriction dropped.
    SolveResult solveUpToRestart(std::optional<Atom> candidate);

    /// solve() with an underestimate harvest: before the first descent and
    /// after every restart, query atoms entailed at level 0 are streamed to
    /// the sink. Duplicates are the sink's concern.
    SolveResult solveStar(std::optional<Atom> candidate, const AtomSet& query,
                          const std::function<void(Atom)>& sink);

    /// Removable constraint forbidding all of `atoms` being true, realized
    /// with a selector literal held as a level-1 pseudo-decision. Learned
    /// clauses depending on it carry the selector and die with the group.
    ConstraintGroupId pushConstraint(const AtomSet& atoms);
    void retractConstraint(ConstraintGroupId id);

    /// Permanent constraint forbidding all of `atoms` being true (model
    /// blocking for enumeration).
    void addBlockingConstraint(const AtomSet& atoms);

    /// Permanent clause over existing variables (clause import at restart
    /// and iteration boundaries); unwinds the trail to level 0 first.
    void addPermanentClause(const Clause& lits);

    /// Query atoms currently entailed at level 0.
    std::vector<Atom> levelZeroTrueAtoms(const AtomSet& query) const;

    const SolverStats& stats() const { return statistics; }
    double activity(Atom a) const { return act[static_cast<size_t>(a)]; }
    int decisionLevel() const { return static_cast<int>(trailLim.size()); }
    bool conflicting() const { return !ok; }

    lbool value(Var v) const { return assigns[static_cast<size_t>(v)]; }
    lbool value(Lit l) const;

    // Test access: manual decision + propagation for hand-traced fixtures.
    void testDecide(Lit p);
    bool testPropagate();  // true iff a conflict arose

private:
    struct SClause;
    struct Watcher {
        SClause* clause;
        Lit blocker;
    };
    struct Group {
        Var selector;
        bool active = false;
    };

    Var newVar(bool branchable);
    void attach(SClause* c);
    void detach(SClause* c);
    void uncheckedEnqueue(Lit p, SClause* reason);
    SClause* propagate();
    void backtrack(int level);
    void analyze(SClause* confl, Clause& learnt, int& btLevel);
    Lit pickBranchLit();
    void varBumpActivity(Var v);
    void claBumpActivity(SClause* c);
    void decayActivities();
    void reduceDB();
    bool locked(const SClause* c) const;
    uint64_t restartThreshold() const;
    SClause* addClauseInternal(Clause lits, uint8_t kind);
    void removeClausesWithSelector(Var s);
    SolveResult search(std::optional<Atom> candidate, bool surfaceRestarts);
    StabilityOutcome runStabilityCheck();

    SolverInput in;
    SolverOptions opts;
    SolverHooks hooks;
    SolverStats statistics;

    std::vector<std::unique_ptr<SClause>> db;
    std::vector<SClause*> learnts;
    std::vector<std::vector<Watcher>> watches;  // indexed by Lit::x
    std::vector<lbool> assigns;
    std::vector<int> levels;
    std::vector<SClause*> reasons;
    std::vector<uint8_t> branchable;
    std::vector<Lit> trail;
    std::vector<size_t> trailLim;
    size_t qhead = 0;

    std::vector<double> act;
    double varInc = 1.0;
    double claInc = 1.0;

    std::vector<uint8_t> seen;  // analyze scratch

    std::vector<Group> groups;
    int activeGroup = -1;

    uint64_t lubyIndex = 0;
    uint64_t conflictsSinceRestart = 0;
    uint64_t reductions = 0;
    bool ok = true;
};

}  // namespace cauto

#endif
