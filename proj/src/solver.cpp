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

#include "cauto/solver.hpp"

#include <algorithm>
#include <cassert>

namespace cauto {

namespace {

constexpr double kVarDecay = 0.95;
constexpr double kClauseDecay = 0.999;
constexpr double kRescaleLimit = 1e100;

// Luby sequence, 0-based: 1 1 2 1 1 2 4 1 1 2 1 1 2 4 8 ...
uint64_t luby(uint64_t i) {
    uint64_t size = 1, seq = 0;
    while (size < i + 1) {
        seq++;
        size = 2 * size + 1;
    }
    while (size - 1 != i) {
        size = (size - 1) >> 1;
        seq--;
        i = i % size;
    }
    return uint64_t{1} << seq;
}

}  // namespace

struct Solver::SClause {
    enum Kind : uint8_t { Problem, Learned, Loop, Blocking, Group };

    uint8_t kind;
    bool attached = false;
    bool deleted = false;
    float act = 0;
    Clause lits;
};

Solver::Solver(SolverInput input, SolverOptions options, SolverHooks h)
    : in(std::move(input)), opts(options), hooks(std::move(h)) {
    size_t n = static_cast<size_t>(in.numVars);
    watches.resize(2 * n);
    assigns.assign(n, l_Undef);
    levels.assign(n, 0);
    reasons.assign(n, nullptr);
    act.assign(n, 0.0);
    seen.assign(n, 0);
    branchable.assign(n, 1);
    if (!in.varEliminated.empty())
        for (size_t v = 0; v < n; v++)
            if (in.varEliminated[v]) branchable[v] = 0;

    if (opts.seed != 0) {
        uint64_t s = opts.seed;
        auto rng = [&s] {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            return s;
        };
        for (size_t v = 0; v < n; v++)
            if (branchable[v]) act[v] = static_cast<double>(rng() % 1024) * 1e-7;
    }

    for (Clause& c : in.clauses) addClauseInternal(std::move(c), SClause::Problem);
    in.clauses.clear();
}

Solver::~Solver() = default;

lbool Solver::value(Lit l) const {
    lbool v = assigns[static_cast<size_t>(var(l))];
    if (v == l_Undef) return l_Undef;
    return boolToLbool((v == l_True) != sign(l));
}

Var Solver::newVar(bool canBranch) {
    Var v = static_cast<Var>(assigns.size());
    watches.emplace_back();
    watches.emplace_back();
    assigns.push_back(l_Undef);
    levels.push_back(0);
    reasons.push_back(nullptr);
    act.push_back(0.0);
    seen.push_back(0);
    branchable.push_back(canBranch ? 1 : 0);
    return v;
}

void Solver::attach(SClause* c) {
    assert(c->lits.size() >= 2);
    watches[static_cast<size_t>((~c->lits[0]).x)].push_back({c, c->lits[1]});
    watches[static_cast<size_t>((~c->lits[1]).x)].push_back({c, c->lits[0]});
    c->attached = true;
}

void Solver::detach(SClause* c) {
    if (!c->attached) return;
    for (int k = 0; k < 2; k++) {
        auto& ws = watches[static_cast<size_t>((~c->lits[static_cast<size_t>(k)]).x)];
        for (size_t i = 0; i < ws.size(); i++)
            if (ws[i].clause == c) {
                ws[i] = ws.back();
                ws.pop_back();
                break;
            }
    }
    c->attached = false;
}

void Solver::uncheckedEnqueue(Lit p, SClause* reason) {
    size_t v = static_cast<size_t>(var(p));
    assert(assigns[v] == l_Undef);
    assigns[v] = boolToLbool(!sign(p));
    levels[v] = decisionLevel();
    reasons[v] = reason;
    trail.push_back(p);
}

Solver::SClause* Solver::propagate() {
    SClause* confl = nullptr;
    while (qhead < trail.size()) {
        Lit p = trail[qhead++];
        statistics.propagations++;
        auto& ws = watches[static_cast<size_t>(p.x)];
        size_t keep = 0;
        size_t i = 0;
        for (; i < ws.size(); i++) {
            Watcher w = ws[i];
            if (value(w.blocker) == l_True) {
                ws[keep++] = w;
                continue;
            }
            SClause* c = w.clause;
            Clause& lits = c->lits;
            Lit falsePart = ~p;
            if (lits[0] == falsePart) std::swap(lits[0], lits[1]);
            assert(lits[1] == falsePart);
            if (value(lits[0]) == l_True) {
                ws[keep++] = {c, lits[0]};
                continue;
            }
            bool moved = false;
            for (size_t k = 2; k < lits.size(); k++) {
                if (value(lits[k]) != l_False) {
                    std::swap(lits[1], lits[k]);
                    watches[static_cast<size_t>((~lits[1]).x)].push_back({c, lits[0]});
                    moved = true;
                    break;
                }
            }
            if (moved) continue;
            // unit or conflicting
            ws[keep++] = {c, lits[0]};
            if (value(lits[0]) == l_False) {
                confl = c;
                qhead = trail.size();
                i++;
                break;
            }
            uncheckedEnqueue(lits[0], c);
        }
        for (; i < ws.size(); i++) ws[keep++] = ws[i];
        ws.resize(keep);
        if (confl) break;
    }
    return confl;
}

void Solver::backtrack(int level) {
    if (decisionLevel() <= level) return;
    size_t bound = trailLim[static_cast<size_t>(level)];
    for (size_t i = trail.size(); i > bound; i--) {
        size_t v = static_cast<size_t>(var(trail[i - 1]));
        assigns[v] = l_Undef;
        reasons[v] = nullptr;
    }
    trail.resize(bound);
    qhead = bound;
    trailLim.resize(static_cast<size_t>(level));
}

void Solver::varBumpActivity(Var v) {
    act[static_cast<size_t>(v)] += varInc;
    if (act[static_cast<size_t>(v)] > kRescaleLimit) {
        for (double& a : act) a *= 1e-100;
        varInc *= 1e-100;
    }
}

void Solver::claBumpActivity(SClause* c) {
    c->act += static_cast<float>(claInc);
    if (c->act > 1e20f) {
        for (SClause* l : learnts) l->act *= 1e-20f;
        claInc *= 1e-20;
    }
}

void Solver::decayActivities() {
    varInc /= kVarDecay;
    claInc /= kClauseDecay;
}

void Solver::analyze(SClause* confl, Clause& learnt, int& btLevel) {
    learnt.clear();
    learnt.push_back(kLitUndef);  // slot for the asserting literal

    int pathC = 0;
    Lit p = kLitUndef;
    size_t index = trail.size();

    SClause* reason = confl;
    do {
        assert(reason != nullptr);
        if (reason->kind == SClause::Learned) claBumpActivity(reason);
        for (Lit q : reason->lits) {
            if (q == p) continue;
            size_t v = static_cast<size_t>(var(q));
            if (!seen[v] && levels[v] > 0) {
                seen[v] = 1;
                varBumpActivity(var(q));
                if (levels[v] >= decisionLevel())
                    pathC++;
                else
                    learnt.push_back(q);
            }
        }
        while (!seen[static_cast<size_t>(var(trail[index - 1]))]) index--;
        p = trail[index - 1];
        index--;
        reason = reasons[static_cast<size_t>(var(p))];
        seen[static_cast<size_t>(var(p))] = 0;
        pathC--;
    } while (pathC > 0);
    learnt[0] = ~p;

    if (learnt.size() == 1) {
        btLevel = 0;
    } else {
        size_t maxI = 1;
        for (size_t i = 2; i < learnt.size(); i++)
            if (levels[static_cast<size_t>(var(learnt[i]))] >
                levels[static_cast<size_t>(var(learnt[maxI]))])
                maxI = i;
        std::swap(learnt[1], learnt[maxI]);
        btLevel = levels[static_cast<size_t>(var(learnt[1]))];
    }

    for (size_t i = 1; i < learnt.size(); i++)
        seen[static_cast<size_t>(var(learnt[i]))] = 0;
}

Lit Solver::pickBranchLit() {
    Var best = -1;
    double bestAct = -1.0;
    for (Var v = 0; v < static_cast<Var>(assigns.size()); v++) {
        size_t vi = static_cast<size_t>(v);
        if (!branchable[vi] || assigns[vi] != l_Undef) continue;
        if (act[vi] > bestAct) {
            bestAct = act[vi];
            best = v;
        }
    }
    if (best < 0) return kLitUndef;
    return mkLit(best, true);  // branching atoms are assigned false
}

bool Solver::locked(const SClause* c) const {
    Lit first = c->lits[0];
    return value(first) == l_True &&
           reasons[static_cast<size_t>(var(first))] == c;
}

void Solver::reduceDB() {
    // Halve the deletable learned clauses by activity; binary clauses and
    // reasons survive.
    std::vector<SClause*> candidates;
    for (SClause* c : learnts)
        if (c->lits.size() > 2 && !locked(c)) candidates.push_back(c);
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const SClause* a, const SClause* b) { return a->act < b->act; });
    candidates.resize(candidates.size() / 2);
    for (SClause* c : candidates) {
        detach(c);
        c->deleted = true;
    }
    auto dead = [](const SClause* c) { return c->deleted; };
    learnts.erase(std::remove_if(learnts.begin(), learnts.end(), dead), learnts.end());
    db.erase(std::remove_if(db.begin(), db.end(),
                            [&](const std::unique_ptr<SClause>& c) { return dead(c.get()); }),
             db.end());
    reductions++;
}

uint64_t Solver::restartThreshold() const {
    return static_cast<uint64_t>(opts.restartBase) * luby(lubyIndex);
}

// Level-0 insertion of a clause: literals false at level 0 are dropped,
// satisfied clauses are absorbed. Returns the stored clause, if any.
Solver::SClause* Solver::addClauseInternal(Clause lits, uint8_t kind) {
    assert(decisionLevel() == 0);
    Clause kept;
    std::sort(lits.begin(), lits.end(), [](Lit a, Lit b) { return a.x < b.x; });
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    for (size_t i = 0; i + 1 < lits.size(); i++)
        if (lits[i].x == (lits[i + 1].x ^ 1)) return nullptr;  // tautology
    for (Lit l : lits) {
        lbool v = value(l);
        if (v == l_True) return nullptr;  // satisfied forever
        if (v == l_Undef) kept.push_back(l);
    }
    if (kept.empty()) {
        ok = false;
        return nullptr;
    }
    if (kept.size() == 1) {
        uncheckedEnqueue(kept[0], nullptr);
        return nullptr;
    }
    auto clause = std::make_unique<SClause>();
    clause->kind = kind;
    clause->lits = std::move(kept);
    SClause* ptr = clause.get();
    db.push_back(std::move(clause));
    attach(ptr);
    if (kind == SClause::Learned) learnts.push_back(ptr);
    return ptr;
}

void Solver::removeClausesWithSelector(Var s) {
    for (auto it = db.begin(); it != db.end();) {
        bool hit = false;
        for (Lit l : (*it)->lits)
            if (var(l) == s) { hit = true; break; }
        if (hit) {
            SClause* c = it->get();
            detach(c);
            learnts.erase(std::remove(learnts.begin(), learnts.end(), c), learnts.end());
            it = db.erase(it);
        } else {
            ++it;
        }
    }
}

ConstraintGroupId Solver::pushConstraint(const AtomSet& atoms) {
    assert(activeGroup < 0);
    backtrack(0);
    Var s = newVar(false);
    ConstraintGroupId id = static_cast<ConstraintGroupId>(groups.size());
    groups.push_back({s, true});
    activeGroup = static_cast<int>(id);

    Clause c{mkLit(s, true)};
    for (Atom a : atoms) c.push_back(mkLit(a, true));
    addClauseInternal(std::move(c), SClause::Group);
    return id;
}

void Solver::retractConstraint(ConstraintGroupId id) {
    assert(id < groups.size() && groups[id].active);
    backtrack(0);
    groups[id].active = false;
    activeGroup = -1;
    Var s = groups[id].selector;
    removeClausesWithSelector(s);
    if (assigns[static_cast<size_t>(s)] == l_Undef)
        uncheckedEnqueue(mkLit(s, true), nullptr);
}

void Solver::addBlockingConstraint(const AtomSet& atoms) {
    backtrack(0);
    // Eliminated atoms are functionally determined by the surviving ones, so
    // blocking the projection blocks exactly the models that share this
    // query restriction.
    Clause c;
    for (Atom a : atoms) {
        if (!in.varEliminated.empty() && in.varEliminated[static_cast<size_t>(a)]) continue;
        c.push_back(mkLit(a, true));
    }
    if (c.empty()) {
        ok = false;  // the projection is already forced: no further model exists
        return;
    }
    addClauseInternal(std::move(c), SClause::Blocking);
}

void Solver::addPermanentClause(const Clause& lits) {
    backtrack(0);
    addClauseInternal(lits, SClause::Learned);
}

std::vector<Atom> Solver::levelZeroTrueAtoms(const AtomSet& query) const {
    size_t bound = trailLim.empty() ? trail.size() : trailLim[0];
    std::vector<Atom> out;
    for (size_t i = 0; i < bound; i++) {
        Lit p = trail[i];
        if (sign(p)) continue;
        Var v = var(p);
        if (v >= in.numAtoms) continue;
        if (query.contains(v)) out.push_back(v);
    }
    return out;
}

StabilityOutcome Solver::runStabilityCheck() {
    if (in.stability) return in.stability(assigns);
    StabilityOutcome out;
    Interpretation i;
    for (Atom a = 1; a < in.numAtoms; a++)
        if (assigns[static_cast<size_t>(a)] == l_True) i.insert(a);
    out.model = std::move(i);
    return out;
}

SolveResult Solver::search(std::optional<Atom> candidate, bool surfaceRestarts) {
    backtrack(0);

    for (;;) {
        if (!ok) return {Outcome::Unsat, {}};
        if (opts.cancel && opts.cancel->load(std::memory_order_relaxed)) {
            backtrack(0);
            return {Outcome::Interrupted, {}};
        }
        if (statistics.conflicts >= opts.conflictBudget) {
            backtrack(0);
            return {Outcome::Interrupted, {}};
        }

        SClause* confl = propagate();
        if (confl != nullptr) {
            statistics.conflicts++;
            conflictsSinceRestart++;
            if (decisionLevel() == 0) {
                // Root-level conflict: the clause store itself is
                // unsatisfiable, and propagate() skipped whatever was still
                // queued, so latch the state rather than risk reuse.
                ok = false;
                return {Outcome::Unsat, {}};
            }

            Clause learnt;
            int btLevel = 0;
            analyze(confl, learnt, btLevel);
            backtrack(btLevel);
            if (learnt.size() == 1) {
                uncheckedEnqueue(learnt[0], nullptr);
            } else {
                auto clause = std::make_unique<SClause>();
                clause->kind = SClause::Learned;
                clause->lits = learnt;
                SClause* ptr = clause.get();
                db.push_back(std::move(clause));
                attach(ptr);
                learnts.push_back(ptr);
                claBumpActivity(ptr);
                uncheckedEnqueue(learnt[0], ptr);
            }
            if (hooks.onLearned) hooks.onLearned(learnt);
            decayActivities();
            if (learnts.size() > 2000 + 500 * reductions) reduceDB();
            continue;
        }

        if (opts.restartBase > 0 && conflictsSinceRestart >= restartThreshold()) {
            lubyIndex++;
            conflictsSinceRestart = 0;
            statistics.restarts++;
            backtrack(0);
            if (hooks.atRestart) hooks.atRestart();
            if (surfaceRestarts) return {Outcome::Restarted, {}};
            continue;
        }

        if (decisionLevel() == 0) {
            if (activeGroup >= 0) {
                Var s = groups[static_cast<size_t>(activeGroup)].selector;
                lbool vs = assigns[static_cast<size_t>(s)];
                if (vs == l_False) return {Outcome::Unsat, {}};
                if (vs == l_Undef) {
                    statistics.decisions++;
                    trailLim.push_back(trail.size());
                    uncheckedEnqueue(mkLit(s), nullptr);
                    continue;
                }
            } else if (candidate) {
                lbool va = assigns[static_cast<size_t>(*candidate)];
                if (va == l_True) return {Outcome::Unsat, {}};
                if (va == l_Undef) {
                    statistics.decisions++;
                    trailLim.push_back(trail.size());
                    uncheckedEnqueue(mkLit(*candidate, true), nullptr);
                    continue;
                }
            }
        }

        Lit next = pickBranchLit();
        if (next == kLitUndef) {
            StabilityOutcome sc = runStabilityCheck();
            if (sc.model) return {Outcome::Model, std::move(*sc.model)};

            // Unstable: learn the loop nogoods at the root and re-descend.
            backtrack(0);
            for (Clause& c : sc.loopClauses) {
                if (hooks.onLearned) hooks.onLearned(c);
                addClauseInternal(std::move(c), SClause::Loop);
            }
            continue;
        }

        statistics.decisions++;
        trailLim.push_back(trail.size());
        uncheckedEnqueue(next, nullptr);
    }
}

SolveResult Solver::solve(std::optional<Atom> candidate) {
    return search(candidate, false);
}

SolveResult Solver::solveUpToRestart(std::optional<Atom> candidate) {
    return search(candidate, true);
}

SolveResult Solver::solveStar(std::optional<Atom> candidate, const AtomSet& query,
                              const std::function<void(Atom)>& sink) {
    for (;;) {
        for (Atom a : levelZeroTrueAtoms(query)) sink(a);
        SolveResult r = solveUpToRestart(candidate);
        if (r.outcome != Outcome::Restarted) return r;
    }
}

void Solver::testDecide(Lit p) {
    trailLim.push_back(trail.size());
    uncheckedEnqueue(p, nullptr);
}

bool Solver::testPropagate() { return propagate() != nullptr; }

}  // namespace cauto
