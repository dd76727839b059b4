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

#include "cauto/preprocess.hpp"

#include <algorithm>
#include <cassert>

namespace cauto {

namespace {

bool litSorter(Lit a, Lit b) { return a.x < b.x; }

class Simplifier {
public:
    Simplifier(const ClauseSet& cs, const AtomSet& query, const Program& p)
        : numVars(cs.numVars), numAtoms(cs.numAtoms) {
        assigns.assign(static_cast<size_t>(numVars), l_Undef);
        protectedVar.assign(static_cast<size_t>(numVars), false);
        eliminatedVar.assign(static_cast<size_t>(numVars), false);

        protectedVar[kBotAtom] = true;
        for (Atom a : query) protectedVar[static_cast<size_t>(a)] = true;
        AtomSet cyclic = positiveCycleAtoms(p);
        for (Atom a : cyclic) protectedVar[static_cast<size_t>(a)] = true;
        for (size_t ri = 0; ri < p.rules.size(); ri++)
            if (!p.rules[ri].isConstraint() && cyclic.contains(p.rules[ri].head))
                protectedVar[static_cast<size_t>(cs.bodyVarOfRule[ri])] = true;

        occ.resize(static_cast<size_t>(numVars) * 2);
        for (const Clause& c : cs.clauses) addClause(c);
    }

    void run() {
        if (!propagateAll()) return;
        for (int pass = 0; pass < 8 && !incoherent; pass++) {
            bool changed = subsumptionPass();
            if (!propagateAll()) return;
            changed |= eliminationPass();
            if (!propagateAll()) return;
            if (!changed) break;
        }
    }

    SimplifyResult result() {
        SimplifyResult out;
        out.report.incoherent = incoherent;
        out.report.removedRuleCount = removedClauses;
        out.varEliminated = eliminatedVar;
        out.extender = std::move(extender);

        for (Atom a = 1; a < numAtoms; a++) {
            if (assigns[static_cast<size_t>(a)] == l_True) out.report.fixedTrue.insert(a);
            if (assigns[static_cast<size_t>(a)] == l_False) out.report.fixedFalse.insert(a);
            if (eliminatedVar[static_cast<size_t>(a)]) out.report.eliminated.insert(a);
        }

        if (incoherent) {
            out.clauses.push_back(Clause{});  // empty clause: consumers go unsat
            return out;
        }
        for (size_t ci = 0; ci < clauses.size(); ci++)
            if (alive[ci]) out.clauses.push_back(clauses[ci]);
        for (Var v = 0; v < numVars; v++)
            if (assigns[static_cast<size_t>(v)] != l_Undef)
                out.clauses.push_back({mkLit(v, assigns[static_cast<size_t>(v)] == l_False)});
        return out;
    }

private:
    lbool value(Lit l) const {
        lbool v = assigns[static_cast<size_t>(var(l))];
        if (v == l_Undef) return l_Undef;
        return boolToLbool((v == l_True) != sign(l));
    }

    void addClause(Clause c) {
        std::sort(c.begin(), c.end(), litSorter);
        c.erase(std::unique(c.begin(), c.end()), c.end());
        for (size_t i = 0; i + 1 < c.size(); i++)
            if (c[i].x == (c[i + 1].x ^ 1)) return;  // tautology
        size_t ci = clauses.size();
        clauses.push_back(std::move(c));
        alive.push_back(true);
        for (Lit l : clauses[ci]) occ[static_cast<size_t>(l.x)].push_back(ci);
        pending.push_back(ci);
    }

    void kill(size_t ci) {
        if (!alive[ci]) return;
        alive[ci] = false;
        removedClauses++;
    }

    bool enqueue(Lit l) {
        lbool v = value(l);
        if (v == l_True) return true;
        if (v == l_False) {
            incoherent = true;
            return false;
        }
        assigns[static_cast<size_t>(var(l))] = boolToLbool(!sign(l));
        units.push_back(l);
        return true;
    }

    // Unit propagation over the working set; also flushes newly added
    // clauses through the current assignment.
    bool propagateAll() {
        for (;;) {
            if (incoherent) return false;
            if (!pending.empty()) {
                size_t ci = pending.back();
                pending.pop_back();
                if (alive[ci] && !reduceClause(ci)) return false;
                continue;
            }
            if (units.empty()) return true;
            Lit l = units.back();
            units.pop_back();
            // Satisfied clauses die; clauses with the complement shrink.
            for (size_t ci : occ[static_cast<size_t>(l.x)])
                kill(ci);
            auto& shrink = occ[static_cast<size_t>((~l).x)];
            for (size_t ci : shrink)
                if (alive[ci] && !reduceClause(ci)) return false;
        }
    }

    // Re-evaluates a clause in place: removes false literals, kills
    // satisfied clauses, enqueues units, flags the empty clause.
    bool reduceClause(size_t ci) {
        Clause& c = clauses[ci];
        size_t keep = 0;
        for (Lit l : c) {
            lbool v = value(l);
            if (v == l_True) {
                kill(ci);
                return true;
            }
            if (v == l_Undef) c[keep++] = l;
        }
        c.resize(keep);
        if (c.empty()) {
            incoherent = true;
            return false;
        }
        if (c.size() == 1) {
            kill(ci);
            return enqueue(c[0]);
        }
        return true;
    }

    static bool containsLit(const Clause& c, Lit l) {
        return std::find(c.begin(), c.end(), l) != c.end();
    }

    // True iff sorted clause a subsumes sorted clause b (a ⊆ b).
    static bool subsumes(const Clause& a, const Clause& b) {
        if (a.size() > b.size()) return false;
        size_t j = 0;
        for (Lit l : a) {
            while (j < b.size() && b[j].x < l.x) j++;
            if (j == b.size() || b[j].x != l.x) return false;
            j++;
        }
        return true;
    }

    bool subsumptionPass() {
        bool changed = false;
        for (size_t ci = 0; ci < clauses.size(); ci++) {
            if (!alive[ci] || incoherent) continue;
            Clause c = clauses[ci];  // copy: strengthening may touch ci itself

            // Backward subsumption through the least-occurring literal.
            Lit best = c[0];
            for (Lit l : c)
                if (occ[static_cast<size_t>(l.x)].size() <
                    occ[static_cast<size_t>(best.x)].size())
                    best = l;
            for (size_t di : occ[static_cast<size_t>(best.x)]) {
                if (di == ci || !alive[di]) continue;
                if (subsumes(c, clauses[di])) {
                    kill(di);
                    changed = true;
                }
            }

            // Self-subsuming resolution: c with one literal flipped inside d
            // lets us drop the flipped literal from d.
            for (Lit l : c) {
                Clause flipped = c;
                for (Lit& fl : flipped)
                    if (fl == l) fl = ~l;
                std::sort(flipped.begin(), flipped.end(), litSorter);
                for (size_t di : occ[static_cast<size_t>((~l).x)]) {
                    if (di == ci || !alive[di]) continue;
                    if (!subsumes(flipped, clauses[di])) continue;
                    strengthen(di, ~l);
                    changed = true;
                    if (incoherent) return changed;
                }
            }
        }
        return changed;
    }

    void strengthen(size_t di, Lit drop) {
        Clause& d = clauses[di];
        d.erase(std::remove(d.begin(), d.end(), drop), d.end());
        if (d.empty()) {
            incoherent = true;
            return;
        }
        if (d.size() == 1) {
            kill(di);
            enqueue(d[0]);
            return;
        }
    }

    bool eliminationPass() {
        bool changed = false;
        for (Var v = 0; v < numVars && !incoherent; v++) {
            size_t vi = static_cast<size_t>(v);
            if (protectedVar[vi] || eliminatedVar[vi] || assigns[vi] != l_Undef) continue;

            // Occurrence lists go stale when clauses are strengthened, so
            // membership is re-verified before resolving or killing.
            std::vector<size_t> pos, neg;
            for (size_t ci : occ[static_cast<size_t>(mkLit(v).x)])
                if (alive[ci] && containsLit(clauses[ci], mkLit(v))) pos.push_back(ci);
            for (size_t ci : occ[static_cast<size_t>(mkLit(v, true).x)])
                if (alive[ci] && containsLit(clauses[ci], mkLit(v, true))) neg.push_back(ci);
            std::sort(pos.begin(), pos.end());
            pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
            std::sort(neg.begin(), neg.end());
            neg.erase(std::unique(neg.begin(), neg.end()), neg.end());

            std::vector<Clause> resolvents;
            bool tooMany = false;
            for (size_t pi : pos) {
                for (size_t ni : neg) {
                    Clause res = resolve(clauses[pi], clauses[ni], v);
                    if (res.empty() && !resolventWasTautology) {
                        // empty resolvent: v is both forced and forbidden
                        incoherent = true;
                        return changed;
                    }
                    if (!resolventWasTautology) resolvents.push_back(std::move(res));
                    if (resolvents.size() > pos.size() + neg.size()) {
                        tooMany = true;
                        break;
                    }
                }
                if (tooMany) break;
            }
            if (tooMany) continue;

            ModelExtender::Record rec;
            rec.v = v;
            for (size_t ci : pos) rec.clauses.push_back(clauses[ci]);
            for (size_t ci : neg) rec.clauses.push_back(clauses[ci]);
            extender.records.push_back(std::move(rec));
            eliminatedVar[vi] = true;
            for (size_t ci : pos) kill(ci);
            for (size_t ci : neg) kill(ci);
            for (Clause& res : resolvents) addClause(std::move(res));
            changed = true;
        }
        return changed;
    }

    // Resolvent of a and b on pivot v; sets resolventWasTautology.
    Clause resolve(const Clause& a, const Clause& b, Var v) {
        resolventWasTautology = false;
        Clause out;
        for (Lit l : a)
            if (var(l) != v) out.push_back(l);
        for (Lit l : b)
            if (var(l) != v) out.push_back(l);
        std::sort(out.begin(), out.end(), litSorter);
        out.erase(std::unique(out.begin(), out.end()), out.end());
        for (size_t i = 0; i + 1 < out.size(); i++)
            if (out[i].x == (out[i + 1].x ^ 1)) {
                resolventWasTautology = true;
                return {};
            }
        return out;
    }

    Var numVars;
    Var numAtoms;
    std::vector<Clause> clauses;
    std::vector<bool> alive;
    std::vector<std::vector<size_t>> occ;
    std::vector<lbool> assigns;
    std::vector<uint8_t> protectedVar;
    std::vector<uint8_t> eliminatedVar;
    std::vector<Lit> units;
    std::vector<size_t> pending;
    ModelExtender extender;
    bool incoherent = false;
    bool resolventWasTautology = false;
    int removedClauses = 0;
};

}  // namespace

void ModelExtender::extend(std::vector<lbool>& vals) const {
    for (auto it = records.rbegin(); it != records.rend(); ++it) {
        size_t vi = static_cast<size_t>(it->v);
        vals[vi] = l_False;
        for (const Clause& c : it->clauses) {
            bool satisfied = false;
            bool positivePivot = false;
            for (Lit l : c) {
                if (var(l) == it->v) {
                    if (!sign(l)) positivePivot = true;
                    continue;
                }
                lbool v = vals[static_cast<size_t>(var(l))];
                if (v != l_Undef && (v == l_True) != sign(l)) {
                    satisfied = true;
                    break;
                }
            }
            if (!satisfied && positivePivot) {
                vals[vi] = l_True;
                break;
            }
        }
    }
}

SimplifyResult simplify(const ClauseSet& cs, const AtomSet& query, const Program& p) {
    Simplifier s(cs, query, p);
    s.run();
    return s.result();
}

}  // namespace cauto
