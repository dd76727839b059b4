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

#include "cauto/completion.hpp"

#include <algorithm>
#include <cassert>

namespace cauto {

ClauseSet complete(const Program& p) {
    ClauseSet cs;
    cs.numAtoms = static_cast<Var>(p.numAtoms());
    cs.numVars = cs.numAtoms + static_cast<Var>(p.rules.size());
    cs.supports.resize(static_cast<size_t>(cs.numAtoms));

    // The false-atom never holds.
    cs.clauses.push_back({mkLit(kBotAtom, true)});

    for (size_t ri = 0; ri < p.rules.size(); ri++) {
        const Rule& r = p.rules[ri];
        Var beta = cs.numAtoms + static_cast<Var>(ri);
        cs.bodyVarOfRule.push_back(beta);

        bool contradictoryBody = false;
        for (Atom a : r.posBody)
            if (std::binary_search(r.negBody.begin(), r.negBody.end(), a)) {
                contradictoryBody = true;
                break;
            }

        if (contradictoryBody) {
            cs.clauses.push_back({mkLit(beta, true)});
        } else {
            // beta <-> posBody & ~negBody
            Clause full{mkLit(beta)};
            for (Atom a : r.posBody) {
                cs.clauses.push_back({mkLit(beta, true), mkLit(a)});
                full.push_back(mkLit(a, true));
            }
            for (Atom a : r.negBody) {
                cs.clauses.push_back({mkLit(beta, true), mkLit(a, true)});
                full.push_back(mkLit(a));
            }
            cs.clauses.push_back(std::move(full));
        }

        if (r.isConstraint())
            cs.clauses.push_back({mkLit(beta, true)});
        else
            cs.supports[static_cast<size_t>(r.head)].push_back(beta);
    }

    // a <-> beta_1 | ... | beta_k over the defining rules; atoms with no
    // defining rule are fixed false.
    for (Atom a = 1; a < cs.numAtoms; a++) {
        const auto& sup = cs.supports[static_cast<size_t>(a)];
        if (sup.empty()) {
            cs.clauses.push_back({mkLit(a, true)});
            continue;
        }
        Clause some{mkLit(a, true)};
        for (Var beta : sup) {
            cs.clauses.push_back({mkLit(beta, true), mkLit(a)});
            some.push_back(mkLit(beta));
        }
        cs.clauses.push_back(std::move(some));
    }

    return cs;
}

namespace {

// Tarjan SCCs over the positive dependency graph (head -> positive body
// atom), restricted to a given atom subset.
class SccFinder {
public:
    SccFinder(const Program& p, const AtomSet& domain) {
        size_t n = p.numAtoms();
        adj.resize(n);
        inDomain.assign(n, false);
        for (Atom a : domain) inDomain[static_cast<size_t>(a)] = true;
        for (const Rule& r : p.rules) {
            if (r.isConstraint() || !inDomain[static_cast<size_t>(r.head)]) continue;
            for (Atom b : r.posBody)
                if (inDomain[static_cast<size_t>(b)])
                    adj[static_cast<size_t>(r.head)].push_back(b);
        }
        index.assign(n, -1);
        low.assign(n, 0);
        onStack.assign(n, false);
        for (Atom a : domain)
            if (index[static_cast<size_t>(a)] < 0) strongconnect(a);
    }

    std::vector<std::vector<Atom>> sccs;

private:
    void strongconnect(Atom v) {
        // Iterative Tarjan; recursion depth could hit limits on chain-heavy
        // programs.
        struct Frame {
            Atom v;
            size_t next = 0;
        };
        std::vector<Frame> callStack{{v}};
        while (!callStack.empty()) {
            Frame& f = callStack.back();
            size_t vi = static_cast<size_t>(f.v);
            if (f.next == 0) {
                index[vi] = low[vi] = counter++;
                stack.push_back(f.v);
                onStack[vi] = true;
            }
            bool descended = false;
            while (f.next < adj[vi].size()) {
                Atom w = adj[vi][f.next++];
                size_t wi = static_cast<size_t>(w);
                if (index[wi] < 0) {
                    callStack.push_back({w});
                    descended = true;
                    break;
                }
                if (onStack[wi]) low[vi] = std::min(low[vi], index[wi]);
            }
            if (descended) continue;
            if (low[vi] == index[vi]) {
                std::vector<Atom> scc;
                for (;;) {
                    Atom w = stack.back();
                    stack.pop_back();
                    onStack[static_cast<size_t>(w)] = false;
                    scc.push_back(w);
                    if (w == f.v) break;
                }
                sccs.push_back(std::move(scc));
            }
            Atom done = f.v;
            callStack.pop_back();
            if (!callStack.empty()) {
                size_t pi = static_cast<size_t>(callStack.back().v);
                low[pi] = std::min(low[pi], low[static_cast<size_t>(done)]);
            }
        }
    }

    std::vector<std::vector<Atom>> adj;
    std::vector<bool> inDomain;
    std::vector<int> index, low;
    std::vector<bool> onStack;
    std::vector<Atom> stack;
    int counter = 0;
};

}  // namespace

std::vector<Clause> LoopNogood::toClauses() const {
    std::vector<Clause> out;
    for (Atom a : loopAtoms) {
        Clause c{mkLit(a, true)};
        for (Var beta : externalSupports) c.push_back(mkLit(beta));
        out.push_back(std::move(c));
    }
    return out;
}

namespace {

// Least model of the reduct P^I via counter-based positive propagation
// (Dowling-Gallier). Kept separate from the oracle's naive fixpoint so the
// two stability checks remain independent code paths.
AtomSet reductFixpoint(const Program& p, const Interpretation& i) {
    size_t n = p.numAtoms();
    std::vector<int> missing(p.rules.size(), 0);
    std::vector<std::vector<size_t>> watchers(n);
    std::vector<bool> derived(n, false);
    std::vector<Atom> queue;

    auto derive = [&](Atom a) {
        if (!derived[static_cast<size_t>(a)]) {
            derived[static_cast<size_t>(a)] = true;
            queue.push_back(a);
        }
    };

    for (size_t ri = 0; ri < p.rules.size(); ri++) {
        const Rule& r = p.rules[ri];
        bool dropped = false;
        for (Atom a : r.negBody)
            if (i.contains(a)) { dropped = true; break; }
        if (dropped) continue;
        missing[ri] = static_cast<int>(r.posBody.size());
        if (missing[ri] == 0) {
            derive(r.head);
        } else {
            for (Atom a : r.posBody) watchers[static_cast<size_t>(a)].push_back(ri);
        }
    }

    while (!queue.empty()) {
        Atom a = queue.back();
        queue.pop_back();
        for (size_t ri : watchers[static_cast<size_t>(a)])
            if (--missing[ri] == 0) derive(p.rules[ri].head);
    }

    AtomSet least;
    for (size_t a = 0; a < n; a++)
        if (derived[a]) least.insert(static_cast<Atom>(a));
    return least;
}

}  // namespace

std::optional<LoopNogood> unfoundedCheck(const Program& p, const ClauseSet& cs,
                                         const Interpretation& i) {
    AtomSet least = reductFixpoint(p, i);
    if (least == i) return std::nullopt;
    AtomSet unfounded = i.setminus(least);
    if (unfounded.empty()) {
        // Only reachable when I is not a classical model of the completion,
        // which violates the precondition.
        fprintf(stderr, "unfoundedCheck: precondition violated\nprogram:\n%s\nI:",
                toString(p).c_str());
        for (Atom a : i) fprintf(stderr, " %s", p.atoms.name(a).c_str());
        fprintf(stderr, "\nleast:");
        for (Atom a : least) fprintf(stderr, " %s", p.atoms.name(a).c_str());
        fprintf(stderr, "\n");
        abort();
    }

    SccFinder finder(p, unfounded);
    // Any SCC of the unfounded set works; take the first reported one.
    LoopNogood nogood;
    nogood.loopAtoms = AtomSet(finder.sccs.front());

    for (size_t ri = 0; ri < p.rules.size(); ri++) {
        const Rule& r = p.rules[ri];
        if (r.isConstraint() || !nogood.loopAtoms.contains(r.head)) continue;
        bool internal = false;
        for (Atom b : r.posBody)
            if (nogood.loopAtoms.contains(b)) { internal = true; break; }
        if (!internal) nogood.externalSupports.push_back(cs.bodyVarOfRule[ri]);
    }
    return nogood;
}

AtomSet positiveCycleAtoms(const Program& p) {
    AtomSet domain = p.allAtoms();
    SccFinder finder(p, domain);

    AtomSet cyclic;
    for (const auto& scc : finder.sccs) {
        if (scc.size() > 1) {
            for (Atom a : scc) cyclic.insert(a);
            continue;
        }
        // Singleton: cyclic only via a direct self-loop.
        Atom a = scc.front();
        for (const Rule& r : p.rules) {
            if (r.head != a) continue;
            if (std::binary_search(r.posBody.begin(), r.posBody.end(), a)) {
                cyclic.insert(a);
                break;
            }
        }
    }
    return cyclic;
}

}  // namespace cauto
