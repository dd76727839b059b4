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

#include "cauto/oracle.hpp"

namespace cauto {

AtomSet reductLeastModel(const Program& p, const Interpretation& i) {
    // Reduct: drop rules with a true negative-body atom, strip negation from
    // the rest, then iterate the immediate-consequence operator to fixpoint.
    std::vector<const Rule*> reduct;
    reduct.reserve(p.rules.size());
    for (const Rule& r : p.rules) {
        bool dropped = false;
        for (Atom a : r.negBody)
            if (i.contains(a)) { dropped = true; break; }
        if (!dropped) reduct.push_back(&r);
    }

    AtomSet least;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Rule* r : reduct) {
            if (least.contains(r->head)) continue;
            bool fires = true;
            for (Atom a : r->posBody)
                if (!least.contains(a)) { fires = false; break; }
            if (fires) {
                least.insert(r->head);
                changed = true;
            }
        }
    }
    return least;
}

bool isStableModel(const Program& p, const Interpretation& i) {
    // The least model contains the false-atom exactly when a constraint
    // fires, and I never contains it, so constraint violations are caught by
    // the equality test itself.
    return reductLeastModel(p, i) == i;
}

OracleResult enumerateStableModels(const Program& p, size_t maxAtoms) {
    size_t n = p.numAtoms() - 1;  // exclude the false-atom
    if (n > maxAtoms) throw OracleBoundExceeded(n);

    OracleResult out;
    for (uint64_t bits = 0; bits < (uint64_t{1} << n); bits++) {
        Interpretation i;
        for (size_t k = 0; k < n; k++)
            if (bits & (uint64_t{1} << k)) i.insert(static_cast<Atom>(k + 1));
        if (isStableModel(p, i)) out.stableModels.push_back(std::move(i));
    }

    if (out.stableModels.empty()) {
        out.incoherent = true;
    } else {
        out.cautious = out.stableModels.front();
        for (size_t m = 1; m < out.stableModels.size(); m++)
            out.cautious = out.cautious.intersect(out.stableModels[m]);
    }
    return out;
}

}  // namespace cauto
