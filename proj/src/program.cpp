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

#include "cauto/program.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace cauto {

AtomSet::AtomSet(std::vector<Atom> atoms) : xs(std::move(atoms)) {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
}

bool AtomSet::contains(Atom a) const {
    return std::binary_search(xs.begin(), xs.end(), a);
}

bool AtomSet::insert(Atom a) {
    auto it = std::lower_bound(xs.begin(), xs.end(), a);
    if (it != xs.end() && *it == a) return false;
    xs.insert(it, a);
    return true;
}

bool AtomSet::erase(Atom a) {
    auto it = std::lower_bound(xs.begin(), xs.end(), a);
    if (it == xs.end() || *it != a) return false;
    xs.erase(it);
    return true;
}

bool AtomSet::subsetOf(const AtomSet& other) const {
    return std::includes(other.xs.begin(), other.xs.end(), xs.begin(), xs.end());
}

AtomSet AtomSet::intersect(const AtomSet& other) const {
    AtomSet out;
    std::set_intersection(xs.begin(), xs.end(), other.xs.begin(), other.xs.end(),
                          std::back_inserter(out.xs));
    return out;
}

AtomSet AtomSet::setminus(const AtomSet& other) const {
    AtomSet out;
    std::set_difference(xs.begin(), xs.end(), other.xs.begin(), other.xs.end(),
                        std::back_inserter(out.xs));
    return out;
}

AtomTable::AtomTable() {
    names.emplace_back(kBotName);
    ids.emplace(kBotName, kBotAtom);
}

Atom AtomTable::intern(std::string_view name) {
    if (name.empty() || name == kBotName) throw ReservedNameError(std::string(name));
    auto it = ids.find(std::string(name));
    if (it != ids.end()) return it->second;
    Atom a = static_cast<Atom>(names.size());
    names.emplace_back(name);
    ids.emplace(names.back(), a);
    return a;
}

Atom AtomTable::lookup(std::string_view name) const {
    auto it = ids.find(std::string(name));
    return it == ids.end() ? -1 : it->second;
}

AtomSet Program::allAtoms() const {
    AtomSet out;
    for (Atom a = 1; a < static_cast<Atom>(atoms.size()); a++) out.insert(a);
    return out;
}

bool models(const Interpretation& i, const Rule& r) {
    bool bodyHolds = true;
    for (Atom a : r.posBody)
        if (!i.contains(a)) { bodyHolds = false; break; }
    if (bodyHolds)
        for (Atom a : r.negBody)
            if (i.contains(a)) { bodyHolds = false; break; }
    if (!bodyHolds) return true;
    return r.head != kBotAtom && i.contains(r.head);
}

bool models(const Interpretation& i, const Program& p) {
    for (const Rule& r : p.rules)
        if (!models(i, r)) return false;
    return true;
}

std::string toString(const Rule& r, const AtomTable& atoms) {
    std::ostringstream out;
    if (!r.isConstraint()) out << atoms.name(r.head);
    if (!r.posBody.empty() || !r.negBody.empty()) {
        out << " :- ";
        bool first = true;
        for (Atom a : r.posBody) {
            if (!first) out << ", ";
            out << atoms.name(a);
            first = false;
        }
        for (Atom a : r.negBody) {
            if (!first) out << ", ";
            out << "not " << atoms.name(a);
            first = false;
        }
    } else if (r.isConstraint()) {
        out << " :- ";  // headless, bodyless constraint (immediate incoherence)
    }
    out << ".";
    return out.str();
}

std::string toString(const Program& p) {
    std::ostringstream out;
    for (const Rule& r : p.rules) out << toString(r, p.atoms) << "\n";
    return out.str();
}

std::vector<Atom> normalizedAtomList(std::vector<Atom> atoms) {
    std::sort(atoms.begin(), atoms.end());
    atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
    return atoms;
}

}  // namespace cauto
