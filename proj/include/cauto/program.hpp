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

#ifndef CAUTO_PROGRAM_HPP
#define CAUTO_PROGRAM_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cauto {

/// Dense atom index. Atom 0 is the false-atom and never appears in an
/// interpretation; constraints are ordinary rules with head 0.
using Atom = int32_t;

constexpr Atom kBotAtom = 0;
constexpr const char* kBotName = "#false";

/// Sorted, duplicate-free set of atoms. All solver-visible sets (queries,
/// interpretations, estimates) use this representation so that iteration
/// order is deterministic.
class AtomSet {
public:
    AtomSet() = default;
    explicit AtomSet(std::vector<Atom> atoms);

    bool contains(Atom a) const;
    bool insert(Atom a);  // returns true if newly inserted
    bool erase(Atom a);   // returns true if present
    void clear() { xs.clear(); }

    size_t size() const { return xs.size(); }
    bool empty() const { return xs.empty(); }
    Atom operator[](size_t i) const { return xs[i]; }

    std::vector<Atom>::const_iterator begin() const { return xs.begin(); }
    std::vector<Atom>::const_iterator end() const { return xs.end(); }

    bool subsetOf(const AtomSet& other) const;
    AtomSet intersect(const AtomSet& other) const;
    AtomSet setminus(const AtomSet& other) const;

    bool operator==(const AtomSet& other) const { return xs == other.xs; }
    bool operator!=(const AtomSet& other) const { return xs != other.xs; }

private:
    std::vector<Atom> xs;
};

/// Total interpretations are plain atom sets (the false-atom excluded).
using Interpretation = AtomSet;

/// Ground normal rule: head <- posBody, not negBody. Bodies are kept sorted
/// and duplicate-free; posBody and negBody may overlap (such a rule can
/// never fire but must still parse).
struct Rule {
    Atom head = kBotAtom;
    std::vector<Atom> posBody;
    std::vector<Atom> negBody;

    bool isConstraint() const { return head == kBotAtom; }
    bool isFact() const { return head != kBotAtom && posBody.empty() && negBody.empty(); }
    bool operator==(const Rule& other) const = default;
};

class ReservedNameError : public std::runtime_error {
public:
    explicit ReservedNameError(const std::string& name)
        : std::runtime_error("reserved atom name: " + name) {}
};

/// Bijective name<->id interning table. Id 0 is pre-registered to the
/// false-atom; user atoms get dense ids starting at 1.
class AtomTable {
public:
    AtomTable();

    /// Same name always yields the same id; a fresh name gets the next id.
    /// Throws ReservedNameError for the false-atom token.
    Atom intern(std::string_view name);

    const std::string& name(Atom a) const { return names.at(static_cast<size_t>(a)); }
    Atom lookup(std::string_view name) const;  // -1 if absent
    size_t size() const { return names.size(); }

private:
    std::vector<std::string> names;
    std::unordered_map<std::string, Atom> ids;
};

struct Program {
    std::vector<Rule> rules;
    AtomTable atoms;
    AtomSet query;

    size_t numAtoms() const { return atoms.size(); }

    /// All atoms of the table except the false-atom.
    AtomSet allAtoms() const;
};

/// Rule satisfaction per the usual definition: I |= r iff H(r) in I whenever
/// the body holds in I. Constraints have head 0, which is never in I, so
/// their body must be falsified.
bool models(const Interpretation& i, const Rule& r);
bool models(const Interpretation& i, const Program& p);

/// Text form that parseAsp accepts back; parse -> print -> parse is the
/// identity on the structural content.
std::string toString(const Rule& r, const AtomTable& atoms);
std::string toString(const Program& p);

/// Sort + dedupe helper used by parsers and generators.
std::vector<Atom> normalizedAtomList(std::vector<Atom> atoms);

}  // namespace cauto

#endif
