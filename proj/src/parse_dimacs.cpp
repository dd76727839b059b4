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

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>
#include <vector>

#include "cauto/parse.hpp"

namespace cauto {

namespace {

struct Cursor {
    std::istream& in;
    int line = 1;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line, 1, msg); }

    // Skips whitespace and `c` comment lines; returns false at EOF.
    bool skipToToken() {
        for (;;) {
            int c = in.peek();
            if (c == EOF) return false;
            if (c == '\n') {
                line++;
                in.get();
                continue;
            }
            if (std::isspace(c)) {
                in.get();
                continue;
            }
            if (c == 'c') {
                while (c != EOF && c != '\n') c = in.get();
                if (c == '\n') line++;
                continue;
            }
            return true;
        }
    }

    long nextInt() {
        if (!skipToToken()) fail("unexpected end of input");
        long v;
        if (!(in >> v)) fail("expected integer");
        return v;
    }
};

}  // namespace

Program parseDimacs(std::istream& in) {
    Program p;
    Cursor cur{in};

    if (!cur.skipToToken()) cur.fail("missing 'p cnf' header");
    std::string word;
    in >> word;
    if (word != "p") cur.fail("missing 'p cnf' header");
    in >> word;
    if (word != "cnf") cur.fail("expected 'p cnf' header");
    long numVars = cur.nextInt();
    long numClauses = cur.nextInt();
    if (numVars < 0 || numClauses < 0) cur.fail("negative count in header");

    std::vector<Atom> trueAtom(static_cast<size_t>(numVars) + 1);
    std::vector<Atom> falseAtom(static_cast<size_t>(numVars) + 1);
    for (long v = 1; v <= numVars; v++) {
        trueAtom[v] = p.atoms.intern("t" + std::to_string(v));
        falseAtom[v] = p.atoms.intern("f" + std::to_string(v));
        p.rules.push_back(Rule{trueAtom[v], {}, {falseAtom[v]}});
        p.rules.push_back(Rule{falseAtom[v], {}, {trueAtom[v]}});
    }

    long parsed = 0;
    std::vector<long> clause;
    while (parsed < numClauses) {
        clause.clear();
        for (;;) {
            long lit = cur.nextInt();
            if (lit == 0) break;
            long v = std::labs(lit);
            if (v > numVars) cur.fail("literal " + std::to_string(lit) + " out of range");
            clause.push_back(lit);
        }
        parsed++;

        std::sort(clause.begin(), clause.end());
        clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
        bool tautology = false;
        for (long lit : clause)
            if (lit > 0 && std::binary_search(clause.begin(), clause.end(), -lit)) {
                tautology = true;
                break;
            }
        if (tautology) continue;

        // Clause l1 | ... | lk becomes the constraint forbidding every
        // literal to be false: :- comp(l1), ..., comp(lk).
        Rule r;
        for (long lit : clause)
            r.posBody.push_back(lit > 0 ? falseAtom[lit] : trueAtom[-lit]);
        r.posBody = normalizedAtomList(std::move(r.posBody));
        p.rules.push_back(std::move(r));
    }

    if (cur.skipToToken()) cur.fail("content after the declared clause count");

    p.query = p.allAtoms();
    return p;
}

Program parseDimacs(const std::string& text) {
    std::istringstream in(text);
    return parseDimacs(in);
}

}  // namespace cauto
