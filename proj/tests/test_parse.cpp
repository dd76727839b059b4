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

#include <random>

#include "cauto/oracle.hpp"
#include "doctest.h"
#include "testsupport.hpp"

using namespace cauto;
using namespace cauto::test;

TEST_CASE("facts, rules and constraints") {
    Program p = makeAsp("a.");
    REQUIRE(p.rules.size() == 1);
    CHECK(p.rules[0].isFact());
    CHECK(p.rules[0].head == atomOf(p, "a"));

    Program c = makeAsp(":- a, not b.");
    REQUIRE(c.rules.size() == 1);
    CHECK(c.rules[0].isConstraint());
    CHECK(c.rules[0].posBody == std::vector<Atom>{atomOf(c, "a")});
    CHECK(c.rules[0].negBody == std::vector<Atom>{atomOf(c, "b")});
}

TEST_CASE("the worked example parses to 16 rules over 15 atoms") {
    Program p = makeAsp(kExample1);
    CHECK(p.rules.size() == 16);
    CHECK(p.numAtoms() - 1 == 15);  // excluding the false-atom
    CHECK(p.query.size() == 15);    // default query: every atom
}

TEST_CASE("parse errors carry a position") {
    try {
        makeAsp("a :- b\nc.");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);  // '.' missing, found 'c' on the next line... ',' or '.'
    }

    CHECK_THROWS_AS(makeAsp("a :- not not b."), ParseError);
    CHECK_THROWS_AS(makeAsp("a :-"), ParseError);
    CHECK_THROWS_AS(makeAsp(":- ,."), ParseError);
    CHECK_THROWS_AS(makeAsp("a : b."), ParseError);
    CHECK_THROWS_AS(makeAsp("a(1, 2)."), ParseError);  // whitespace inside the token
}

TEST_CASE("overlapping positive and negative body still parses") {
    Program p = makeAsp("a :- b, not b.");
    REQUIRE(p.rules.size() == 1);
    CHECK(p.rules[0].posBody == p.rules[0].negBody);
    OracleResult res = enumerateStableModels(p);
    REQUIRE(res.stableModels.size() == 1);  // the rule never fires
    CHECK(res.stableModels[0].empty());
}

TEST_CASE("dimacs: single free variable") {
    Program p = parseDimacs("p cnf 1 0\n");
    CHECK(p.rules.size() == 2);
    OracleResult res = enumerateStableModels(p);
    CHECK(res.stableModels.size() == 2);
    CHECK(res.cautious.empty());  // neither t1 nor f1 is cautious
}

TEST_CASE("dimacs: forced assignment") {
    Program p = parseDimacs("p cnf 2 2\n1 2 0\n-1 0\n");
    OracleResult res = enumerateStableModels(p);
    REQUIRE_FALSE(res.incoherent);
    CHECK(namesOf(p, res.cautious) == std::set<std::string>{"f1", "t2"});
}

TEST_CASE("dimacs: contradictory units give an incoherent program") {
    Program p = parseDimacs("p cnf 1 2\n1 0\n-1 0\n");
    CHECK(enumerateStableModels(p).incoherent);
}

TEST_CASE("dimacs: empty clause accepted, program incoherent") {
    Program p = parseDimacs("p cnf 1 1\n0\n");
    CHECK(p.rules.size() == 3);
    CHECK(enumerateStableModels(p).incoherent);
}

TEST_CASE("dimacs: tautological clauses are dropped") {
    Program p = parseDimacs("p cnf 2 2\n1 -1 0\n2 0\n");
    CHECK(p.rules.size() == 2 * 2 + 1);  // generators plus the one real clause
}

TEST_CASE("dimacs: malformed inputs") {
    CHECK_THROWS_AS(parseDimacs("p cnf 1 2\n1 0\n"), ParseError);       // too few clauses
    CHECK_THROWS_AS(parseDimacs("p cnf 1 0\n1 0\n"), ParseError);       // too many
    CHECK_THROWS_AS(parseDimacs("p cnf 2 1\n3 0\n"), ParseError);       // out of range
    CHECK_THROWS_AS(parseDimacs("cnf 2 1\n1 0\n"), ParseError);         // no header
    CHECK_THROWS_AS(parseDimacs("p cnf 1 1\n1 x 0\n"), ParseError);     // junk literal
}

TEST_CASE("dimacs stable models are in bijection with the CNF models") {
    std::mt19937 rng(4242);
    for (int round = 0; round < 60; round++) {
        std::string text = randomCnfText(rng);
        ParsedCnf cnf = readCnf(text);
        if (cnf.numVars > 10) continue;
        std::vector<uint32_t> expected = bruteCnfModels(cnf);

        Program p = parseDimacs(text);
        OracleResult res = enumerateStableModels(p);

        std::set<uint32_t> got;
        for (const Interpretation& m : res.stableModels) {
            uint32_t bits = 0;
            for (int v = 1; v <= cnf.numVars; v++) {
                Atom t = atomOf(p, "t" + std::to_string(v));
                Atom f = atomOf(p, "f" + std::to_string(v));
                CHECK(m.contains(t) != m.contains(f));  // exactly one of t/f holds
                if (m.contains(t)) bits |= 1u << (v - 1);
            }
            got.insert(bits);
        }
        CHECK(got.size() == res.stableModels.size());
        CHECK(got == std::set<uint32_t>(expected.begin(), expected.end()));
    }
}

TEST_CASE("query files") {
    Program p = makeAsp(kExample1);

    AtomSet q = parseQuery("Q(1,1)\n% comment\n\n  Q(3,2)  \n", p);
    CHECK(namesOf(p, q) == std::set<std::string>{"Q(1,1)", "Q(3,2)"});

    CHECK(parseQuery("", p).empty());

    AtomSet withUnknown = parseQuery("Q(1,1)\nnowhere\n", p);
    CHECK(withUnknown.size() == 2);
    CHECK(p.atoms.lookup("nowhere") >= 0);  // interned, no defining rule

    CHECK_THROWS_AS(parseQuery(std::string(kBotName) + "\n", p), ParseError);
}

TEST_CASE("an undefined query atom is never cautious") {
    Program p = makeAsp("a :- not b. b :- not a.");
    AtomSet q = parseQuery("a\nb\nghost\n", p);
    OracleResult res = enumerateStableModels(p);
    REQUIRE_FALSE(res.incoherent);
    CHECK_FALSE(res.cautious.contains(atomOf(p, "ghost")));
    CapturedRun run = captureRun(p, q, {AlgorithmKind::Ict, false});
    CHECK(run.result.answer.empty());
}

TEST_CASE("format detection") {
    CHECK(detectFormat("p cnf 3 2\n1 0\n2 0\n") == SourceFormat::DimacsCnf);
    CHECK(detectFormat("c comment\np cnf 1 0\n") == SourceFormat::DimacsCnf);
    CHECK(detectFormat("a :- b.\n") == SourceFormat::AspText);
    CHECK(detectFormat("c.\n") == SourceFormat::AspText);
    CHECK(detectFormat("") == SourceFormat::AspText);
}
