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

TEST_CASE("worked example: exactly the four stable models") {
    Program p = makeAsp(kExample1);
    OracleResult res = enumerateStableModels(p);
    REQUIRE(res.stableModels.size() == 4);

    std::vector<std::set<std::string>> got;
    for (const Interpretation& m : res.stableModels) got.push_back(namesOf(p, m));
    for (const auto& expected : kExample1Models)
        CHECK(std::count(got.begin(), got.end(), expected) == 1);

    CHECK(namesOf(p, res.cautious) == kExample1Cautious);
}

TEST_CASE("odd negative loop has no stable model") {
    Program p = makeAsp("a :- not a.");
    OracleResult res = enumerateStableModels(p);
    CHECK(res.incoherent);
    CHECK(res.stableModels.empty());
}

TEST_CASE("empty program has the empty stable model") {
    Program p = makeAsp("");
    OracleResult res = enumerateStableModels(p);
    REQUIRE(res.stableModels.size() == 1);
    CHECK(res.stableModels[0].empty());
    CHECK_FALSE(res.incoherent);
}

TEST_CASE("positive cycles are not self-supporting") {
    Program p = makeAsp("p :- q. q :- p.");
    OracleResult res = enumerateStableModels(p);
    REQUIRE(res.stableModels.size() == 1);
    CHECK(res.stableModels[0].empty());
}

TEST_CASE("atom bound is enforced") {
    Program p;
    for (int i = 0; i < 25; i++) p.atoms.intern("y" + std::to_string(i));
    CHECK_THROWS_AS(enumerateStableModels(p), OracleBoundExceeded);
    CHECK_NOTHROW(enumerateStableModels(p, 30));
}

TEST_CASE("every reported model satisfies every rule") {
    std::mt19937 rng(777);
    for (int round = 0; round < 150; round++) {
        Program p = randomProgram(rng, 9);
        OracleResult res = enumerateStableModels(p);
        for (const Interpretation& m : res.stableModels) {
            CHECK(models(m, p));
            CHECK_FALSE(m.contains(kBotAtom));
            CHECK(isStableModel(p, m));
        }
        if (!res.incoherent) {
            AtomSet expect = res.stableModels.front();
            for (const auto& m : res.stableModels) expect = expect.intersect(m);
            CHECK(expect == res.cautious);
        }
    }
}

TEST_CASE("reduct least model") {
    Program p = makeAsp("a. b :- a. c :- not d.");
    Interpretation i;
    i.insert(atomOf(p, "d"));
    AtomSet least = reductLeastModel(p, i);
    // the c-rule is deleted by the reduct; a and b remain derivable
    CHECK(least == atomsOf(p, {"a", "b"}));
}
