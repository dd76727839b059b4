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

#ifndef CAUTO_CAUTIOUS_HPP
#define CAUTO_CAUTIOUS_HPP

#include <atomic>
#include <chrono>
#include <functional>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "cauto/completion.hpp"
#include "cauto/preprocess.hpp"
#include "cauto/program.hpp"
#include "cauto/solver.hpp"

namespace cauto {

enum class AlgorithmKind { Enumeration, OverestimateReduction, Ict, Ipct };

/// One of the eight single-process variants: the four base procedures and
/// their starred forms (underestimate harvest at every restart).
struct AlgorithmId {
    AlgorithmKind kind = AlgorithmKind::Ipct;
    bool starred = false;
};

enum class EventKind { UnderAdd, OverRemove, Complete, Incoherent };

/// Anytime protocol unit: underestimate atoms are never retracted and
/// removed candidates never re-enter.
struct EstimateEvent {
    EventKind kind;
    Atom atom = -1;  // undefined for terminal kinds
    int64_t tMs = 0;
};

using EventSink = std::function<void(const EstimateEvent&)>;

enum class RunStatus { Complete, Incoherent, Partial };

struct RunConfig {
    int restartBase = 32;  // Luby unit; 0 disables restarts
    uint64_t seed = 0;
    uint64_t conflictBudget = UINT64_MAX;
    std::atomic<bool>* cancel = nullptr;
    bool preprocess = true;

    // Orchestrator hooks; unset for single-process runs.
    bool skipFirstCoherenceTest = false;
    std::function<void()> onBoundary;            // procedure-iteration boundary
    std::function<void()> onEngineRestart;       // engine restart, trail at level 0
    std::function<void(const Clause&)> onLearned;
    std::function<void()> onCoherent;            // first coherence test found a model
};

struct RunStats {
    uint64_t conflicts = 0;
    uint64_t decisions = 0;
    uint64_t restarts = 0;
    uint64_t propagations = 0;
    /// `u` events emitted strictly before the first Model/Unsat outcome.
    size_t underBeforeFirstOutcome = 0;
    SimplificationReport simplification;
};

struct RunResult {
    RunStatus status = RunStatus::Complete;
    AtomSet answer;  // Q ∩ CC(P) when complete; the sound underestimate when partial
    AtomSet under;
    AtomSet over;
    RunStats stats;
};

enum class SelectionMode { FirstInOrder, MaxActivity };

/// Deterministic candidate selection; max-activity ties break to the lowest
/// atom id. `solver` may be null for FirstInOrder.
Atom oneOf(const AtomSet& candidates, SelectionMode mode, const Solver* solver);

/// One cautious-reasoning computation: completion, simplification, first
/// coherence test, then the selected procedure until U = O. Exposed as a
/// steppable object so tests can drive and inspect single iterations.
class CautiousRun {
public:
    CautiousRun(const Program& p, AtomSet query, AlgorithmId alg, EventSink sink,
                RunConfig cfg = {});
    ~CautiousRun();

    bool finished() const { return phase == Phase::Done; }
    void step();
    RunResult finish();
    RunResult run();

    const AtomSet& under() const { return underSet; }
    const AtomSet& over() const { return overSet; }
    Solver* solver() { return engine.get(); }

    // Peer-merge entry points (silent: the orchestrator owns event emission).
    void importUnder(Atom a);
    void importOver(Atom a);
    void importClause(const Clause& c);

    // Test access: forces the estimate state before stepping.
    void overrideEstimates(AtomSet u, AtomSet o);

private:
    enum class Phase { Coherence, Loop, Done };

    void emitUnder(Atom a);
    void emitOver(Atom a);
    void emit(EventKind kind, Atom a);
    void intersectOver(const Interpretation& model);
    void harvestLevelZero();
    void noteOutcome();
    void finishWith(RunStatus s);
    int64_t elapsedMs() const;

    void stepCoherence();
    void stepEnumeration();
    void stepOverestimateReduction();
    void stepIct();
    void stepIpct();

    const Program& prog;
    AtomSet query;
    AlgorithmId alg;
    EventSink sink;
    RunConfig cfg;

    ClauseSet clauseSet;
    SimplifyResult simplified;
    std::unique_ptr<Solver> engine;

    AtomSet underSet;
    AtomSet overSet;
    Interpretation lastModel;
    Phase phase = Phase::Coherence;
    RunStatus status = RunStatus::Complete;
    bool lastWasRestart = false;
    bool anytime = false;
    bool sawFirstOutcome = false;
    size_t underEmitted = 0;
    size_t underBeforeFirstOutcome = 0;
    std::chrono::steady_clock::time_point start;
};

RunResult cautiousReasoning(const Program& p, const AtomSet& query, AlgorithmId alg,
                            EventSink sink, RunConfig cfg = {});

/// The CLI protocol rendering of an event stream: `u`/`o` lines in order,
/// one terminal `s` line from the status.
std::string protocolText(const std::vector<EstimateEvent>& events, RunStatus status,
                         const Program& p);

/// CSV trace: header, an initial row at t=0, one row per estimate event;
/// under_count never decreases, over_count never increases.
void writeTraceCsv(std::ostream& out, const std::vector<EstimateEvent>& events,
                   size_t initialOverCount);

std::string algorithmName(const AlgorithmId& alg);

}  // namespace cauto

#endif
