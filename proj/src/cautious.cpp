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

#include "cauto/cautious.hpp"

#include <cassert>

namespace cauto {

Atom oneOf(const AtomSet& candidates, SelectionMode mode, const Solver* solver) {
    assert(!candidates.empty());
    if (mode == SelectionMode::FirstInOrder || solver == nullptr) return candidates[0];
    Atom best = candidates[0];
    double bestAct = solver->activity(best);
    for (Atom a : candidates)
        if (solver->activity(a) > bestAct) {
            bestAct = solver->activity(a);
            best = a;
        }
    return best;
}

CautiousRun::CautiousRun(const Program& p, AtomSet q, AlgorithmId algorithm,
                         EventSink eventSink, RunConfig config)
    : prog(p),
      query(std::move(q)),
      alg(algorithm),
      sink(std::move(eventSink)),
      cfg(std::move(config)),
      start(std::chrono::steady_clock::now()) {
    anytime = alg.starred || alg.kind == AlgorithmKind::Ict || alg.kind == AlgorithmKind::Ipct;
    underSet.clear();
    overSet = query;

    clauseSet = complete(prog);
    if (cfg.preprocess) {
        simplified = simplify(clauseSet, query, prog);
    } else {
        simplified.clauses = clauseSet.clauses;
    }

    if (simplified.report.incoherent) {
        finishWith(RunStatus::Incoherent);
        return;
    }

    // Candidate reduction from simplifications applies in every mode; sound
    // answers are streamed early only by the anytime ones.
    for (Atom a : query)
        if (simplified.report.fixedFalse.contains(a)) emitOver(a);
    if (anytime)
        for (Atom a : query)
            if (simplified.report.fixedTrue.contains(a)) emitUnder(a);

    SolverInput input;
    input.numVars = clauseSet.numVars;
    input.numAtoms = clauseSet.numAtoms;
    input.clauses = std::move(simplified.clauses);
    input.varEliminated = simplified.varEliminated;
    input.stability = [this](const std::vector<lbool>& vals) {
        std::vector<lbool> extended = vals;
        simplified.extender.extend(extended);
#ifdef CAUTO_PARANOID_STABILITY
        for (size_t ci = 0; ci < clauseSet.clauses.size(); ci++) {
            const Clause& c = clauseSet.clauses[ci];
            bool sat = false;
            for (Lit l : c) {
                lbool v = extended[static_cast<size_t>(var(l))];
                if (v != l_Undef && (v == l_True) != sign(l)) { sat = true; break; }
            }
            if (!sat) {
                fprintf(stderr, "STABILITY: completion clause %zu violated:", ci);
                for (Lit l : c)
                    fprintf(stderr, " %s%d(v=%d,raw=%d,elim=%d)", sign(l) ? "-" : "",
                            var(l), (int)extended[(size_t)var(l)],
                            (int)vals[(size_t)var(l)],
                            (int)(var(l) < (Var)simplified.varEliminated.size() &&
                                  simplified.varEliminated[(size_t)var(l)]));
                fprintf(stderr, "\n");
                abort();
            }
        }
#endif
        Interpretation i;
        for (Atom a = 1; a < clauseSet.numAtoms; a++)
            if (extended[static_cast<size_t>(a)] == l_True) i.insert(a);
        StabilityOutcome out;
        if (auto nogood = unfoundedCheck(prog, clauseSet, i))
            out.loopClauses = nogood->toClauses();
        else
            out.model = std::move(i);
        return out;
    };

    SolverOptions opts;
    opts.restartBase = cfg.restartBase;
    opts.seed = cfg.seed;
    opts.conflictBudget = cfg.conflictBudget;
    opts.cancel = cfg.cancel;

    SolverHooks hooks;
    hooks.atRestart = cfg.onEngineRestart;
    hooks.onLearned = cfg.onLearned;

    engine = std::make_unique<Solver>(std::move(input), opts, hooks);

    phase = cfg.skipFirstCoherenceTest ? Phase::Loop : Phase::Coherence;
}

CautiousRun::~CautiousRun() = default;

int64_t CautiousRun::elapsedMs() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
}

void CautiousRun::emit(EventKind kind, Atom a) {
    if (sink) sink({kind, a, elapsedMs()});
}

void CautiousRun::emitUnder(Atom a) {
    if (underSet.contains(a)) return;
    assert(overSet.contains(a));
    underSet.insert(a);
    underEmitted++;
    emit(EventKind::UnderAdd, a);
}

void CautiousRun::emitOver(Atom a) {
    bool removed = overSet.erase(a);
    assert(removed);
    (void)removed;
    emit(EventKind::OverRemove, a);
}

void CautiousRun::intersectOver(const Interpretation& model) {
    std::vector<Atom> dropped;
    for (Atom a : overSet)
        if (!model.contains(a)) dropped.push_back(a);
    for (Atom a : dropped) emitOver(a);
}

void CautiousRun::harvestLevelZero() {
    for (Atom a : engine->levelZeroTrueAtoms(query))
        if (overSet.contains(a)) emitUnder(a);
}

void CautiousRun::noteOutcome() {
    if (!sawFirstOutcome) {
        sawFirstOutcome = true;
        underBeforeFirstOutcome = underEmitted;
    }
}

void CautiousRun::finishWith(RunStatus s) {
    status = s;
    phase = Phase::Done;
}

void CautiousRun::importUnder(Atom a) {
    if (!overSet.contains(a) || underSet.contains(a)) return;
    underSet.insert(a);
}

void CautiousRun::importOver(Atom a) {
    if (!overSet.contains(a)) return;
    // An imported removal is sound for the shared program, so it cannot hit
    // a locally proven cautious atom.
    assert(!underSet.contains(a));
    overSet.erase(a);
}

void CautiousRun::importClause(const Clause& c) {
    if (engine) engine->addPermanentClause(c);
}

void CautiousRun::overrideEstimates(AtomSet u, AtomSet o) {
    underSet = std::move(u);
    overSet = std::move(o);
    if (phase == Phase::Coherence) phase = Phase::Loop;
}

void CautiousRun::step() {
    if (phase == Phase::Done) return;
    if (cfg.onBoundary) cfg.onBoundary();
    if (cfg.cancel && cfg.cancel->load(std::memory_order_relaxed)) {
        finishWith(RunStatus::Partial);
        return;
    }

    if (phase == Phase::Coherence) {
        stepCoherence();
    } else {
        if (underSet == overSet) {
            finishWith(RunStatus::Complete);
            return;
        }
        switch (alg.kind) {
            case AlgorithmKind::Enumeration: stepEnumeration(); break;
            case AlgorithmKind::OverestimateReduction: stepOverestimateReduction(); break;
            case AlgorithmKind::Ict: stepIct(); break;
            case AlgorithmKind::Ipct: stepIpct(); break;
        }
    }

    if (phase == Phase::Loop && underSet == overSet) finishWith(RunStatus::Complete);
}

void CautiousRun::stepCoherence() {
    auto harvest = [this](Atom a) {
        if (overSet.contains(a)) emitUnder(a);
    };
    SolveResult r = alg.starred ? engine->solveStar(std::nullopt, query, harvest)
                                : engine->solve(std::nullopt);
    if (r.outcome == Outcome::Interrupted) {
        finishWith(RunStatus::Partial);
        return;
    }
    noteOutcome();
    if (r.outcome == Outcome::Unsat) {
        finishWith(RunStatus::Incoherent);
        return;
    }
    if (cfg.onCoherent) cfg.onCoherent();
    lastModel = r.model;
    intersectOver(r.model);
    phase = Phase::Loop;
}

void CautiousRun::stepEnumeration() {
    engine->addBlockingConstraint(lastModel);
    auto harvest = [this](Atom a) {
        if (overSet.contains(a)) emitUnder(a);
    };
    SolveResult r = alg.starred ? engine->solveStar(std::nullopt, query, harvest)
                                : engine->solve(std::nullopt);
    if (r.outcome == Outcome::Interrupted) {
        finishWith(RunStatus::Partial);
        return;
    }
    noteOutcome();
    if (r.outcome == Outcome::Unsat) {
        std::vector<Atom> remaining(overSet.begin(), overSet.end());
        for (Atom a : remaining) emitUnder(a);
        return;
    }
    lastModel = r.model;
    intersectOver(r.model);
}

void CautiousRun::stepOverestimateReduction() {
    ConstraintGroupId gid = engine->pushConstraint(overSet);
    auto harvest = [this](Atom a) {
        if (overSet.contains(a)) emitUnder(a);
    };
    SolveResult r = alg.starred ? engine->solveStar(std::nullopt, query, harvest)
                                : engine->solve(std::nullopt);
    if (r.outcome == Outcome::Interrupted) {
        finishWith(RunStatus::Partial);
        return;
    }
    noteOutcome();
    if (r.outcome == Outcome::Unsat) {
        std::vector<Atom> remaining(overSet.begin(), overSet.end());
        for (Atom a : remaining) emitUnder(a);
        return;
    }
    engine->retractConstraint(gid);
    size_t before = overSet.size();
    lastModel = r.model;
    intersectOver(r.model);
    assert(overSet.size() < before);  // the constraint guarantees a strict shrink
    (void)before;
}

void CautiousRun::stepIct() {
    Atom a = oneOf(overSet.setminus(underSet), SelectionMode::FirstInOrder, engine.get());
    auto harvest = [this](Atom x) {
        if (overSet.contains(x)) emitUnder(x);
    };
    SolveResult r = alg.starred ? engine->solveStar(a, query, harvest) : engine->solve(a);
    if (r.outcome == Outcome::Interrupted) {
        finishWith(RunStatus::Partial);
        return;
    }
    noteOutcome();
    if (r.outcome == Outcome::Unsat) {
        emitUnder(a);
        return;
    }
    assert(!r.model.contains(a));
    lastModel = r.model;
    intersectOver(r.model);
}

void CautiousRun::stepIpct() {
    if (alg.starred) harvestLevelZero();
    if (underSet == overSet) return;
    SelectionMode mode =
        lastWasRestart ? SelectionMode::MaxActivity : SelectionMode::FirstInOrder;
    Atom a = oneOf(overSet.setminus(underSet), mode, engine.get());
    SolveResult r = engine->solveUpToRestart(a);
    if (r.outcome == Outcome::Restarted) {
        lastWasRestart = true;
        return;
    }
    lastWasRestart = false;
    if (r.outcome == Outcome::Interrupted) {
        finishWith(RunStatus::Partial);
        return;
    }
    noteOutcome();
    if (r.outcome == Outcome::Unsat) {
        emitUnder(a);
        return;
    }
    assert(!r.model.contains(a));
    lastModel = r.model;
    intersectOver(r.model);
}

RunResult CautiousRun::finish() {
    RunResult out;
    out.status = status;
    out.under = underSet;
    out.over = overSet;
    out.answer = status == RunStatus::Incoherent ? AtomSet{} : underSet;
    out.stats.underBeforeFirstOutcome = underBeforeFirstOutcome;
    out.stats.simplification = simplified.report;
    if (engine) {
        out.stats.conflicts = engine->stats().conflicts;
        out.stats.decisions = engine->stats().decisions;
        out.stats.restarts = engine->stats().restarts;
        out.stats.propagations = engine->stats().propagations;
    }
    if (status == RunStatus::Complete)
        emit(EventKind::Complete, -1);
    else if (status == RunStatus::Incoherent)
        emit(EventKind::Incoherent, -1);
    return out;
}

RunResult CautiousRun::run() {
    while (!finished()) step();
    return finish();
}

RunResult cautiousReasoning(const Program& p, const AtomSet& query, AlgorithmId alg,
                            EventSink sink, RunConfig cfg) {
    CautiousRun run(p, query, alg, std::move(sink), std::move(cfg));
    return run.run();
}

std::string protocolText(const std::vector<EstimateEvent>& events, RunStatus status,
                         const Program& p) {
    std::string out;
    for (const EstimateEvent& ev : events) {
        if (ev.kind == EventKind::UnderAdd)
            out += "u " + p.atoms.name(ev.atom) + "\n";
        else if (ev.kind == EventKind::OverRemove)
            out += "o " + p.atoms.name(ev.atom) + "\n";
    }
    switch (status) {
        case RunStatus::Complete: out += "s COMPLETE\n"; break;
        case RunStatus::Incoherent: out += "s INCOHERENT\n"; break;
        case RunStatus::Partial: out += "s PARTIAL\n"; break;
    }
    return out;
}

void writeTraceCsv(std::ostream& out, const std::vector<EstimateEvent>& events,
                   size_t initialOverCount) {
    out << "t_ms,under_count,over_count\n";
    size_t under = 0;
    size_t over = initialOverCount;
    out << "0," << under << "," << over << "\n";
    for (const EstimateEvent& ev : events) {
        if (ev.kind == EventKind::UnderAdd)
            under++;
        else if (ev.kind == EventKind::OverRemove)
            over--;
        else
            continue;
        out << ev.tMs << "," << under << "," << over << "\n";
    }
}

std::string algorithmName(const AlgorithmId& alg) {
    std::string base;
    switch (alg.kind) {
        case AlgorithmKind::Enumeration: base = "enum"; break;
        case AlgorithmKind::OverestimateReduction: base = "ored"; break;
        case AlgorithmKind::Ict: base = "ict"; break;
        case AlgorithmKind::Ipct: base = "ipct"; break;
    }
    if (alg.starred) base += "*";
    return base;
}

}  // namespace cauto
