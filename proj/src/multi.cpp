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

#include "cauto/multi.hpp"

#include <condition_variable>
#include <deque>
#include <mutex>
#include <thread>

namespace cauto {

namespace {

struct InboxItem {
    enum Kind { Under, Over, ImportClause } kind;
    Atom atom = -1;
    Clause clause;
};

struct Inbox {
    std::mutex mu;
    std::vector<InboxItem> items;

    void push(InboxItem item) {
        std::lock_guard<std::mutex> lock(mu);
        items.push_back(std::move(item));
    }
    std::vector<InboxItem> drain() {
        std::lock_guard<std::mutex> lock(mu);
        std::vector<InboxItem> out;
        out.swap(items);
        return out;
    }
};

struct Message {
    enum Kind { Event, ExportClause, CoherenceOk, Done } kind;
    int worker = 0;
    EstimateEvent event{};
    Clause clause;
    RunResult result;
    bool crashed = false;
};

struct Channel {
    std::mutex mu;
    std::condition_variable cv;
    std::deque<Message> queue;

    void post(Message m) {
        {
            std::lock_guard<std::mutex> lock(mu);
            queue.push_back(std::move(m));
        }
        cv.notify_one();
    }
    bool waitPop(Message& out, std::chrono::milliseconds timeout) {
        std::unique_lock<std::mutex> lock(mu);
        // system_clock deadline: keeps the wait on pthread_cond_timedwait,
        // which thread sanitizers model reliably
        auto deadline = std::chrono::system_clock::now() + timeout;
        if (!cv.wait_until(lock, deadline, [this] { return !queue.empty(); })) return false;
        out = std::move(queue.front());
        queue.pop_front();
        return true;
    }
};

}  // namespace

RunResult runMulti(const Program& p, const AtomSet& query, MultiEventSink sink,
                   MultiConfig cfg) {
    Channel channel;
    Inbox inboxes[2];
    std::atomic<bool> workerCancel[2] = {false, false};

    for (int w = 0; w < 2; w++)
        for (const Clause& c : cfg.preloadClauses[w])
            inboxes[w].push({InboxItem::ImportClause, -1, c});

    // Exported clauses may mention auxiliary body variables but never the
    // exporter's private selector variables, which live above this bound.
    const Var sharedVarBound =
        static_cast<Var>(p.numAtoms() + p.rules.size());

    auto workerMain = [&](int w) {
        if (cfg.workerStartDelayMs[w] > 0)
            std::this_thread::sleep_for(
                std::chrono::milliseconds(cfg.workerStartDelayMs[w]));

        CautiousRun* self = nullptr;
        auto drainInbox = [&] {
            if (self == nullptr) return;
            for (InboxItem& item : inboxes[w].drain()) {
                switch (item.kind) {
                    case InboxItem::Under: self->importUnder(item.atom); break;
                    case InboxItem::Over: self->importOver(item.atom); break;
                    case InboxItem::ImportClause: self->importClause(item.clause); break;
                }
            }
        };

        RunConfig rc;
        rc.restartBase = cfg.restartBase;
        rc.seed = cfg.seed + static_cast<uint64_t>(w) + 1;
        rc.conflictBudget = cfg.conflictBudget;
        rc.cancel = &workerCancel[w];
        rc.preprocess = cfg.preprocess;
        rc.skipFirstCoherenceTest = (w == 1);
        rc.onBoundary = drainInbox;
        rc.onEngineRestart = drainInbox;
        rc.onLearned = [&](const Clause& c) {
            if (c.size() > 2) return;
            for (Lit l : c)
                if (var(l) >= sharedVarBound) return;  // selector-tagged
            channel.post({Message::ExportClause, w, {}, c, {}, false});
        };
        rc.onCoherent = [&] { channel.post({Message::CoherenceOk, w, {}, {}, {}, false}); };

        EventSink workerSink = [&](const EstimateEvent& ev) {
            channel.post({Message::Event, w, ev, {}, {}, false});
        };

        try {
            AlgorithmId alg{w == 0 ? AlgorithmKind::OverestimateReduction
                                   : AlgorithmKind::Ipct,
                            true};
            CautiousRun run(p, query, alg, workerSink, rc);
            self = &run;
            drainInbox();
            RunResult result = run.run();
            channel.post({Message::Done, w, {}, {}, std::move(result), false});
        } catch (...) {
            channel.post({Message::Done, w, {}, {}, {}, true});
        }
    };

    std::thread threads[2] = {std::thread(workerMain, 0), std::thread(workerMain, 1)};

    AtomSet mergedUnder;
    AtomSet mergedOver = query;
    RunResult final;
    bool decided = false;
    bool coherenceOk = false;
    bool havePendingW2 = false;
    RunResult pendingW2;
    int doneCount = 0;
    bool crashed[2] = {false, false};
    RunResult partials[2];
    bool havePartial[2] = {false, false};
    uint64_t conflictsTotal = 0, decisionsTotal = 0, restartsTotal = 0;

    auto acceptResult = [&](RunResult r) {
        final = std::move(r);
        decided = true;
        workerCancel[0].store(true);
        workerCancel[1].store(true);
    };

    while (doneCount < 2) {
        Message msg;
        if (!channel.waitPop(msg, std::chrono::milliseconds(20))) {
            if (cfg.cancel && cfg.cancel->load(std::memory_order_relaxed)) {
                workerCancel[0].store(true);
                workerCancel[1].store(true);
            }
            continue;
        }

        switch (msg.kind) {
            case Message::Event: {
                const EstimateEvent& ev = msg.event;
                if (ev.kind == EventKind::UnderAdd) {
                    if (mergedUnder.insert(ev.atom)) {
                        if (sink) sink(ev, msg.worker);
                        inboxes[1 - msg.worker].push({InboxItem::Under, ev.atom, {}});
                    }
                } else if (ev.kind == EventKind::OverRemove) {
                    if (mergedOver.erase(ev.atom)) {
                        if (sink) sink(ev, msg.worker);
                        inboxes[1 - msg.worker].push({InboxItem::Over, ev.atom, {}});
                    }
                }
                break;  // terminal events are carried by Done messages
            }
            case Message::ExportClause:
                inboxes[1 - msg.worker].push({InboxItem::ImportClause, -1, msg.clause});
                break;
            case Message::CoherenceOk:
                coherenceOk = true;
                if (!decided && havePendingW2) acceptResult(std::move(pendingW2));
                break;
            case Message::Done: {
                doneCount++;
                if (msg.crashed) {
                    crashed[msg.worker] = true;
                    break;
                }
                conflictsTotal += msg.result.stats.conflicts;
                decisionsTotal += msg.result.stats.decisions;
                restartsTotal += msg.result.stats.restarts;
                if (decided) break;
                if (msg.result.status == RunStatus::Incoherent) {
                    acceptResult(std::move(msg.result));
                } else if (msg.result.status == RunStatus::Complete) {
                    // Worker 1 skips the first coherence test, so its answer
                    // only stands once worker 0 has witnessed a stable model
                    // (or crashed and can no longer refute coherence).
                    if (msg.worker == 0 || coherenceOk || crashed[0])
                        acceptResult(std::move(msg.result));
                    else {
                        havePendingW2 = true;
                        pendingW2 = std::move(msg.result);
                    }
                } else {
                    havePartial[msg.worker] = true;
                    partials[msg.worker] = std::move(msg.result);
                }
                break;
            }
        }
    }

    threads[0].join();
    threads[1].join();

    if (!decided && havePendingW2 && crashed[0]) {
        final = std::move(pendingW2);
        decided = true;
    }
    if (!decided) {
        // Both workers ended without a completed answer: surface the merged
        // partial state, which is sound by construction.
        final.status = RunStatus::Partial;
        final.under = mergedUnder;
        final.over = mergedOver;
        final.answer = mergedUnder;
        if (havePartial[0]) final.stats.simplification = partials[0].stats.simplification;
    } else if (final.status != RunStatus::Incoherent) {
        final.under = mergedUnder;
        final.over = mergedOver;
    }
    final.stats.conflicts = conflictsTotal;
    final.stats.decisions = decisionsTotal;
    final.stats.restarts = restartsTotal;
    return final;
}

}  // namespace cauto
