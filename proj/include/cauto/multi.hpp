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

#ifndef CAUTO_MULTI_HPP
#define CAUTO_MULTI_HPP

#include "cauto/cautious.hpp"

namespace cauto {

/// worker 0 runs A2*, worker 1 runs A4* (which skips the first coherence
/// test; worker 0's model intersections seed its overestimate through the
/// exchange).
struct MultiConfig {
    int restartBase = 32;
    uint64_t seed = 0;
    uint64_t conflictBudget = UINT64_MAX;
    std::atomic<bool>* cancel = nullptr;
    bool preprocess = true;

    // Test hooks.
    int workerStartDelayMs[2] = {0, 0};
    std::vector<Clause> preloadClauses[2];  // injected into a worker's inbox
};

/// Events annotated with the originating worker id.
using MultiEventSink = std::function<void(const EstimateEvent&, int worker)>;

/// Runs both workers to the first completed answer, exchanging estimates and
/// learned constraints of size at most two at restart and iteration
/// boundaries. The merged stream is deduplicated: each atom appears at most
/// once as `u` and once as `o` across both workers.
RunResult runMulti(const Program& p, const AtomSet& query, MultiEventSink sink,
                   MultiConfig cfg = {});

}  // namespace cauto

#endif
