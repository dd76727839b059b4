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

#include <atomic>
#include <chrono>
#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "cauto/cautious.hpp"
#include "cauto/multi.hpp"
#include "cauto/oracle.hpp"
#include "cauto/parse.hpp"

namespace {

constexpr int kExitComplete = 10;
constexpr int kExitIncoherent = 20;
constexpr int kExitPartial = 30;
constexpr int kExitUsage = 64;
constexpr int kExitParse = 65;
constexpr int kExitIo = 66;

std::atomic<bool> gCancel{false};

void onSignal(int) { gCancel.store(true); }

std::string slurp(const std::string& path, bool& okFlag) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        okFlag = false;
        return {};
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    okFlag = true;
    return buf.str();
}

int runOracle(const cauto::Program& p) {
    cauto::OracleResult res = cauto::enumerateStableModels(p);
    for (const cauto::Interpretation& m : res.stableModels) {
        std::cout << "model:";
        for (cauto::Atom a : m) std::cout << " " << p.atoms.name(a);
        std::cout << "\n";
    }
    if (res.incoherent) {
        std::cout << "incoherent\n";
        return kExitIncoherent;
    }
    std::cout << "cautious:";
    for (cauto::Atom a : res.cautious) std::cout << " " << p.atoms.name(a);
    std::cout << "\n";
    return kExitComplete;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"anytime cautious reasoning over ground answer set programs"};

    std::string inputPath;
    std::string algorithmName = "ipct";
    bool starred = false;
    bool multi = false;
    std::string queryPath;
    std::string formatName = "auto";
    int timeoutSecs = 0;
    uint64_t seed = 0;
    int restartBase = 32;
    std::string tracePath;
    bool oracleMode = false;

    app.add_option("input", inputPath, "program file (ASP text or DIMACS CNF)")
        ->required();
    auto* algOpt = app.add_option("--algorithm", algorithmName,
                                  "procedure: enum, ored, ict or ipct")
                       ->check(CLI::IsMember({"enum", "ored", "ict", "ipct"}));
    auto* starOpt = app.add_flag("--starred", starred,
                                 "harvest underestimates at every restart");
    app.add_flag("--multi", multi, "run the two-worker parallel combination");
    app.add_option("--query", queryPath, "file with one query atom per line");
    app.add_option("--format", formatName, "input format")
        ->check(CLI::IsMember({"asp", "dimacs", "auto"}));
    app.add_option("--timeout", timeoutSecs, "seconds before flushing a partial answer");
    app.add_option("--seed", seed, "branching tie-break seed");
    app.add_option("--restart-base", restartBase, "Luby restart unit in conflicts (0 = off)");
    app.add_option("--trace", tracePath, "write the estimate trajectory CSV here");
    app.add_flag("--oracle", oracleMode)->group("");  // hidden: fixture generation

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    if (multi && (algOpt->count() > 0 || starOpt->count() > 0)) {
        std::cerr << "error: --multi excludes --algorithm/--starred\n";
        return kExitUsage;
    }
    if (app.count("--timeout") > 0 && timeoutSecs < 1) {
        std::cerr << "error: --timeout must be at least 1 second\n";
        return kExitUsage;
    }
    if (restartBase < 0) {
        std::cerr << "error: --restart-base must be non-negative\n";
        return kExitUsage;
    }

    // Default mode is A4*; an explicit --algorithm without --starred stays plain.
    if (algOpt->count() == 0 && starOpt->count() == 0) starred = true;

    bool ioOk = true;
    std::string text = slurp(inputPath, ioOk);
    if (!ioOk) {
        std::cerr << "error: cannot read " << inputPath << "\n";
        return kExitIo;
    }

    cauto::Program program;
    try {
        cauto::SourceFormat fmt;
        if (formatName == "asp")
            fmt = cauto::SourceFormat::AspText;
        else if (formatName == "dimacs")
            fmt = cauto::SourceFormat::DimacsCnf;
        else
            fmt = cauto::detectFormat(text);
        program = fmt == cauto::SourceFormat::DimacsCnf ? cauto::parseDimacs(text)
                                                        : cauto::parseAsp(text);
    } catch (const cauto::ParseError& e) {
        std::cerr << "error: " << inputPath << ": " << e.what() << "\n";
        return kExitParse;
    }

    cauto::AtomSet query = program.query;
    if (!queryPath.empty()) {
        std::string queryText = slurp(queryPath, ioOk);
        if (!ioOk) {
            std::cerr << "error: cannot read " << queryPath << "\n";
            return kExitIo;
        }
        try {
            query = cauto::parseQuery(queryText, program);
        } catch (const cauto::ParseError& e) {
            std::cerr << "error: " << queryPath << ": " << e.what() << "\n";
            return kExitParse;
        }
    }

    if (oracleMode) return runOracle(program);

    std::signal(SIGINT, onSignal);
    std::signal(SIGTERM, onSignal);

    std::atomic<bool> watcherDone{false};
    std::thread watcher;
    if (timeoutSecs > 0) {
        watcher = std::thread([timeoutSecs, &watcherDone] {
            auto deadline =
                std::chrono::steady_clock::now() + std::chrono::seconds(timeoutSecs);
            while (!watcherDone.load()) {
                if (std::chrono::steady_clock::now() >= deadline) {
                    gCancel.store(true);
                    return;
                }
                std::this_thread::sleep_for(std::chrono::milliseconds(20));
            }
        });
    }

    std::vector<cauto::EstimateEvent> events;
    auto printEvent = [&program, &events](const cauto::EstimateEvent& ev) {
        events.push_back(ev);
        if (ev.kind == cauto::EventKind::UnderAdd)
            std::cout << "u " << program.atoms.name(ev.atom) << "\n" << std::flush;
        else if (ev.kind == cauto::EventKind::OverRemove)
            std::cout << "o " << program.atoms.name(ev.atom) << "\n" << std::flush;
    };

    cauto::RunResult result;
    if (multi) {
        cauto::MultiConfig cfg;
        cfg.restartBase = restartBase;
        cfg.seed = seed;
        cfg.cancel = &gCancel;
        result = cauto::runMulti(
            program, query,
            [&](const cauto::EstimateEvent& ev, int worker) {
                if (ev.kind == cauto::EventKind::UnderAdd ||
                    ev.kind == cauto::EventKind::OverRemove)
                    std::cout << "c from w" << (worker + 1) << "\n";
                printEvent(ev);
            },
            cfg);
    } else {
        cauto::AlgorithmId alg;
        alg.starred = starred;
        if (algorithmName == "enum")
            alg.kind = cauto::AlgorithmKind::Enumeration;
        else if (algorithmName == "ored")
            alg.kind = cauto::AlgorithmKind::OverestimateReduction;
        else if (algorithmName == "ict")
            alg.kind = cauto::AlgorithmKind::Ict;
        else
            alg.kind = cauto::AlgorithmKind::Ipct;

        cauto::RunConfig cfg;
        cfg.restartBase = restartBase;
        cfg.seed = seed;
        cfg.cancel = &gCancel;
        result = cauto::cautiousReasoning(program, query, alg, printEvent, cfg);
    }

    watcherDone.store(true);
    if (watcher.joinable()) watcher.join();

    switch (result.status) {
        case cauto::RunStatus::Complete: std::cout << "s COMPLETE\n" << std::flush; break;
        case cauto::RunStatus::Incoherent:
            std::cout << "s INCOHERENT\n" << std::flush;
            break;
        case cauto::RunStatus::Partial: std::cout << "s PARTIAL\n" << std::flush; break;
    }

    std::cerr << "conflicts: " << result.stats.conflicts
              << ", decisions: " << result.stats.decisions
              << ", restarts: " << result.stats.restarts << "\n";

    if (!tracePath.empty()) {
        std::ofstream trace(tracePath);
        if (!trace) {
            std::cerr << "error: cannot write " << tracePath << "\n";
            return kExitIo;
        }
        cauto::writeTraceCsv(trace, events, query.size());
    }

    switch (result.status) {
        case cauto::RunStatus::Complete: return kExitComplete;
        case cauto::RunStatus::Incoherent: return kExitIncoherent;
        case cauto::RunStatus::Partial: return kExitPartial;
    }
    return kExitComplete;
}
