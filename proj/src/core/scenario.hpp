// Copyright 2026 The chainmind Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/activation.hpp"
#include "core/config.hpp"
#include "core/decision.hpp"
#include "core/innate.hpp"
#include "core/memory_bank.hpp"
#include "core/tokenizer.hpp"

namespace chainmind {

// ============================================================================
// Scenario scripts
//
// Event lines:      <tick>\t<channel>\t<content>     (# starts a comment)
// Directive lines:  #! config <key>=<value>
//                   #! innate <innate spec line>
//                   #! assert final-action <continue|seek|execute>
//                   #! assert all-actions <variant>
//                   #! assert action-at <tick> <variant>
//                   #! assert plan-contains <symbol>
//                   #! assert memory-order <g1>|<g2>|...[|*]
// ============================================================================

struct ScriptAssertion {
    enum class Kind {
        FinalAction,
        AllActions,
        ActionAt,
        PlanContains,
        MemoryOrder,
    };
    Kind kind = Kind::FinalAction;
    ActionKind action = ActionKind::ContinueObserving;
    Tick at = 0;
    std::string symbol;
    std::vector<std::vector<std::string>> groups;  // memory-order groups
    bool rest_group = false;                       // trailing `*`
    std::string source;                            // original directive text
};

struct ScenarioScript {
    std::vector<InputEvent> events;  // non-decreasing event times
    std::vector<std::pair<std::string, std::string>> config_overrides;
    std::string innate_text;  // newline-joined innate spec lines
    std::vector<ScriptAssertion> assertions;

    static ScenarioScript parse_text(const std::string& text);
    static ScenarioScript parse_file(const std::string& path);
};

// ============================================================================
// Session: one logical thread of perception and action over a bank
// ============================================================================

struct TurnResult {
    Tick tick = 0;
    std::size_t input_count = 0;
    double a0 = 0.0;
    ValenceTally tally;
    Action action;
    std::size_t reinforced = 0;
    FrontierStats stats;
    std::size_t edge_count = 0;
};

class Session {
public:
    explicit Session(Config config);

    [[nodiscard]] const Config& config() const noexcept { return config_; }
    [[nodiscard]] const MemoryBank& bank() const noexcept { return bank_; }
    [[nodiscard]] MemoryBank& bank() noexcept { return bank_; }
    [[nodiscard]] const InnateRegistry& registry() const noexcept {
        return registry_;
    }

    void set_trace(bool enabled) noexcept { trace_ = enabled; }
    void set_dump_report(bool enabled) noexcept { dump_report_ = enabled; }
    [[nodiscard]] bool trace() const noexcept { return trace_; }
    [[nodiscard]] bool dump_report() const noexcept { return dump_report_; }

    // Installs the parsed specs into the bank and registers their routing.
    void install_innate_text(const std::string& text);
    // Takes over routing entries without touching the bank (used when a
    // bank with presets already installed is attached).
    void adopt_registry(InnateRegistry registry) {
        registry_ = std::move(registry);
    }

    // Replaces the session bank (load / adopt). Prior reports are dropped.
    void replace_bank(MemoryBank bank);
    void load_bank(const std::string& path);
    void save_bank(const std::string& path) const;

    // Runs one event group (all events at one tick) through the fixed
    // pipeline: tokenize -> append -> seed -> chain-activate -> decide ->
    // reinforce, with fade applied across the gap from the previous group.
    TurnResult run_turn(const std::vector<InputEvent>& events);

    // Interactive turn: one text line as an event group at the next tick.
    TurnResult turn_text(const std::string& line);

    // Record count, nonzero-memory count, kind histogram.
    [[nodiscard]] std::string stats_text() const;

    // Per-symbol peak memory value, strongest first.
    [[nodiscard]] std::vector<std::pair<std::string, double>> memory_ranking()
        const;
    // Per-symbol summed activation of the last report, strongest first.
    [[nodiscard]] std::vector<std::pair<std::string, double>>
    expectation_symbols() const;

    [[nodiscard]] const std::string& transcript() const noexcept {
        return transcript_;
    }
    void append_transcript(const std::string& text) { transcript_ += text; }

    [[nodiscard]] const std::vector<TurnResult>& turns() const noexcept {
        return turns_;
    }
    [[nodiscard]] const std::optional<ActivationReport>& last_report()
        const noexcept {
        return prior_report_;
    }

private:
    Config config_;
    MemoryBank bank_;
    InnateRegistry registry_;
    std::optional<ActivationReport> prior_report_;
    std::optional<Tick> last_group_tick_;
    std::vector<TurnResult> turns_;
    std::string transcript_;
    bool trace_ = false;
    bool dump_report_ = false;
};

// ============================================================================
// Scenario runner and canonical demos
// ============================================================================

struct ScenarioOutcome {
    std::string transcript;
    bool assertions_ok = true;
    std::vector<std::string> failures;
};

// Applies the script's config overrides on top of `base`, installs its
// innate specs, feeds every event group through the session pipeline, then
// evaluates the script's assertions. The final transcript embeds one
// `assert ok|FAIL` line per assertion.
ScenarioOutcome run_scenario(const ScenarioScript& script, const Config& base,
                             Session* session_out = nullptr, bool trace = false,
                             bool dump_report = false,
                             std::optional<MemoryBank> initial_bank = std::nullopt,
                             const InnateRegistry* initial_registry = nullptr);

// Embedded demo scripts: "world-peace", "charging", "hotel".
const std::string& demo_script(const std::string& name);
std::vector<std::string> demo_names();

}  // namespace chainmind
