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
#include "core/memory_bank.hpp"
#include "core/types.hpp"

namespace chainmind {

struct InputEvent;  // tokenizer.hpp

// Comparison against a monitored scalar channel value.
struct TriggerPredicate {
    enum class Op { Less, LessEq, Greater, GreaterEq };
    Op op = Op::Less;
    double threshold = 0.0;

    [[nodiscard]] bool fires(double value) const;
    [[nodiscard]] std::string to_string() const;
    static TriggerPredicate parse(std::string_view text);
};

// A preset bodily need: a monitored channel that, out of range, lights up a
// need symbol stored next to an emotion symbol and a valence symbol.
struct NeedSpec {
    std::string need_symbol;
    std::string monitor_channel;  // e.g. "battery"
    TriggerPredicate trigger;
    std::string emotion_symbol;
    std::string valence_symbol;  // "reward" or "punishment"
    TokenKind valence_kind = TokenKind::Punishment;
    double preset_memory = 240.0;
};

// A preset recognizable gesture: a handful of feature tokens with emotion
// and valence symbols stored beside them. Observations that resemble the
// feature tokens light up the attached symbols.
struct GestureSpec {
    std::string name;  // e.g. "nod"
    std::vector<std::string> attached_symbols;
    double preset_memory = 240.0;
    std::size_t token_count = 3;
};

// Parsed innate knowledge plus the routing table used by event tokenization.
class InnateRegistry {
public:
    void add(NeedSpec spec);
    void add(GestureSpec spec);

    [[nodiscard]] const std::vector<NeedSpec>& needs() const { return needs_; }
    [[nodiscard]] const std::vector<GestureSpec>& gestures() const {
        return gestures_;
    }

    [[nodiscard]] const NeedSpec* need_for_channel(
        const std::string& channel) const;
    [[nodiscard]] std::vector<const NeedSpec*> needs_for_channel(
        const std::string& channel) const;
    [[nodiscard]] const GestureSpec* gesture(const std::string& name) const;

    // One spec per line:
    //   need\t<symbol>\t<channel>\t<op><threshold>\t<emotion>\t<reward|punishment>\t<memory>
    //   gesture\t<name>\t<attached,...>\t<memory>
    // Runs of whitespace are accepted in place of single tabs.
    void parse_line(std::string_view line, std::size_t line_no = 0);
    static InnateRegistry parse_text(std::string_view text);
    static InnateRegistry parse_file(const std::string& path);

private:
    std::vector<NeedSpec> needs_;
    std::vector<GestureSpec> gestures_;
};

// Appends each spec's symbols to the bank as adjacent records (simultaneous
// groups, one group per spec, groups spaced farther apart than any proximity
// window) with memory preset high. Returns the installed positions. Innate
// records are ordinary records: same type, same file format, no special
// storage. Rejects installing a need or gesture symbol twice.
std::vector<std::size_t> install(MemoryBank& bank, const InnateRegistry& registry,
                                 const Config& config);

// Runs one vital event through trigger matching: when a predicate fires the
// trigger payload is stored, seeded, and chain-activated, and the resulting
// report is returned; otherwise returns nothing and leaves the bank alone.
std::optional<ActivationReport> monitor_vitals(
    MemoryBank& bank, const InnateRegistry& registry, const InputEvent& event,
    const Config& config,
    const ActivationReport* prior_report = nullptr);

}  // namespace chainmind
