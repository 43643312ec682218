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

#include "core/innate.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include "core/text_util.hpp"
#include "core/tokenizer.hpp"

namespace chainmind {

// ---------------------------------------------------------------------------
// Trigger predicates
// ---------------------------------------------------------------------------

bool TriggerPredicate::fires(double value) const {
    switch (op) {
        case Op::Less: return value < threshold;
        case Op::LessEq: return value <= threshold;
        case Op::Greater: return value > threshold;
        case Op::GreaterEq: return value >= threshold;
    }
    return false;
}

std::string TriggerPredicate::to_string() const {
    std::string text;
    switch (op) {
        case Op::Less: text = "<"; break;
        case Op::LessEq: text = "<="; break;
        case Op::Greater: text = ">"; break;
        case Op::GreaterEq: text = ">="; break;
    }
    return text + fmt_g9(threshold);
}

TriggerPredicate TriggerPredicate::parse(std::string_view text) {
    TriggerPredicate pred;
    std::size_t skip = 0;
    if (text.rfind("<=", 0) == 0) {
        pred.op = Op::LessEq;
        skip = 2;
    } else if (text.rfind(">=", 0) == 0) {
        pred.op = Op::GreaterEq;
        skip = 2;
    } else if (!text.empty() && text[0] == '<') {
        pred.op = Op::Less;
        skip = 1;
    } else if (!text.empty() && text[0] == '>') {
        pred.op = Op::Greater;
        skip = 1;
    } else {
        fail(ErrorCode::Parse,
             "trigger predicate must start with <, <=, > or >=: '" +
                 std::string(text) + "'");
    }
    std::string number(text.substr(skip));
    try {
        size_t used = 0;
        pred.threshold = std::stod(number, &used);
        if (used != number.size()) fail(ErrorCode::Parse, "trailing characters");
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        fail(ErrorCode::Parse,
             "invalid trigger threshold '" + number + "'");
    }
    return pred;
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

void InnateRegistry::add(NeedSpec spec) { needs_.push_back(std::move(spec)); }
void InnateRegistry::add(GestureSpec spec) {
    gestures_.push_back(std::move(spec));
}

const NeedSpec* InnateRegistry::need_for_channel(
    const std::string& channel) const {
    for (const NeedSpec& need : needs_)
        if (need.monitor_channel == channel) return &need;
    return nullptr;
}

std::vector<const NeedSpec*> InnateRegistry::needs_for_channel(
    const std::string& channel) const {
    std::vector<const NeedSpec*> out;
    for (const NeedSpec& need : needs_)
        if (need.monitor_channel == channel) out.push_back(&need);
    return out;
}

const GestureSpec* InnateRegistry::gesture(const std::string& name) const {
    for (const GestureSpec& spec : gestures_)
        if (spec.name == name) return &spec;
    return nullptr;
}

void InnateRegistry::parse_line(std::string_view line, std::size_t line_no) {
    std::vector<std::string> fields = split_whitespace(line);
    if (fields.empty() || fields[0][0] == '#') return;
    auto where = [line_no] {
        return line_no ? "innate line " + std::to_string(line_no) + ": "
                       : std::string("innate spec: ");
    };
    if (fields[0] == "need") {
        if (fields.size() != 7)
            fail(ErrorCode::Parse,
                 where() + "expected need <symbol> <channel> <op><threshold> "
                           "<emotion> <reward|punishment> <memory>");
        NeedSpec spec;
        spec.need_symbol = fields[1];
        spec.monitor_channel = fields[2];
        spec.trigger = TriggerPredicate::parse(fields[3]);
        spec.emotion_symbol = fields[4];
        spec.valence_symbol = fields[5];
        if (fields[5] == "reward")
            spec.valence_kind = TokenKind::Reward;
        else if (fields[5] == "punishment")
            spec.valence_kind = TokenKind::Punishment;
        else
            fail(ErrorCode::Parse,
                 where() + "valence must be 'reward' or 'punishment', got '" +
                     fields[5] + "'");
        try {
            spec.preset_memory = std::stod(fields[6]);
        } catch (const std::exception&) {
            fail(ErrorCode::Parse, where() + "invalid memory value");
        }
        add(std::move(spec));
        return;
    }
    if (fields[0] == "gesture") {
        if (fields.size() != 4)
            fail(ErrorCode::Parse,
                 where() + "expected gesture <name> <attached,...> <memory>");
        GestureSpec spec;
        spec.name = fields[1];
        spec.attached_symbols = split(fields[2], ',');
        std::size_t valence_count = 0;
        for (const std::string& symbol : spec.attached_symbols) {
            if (symbol.empty())
                fail(ErrorCode::Parse, where() + "empty attached symbol");
            if (symbol == "reward" || symbol == "punishment") ++valence_count;
        }
        if (valence_count != 1)
            fail(ErrorCode::Parse,
                 where() +
                     "attached symbols must include exactly one reward or "
                     "punishment symbol");
        try {
            spec.preset_memory = std::stod(fields[3]);
        } catch (const std::exception&) {
            fail(ErrorCode::Parse, where() + "invalid memory value");
        }
        add(std::move(spec));
        return;
    }
    fail(ErrorCode::Parse,
         where() + "unknown spec kind '" + fields[0] + "'");
}

InnateRegistry InnateRegistry::parse_text(std::string_view text) {
    InnateRegistry registry;
    std::size_t line_no = 0;
    for (const std::string& line : split(text, '\n')) {
        ++line_no;
        if (trim(line).empty()) continue;
        registry.parse_line(line, line_no);
    }
    return registry;
}

InnateRegistry InnateRegistry::parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::Io, "cannot open innate spec file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str());
}

// ---------------------------------------------------------------------------
// Installation
// ---------------------------------------------------------------------------

namespace {

TokenPayload make_symbol_payload(const std::string& symbol, TokenKind kind,
                                 const Config& config) {
    TokenPayload payload;
    payload.symbol = symbol;
    payload.kind = kind;
    payload.feature = symbol_vector(symbol, config.feature_dim, config.seed);
    return payload;
}

}  // namespace

std::vector<std::size_t> install(MemoryBank& bank,
                                 const InnateRegistry& registry,
                                 const Config& config) {
    // Reject double installation of any need or gesture symbol.
    std::unordered_set<std::string> incoming;
    auto claim = [&](const std::string& symbol) {
        if (!bank.positions_of(symbol).empty() || !incoming.insert(symbol).second)
            fail(ErrorCode::Duplicate,
                 "innate symbol '" + symbol + "' is already installed");
    };
    for (const NeedSpec& need : registry.needs()) claim(need.need_symbol);
    for (const GestureSpec& gesture : registry.gestures())
        for (std::size_t i = 0; i < gesture.token_count; ++i)
            claim(gesture.name + "#" + std::to_string(i));

    std::vector<std::size_t> installed;
    // One simultaneous group per spec; groups spaced beyond the proximity
    // window so presets cannot light each other up.
    Tick gap = config.proximity_window + 1;
    Tick t = bank.empty() ? 0 : bank.last_time() + gap;

    for (const NeedSpec& need : registry.needs()) {
        std::vector<TokenPayload> group;
        group.push_back(
            make_symbol_payload(need.need_symbol, TokenKind::Need, config));
        group.push_back(make_symbol_payload(need.emotion_symbol,
                                            TokenKind::Emotion, config));
        group.push_back(make_symbol_payload(need.valence_symbol,
                                            need.valence_kind, config));
        std::vector<std::size_t> positions = bank.append(group, t, 0);
        for (std::size_t pos : positions) {
            bank.set_memory_value(pos, need.preset_memory);
            installed.push_back(pos);
        }
        t += gap;
    }

    for (const GestureSpec& gesture : registry.gestures()) {
        std::vector<TokenPayload> group;
        for (std::size_t i = 0; i < gesture.token_count; ++i)
            group.push_back(make_symbol_payload(
                gesture.name + "#" + std::to_string(i), TokenKind::Ordinary,
                config));
        for (const std::string& symbol : gesture.attached_symbols) {
            TokenKind kind = TokenKind::Emotion;
            if (symbol == "reward") kind = TokenKind::Reward;
            if (symbol == "punishment") kind = TokenKind::Punishment;
            group.push_back(make_symbol_payload(symbol, kind, config));
        }
        std::vector<std::size_t> positions = bank.append(group, t, 0);
        for (std::size_t pos : positions) {
            bank.set_memory_value(pos, gesture.preset_memory);
            installed.push_back(pos);
        }
        t += gap;
    }
    return installed;
}

std::optional<ActivationReport> monitor_vitals(
    MemoryBank& bank, const InnateRegistry& registry, const InputEvent& event,
    const Config& config, const ActivationReport* prior_report) {
    std::vector<TokenPayload> payloads =
        tokenize_event(event, registry, config);
    bool triggered = false;
    for (const TokenPayload& payload : payloads)
        if (payload.kind == TokenKind::Need) triggered = true;
    if (!triggered) return std::nullopt;

    Tick at = std::max(event.event_time,
                       bank.empty() ? event.event_time : bank.last_time());
    std::vector<std::size_t> positions = bank.append(payloads, at, 0);
    return chain_activate(bank, positions, config, prior_report);
}

}  // namespace chainmind
