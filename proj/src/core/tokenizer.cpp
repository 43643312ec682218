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

#include "core/tokenizer.hpp"

#include <cmath>

#include "core/innate.hpp"
#include "core/text_util.hpp"

namespace chainmind {

namespace {

// Box-Muller over the deterministic splitmix stream; avoids the
// implementation-defined distributions in <random> so vectors are identical
// across platforms and standard libraries.
void fill_gaussian(std::uint64_t& state, FeatureVec& out) {
    constexpr double kTau = 6.283185307179586476925286766559;
    for (std::size_t i = 0; i < out.size(); i += 2) {
        double u1 = unit_double(state);
        double u2 = unit_double(state);
        double r = std::sqrt(-2.0 * std::log(u1));
        out[i] = r * std::cos(kTau * u2);
        if (i + 1 < out.size()) out[i + 1] = r * std::sin(kTau * u2);
    }
}

void normalize(FeatureVec& v) {
    double norm_sq = 0.0;
    for (double x : v) norm_sq += x * x;
    if (norm_sq == 0.0) {
        v[0] = 1.0;
        return;
    }
    double inv = 1.0 / std::sqrt(norm_sq);
    for (double& x : v) x *= inv;
}

}  // namespace

FeatureVec symbol_vector(std::string_view symbol, std::size_t dim,
                         std::uint64_t seed) {
    std::uint64_t state = seed ^ fnv1a64(symbol) ^ 0x9e3779b97f4a7c15ULL;
    FeatureVec v(dim);
    fill_gaussian(state, v);
    normalize(v);
    return v;
}

std::vector<TokenPayload> tokenize_text(const std::string& line,
                                        TextGranularity granularity,
                                        const Config& config) {
    std::vector<std::string> units = granularity == TextGranularity::Word
                                         ? split_whitespace(line)
                                         : split_utf8_chars(line);
    std::vector<TokenPayload> out;
    out.reserve(units.size());
    for (std::string& unit : units) {
        TokenPayload payload;
        payload.kind = TokenKind::Ordinary;
        payload.feature = symbol_vector(unit, config.feature_dim, config.seed);
        payload.symbol = std::move(unit);
        out.push_back(std::move(payload));
    }
    return out;
}

namespace {

TokenPayload ordinary_payload(const std::string& symbol, const Config& config) {
    TokenPayload payload;
    payload.symbol = symbol;
    payload.kind = TokenKind::Ordinary;
    payload.feature = symbol_vector(symbol, config.feature_dim, config.seed);
    return payload;
}

// Observation of a preset gesture token: the preset vector with a small
// deterministic perturbation, so resemblance stays high (dot >= 0.9) while
// the observed symbol differs from the stored preset symbol.
TokenPayload gesture_observation(const GestureSpec& spec, std::size_t index,
                                 Tick at, const Config& config) {
    std::string preset_symbol = spec.name + "#" + std::to_string(index);
    FeatureVec base =
        symbol_vector(preset_symbol, config.feature_dim, config.seed);
    std::string obs_symbol = "gesture:" + spec.name + "#" +
                             std::to_string(index) + "@" + std::to_string(at);
    FeatureVec noise = symbol_vector(obs_symbol, config.feature_dim,
                                     config.seed ^ 0xb5297a4d3f84d5b5ULL);
    FeatureVec v(config.feature_dim);
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = base[i] + 0.25 * noise[i];
    normalize(v);
    TokenPayload payload;
    payload.symbol = obs_symbol;
    payload.kind = TokenKind::Ordinary;
    payload.feature = std::move(v);
    return payload;
}

}  // namespace

std::vector<TokenPayload> tokenize_event(const InputEvent& event,
                                         const InnateRegistry& registry,
                                         const Config& config) {
    if (event.channel == "text") {
        return tokenize_text(event.content, config.text_granularity, config);
    }

    if (event.channel == "vital") {
        // Content form: <channel-name>=<numeric value>.
        size_t eq = event.content.find('=');
        if (eq != std::string::npos) {
            std::string name = trim(event.content.substr(0, eq));
            std::string value_text = trim(event.content.substr(eq + 1));
            double value = 0.0;
            bool numeric = false;
            try {
                size_t used = 0;
                value = std::stod(value_text, &used);
                numeric = used == value_text.size();
            } catch (const std::exception&) {
                numeric = false;
            }
            if (numeric) {
                std::vector<TokenPayload> triggered;
                for (const NeedSpec* need : registry.needs_for_channel(name)) {
                    if (need->trigger.fires(value)) {
                        TokenPayload payload;
                        payload.symbol = need->need_symbol;
                        payload.kind = TokenKind::Need;
                        payload.feature = symbol_vector(
                            need->need_symbol, config.feature_dim, config.seed);
                        triggered.push_back(std::move(payload));
                    }
                }
                if (!triggered.empty()) return triggered;
                // In range: one ordinary telemetry token.
                return {ordinary_payload("vital:" + event.content, config)};
            }
        }
        return {ordinary_payload("vital:" + event.content, config)};
    }

    if (event.channel == "gesture") {
        const GestureSpec* spec = registry.gesture(trim(event.content));
        if (spec) {
            std::vector<TokenPayload> out;
            for (std::size_t i = 0; i < spec->token_count; ++i)
                out.push_back(
                    gesture_observation(*spec, i, event.event_time, config));
            return out;
        }
        return {ordinary_payload("gesture:" + event.content, config)};
    }

    if (event.channel == "env") {
        // Scripted streams stand in for the machine's full record, so special
        // kinds can be laid down directly with a kind prefix.
        std::string content = trim(event.content);
        TokenPayload payload = ordinary_payload(content, config);
        static constexpr std::pair<std::string_view, TokenKind> kPrefixes[] = {
            {"drive:", TokenKind::Drive},
            {"reward:", TokenKind::Reward},
            {"punishment:", TokenKind::Punishment},
            {"emotion:", TokenKind::Emotion},
            {"need:", TokenKind::Need},
        };
        for (const auto& [prefix, kind] : kPrefixes)
            if (content.rfind(prefix, 0) == 0) payload.kind = kind;
        return {payload};
    }

    // Unregistered channel: ordinary channel-prefixed token.
    return {ordinary_payload(event.channel + ":" + event.content, config)};
}

std::vector<InputEvent> parse_event_line(std::string_view line,
                                         std::size_t line_no) {
    std::string text = trim(line);
    if (text.empty() || text[0] == '#') return {};

    // <tick> <channel> <content>; content keeps internal whitespace.
    size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    };
    auto take_field = [&] {
        size_t start = i;
        while (i < text.size() && text[i] != ' ' && text[i] != '\t') ++i;
        return text.substr(start, i - start);
    };
    std::string tick_text = take_field();
    skip_ws();
    std::string channel = take_field();
    skip_ws();
    std::string content = text.substr(i);
    if (tick_text.empty() || channel.empty() || content.empty())
        fail(ErrorCode::Parse, "script line " + std::to_string(line_no) +
                                   ": expected <tick> <channel> <content>");
    InputEvent event;
    try {
        event.event_time = std::stoll(tick_text);
    } catch (const std::exception&) {
        fail(ErrorCode::Parse, "script line " + std::to_string(line_no) +
                                   ": invalid tick '" + tick_text + "'");
    }
    event.channel = channel;
    event.content = content;
    return {event};
}

}  // namespace chainmind
