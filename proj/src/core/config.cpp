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

#include "core/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "core/text_util.hpp"

namespace chainmind {

std::string_view kind_name(TokenKind kind) {
    switch (kind) {
        case TokenKind::Ordinary: return "ordinary";
        case TokenKind::Need: return "need";
        case TokenKind::Reward: return "reward";
        case TokenKind::Punishment: return "punishment";
        case TokenKind::Emotion: return "emotion";
        case TokenKind::Drive: return "drive";
    }
    return "ordinary";
}

std::optional<TokenKind> parse_kind(std::string_view name) {
    if (name == "ordinary") return TokenKind::Ordinary;
    if (name == "need") return TokenKind::Need;
    if (name == "reward") return TokenKind::Reward;
    if (name == "punishment") return TokenKind::Punishment;
    if (name == "emotion") return TokenKind::Emotion;
    if (name == "drive") return TokenKind::Drive;
    return std::nullopt;
}

void validate_payload(const TokenPayload& payload) {
    if (payload.symbol.empty())
        fail(ErrorCode::InvalidArgument, "payload symbol must be non-empty");
    for (char c : payload.symbol) {
        if (c == '\t' || c == '\n' || c == '\r')
            fail(ErrorCode::InvalidArgument,
                 "payload symbol must not contain tabs or newlines: '" +
                     payload.symbol + "'");
    }
    if (payload.feature) {
        double norm_sq = 0.0;
        for (double v : *payload.feature) norm_sq += v * v;
        if (std::abs(std::sqrt(norm_sq) - 1.0) > 1e-9)
            fail(ErrorCode::InvalidArgument,
                 "feature vector of '" + payload.symbol +
                     "' is not unit-norm");
    }
}

namespace {

double parse_double(std::string_view key, std::string_view value) {
    try {
        size_t used = 0;
        std::string text(value);
        double parsed = std::stod(text, &used);
        if (used != text.size())
            fail(ErrorCode::Parse, "trailing characters");
        return parsed;
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        fail(ErrorCode::Parse, "config key '" + std::string(key) +
                                   "': invalid number '" + std::string(value) +
                                   "'");
    }
}

std::uint64_t parse_u64(std::string_view key, std::string_view value) {
    std::uint64_t parsed = 0;
    auto [ptr, ec] =
        std::from_chars(value.data(), value.data() + value.size(), parsed);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        fail(ErrorCode::Parse, "config key '" + std::string(key) +
                                   "': invalid integer '" +
                                   std::string(value) + "'");
    return parsed;
}

}  // namespace

void Config::validate() const {
    if (feature_dim == 0)
        fail(ErrorCode::InvalidArgument, "feature_dim must be >= 1");
    if (m_max <= 0.0 || a_max <= 0.0)
        fail(ErrorCode::InvalidArgument, "m_max and a_max must be positive");
    if (!(a0_base > 0.0) || a0_base > a_max)
        fail(ErrorCode::InvalidArgument, "a0_base must be in (0, a_max]");
    if (a0_gain < 0.0)
        fail(ErrorCode::InvalidArgument, "a0_gain must be >= 0");
    if (!(propagation_threshold > 0.0))
        fail(ErrorCode::InvalidArgument,
             "propagation_threshold must be > 0");
    if (!(edge_cap > 0.0) || !(edge_cap < 1.0))
        fail(ErrorCode::InvalidArgument, "edge_cap must be in (0, 1)");
    if (proximity_window < 0)
        fail(ErrorCode::InvalidArgument, "proximity_window must be >= 0");
    if (similarity_floor < 0.0 || similarity_floor > 1.0)
        fail(ErrorCode::InvalidArgument,
             "similarity_floor must be in [0, 1]");
    if (!(half_life_activation > 0.0) || !(half_life_memory > 0.0))
        fail(ErrorCode::InvalidArgument, "half-lives must be > 0");
    if (reinforce_rate < 0.0)
        fail(ErrorCode::InvalidArgument, "reinforce_rate must be >= 0");
    if (path_width == 0)
        fail(ErrorCode::InvalidArgument, "path_width must be >= 1");
    if (reward_threshold < 0.0 || punishment_threshold < 0.0)
        fail(ErrorCode::InvalidArgument, "attention thresholds must be >= 0");
    if (!(convergence_epsilon > 0.0))
        fail(ErrorCode::InvalidArgument, "convergence_epsilon must be > 0");
    if (max_rounds == 0)
        fail(ErrorCode::InvalidArgument, "max_rounds must be >= 1");
    if (turn_gap <= 0)
        fail(ErrorCode::InvalidArgument, "turn_gap must be >= 1");
}

std::uint64_t Config::fingerprint() const {
    std::string canon = "dim=" + std::to_string(feature_dim) +
                        ";mmax=" + fmt_g9(m_max) + ";amax=" + fmt_g9(a_max);
    return fnv1a64(canon);
}

void Config::set(std::string_view key, std::string_view value) {
    if (key == "feature_dim")
        feature_dim = static_cast<std::size_t>(parse_u64(key, value));
    else if (key == "m_max")
        m_max = parse_double(key, value);
    else if (key == "a_max")
        a_max = parse_double(key, value);
    else if (key == "a0_base")
        a0_base = parse_double(key, value);
    else if (key == "a0_gain")
        a0_gain = parse_double(key, value);
    else if (key == "propagation_threshold")
        propagation_threshold = parse_double(key, value);
    else if (key == "edge_cap")
        edge_cap = parse_double(key, value);
    else if (key == "proximity_window")
        proximity_window = static_cast<Tick>(parse_u64(key, value));
    else if (key == "similarity_floor")
        similarity_floor = parse_double(key, value);
    else if (key == "half_life_activation")
        half_life_activation = parse_double(key, value);
    else if (key == "half_life_memory")
        half_life_memory = parse_double(key, value);
    else if (key == "reinforce_rate")
        reinforce_rate = parse_double(key, value);
    else if (key == "path_width")
        path_width = static_cast<std::size_t>(parse_u64(key, value));
    else if (key == "reward_threshold")
        reward_threshold = parse_double(key, value);
    else if (key == "punishment_threshold")
        punishment_threshold = parse_double(key, value);
    else if (key == "convergence_epsilon")
        convergence_epsilon = parse_double(key, value);
    else if (key == "max_rounds")
        max_rounds = static_cast<std::size_t>(parse_u64(key, value));
    else if (key == "text_granularity") {
        if (value == "word")
            text_granularity = TextGranularity::Word;
        else if (value == "character")
            text_granularity = TextGranularity::Character;
        else
            fail(ErrorCode::Parse,
                 "text_granularity must be 'word' or 'character'");
    } else if (key == "turn_gap")
        turn_gap = static_cast<Tick>(parse_u64(key, value));
    else if (key == "seed")
        seed = parse_u64(key, value);
    else
        fail(ErrorCode::Parse, "unknown config key '" + std::string(key) + "'");
}

std::string Config::get(std::string_view key) const {
    if (key == "feature_dim") return std::to_string(feature_dim);
    if (key == "m_max") return fmt_g9(m_max);
    if (key == "a_max") return fmt_g9(a_max);
    if (key == "a0_base") return fmt_g9(a0_base);
    if (key == "a0_gain") return fmt_g9(a0_gain);
    if (key == "propagation_threshold") return fmt_g9(propagation_threshold);
    if (key == "edge_cap") return fmt_g9(edge_cap);
    if (key == "proximity_window") return std::to_string(proximity_window);
    if (key == "similarity_floor") return fmt_g9(similarity_floor);
    if (key == "half_life_activation") return fmt_g9(half_life_activation);
    if (key == "half_life_memory") return fmt_g9(half_life_memory);
    if (key == "reinforce_rate") return fmt_g9(reinforce_rate);
    if (key == "path_width") return std::to_string(path_width);
    if (key == "reward_threshold") return fmt_g9(reward_threshold);
    if (key == "punishment_threshold") return fmt_g9(punishment_threshold);
    if (key == "convergence_epsilon") return fmt_g9(convergence_epsilon);
    if (key == "max_rounds") return std::to_string(max_rounds);
    if (key == "text_granularity")
        return text_granularity == TextGranularity::Word ? "word" : "character";
    if (key == "turn_gap") return std::to_string(turn_gap);
    if (key == "seed") return std::to_string(seed);
    fail(ErrorCode::NotFound, "unknown config key '" + std::string(key) + "'");
}

std::string Config::dump() const {
    static const char* kKeys[] = {
        "feature_dim",          "m_max",
        "a_max",                "a0_base",
        "a0_gain",              "propagation_threshold",
        "edge_cap",             "proximity_window",
        "similarity_floor",     "half_life_activation",
        "half_life_memory",     "reinforce_rate",
        "path_width",           "reward_threshold",
        "punishment_threshold", "convergence_epsilon",
        "max_rounds",           "text_granularity",
        "turn_gap",             "seed",
    };
    std::string out;
    for (const char* key : kKeys) {
        out += key;
        out += '=';
        out += get(key);
        out += '\n';
    }
    return out;
}

Config Config::from_text(std::string_view text) {
    Config config;
    size_t line_no = 0;
    for (const std::string& raw : split(text, '\n')) {
        ++line_no;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            fail(ErrorCode::Parse, "config line " + std::to_string(line_no) +
                                       ": expected key=value");
        config.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    config.validate();
    return config;
}

Config Config::from_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::Io, "cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_text(buf.str());
}

}  // namespace chainmind
