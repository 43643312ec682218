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

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace chainmind {

// Abstract integer time. All temporal relations in the engine are expressed
// as tick deltas, never wall-clock time.
using Tick = std::int64_t;

// ============================================================================
// Errors
// ============================================================================

enum class ErrorCode {
    InvalidArgument,
    Parse,
    Io,
    Dimension,
    Ordering,
    Duplicate,
    StaleReport,
    Assertion,
    NotFound,
    Internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

// ============================================================================
// Token payloads and records
// ============================================================================

enum class TokenKind : std::uint8_t {
    Ordinary,
    Need,
    Reward,
    Punishment,
    Emotion,
    Drive,
};

std::string_view kind_name(TokenKind kind);
std::optional<TokenKind> parse_kind(std::string_view name);

using FeatureVec = std::vector<double>;

// One discrete unit of information: an interned symbol, an optional unit-norm
// feature vector, and a kind tag separating ordinary tokens from the special
// valence/need/emotion/drive tokens.
struct TokenPayload {
    std::string symbol;
    TokenKind kind = TokenKind::Ordinary;
    std::optional<FeatureVec> feature;

    [[nodiscard]] bool operator==(const TokenPayload& other) const = default;
};

// Validates symbol and feature-vector invariants (symbol printable without
// tabs/newlines, vector unit-norm within 1e-9). Throws on violation.
void validate_payload(const TokenPayload& payload);

// One row of the store: immutable record time plus payload, and the two
// mutable scalar columns. `memory_value` is the consolidation strength,
// `activation_value` the transient salience. `frozen` exempts a record from
// memory fade (optional extension column in the bank file format).
struct TokenRecord {
    Tick record_time = 0;
    TokenPayload payload;
    double memory_value = 0.0;
    double activation_value = 0.0;
    bool frozen = false;
};

}  // namespace chainmind
