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

#include <string>
#include <vector>

#include "core/config.hpp"
#include "core/types.hpp"

namespace chainmind {

class InnateRegistry;

// One scripted sensor event. Known channels are text, vital, gesture and
// env; unknown channel names degrade to ordinary channel-prefixed tokens.
struct InputEvent {
    Tick event_time = 0;
    std::string channel;
    std::string content;
};

// Deterministic symbol -> unit vector assignment (hash-seeded gaussian,
// normalized). Identical symbols always map to the identical vector;
// distinct symbols land nearly orthogonal at dimension >= 64.
FeatureVec symbol_vector(std::string_view symbol, std::size_t dim,
                         std::uint64_t seed);

// All tokenization is pure: identical inputs yield identical payload
// streams for a fixed config.
std::vector<TokenPayload> tokenize_text(const std::string& line,
                                        TextGranularity granularity,
                                        const Config& config);

// Event payloads carry the trigger routing for vitals (registered channel
// thresholds map to need symbols), preset resemblance for gestures, and
// ordinary kinds otherwise. Content with a `drive:` prefix becomes a
// drive-kind payload; that is how scripts record past motor commands.
std::vector<TokenPayload> tokenize_event(const InputEvent& event,
                                         const InnateRegistry& registry,
                                         const Config& config);

// Script format: one event per line, `<tick>\t<channel>\t<content>`,
// `#` comments, UTF-8. Runs of whitespace are accepted between fields
// (content keeps its internal spacing).
std::vector<InputEvent> parse_event_line(std::string_view line,
                                         std::size_t line_no);

}  // namespace chainmind
