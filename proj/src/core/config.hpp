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
#include <string>
#include <string_view>

#include "core/types.hpp"

namespace chainmind {

enum class TextGranularity { Word, Character };

// Engine parameters. Every field is overridable through the flat key=value
// config format; `dump()` prints the effective values.
struct Config {
    // Structural (persisted in bank headers, checked on merge).
    std::size_t feature_dim = 64;
    double m_max = 255.0;  // memory value ceiling
    double a_max = 255.0;  // activation value ceiling

    // Seeding.
    double a0_base = 90.0;  // default initial activation for inputs
    double a0_gain = 0.5;   // maps prior valence activation into an A0 boost

    // Propagation.
    double propagation_threshold = 10.0;  // received amounts below this die
    double edge_cap = 0.5;                // global ceiling on any coefficient
    Tick proximity_window = 5;            // max tick distance for an edge
    double similarity_floor = 0.3;        // min similarity to create an edge

    // Temporal fade (half-lives, in ticks).
    double half_life_activation = 6.0;
    double half_life_memory = 600.0;

    // Consolidation.
    double reinforce_rate = 1.4;  // scales activation into memory increments

    // Decision making.
    std::size_t path_width = 3;         // paths/targets kept per extraction
    double reward_threshold = 25.0;     // attention gate on reward symbols
    double punishment_threshold = 25.0; // attention gate on punishment symbols
    double convergence_epsilon = 1.0;   // tally change treated as converged
    std::size_t max_rounds = 8;         // hard cap on goal-expansion rounds

    // Harness.
    TextGranularity text_granularity = TextGranularity::Word;
    Tick turn_gap = 2;  // ticks inserted between interactive turns
    std::uint64_t seed = 0x5eed0fc8a1db17e3ULL;

    // Throws ErrorCode::InvalidArgument when any invariant is violated
    // (0 < edge_cap < 1, threshold > 0, half-lives > 0, ...).
    void validate() const;

    // Hash of the structural fields a bank file persists; merge compatibility
    // requires equal fingerprints.
    [[nodiscard]] std::uint64_t fingerprint() const;

    void set(std::string_view key, std::string_view value);
    [[nodiscard]] std::string get(std::string_view key) const;
    [[nodiscard]] std::string dump() const;

    static Config from_text(std::string_view text);
    static Config from_file(const std::string& path);
};

}  // namespace chainmind
