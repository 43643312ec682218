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

#include <random>
#include <string>
#include <vector>

#include "core/config.hpp"
#include "core/memory_bank.hpp"
#include "core/tokenizer.hpp"
#include "core/types.hpp"

namespace chainmind::testing {

inline TokenPayload payload_for(const std::string& symbol, const Config& config,
                                TokenKind kind = TokenKind::Ordinary) {
    TokenPayload payload;
    payload.symbol = symbol;
    payload.kind = kind;
    payload.feature = symbol_vector(symbol, config.feature_dim, config.seed);
    return payload;
}

struct RandomBankSpec {
    std::size_t records = 20;
    std::size_t vocabulary = 8;      // small vocab forces duplicate symbols
    double max_memory = 255.0;
    Tick max_spacing = 3;            // 0 produces simultaneity and cycles
    double residual_probability = 0.0;
    double max_residual = 40.0;
};

// Random time-ordered bank with duplicate symbols (similarity cliques),
// tight proximity (cycles), and arbitrary memory values.
inline MemoryBank random_bank(std::mt19937_64& rng, const Config& config,
                              const RandomBankSpec& spec) {
    MemoryBank bank(config);
    std::uniform_int_distribution<std::size_t> pick_symbol(
        0, spec.vocabulary - 1);
    std::uniform_real_distribution<double> pick_memory(0.0, spec.max_memory);
    std::uniform_int_distribution<Tick> pick_spacing(0, spec.max_spacing);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    Tick t = 0;
    for (std::size_t i = 0; i < spec.records; ++i) {
        std::string symbol = "w" + std::to_string(pick_symbol(rng));
        bank.append({payload_for(symbol, config)}, t, 1);
        bank.set_memory_value(i, pick_memory(rng));
        if (spec.residual_probability > 0.0 &&
            unit(rng) < spec.residual_probability)
            bank.set_activation_value(
                i, unit(rng) * spec.max_residual);
        t += pick_spacing(rng);
    }
    return bank;
}

inline std::vector<std::size_t> random_seeds(std::mt19937_64& rng,
                                             const MemoryBank& bank,
                                             std::size_t count) {
    std::uniform_int_distribution<std::size_t> pick(0, bank.size() - 1);
    std::vector<std::size_t> seeds;
    while (seeds.size() < count && seeds.size() < bank.size()) {
        std::size_t pos = pick(rng);
        bool dup = false;
        for (std::size_t existing : seeds) dup |= existing == pos;
        if (!dup) seeds.push_back(pos);
    }
    return seeds;
}

}  // namespace chainmind::testing
