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

// Brute-force reference for chain activation, kept deliberately independent
// of the engine's propagation code: it re-derives the transfer rules from
// their closed forms and enumerates every transfer walk recursively. A walk
// dies as soon as its current amount drops under the propagation threshold;
// every surviving delivery accumulates into the target's activation.

#include <cmath>
#include <unordered_map>
#include <vector>

#include "core/config.hpp"
#include "core/memory_bank.hpp"
#include "core/types.hpp"

namespace chainmind::testing {

struct OracleOutcome {
    // Final activation per record, including seeds and untouched residuals.
    std::unordered_map<std::size_t, double> activation;
    std::size_t deliveries = 0;
};

namespace oracle_detail {

inline double dot_similarity(const TokenPayload& a, const TokenPayload& b) {
    if (a.symbol == b.symbol) return 1.0;
    if (!a.feature || !b.feature || a.feature->size() != b.feature->size())
        return 0.0;
    double dot = 0.0;
    for (std::size_t i = 0; i < a.feature->size(); ++i)
        dot += (*a.feature)[i] * (*b.feature)[i];
    if (dot < 0.0) dot = 0.0;
    if (dot > 1.0) dot = 1.0;
    return dot;
}

inline double gain(double memory, const Config& config) {
    return (1.0 + memory / config.m_max) / 2.0;
}

inline void walk(const MemoryBank& bank, const Config& config,
                 const std::vector<bool>& is_seed, std::size_t src,
                 double amount, OracleOutcome& out) {
    const TokenRecord& source = bank.record(src);
    for (std::size_t dst = 0; dst < bank.size(); ++dst) {
        if (dst == src || is_seed[dst]) continue;
        const TokenRecord& target = bank.record(dst);

        double s = dot_similarity(source.payload, target.payload);
        if (s >= config.similarity_floor) {
            double coeff =
                config.edge_cap * s * gain(target.memory_value, config);
            double y = coeff * amount;
            if (y >= config.propagation_threshold) {
                out.activation[dst] += y;
                ++out.deliveries;
                walk(bank, config, is_seed, dst, y, out);
            }
        }

        Tick d = target.record_time - source.record_time;
        if (d < 0) d = -d;
        if (d <= config.proximity_window) {
            double coeff =
                config.edge_cap *
                std::exp2(-static_cast<double>(d) /
                          static_cast<double>(config.proximity_window)) *
                gain(target.memory_value, config);
            double y = coeff * amount;
            if (y >= config.propagation_threshold) {
                out.activation[dst] += y;
                ++out.deliveries;
                walk(bank, config, is_seed, dst, y, out);
            }
        }
    }
}

}  // namespace oracle_detail

// `a0` must match what the engine will seed with (a0_base when there is no
// prior report). Bank activations are read as the pre-run residuals.
inline OracleOutcome oracle_chain(const MemoryBank& bank,
                                  const std::vector<std::size_t>& seeds,
                                  const Config& config, double a0) {
    OracleOutcome out;
    std::vector<bool> is_seed(bank.size(), false);
    for (std::size_t pos : seeds) is_seed[pos] = true;

    for (std::size_t i = 0; i < bank.size(); ++i) {
        if (is_seed[i])
            out.activation[i] = a0;
        else if (bank.record(i).activation_value != 0.0)
            out.activation[i] = bank.record(i).activation_value;
    }
    if (a0 >= config.propagation_threshold) {
        for (std::size_t pos : seeds)
            oracle_detail::walk(bank, config, is_seed, pos, a0, out);
    }
    return out;
}

}  // namespace chainmind::testing
