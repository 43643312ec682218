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
#include <unordered_map>
#include <vector>

#include "core/config.hpp"
#include "core/memory_bank.hpp"
#include "core/types.hpp"

namespace chainmind {

// ============================================================================
// Chain activation: spreading of salience from input records through the
// bank along similarity and temporal-proximity relations.
//
// Semantics: every delivered transfer is a receipt; a record that receives
// amount x retransmits coefficient(target) * x along each outgoing relation,
// once per receipt. Transfers below the propagation threshold are dropped
// undelivered. Amounts accumulate additively, so the final activation of a
// record equals the sum over all surviving transfer walks from the seeds.
// Termination is structural: every coefficient is capped below 1, so walk
// amounts shrink geometrically and die at the threshold.
//
// Seeded input records are transfer sources only, never targets; their
// activation is exactly the seeding value A0.
// ============================================================================

enum class EdgeKind : std::uint8_t { Similarity, Proximity, Seed };

std::string_view edge_kind_name(EdgeKind kind);

// One delivered transfer. `parent` indexes the delivery that fed the source
// record (-1 when the source is a seed), which makes every delivery the tip
// of a unique transfer walk - the raw material for path extraction.
struct PropagationEdge {
    std::uint32_t source = 0;
    std::uint32_t target = 0;
    EdgeKind kind = EdgeKind::Similarity;
    double coefficient = 0.0;
    double transferred = 0.0;
    std::int32_t parent = -1;
    std::uint32_t depth = 1;
};

struct FrontierStats {
    std::size_t rounds = 0;   // deepest walk that survived
    std::size_t visited = 0;  // seeds plus distinct records reached
};

class ActivationReport {
public:
    std::vector<std::size_t> seeded;
    double a0_used = 0.0;
    std::vector<PropagationEdge> edges;
    FrontierStats frontier_stats;
    std::uint64_t bank_version = 0;

    // Activation accounting per record:
    //   seeded records:     exactly a0_used
    //   everything else:    pre-existing residual + sum of delivered transfers
    [[nodiscard]] double activation_of(std::size_t pos) const;
    [[nodiscard]] double received_of(std::size_t pos) const;
    [[nodiscard]] bool is_seed(std::size_t pos) const;

    // Positions with nonzero activation, sorted by activation descending,
    // ties by position ascending.
    [[nodiscard]] std::vector<std::pair<std::size_t, double>> ranked() const;

    // Dump format: header line with round/visited counts, one
    // `<position>\t<symbol>\t<activation>` line per active record sorted
    // descending, then the edge log as `<src>-><dst>\t<kind>\t<coeff>\t<transferred>`.
    [[nodiscard]] std::string dump(const MemoryBank& bank) const;

    std::unordered_map<std::size_t, double> received;
    std::unordered_map<std::size_t, double> residual;
};

// ---------------------------------------------------------------------------
// Transfer coefficients
// ---------------------------------------------------------------------------

// Shared memory-value gain g(m) = (1 + m/m_max) / 2, in [1/2, 1].
double memory_gain(double memory_value, const Config& config);

// Payload resemblance in [0, 1]: identical symbols count 1, otherwise the
// clamped dot product of the feature vectors (0 when either is absent).
double similarity(const TokenPayload& a, const TokenPayload& b);

// cap * s * g(m), zero below the similarity floor. Strictly increasing in
// both arguments above the floor; never exceeds the cap.
double similarity_coefficient(double s, double memory_value,
                              const Config& config);

// cap * 2^(-d/W) * g(m) for d <= W, zero beyond the window. Strictly
// decreasing in distance, strictly increasing in memory value.
double proximity_coefficient(Tick distance, double memory_value,
                             const Config& config);

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

// Computes A0 = min(a_max, a0_base + a0_gain * (prior reward activation +
// prior punishment activation)) and sets each input record's activation to
// it. Without a prior report A0 is just a0_base.
double seed_activation(MemoryBank& bank,
                       const std::vector<std::size_t>& input_positions,
                       const Config& config,
                       const ActivationReport* prior_report = nullptr);

// Seeds the inputs and runs the full propagation. The report's activations
// are written back to the bank's activation column, capped at a_max.
// Deterministic: a fixed traversal and accumulation order makes identical
// bank + config + inputs produce bit-identical reports.
ActivationReport chain_activate(MemoryBank& bank,
                                const std::vector<std::size_t>& input_positions,
                                const Config& config,
                                const ActivationReport* prior_report = nullptr);

// Multiplies every stored activation by 2^(-dt / half_life_activation) and
// clamps values below propagation_threshold / 10 to exactly zero.
void decay_activations(MemoryBank& bank, Tick dt, const Config& config);

// Sum of report activation over reward-kind / punishment-kind records.
std::pair<double, double> valence_activation(const ActivationReport& report,
                                             const MemoryBank& bank);

}  // namespace chainmind
