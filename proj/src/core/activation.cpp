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

#include "core/activation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_set>

#include "core/text_util.hpp"

namespace chainmind {

std::string_view edge_kind_name(EdgeKind kind) {
    switch (kind) {
        case EdgeKind::Similarity: return "similarity";
        case EdgeKind::Proximity: return "proximity";
        case EdgeKind::Seed: return "seed";
    }
    return "similarity";
}

// ---------------------------------------------------------------------------
// Report accessors
// ---------------------------------------------------------------------------

bool ActivationReport::is_seed(std::size_t pos) const {
    return std::find(seeded.begin(), seeded.end(), pos) != seeded.end();
}

double ActivationReport::received_of(std::size_t pos) const {
    auto it = received.find(pos);
    return it == received.end() ? 0.0 : it->second;
}

double ActivationReport::activation_of(std::size_t pos) const {
    if (is_seed(pos)) return a0_used;
    double total = received_of(pos);
    auto it = residual.find(pos);
    if (it != residual.end()) total += it->second;
    return total;
}

std::vector<std::pair<std::size_t, double>> ActivationReport::ranked() const {
    std::vector<std::pair<std::size_t, double>> out;
    std::unordered_set<std::size_t> seen;
    for (std::size_t pos : seeded) {
        if (seen.insert(pos).second) out.emplace_back(pos, activation_of(pos));
    }
    for (const auto& [pos, _] : received) {
        if (seen.insert(pos).second) out.emplace_back(pos, activation_of(pos));
    }
    for (const auto& [pos, value] : residual) {
        if (value != 0.0 && seen.insert(pos).second)
            out.emplace_back(pos, activation_of(pos));
    }
    std::erase_if(out, [](const auto& e) { return e.second == 0.0; });
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return out;
}

std::string ActivationReport::dump(const MemoryBank& bank) const {
    std::string out = "rounds=" + std::to_string(frontier_stats.rounds) +
                      " visited=" + std::to_string(frontier_stats.visited) +
                      "\n";
    for (const auto& [pos, value] : ranked()) {
        out += std::to_string(pos);
        out += '\t';
        out += bank.record(pos).payload.symbol;
        out += '\t';
        out += fmt_g9(value);
        out += '\n';
    }
    for (const PropagationEdge& e : edges) {
        out += std::to_string(e.source);
        out += "->";
        out += std::to_string(e.target);
        out += '\t';
        out += edge_kind_name(e.kind);
        out += '\t';
        out += fmt_g9(e.coefficient);
        out += '\t';
        out += fmt_g9(e.transferred);
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Coefficients
// ---------------------------------------------------------------------------

double memory_gain(double memory_value, const Config& config) {
    return (1.0 + memory_value / config.m_max) / 2.0;
}

double similarity(const TokenPayload& a, const TokenPayload& b) {
    if (a.symbol == b.symbol) return 1.0;
    if (!a.feature || !b.feature) return 0.0;
    if (a.feature->size() != b.feature->size()) return 0.0;
    double dot = 0.0;
    for (std::size_t i = 0; i < a.feature->size(); ++i)
        dot += (*a.feature)[i] * (*b.feature)[i];
    return std::clamp(dot, 0.0, 1.0);
}

double similarity_coefficient(double s, double memory_value,
                              const Config& config) {
    if (s < config.similarity_floor) return 0.0;
    return config.edge_cap * s * memory_gain(memory_value, config);
}

double proximity_coefficient(Tick distance, double memory_value,
                             const Config& config) {
    if (distance < 0 || distance > config.proximity_window) return 0.0;
    double falloff = std::exp2(-static_cast<double>(distance) /
                               static_cast<double>(config.proximity_window));
    return config.edge_cap * falloff * memory_gain(memory_value, config);
}

// ---------------------------------------------------------------------------
// Seeding
// ---------------------------------------------------------------------------

double seed_activation(MemoryBank& bank,
                       const std::vector<std::size_t>& input_positions,
                       const Config& config,
                       const ActivationReport* prior_report) {
    double boost = 0.0;
    if (prior_report) {
        auto [reward, punishment] = valence_activation(*prior_report, bank);
        boost = config.a0_gain * (reward + punishment);
    }
    double a0 = std::min(config.a_max, config.a0_base + boost);
    for (std::size_t pos : input_positions) bank.set_activation_value(pos, a0);
    return a0;
}

// ---------------------------------------------------------------------------
// Propagation
// ---------------------------------------------------------------------------

namespace {

// Records grouped by payload identity so pairwise similarity is computed
// once per distinct payload pair instead of once per record pair. Payload
// identity is (symbol, feature bytes); records of one group are
// interchangeable as similarity targets.
struct SimilarityClasses {
    std::vector<std::size_t> class_of;           // record -> class
    std::vector<const TokenPayload*> exemplar;   // class -> payload
    std::vector<std::vector<std::size_t>> members;

    explicit SimilarityClasses(const MemoryBank& bank) {
        std::unordered_map<std::string, std::size_t> ids;
        class_of.reserve(bank.size());
        for (std::size_t i = 0; i < bank.size(); ++i) {
            const TokenPayload& p = bank.record(i).payload;
            std::string key = p.symbol;
            key += '\x1f';
            if (p.feature)
                key.append(reinterpret_cast<const char*>(p.feature->data()),
                           p.feature->size() * sizeof(double));
            auto [it, inserted] = ids.try_emplace(key, exemplar.size());
            if (inserted) {
                exemplar.push_back(&p);
                members.emplace_back();
            }
            class_of.push_back(it->second);
            members[it->second].push_back(i);
        }
    }
};

struct Receipt {
    std::size_t pos;
    double amount;
    std::int32_t via_edge;  // index into the edge log, -1 for seeds
    std::uint32_t depth;
};

}  // namespace

ActivationReport chain_activate(MemoryBank& bank,
                                const std::vector<std::size_t>& input_positions,
                                const Config& config,
                                const ActivationReport* prior_report) {
    config.validate();

    ActivationReport report;
    for (std::size_t pos : input_positions) {
        if (pos >= bank.size())
            fail(ErrorCode::InvalidArgument,
                 "input position " + std::to_string(pos) + " out of range");
        if (!report.is_seed(pos)) report.seeded.push_back(pos);
    }

    // Residual salience left over from earlier inputs, before seeding.
    for (std::size_t i = 0; i < bank.size(); ++i) {
        double a = bank.record(i).activation_value;
        if (a != 0.0) report.residual.emplace(i, a);
    }
    for (std::size_t pos : report.seeded) report.residual.erase(pos);

    report.a0_used = seed_activation(bank, report.seeded, config, prior_report);

    if (report.seeded.empty()) {
        report.bank_version = bank.version();
        return report;
    }

    std::vector<bool> is_seed(bank.size(), false);
    for (std::size_t pos : report.seeded) is_seed[pos] = true;

    SimilarityClasses classes(bank);
    // Lazily computed per source class: all (class, similarity) pairs at or
    // above the floor, excluding the source class itself.
    std::unordered_map<std::size_t, std::vector<std::pair<std::size_t, double>>>
        class_neighbors;

    auto neighbors_of_class =
        [&](std::size_t cls) -> const std::vector<std::pair<std::size_t, double>>& {
        auto it = class_neighbors.find(cls);
        if (it != class_neighbors.end()) return it->second;
        std::vector<std::pair<std::size_t, double>> out;
        const TokenPayload& src = *classes.exemplar[cls];
        for (std::size_t other = 0; other < classes.exemplar.size(); ++other) {
            if (other == cls) continue;
            double s = similarity(src, *classes.exemplar[other]);
            if (s >= config.similarity_floor) out.emplace_back(other, s);
        }
        return class_neighbors.emplace(cls, std::move(out)).first->second;
    };

    std::unordered_set<std::size_t> visited(report.seeded.begin(),
                                            report.seeded.end());

    std::deque<Receipt> queue;
    if (report.a0_used >= config.propagation_threshold) {
        for (std::size_t pos : report.seeded)
            queue.push_back({pos, report.a0_used, -1, 0});
    }

    auto deliver = [&](std::size_t src, std::size_t dst, EdgeKind kind,
                       double coeff, double amount, std::int32_t parent,
                       std::uint32_t depth) {
        PropagationEdge edge;
        edge.source = static_cast<std::uint32_t>(src);
        edge.target = static_cast<std::uint32_t>(dst);
        edge.kind = kind;
        edge.coefficient = coeff;
        edge.transferred = amount;
        edge.parent = parent;
        edge.depth = depth;
        std::int32_t edge_index = static_cast<std::int32_t>(report.edges.size());
        report.edges.push_back(edge);
        report.received[dst] += amount;
        visited.insert(dst);
        report.frontier_stats.rounds =
            std::max<std::size_t>(report.frontier_stats.rounds, depth);
        queue.push_back({dst, amount, edge_index, depth});
    };

    while (!queue.empty()) {
        Receipt receipt = queue.front();
        queue.pop_front();
        const TokenRecord& src = bank.record(receipt.pos);
        std::uint32_t next_depth = receipt.depth + 1;

        // Similarity relations: same payload class first, then every class
        // above the floor. Targets are enumerated in ascending record
        // position within each class, seeds and the source itself excluded.
        std::size_t cls = classes.class_of[receipt.pos];
        auto send_similarity = [&](const std::vector<std::size_t>& targets,
                                   double s) {
            for (std::size_t dst : targets) {
                if (dst == receipt.pos || is_seed[dst]) continue;
                double coeff = similarity_coefficient(
                    s, bank.record(dst).memory_value, config);
                double amount = coeff * receipt.amount;
                if (amount < config.propagation_threshold) continue;
                deliver(receipt.pos, dst, EdgeKind::Similarity, coeff, amount,
                        receipt.via_edge, next_depth);
            }
        };
        send_similarity(classes.members[cls], 1.0);
        for (const auto& [other, s] : neighbors_of_class(cls)) {
            // Identical symbols in a different class (distinct vectors) are
            // already captured by similarity() returning 1 via the symbol
            // check inside the pair computation.
            send_similarity(classes.members[other], s);
        }

        // Proximity relations: every record within the tick window.
        auto [lo, hi] =
            bank.time_window(src.record_time, config.proximity_window);
        for (std::size_t dst = lo; dst < hi; ++dst) {
            if (dst == receipt.pos || is_seed[dst]) continue;
            Tick d = bank.record(dst).record_time - src.record_time;
            if (d < 0) d = -d;
            double coeff = proximity_coefficient(
                d, bank.record(dst).memory_value, config);
            double amount = coeff * receipt.amount;
            if (amount < config.propagation_threshold) continue;
            deliver(receipt.pos, dst, EdgeKind::Proximity, coeff, amount,
                    receipt.via_edge, next_depth);
        }
    }

    report.frontier_stats.visited = visited.size();

    // Write the result back into the bank's activation column, capped.
    for (const auto& [pos, _] : report.received)
        bank.set_activation_value(pos, report.activation_of(pos));
    bank.bump_version();
    report.bank_version = bank.version();
    return report;
}

void decay_activations(MemoryBank& bank, Tick dt, const Config& config) {
    if (dt < 0) fail(ErrorCode::InvalidArgument, "dt must be >= 0");
    if (dt == 0) return;
    double factor = std::exp2(-static_cast<double>(dt) /
                              config.half_life_activation);
    double floor = config.propagation_threshold / 10.0;
    for (std::size_t i = 0; i < bank.size(); ++i) {
        double a = bank.record(i).activation_value * factor;
        if (a < floor) a = 0.0;
        bank.set_activation_value(i, a);
    }
    bank.bump_version();
}

std::pair<double, double> valence_activation(const ActivationReport& report,
                                             const MemoryBank& bank) {
    double reward = 0.0;
    double punishment = 0.0;
    for (const auto& [pos, value] : report.ranked()) {
        TokenKind kind = bank.record(pos).payload.kind;
        if (kind == TokenKind::Reward) reward += value;
        if (kind == TokenKind::Punishment) punishment += value;
    }
    return {reward, punishment};
}

}  // namespace chainmind
