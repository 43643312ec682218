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

#include "core/decision.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "core/text_util.hpp"

namespace chainmind {

// ---------------------------------------------------------------------------
// Tally
// ---------------------------------------------------------------------------

ValenceTally tally(const ActivationReport& report, const MemoryBank& bank) {
    ValenceTally out;
    for (const auto& [pos, value] : report.ranked()) {
        const TokenPayload& payload = bank.record(pos).payload;
        if (payload.kind == TokenKind::Reward) {
            out.reward_sum += value;
            out.reward_per_symbol[payload.symbol] += value;
        } else if (payload.kind == TokenKind::Punishment) {
            out.punishment_sum += value;
            out.punishment_per_symbol[payload.symbol] += value;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Path extraction
// ---------------------------------------------------------------------------

namespace {

ExtractedPath path_of_delivery(const ActivationReport& report,
                               std::size_t edge_index) {
    // Walk the causal parent chain back to the seed, then reverse.
    std::vector<PropagationEdge> chain;
    std::int32_t cursor = static_cast<std::int32_t>(edge_index);
    while (cursor >= 0) {
        chain.push_back(report.edges[static_cast<std::size_t>(cursor)]);
        cursor = chain.back().parent;
    }
    std::reverse(chain.begin(), chain.end());

    ExtractedPath path;
    path.records.push_back(chain.front().source);
    path.bottleneck = chain.front().transferred;
    for (const PropagationEdge& edge : chain) {
        path.records.push_back(edge.target);
        path.bottleneck = std::min(path.bottleneck, edge.transferred);
    }
    path.edges = std::move(chain);
    return path;
}

bool path_order(const ExtractedPath& a, const ExtractedPath& b) {
    if (a.bottleneck != b.bottleneck) return a.bottleneck > b.bottleneck;
    if (a.records.size() != b.records.size())
        return a.records.size() < b.records.size();
    return a.records < b.records;
}

}  // namespace

std::vector<ExtractedPath> extract_paths(const ActivationReport& report,
                                         const MemoryBank& bank,
                                         const std::string& valence_symbol,
                                         std::size_t width) {
    std::vector<ExtractedPath> candidates;
    for (std::size_t i = 0; i < report.edges.size(); ++i) {
        std::size_t target = report.edges[i].target;
        if (bank.record(target).payload.symbol != valence_symbol) continue;
        candidates.push_back(path_of_delivery(report, i));
    }
    std::sort(candidates.begin(), candidates.end(), path_order);

    // Keep the strongest delivery per distinct record sequence.
    std::vector<ExtractedPath> out;
    std::set<std::vector<std::size_t>> seen;
    for (ExtractedPath& path : candidates) {
        if (out.size() >= width) break;
        if (seen.insert(path.records).second) out.push_back(std::move(path));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Goal expansion
// ---------------------------------------------------------------------------

namespace {

std::vector<std::size_t> interior_records(const ExtractedPath& path) {
    std::vector<std::size_t> out;
    if (path.records.size() <= 2) return out;
    out.assign(path.records.begin() + 1, path.records.end() - 1);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

GoalNode make_node(std::size_t level, GoalDirection direction,
                   std::string target_symbol, ExtractedPath path,
                   std::vector<std::size_t> visited) {
    GoalNode node;
    node.level = level;
    node.direction = direction;
    node.target_symbol = std::move(target_symbol);
    node.bridges = interior_records(path);
    node.path = std::move(path);
    node.visited = std::move(visited);
    return node;
}

bool all_drive_kind(const MemoryBank& bank,
                    const std::vector<std::size_t>& positions) {
    if (positions.empty()) return false;
    for (std::size_t pos : positions)
        if (bank.record(pos).payload.kind != TokenKind::Drive) return false;
    return true;
}

}  // namespace

std::vector<GoalNode> expand_goal(const MemoryBank& bank, const GoalNode& node,
                                  const Config& config,
                                  ExpansionStats* stats) {
    if (stats) *stats = {};

    // Drive-kind bridges are already executable: nothing left to decompose.
    if (all_drive_kind(bank, node.bridges)) return {};

    std::vector<std::size_t> to_seed;
    for (std::size_t pos : node.bridges) {
        if (!std::binary_search(node.visited.begin(), node.visited.end(), pos))
            to_seed.push_back(pos);
    }
    if (to_seed.empty()) return {};

    // Planning runs on a throwaway copy so stored values never move.
    MemoryBank snapshot = bank;
    ActivationReport expansion = chain_activate(snapshot, to_seed, config);

    std::vector<std::size_t> child_visited = node.visited;
    child_visited.insert(child_visited.end(), to_seed.begin(), to_seed.end());
    std::sort(child_visited.begin(), child_visited.end());
    child_visited.erase(
        std::unique(child_visited.begin(), child_visited.end()),
        child_visited.end());

    // Valence symbols that received activation in this expansion, strongest
    // first.
    std::map<std::string, std::pair<TokenKind, double>> reached;
    for (const auto& [pos, amount] : expansion.received) {
        if (amount <= 0.0) continue;
        const TokenPayload& payload = snapshot.record(pos).payload;
        if (payload.kind != TokenKind::Reward &&
            payload.kind != TokenKind::Punishment)
            continue;
        auto& entry = reached[payload.symbol];
        entry.first = payload.kind;
        entry.second += amount;
        if (stats) {
            if (payload.kind == TokenKind::Reward)
                stats->reward_added += amount;
            else
                stats->punishment_added += amount;
        }
    }

    std::vector<std::pair<std::string, std::pair<TokenKind, double>>> ordered(
        reached.begin(), reached.end());
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        if (a.second.second != b.second.second)
            return a.second.second > b.second.second;
        return a.first < b.first;
    });

    std::vector<GoalNode> children;
    for (const auto& [symbol, info] : ordered) {
        GoalDirection direction = info.first == TokenKind::Reward
                                      ? GoalDirection::Promote
                                      : GoalDirection::Suppress;
        for (ExtractedPath& path :
             extract_paths(expansion, snapshot, symbol, config.path_width)) {
            children.push_back(make_node(node.level + 1, direction, symbol,
                                         std::move(path), child_visited));
        }
    }
    return children;
}

// ---------------------------------------------------------------------------
// Segmented imitation
// ---------------------------------------------------------------------------

namespace {

// Drive records within the proximity window of any stored (non-input) record
// of the leaf's path, in stored order.
std::vector<std::size_t> drive_neighborhood(
    const MemoryBank& bank, const GoalNode& leaf,
    const std::unordered_set<std::size_t>& original_inputs,
    const Config& config) {
    std::set<std::size_t> drives;
    for (std::size_t pos : leaf.path.records) {
        if (original_inputs.count(pos)) continue;
        Tick center = bank.record(pos).record_time;
        auto [lo, hi] = bank.time_window(center, config.proximity_window);
        for (std::size_t i = lo; i < hi; ++i) {
            if (bank.record(i).payload.kind == TokenKind::Drive)
                drives.insert(i);
        }
    }
    return {drives.begin(), drives.end()};
}

void collect_leaves(const std::vector<GoalNode>& nodes,
                    std::vector<const GoalNode*>& out) {
    for (const GoalNode& node : nodes) {
        if (node.children.empty())
            out.push_back(&node);
        else
            collect_leaves(node.children, out);
    }
}

void collect_suppress_path_records(const std::vector<GoalNode>& nodes,
                                   std::unordered_set<std::size_t>& out) {
    for (const GoalNode& node : nodes) {
        if (node.direction == GoalDirection::Suppress)
            out.insert(node.path.records.begin(), node.path.records.end());
        collect_suppress_path_records(node.children, out);
    }
}

}  // namespace

Plan segmented_imitate(const MemoryBank& bank,
                       const std::vector<GoalNode>& roots,
                       const std::vector<std::size_t>& original_inputs,
                       const Config& config) {
    Plan plan;
    std::unordered_set<std::size_t> inputs(original_inputs.begin(),
                                           original_inputs.end());
    std::unordered_set<std::size_t> suppress_records;
    collect_suppress_path_records(roots, suppress_records);

    std::vector<const GoalNode*> leaves;
    collect_leaves(roots, leaves);

    // Distinct segments only; different leaves often converge on the same
    // stored routine.
    std::set<std::vector<std::size_t>> emitted;

    for (const GoalNode* leaf : leaves) {
        std::vector<std::size_t> drives =
            drive_neighborhood(bank, *leaf, inputs, config);
        if (drives.empty()) {
            if (leaf->direction == GoalDirection::Promote)
                ++plan.non_executable_promote_leaves;
            // Suppress goals without stored avoidance: non-action.
            continue;
        }
        if (leaf->direction == GoalDirection::Promote) {
            bool conflicted = false;
            for (std::size_t pos : drives)
                if (suppress_records.count(pos)) conflicted = true;
            if (conflicted) {
                ++plan.dropped_conflicts;
                continue;
            }
        }
        if (!emitted.insert(drives).second) continue;
        // Replay the stored segment: offsets preserved from the first drive.
        Tick base = bank.record(drives.front()).record_time;
        for (std::size_t pos : drives) {
            PlanStep step;
            step.payload = bank.record(pos).payload;
            step.offset = bank.record(pos).record_time - base;
            plan.steps.push_back(std::move(step));
        }
    }
    return plan;
}

// ---------------------------------------------------------------------------
// Decide
// ---------------------------------------------------------------------------

std::string action_to_string(const Action& action) {
    switch (action.kind) {
        case ActionKind::ContinueObserving:
            return "continue-observing";
        case ActionKind::SeekInformation: {
            std::string out = "seek-information targets=";
            for (std::size_t i = 0; i < action.seek_targets.size(); ++i) {
                if (i) out += ',';
                out += action.seek_targets[i];
            }
            return out;
        }
        case ActionKind::Execute: {
            std::string out = "execute plan=";
            for (std::size_t i = 0; i < action.plan.size(); ++i) {
                if (i) out += ',';
                out += action.plan[i].payload.symbol;
                out += "@+";
                out += std::to_string(action.plan[i].offset);
            }
            return out;
        }
    }
    return "continue-observing";
}

namespace {

std::vector<std::string> seek_targets_from(const ActivationReport& report,
                                           const MemoryBank& bank,
                                           const Config& config) {
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    for (const auto& [pos, value] : report.ranked()) {
        (void)value;
        if (report.is_seed(pos)) continue;
        TokenKind kind = bank.record(pos).payload.kind;
        if (kind == TokenKind::Reward || kind == TokenKind::Punishment)
            continue;
        const std::string& symbol = bank.record(pos).payload.symbol;
        if (!seen.insert(symbol).second) continue;
        out.push_back(symbol);
        if (out.size() >= config.path_width) break;
    }
    return out;
}

struct RootTarget {
    std::string symbol;
    GoalDirection direction;
    double activation;
};

}  // namespace

DecisionResult decide(const MemoryBank& bank, const ActivationReport& report,
                      const Config& config) {
    DecisionResult result;
    result.initial_tally = tally(report, bank);
    const ValenceTally& t0 = result.initial_tally;

    std::string trace = "tally reward=" + fmt_g9(t0.reward_sum) +
                        " punishment=" + fmt_g9(t0.punishment_sum) + "\n";

    // (a) Attention gate: nothing salient enough to act on.
    std::vector<RootTarget> targets;
    for (const auto& [symbol, value] : t0.reward_per_symbol)
        if (value > config.reward_threshold)
            targets.push_back({symbol, GoalDirection::Promote, value});
    for (const auto& [symbol, value] : t0.punishment_per_symbol)
        if (value > config.punishment_threshold)
            targets.push_back({symbol, GoalDirection::Suppress, value});
    if (targets.empty()) {
        result.action.kind = ActionKind::ContinueObserving;
        result.trace = trace + "action " + action_to_string(result.action) + "\n";
        return result;
    }

    std::sort(targets.begin(), targets.end(),
              [](const RootTarget& a, const RootTarget& b) {
                  if (a.activation != b.activation)
                      return a.activation > b.activation;
                  return a.symbol < b.symbol;
              });

    // Level-1 goals: strongest paths from the current report to each target.
    std::vector<std::size_t> input_set = report.seeded;
    std::sort(input_set.begin(), input_set.end());
    for (const RootTarget& target : targets) {
        for (ExtractedPath& path : extract_paths(report, bank, target.symbol,
                                                 config.path_width)) {
            result.roots.push_back(make_node(1, target.direction,
                                             target.symbol, std::move(path),
                                             input_set));
        }
        trace += "goal " + std::string(target.direction == GoalDirection::Promote
                                           ? "promote"
                                           : "suppress") +
                 " " + target.symbol + " activation=" +
                 fmt_g9(target.activation) + "\n";
    }

    // (b) Breadth-first expansion until the tally stops moving.
    std::vector<GoalNode*> frontier;
    for (GoalNode& root : result.roots) frontier.push_back(&root);

    for (std::size_t round = 1; round <= config.max_rounds; ++round) {
        result.rounds_used = round;
        double reward_added = 0.0;
        double punishment_added = 0.0;
        std::vector<GoalNode*> next_frontier;
        for (GoalNode* node : frontier) {
            ExpansionStats stats;
            node->children = expand_goal(bank, *node, config, &stats);
            reward_added += stats.reward_added;
            punishment_added += stats.punishment_added;
            for (GoalNode& child : node->children)
                next_frontier.push_back(&child);
            trace += "round " + std::to_string(round) + " expand level" +
                     std::to_string(node->level) + " " + node->target_symbol +
                     " children=" + std::to_string(node->children.size()) +
                     "\n";
        }
        trace += "round " + std::to_string(round) +
                 " delta reward=" + fmt_g9(reward_added) +
                 " punishment=" + fmt_g9(punishment_added) + "\n";
        frontier = std::move(next_frontier);
        if (reward_added + punishment_added < config.convergence_epsilon) {
            result.converged = true;
            break;
        }
    }

    if (!result.converged) {
        result.action.kind = ActionKind::SeekInformation;
        result.action.seek_targets = seek_targets_from(report, bank, config);
        result.trace = trace + "action " + action_to_string(result.action) + "\n";
        return result;
    }

    // Converged: imitate along the best tree (the strongest target symbol).
    const std::string& best_symbol = targets.front().symbol;
    std::vector<GoalNode> best_tree;
    for (const GoalNode& root : result.roots)
        if (root.target_symbol == best_symbol) best_tree.push_back(root);

    Plan plan = segmented_imitate(bank, best_tree, report.seeded, config);
    if (plan.non_executable_promote_leaves == 0 && !plan.steps.empty()) {
        result.action.kind = ActionKind::Execute;
        result.action.plan = std::move(plan.steps);
    } else {
        result.action.kind = ActionKind::SeekInformation;
        result.action.seek_targets = seek_targets_from(report, bank, config);
    }
    result.trace = trace + "action " + action_to_string(result.action) + "\n";
    return result;
}

}  // namespace chainmind
