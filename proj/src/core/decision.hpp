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

#include <map>
#include <string>
#include <vector>

#include "core/activation.hpp"
#include "core/config.hpp"
#include "core/memory_bank.hpp"

namespace chainmind {

// ============================================================================
// Seek-benefit-avoid-harm decision making over activation reports.
//
// The decision layer is read-only with respect to the bank: goal expansion
// re-seeds candidate records on snapshots, so planning never changes stored
// memory or activation values.
// ============================================================================

struct ValenceTally {
    double reward_sum = 0.0;
    double punishment_sum = 0.0;
    // Per-symbol summed activation, split by kind.
    std::map<std::string, double> reward_per_symbol;
    std::map<std::string, double> punishment_per_symbol;
};

ValenceTally tally(const ActivationReport& report, const MemoryBank& bank);

// One transfer chain from a seed to a valence record, scored by its weakest
// transfer (bottleneck). Ties prefer shorter chains, then lower positions.
struct ExtractedPath {
    std::vector<std::size_t> records;     // seed first, valence target last
    std::vector<PropagationEdge> edges;   // records.size() - 1 hops
    double bottleneck = 0.0;
};

// Backtracks the report's delivery log from every record of the valence
// symbol toward the seeds and returns the strongest `width` distinct paths.
// Unreachable symbols yield an empty set.
std::vector<ExtractedPath> extract_paths(const ActivationReport& report,
                                         const MemoryBank& bank,
                                         const std::string& valence_symbol,
                                         std::size_t width);

enum class GoalDirection { Promote, Suppress };

struct GoalNode {
    std::size_t level = 1;
    GoalDirection direction = GoalDirection::Promote;
    std::string target_symbol;
    ExtractedPath path;
    // Interior records of the path (neither seed nor valence target): the
    // candidate bridge tokens the next level re-seeds.
    std::vector<std::size_t> bridges;
    // Records seeded by this node's ancestors (and the original inputs);
    // they are never re-seeded, which prevents oscillation.
    std::vector<std::size_t> visited;
    std::vector<GoalNode> children;
};

struct ExpansionStats {
    double reward_added = 0.0;
    double punishment_added = 0.0;
};

// Re-seeds the node's unvisited bridge records on a snapshot of the bank,
// runs chain activation there, and returns one child per extracted path to
// a valence symbol that received activation. Leaf cases (no unvisited
// bridges, drive-kind bridges, nothing reached) return no children.
std::vector<GoalNode> expand_goal(const MemoryBank& bank, const GoalNode& node,
                                  const Config& config,
                                  ExpansionStats* stats = nullptr);

// ---------------------------------------------------------------------------
// Actions and plans
// ---------------------------------------------------------------------------

struct PlanStep {
    TokenPayload payload;  // always drive-kind
    Tick offset = 0;       // ticks from the start of its segment
};

struct Plan {
    std::vector<PlanStep> steps;
    std::size_t non_executable_promote_leaves = 0;
    std::size_t dropped_conflicts = 0;
};

enum class ActionKind { ContinueObserving, SeekInformation, Execute };

struct Action {
    ActionKind kind = ActionKind::ContinueObserving;
    std::vector<std::string> seek_targets;  // SeekInformation only
    std::vector<PlanStep> plan;             // Execute only
};

std::string action_to_string(const Action& action);

// Walks the tree's leaves in order and replays the stored temporal
// neighborhood of each leaf's drive records (drive payloads within the
// proximity window of the leaf's stored path records, stored order, tick
// offsets preserved). Promote leaves without any drive neighborhood are
// counted non-executable; suppress leaves without one are omitted
// (suppression by non-action); promote leaves whose drives sit on a
// suppress path are dropped.
Plan segmented_imitate(const MemoryBank& bank,
                       const std::vector<GoalNode>& roots,
                       const std::vector<std::size_t>& original_inputs,
                       const Config& config);

struct DecisionResult {
    Action action;
    ValenceTally initial_tally;
    std::vector<GoalNode> roots;
    std::size_t rounds_used = 0;
    bool converged = false;
    std::string trace;  // per round: tallies, expanded nodes, final action
};

// The single decision procedure:
//  (a) nothing salient (no reward symbol above the reward threshold, no
//      punishment symbol above the punishment threshold): keep observing;
//  (b) otherwise expand goals breadth-first until the tally change falls
//      under convergence_epsilon, then execute the assembled plan when the
//      best tree's leaves are executable;
//  (c) fall back to seeking the strongest not-yet-seen symbols when rounds
//      run out or leaves cannot be executed.
DecisionResult decide(const MemoryBank& bank, const ActivationReport& report,
                      const Config& config);

}  // namespace chainmind
