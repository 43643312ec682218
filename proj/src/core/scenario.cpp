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

#include "core/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

#include "core/plasticity.hpp"
#include "core/text_util.hpp"

namespace chainmind {

// ---------------------------------------------------------------------------
// Script parsing
// ---------------------------------------------------------------------------

namespace {

ActionKind parse_action_word(const std::string& word, std::size_t line_no) {
    if (word == "continue") return ActionKind::ContinueObserving;
    if (word == "seek") return ActionKind::SeekInformation;
    if (word == "execute") return ActionKind::Execute;
    fail(ErrorCode::Parse,
         "script line " + std::to_string(line_no) +
             ": expected continue|seek|execute, got '" + word + "'");
}

void parse_directive(ScenarioScript& script, const std::string& body,
                     std::size_t line_no) {
    std::vector<std::string> words = split_whitespace(body);
    if (words.empty())
        fail(ErrorCode::Parse,
             "script line " + std::to_string(line_no) + ": empty directive");

    if (words[0] == "config") {
        if (words.size() != 2 || words[1].find('=') == std::string::npos)
            fail(ErrorCode::Parse, "script line " + std::to_string(line_no) +
                                       ": expected config <key>=<value>");
        size_t eq = words[1].find('=');
        script.config_overrides.emplace_back(words[1].substr(0, eq),
                                             words[1].substr(eq + 1));
        return;
    }
    if (words[0] == "innate") {
        size_t cut = body.find("innate") + std::string("innate").size();
        script.innate_text += trim(body.substr(cut));
        script.innate_text += '\n';
        return;
    }
    if (words[0] == "assert") {
        if (words.size() < 2)
            fail(ErrorCode::Parse, "script line " + std::to_string(line_no) +
                                       ": empty assertion");
        ScriptAssertion assertion;
        assertion.source = trim(body);
        const std::string& what = words[1];
        if (what == "final-action" && words.size() == 3) {
            assertion.kind = ScriptAssertion::Kind::FinalAction;
            assertion.action = parse_action_word(words[2], line_no);
        } else if (what == "all-actions" && words.size() == 3) {
            assertion.kind = ScriptAssertion::Kind::AllActions;
            assertion.action = parse_action_word(words[2], line_no);
        } else if (what == "action-at" && words.size() == 4) {
            assertion.kind = ScriptAssertion::Kind::ActionAt;
            try {
                assertion.at = std::stoll(words[2]);
            } catch (const std::exception&) {
                fail(ErrorCode::Parse, "script line " +
                                           std::to_string(line_no) +
                                           ": invalid tick");
            }
            assertion.action = parse_action_word(words[3], line_no);
        } else if (what == "plan-contains" && words.size() == 3) {
            assertion.kind = ScriptAssertion::Kind::PlanContains;
            assertion.symbol = words[2];
        } else if (what == "memory-order" && words.size() == 3) {
            assertion.kind = ScriptAssertion::Kind::MemoryOrder;
            for (const std::string& group : split(words[2], '|')) {
                if (group == "*") {
                    assertion.rest_group = true;
                } else {
                    assertion.groups.push_back(split(group, ','));
                }
            }
            if (assertion.groups.empty())
                fail(ErrorCode::Parse, "script line " +
                                           std::to_string(line_no) +
                                           ": memory-order needs groups");
        } else {
            fail(ErrorCode::Parse, "script line " + std::to_string(line_no) +
                                       ": unknown assertion '" + what + "'");
        }
        script.assertions.push_back(std::move(assertion));
        return;
    }
    fail(ErrorCode::Parse, "script line " + std::to_string(line_no) +
                               ": unknown directive '" + words[0] + "'");
}

}  // namespace

ScenarioScript ScenarioScript::parse_text(const std::string& text) {
    ScenarioScript script;
    std::size_t line_no = 0;
    for (const std::string& raw : split(text, '\n')) {
        ++line_no;
        std::string line = trim(raw);
        if (line.empty()) continue;
        if (line.rfind("#!", 0) == 0) {
            parse_directive(script, line.substr(2), line_no);
            continue;
        }
        if (line[0] == '#') continue;
        for (InputEvent& event : parse_event_line(line, line_no)) {
            if (!script.events.empty() &&
                event.event_time < script.events.back().event_time)
                fail(ErrorCode::Parse,
                     "script line " + std::to_string(line_no) +
                         ": events must be time-ordered");
            script.events.push_back(std::move(event));
        }
    }
    return script;
}

ScenarioScript ScenarioScript::parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::Io, "cannot open script file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str());
}

// ---------------------------------------------------------------------------
// Session
// ---------------------------------------------------------------------------

Session::Session(Config config) : config_(std::move(config)), bank_(config_) {
    config_.validate();
}

void Session::install_innate_text(const std::string& text) {
    InnateRegistry incoming = InnateRegistry::parse_text(text);
    install(bank_, incoming, config_);
    for (const NeedSpec& need : incoming.needs()) registry_.add(need);
    for (const GestureSpec& gesture : incoming.gestures())
        registry_.add(gesture);
    prior_report_.reset();
}

void Session::replace_bank(MemoryBank bank) {
    if (bank.dim() != config_.feature_dim)
        fail(ErrorCode::Dimension,
             "bank dimension " + std::to_string(bank.dim()) +
                 " does not match session dimension " +
                 std::to_string(config_.feature_dim));
    bank_ = std::move(bank);
    prior_report_.reset();
    last_group_tick_.reset();
}

void Session::load_bank(const std::string& path) {
    replace_bank(MemoryBank::load_file(path));
}

void Session::save_bank(const std::string& path) const {
    bank_.save_file(path);
}

namespace {

int channel_rank(const std::string& channel) {
    // Overview channels first, detail (text) after.
    if (channel == "env") return 0;
    if (channel == "vital") return 1;
    if (channel == "gesture") return 2;
    if (channel == "text") return 3;
    return 4;
}

}  // namespace

TurnResult Session::run_turn(const std::vector<InputEvent>& events) {
    if (events.empty())
        fail(ErrorCode::InvalidArgument, "turn needs at least one event");
    Tick tick = events.front().event_time;
    for (const InputEvent& event : events)
        if (event.event_time != tick)
            fail(ErrorCode::InvalidArgument,
                 "one turn takes one event group (equal ticks)");

    // Fade across the gap since the previous group.
    if (last_group_tick_) {
        Tick dt = tick - *last_group_tick_;
        if (dt < 0)
            fail(ErrorCode::Ordering, "turn at t=" + std::to_string(tick) +
                                          " precedes the previous turn");
        if (dt > 0) {
            decay_activations(bank_, dt, config_);
            forget(bank_, dt, config_);
            transcript_ += "decay dt=" + std::to_string(dt) + "\n";
        }
    }

    std::vector<InputEvent> ordered = events;
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const InputEvent& a, const InputEvent& b) {
                         return channel_rank(a.channel) < channel_rank(b.channel);
                     });

    // Tokenize, then append: simultaneous non-text tokens at the group tick,
    // text sequences spaced one tick apart after it.
    std::size_t payload_count = 0;
    std::vector<std::size_t> inputs;
    Tick text_cursor = tick;
    std::string tokenize_line;
    for (const InputEvent& event : ordered) {
        std::vector<TokenPayload> payloads =
            tokenize_event(event, registry_, config_);
        payload_count += payloads.size();
        if (payloads.empty()) continue;
        std::vector<std::size_t> positions;
        if (event.channel == "text") {
            positions = bank_.append(payloads, text_cursor, 1);
            text_cursor += static_cast<Tick>(payloads.size());
        } else {
            positions = bank_.append(payloads, tick, 0);
        }
        inputs.insert(inputs.end(), positions.begin(), positions.end());
    }
    if (trace_) {
        transcript_ += "tokenize tick=" + std::to_string(tick) +
                       " events=" + std::to_string(events.size()) +
                       " payloads=" + std::to_string(payload_count) + "\n";
        transcript_ += "append count=" + std::to_string(inputs.size()) + "\n";
    }

    ActivationReport report = chain_activate(
        bank_, inputs, config_, prior_report_ ? &*prior_report_ : nullptr);
    if (trace_) {
        transcript_ += "seed a0=" + fmt_g9(report.a0_used) + "\n";
        transcript_ +=
            "activate rounds=" + std::to_string(report.frontier_stats.rounds) +
            " visited=" + std::to_string(report.frontier_stats.visited) +
            " edges=" + std::to_string(report.edges.size()) + "\n";
    }
    if (dump_report_) transcript_ += report.dump(bank_);

    DecisionResult decision = decide(bank_, report, config_);
    std::size_t updated = reinforce(bank_, report, config_);

    TurnResult result;
    result.tick = tick;
    result.input_count = inputs.size();
    result.a0 = report.a0_used;
    result.tally = decision.initial_tally;
    result.action = decision.action;
    result.reinforced = updated;
    result.stats = report.frontier_stats;
    result.edge_count = report.edges.size();

    transcript_ += "turn tick=" + std::to_string(tick) +
                   " inputs=" + std::to_string(result.input_count) +
                   " a0=" + fmt_g9(result.a0) +
                   " rounds=" + std::to_string(result.stats.rounds) +
                   " visited=" + std::to_string(result.stats.visited) +
                   " edges=" + std::to_string(result.edge_count) + "\n";
    transcript_ += "tally reward=" + fmt_g9(result.tally.reward_sum) +
                   " punishment=" + fmt_g9(result.tally.punishment_sum) + "\n";
    if (trace_) transcript_ += decision.trace;
    transcript_ += "action " + action_to_string(result.action) + "\n";
    if (trace_)
        transcript_ += "reinforce updated=" + std::to_string(updated) + "\n";

    prior_report_ = std::move(report);
    last_group_tick_ = tick;
    turns_.push_back(result);
    return result;
}

TurnResult Session::turn_text(const std::string& line) {
    Tick tick = 0;
    if (!bank_.empty()) tick = bank_.last_time() + config_.turn_gap;
    if (last_group_tick_ && tick <= *last_group_tick_)
        tick = *last_group_tick_ + config_.turn_gap;
    InputEvent event;
    event.event_time = tick;
    event.channel = "text";
    event.content = line;
    return run_turn({event});
}

std::string Session::stats_text() const {
    std::size_t nonzero_memory = 0;
    std::map<std::string, std::size_t> kinds;
    for (const TokenRecord& record : bank_.records()) {
        if (record.memory_value > 0.0) ++nonzero_memory;
        ++kinds[std::string(kind_name(record.payload.kind))];
    }
    std::string out = "records=" + std::to_string(bank_.size()) +
                      " nonzero-memory=" + std::to_string(nonzero_memory) +
                      "\nkinds";
    static const char* kOrder[] = {"ordinary", "need",    "reward",
                                   "punishment", "emotion", "drive"};
    for (const char* kind : kOrder) {
        auto it = kinds.find(kind);
        out += std::string(" ") + kind + "=" +
               std::to_string(it == kinds.end() ? 0 : it->second);
    }
    out += "\n";
    return out;
}

std::vector<std::pair<std::string, double>> Session::memory_ranking() const {
    std::map<std::string, double> peak;
    for (const TokenRecord& record : bank_.records()) {
        double& slot = peak[record.payload.symbol];
        slot = std::max(slot, record.memory_value);
    }
    std::vector<std::pair<std::string, double>> out(peak.begin(), peak.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return out;
}

std::vector<std::pair<std::string, double>> Session::expectation_symbols()
    const {
    std::map<std::string, double> summed;
    if (prior_report_) {
        for (const auto& [pos, value] : prior_report_->ranked())
            summed[bank_.record(pos).payload.symbol] += value;
    }
    std::vector<std::pair<std::string, double>> out(summed.begin(),
                                                    summed.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Scenario runner
// ---------------------------------------------------------------------------

namespace {

std::string action_kind_word(ActionKind kind) {
    switch (kind) {
        case ActionKind::ContinueObserving: return "continue";
        case ActionKind::SeekInformation: return "seek";
        case ActionKind::Execute: return "execute";
    }
    return "continue";
}

void evaluate_assertions(const ScenarioScript& script, Session& session,
                         ScenarioOutcome& outcome) {
    const std::vector<TurnResult>& turns = session.turns();
    for (const ScriptAssertion& assertion : script.assertions) {
        std::string failure;
        switch (assertion.kind) {
            case ScriptAssertion::Kind::FinalAction: {
                if (turns.empty())
                    failure = "no turns ran";
                else if (turns.back().action.kind != assertion.action)
                    failure = "final action was " +
                              action_kind_word(turns.back().action.kind);
                break;
            }
            case ScriptAssertion::Kind::AllActions: {
                for (const TurnResult& turn : turns) {
                    if (turn.action.kind != assertion.action) {
                        failure = "turn t=" + std::to_string(turn.tick) +
                                  " action was " +
                                  action_kind_word(turn.action.kind);
                        break;
                    }
                }
                break;
            }
            case ScriptAssertion::Kind::ActionAt: {
                bool found = false;
                for (const TurnResult& turn : turns) {
                    if (turn.tick != assertion.at) continue;
                    found = true;
                    if (turn.action.kind != assertion.action)
                        failure = "action at t=" + std::to_string(turn.tick) +
                                  " was " + action_kind_word(turn.action.kind);
                }
                if (!found) failure = "no turn at that tick";
                break;
            }
            case ScriptAssertion::Kind::PlanContains: {
                if (turns.empty() ||
                    turns.back().action.kind != ActionKind::Execute) {
                    failure = "final action is not execute";
                    break;
                }
                bool found = false;
                for (const PlanStep& step : turns.back().action.plan)
                    if (step.payload.symbol == assertion.symbol) found = true;
                if (!found)
                    failure = "plan lacks symbol '" + assertion.symbol + "'";
                break;
            }
            case ScriptAssertion::Kind::MemoryOrder: {
                std::map<std::string, double> peak;
                for (const auto& [symbol, value] : session.memory_ranking())
                    peak[symbol] = value;
                std::unordered_set<std::string> named;
                for (const auto& group : assertion.groups)
                    for (const std::string& symbol : group)
                        named.insert(symbol);
                std::vector<double> group_min;
                std::vector<double> group_max;
                for (const auto& group : assertion.groups) {
                    double lo = 1e300, hi = -1e300;
                    for (const std::string& symbol : group) {
                        auto it = peak.find(symbol);
                        if (it == peak.end()) {
                            failure = "symbol '" + symbol + "' not in bank";
                            break;
                        }
                        lo = std::min(lo, it->second);
                        hi = std::max(hi, it->second);
                    }
                    if (!failure.empty()) break;
                    group_min.push_back(lo);
                    group_max.push_back(hi);
                }
                if (!failure.empty()) break;
                for (std::size_t i = 0; i + 1 < group_min.size(); ++i) {
                    if (!(group_min[i] > group_max[i + 1])) {
                        failure = "group " + std::to_string(i + 1) +
                                  " does not dominate group " +
                                  std::to_string(i + 2);
                        break;
                    }
                }
                if (failure.empty() && assertion.rest_group) {
                    double rest_max = -1e300;
                    for (const auto& [symbol, value] : peak)
                        if (!named.count(symbol))
                            rest_max = std::max(rest_max, value);
                    if (rest_max > -1e300 && !(group_min.back() > rest_max))
                        failure = "last group does not dominate the rest";
                }
                break;
            }
        }
        if (failure.empty()) {
            outcome.transcript += "assert ok " + assertion.source + "\n";
        } else {
            outcome.assertions_ok = false;
            outcome.failures.push_back(assertion.source + ": " + failure);
            outcome.transcript +=
                "assert FAIL " + assertion.source + ": " + failure + "\n";
        }
    }
}

}  // namespace

ScenarioOutcome run_scenario(const ScenarioScript& script, const Config& base,
                             Session* session_out, bool trace,
                             bool dump_report,
                             std::optional<MemoryBank> initial_bank,
                             const InnateRegistry* initial_registry) {
    Config config = base;
    for (const auto& [key, value] : script.config_overrides)
        config.set(key, value);
    config.validate();

    Session session(config);
    session.set_trace(trace);
    session.set_dump_report(dump_report);
    if (initial_bank) session.replace_bank(std::move(*initial_bank));
    if (initial_registry) session.adopt_registry(*initial_registry);
    if (!script.innate_text.empty())
        session.install_innate_text(script.innate_text);

    // Group events by tick; each group is one turn.
    std::size_t i = 0;
    while (i < script.events.size()) {
        std::size_t j = i;
        while (j < script.events.size() &&
               script.events[j].event_time == script.events[i].event_time)
            ++j;
        session.run_turn({script.events.begin() + i, script.events.begin() + j});
        i = j;
    }

    ScenarioOutcome outcome;

    // Final summary: bank stats plus the strongest consolidated symbols.
    // An empty script leaves both the transcript and the bank untouched.
    if (!script.events.empty() || !script.innate_text.empty()) {
        session.append_transcript("final " + session.stats_text());
        std::size_t shown = 0;
        for (const auto& [symbol, value] : session.memory_ranking()) {
            if (value <= 0.0 || shown >= 10) break;
            session.append_transcript("memory " + symbol + " " +
                                      fmt_g9(value) + "\n");
            ++shown;
        }
    }

    outcome.transcript = session.transcript();
    evaluate_assertions(script, session, outcome);
    if (session_out) *session_out = std::move(session);
    return outcome;
}

// ---------------------------------------------------------------------------
// Demos
// ---------------------------------------------------------------------------

namespace {

const std::string kWorldPeaceScript = R"(# Two sentences that share token groups; the shared groups consolidate
# strongest, the group adjacent to them second.
#! config text_granularity=character
0	text	我们希望世界和平
9	text	和平让我们的世界更美好
#! assert all-actions continue
#! assert memory-order 和,平|世,界|*
)";

const std::string kChargingScript = R"(# A stored low-battery episode: the charge routine followed by relief.
# When the battery drops again, the engine replays the stored routine.
#! config edge_cap=0.7
#! config propagation_threshold=6
#! innate need hungry battery <20 hungry-emotion punishment 240
20	vital	battery=12
22	env	drive:lie_down
23	env	drive:plug_in
24	env	drive:charge
25	vital	battery=95
26	env	reward:relief
55	vital	battery=80
75	vital	battery=12
#! assert action-at 55 continue
#! assert final-action execute
#! assert plan-contains drive:charge
)";

const std::string kHotelScript = R"(# Small talk on a fresh bank: nothing crosses the valence thresholds, so
# the engine keeps observing.
10	text	hello there
14	text	nice room isn't it
18	text	the weather is lovely today
22	text	do you serve breakfast here
26	text	thank you very much
#! assert all-actions continue
)";

}  // namespace

const std::string& demo_script(const std::string& name) {
    if (name == "world-peace") return kWorldPeaceScript;
    if (name == "charging") return kChargingScript;
    if (name == "hotel") return kHotelScript;
    fail(ErrorCode::NotFound,
         "unknown demo '" + name + "' (world-peace|charging|hotel)");
}

std::vector<std::string> demo_names() {
    return {"world-peace", "charging", "hotel"};
}

}  // namespace chainmind
