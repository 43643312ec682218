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

#define CHAINMIND_BUILD
#include "chainmind/chainmind.h"

#include <cstring>
#include <new>
#include <string>

#include "core/config.hpp"
#include "core/memory_bank.hpp"
#include "core/scenario.hpp"
#include "core/text_util.hpp"

using namespace chainmind;

struct cm_config {
    Config value;
};

struct cm_bank {
    MemoryBank value;
};

struct cm_session {
    Session value;
};

namespace {

thread_local std::string g_last_error = "ok";

cm_status code_to_status(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return CM_ERR_INVALID_ARGUMENT;
        case ErrorCode::Parse: return CM_ERR_PARSE;
        case ErrorCode::Io: return CM_ERR_IO;
        case ErrorCode::Dimension: return CM_ERR_DIMENSION;
        case ErrorCode::Ordering: return CM_ERR_ORDERING;
        case ErrorCode::Duplicate: return CM_ERR_DUPLICATE;
        case ErrorCode::StaleReport: return CM_ERR_STALE_REPORT;
        case ErrorCode::Assertion: return CM_ERR_ASSERTION;
        case ErrorCode::NotFound: return CM_ERR_NOT_FOUND;
        case ErrorCode::Internal: return CM_ERR_INTERNAL;
    }
    return CM_ERR_INTERNAL;
}

cm_status fail_status(cm_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

// Runs `body` and maps engine exceptions onto status codes.
template <typename Fn>
cm_status guarded(Fn&& body) {
    try {
        return body();
    } catch (const Error& error) {
        return fail_status(code_to_status(error.code()), error.what());
    } catch (const std::bad_alloc&) {
        return fail_status(CM_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& error) {
        return fail_status(CM_ERR_INTERNAL, error.what());
    }
}

char* copy_string(const std::string& text) {
    char* out = static_cast<char*>(::malloc(text.size() + 1));
    if (!out) return nullptr;
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

cm_status set_out_string(const std::string& text, char** out) {
    if (!out) return fail_status(CM_ERR_INVALID_ARGUMENT, "null out pointer");
    *out = copy_string(text);
    if (!*out) return fail_status(CM_ERR_INTERNAL, "out of memory");
    return CM_OK;
}

cm_status require(bool ok, const char* what) {
    if (ok) return CM_OK;
    return fail_status(CM_ERR_INVALID_ARGUMENT, what);
}

}  // namespace

extern "C" {

// ---------------------------------------------------------------------------
// Library
// ---------------------------------------------------------------------------

const char* cm_version_string(void) { return "chainmind 1.0.0"; }

const char* cm_status_name(cm_status status) {
    switch (status) {
        case CM_OK: return "ok";
        case CM_ERR_INVALID_ARGUMENT: return "invalid-argument";
        case CM_ERR_PARSE: return "parse-error";
        case CM_ERR_IO: return "io-error";
        case CM_ERR_DIMENSION: return "dimension-mismatch";
        case CM_ERR_ORDERING: return "ordering-error";
        case CM_ERR_DUPLICATE: return "duplicate";
        case CM_ERR_STALE_REPORT: return "stale-report";
        case CM_ERR_ASSERTION: return "assertion-failed";
        case CM_ERR_NOT_FOUND: return "not-found";
        case CM_ERR_INTERNAL: return "internal-error";
    }
    return "unknown";
}

const char* cm_last_error(void) { return g_last_error.c_str(); }

void cm_string_free(char* text) { ::free(text); }

// ---------------------------------------------------------------------------
// Config
// ---------------------------------------------------------------------------

cm_status cm_config_create(cm_config** out) {
    return guarded([&]() -> cm_status {
        if (cm_status s = require(out, "null out pointer")) return s;
        *out = new cm_config{Config{}};
        return CM_OK;
    });
}

cm_status cm_config_load(const char* path, cm_config** out) {
    return guarded([&]() -> cm_status {
        if (cm_status s = require(path && out, "null argument")) return s;
        *out = new cm_config{Config::from_file(path)};
        return CM_OK;
    });
}

cm_status cm_config_parse(const char* text, cm_config** out) {
    return guarded([&]() -> cm_status {
        if (cm_status s = require(text && out, "null argument")) return s;
        *out = new cm_config{Config::from_text(text)};
        return CM_OK;
    });
}

cm_status cm_config_set(cm_config* config, const char* key,
                        const char* value) {
    return guarded([&]() -> cm_status {
        if (cm_status s = require(config && key && value, "null argument"))
            return s;
        config->value.set(key, value);
        config->value.validate();
        return CM_OK;
    });
}

cm_status cm_config_get(const cm_config* config, const char* key,
                        char** out_value) {
    return guarded([&]() -> cm_status {
        if (cm_status s = require(config && key, "null argument")) return s;
        return set_out_string(config->value.get(key), out_value);
    });
}

cm_status cm_config_dump(const cm_config* config, char** out_text) {
    return guarded([&]() -> cm_status {
        if (cm_status s = require(config != nullptr, "null config")) return s;
        return set_out_string(config->value.dump(), out_text);
    });
}

void cm_config_destroy(cm_config* config) { delete config; }

// ---------------------------------------------------------------------------
// Banks
// ---------------------------------------------------------------------------

cm_status cm_bank_create(const cm_config* config, cm_bank** out) {
    return guarded([&]() -> cm_status {
        if (cm_status s = require(out, "null out pointer")) return s;
        Config defaults;
        const Config& used = config ? config->value : defaults;
        *out = new cm_bank{MemoryBank(used)};
        return CM_OK;
    });
}

cm_status cm_bank_load(const char* path, cm_bank** out) {
    return guarded([&]() -> cm_status {
        if (cm_status s = require(path && out, "null argument")) return s;
        *out = new cm_bank{MemoryBank::load_file(path)};
        return CM_OK;
    });
}

cm_status cm_bank_save(const cm_bank* bank, const char* path) {
    return guarded([&]() -> cm_status {
        if (cm_status s = require(bank && path, "null argument")) return s;
        bank->value.save_file(path);
        return CM_OK;
    });
}

cm_status cm_bank_dump(const cm_bank* bank, char** out_text) {
    return guarded([&]() -> cm_status {
        if (cm_status s = require(bank != nullptr, "null bank")) return s;
        return set_out_string(bank->value.save_text(), out_text);
    });
}

size_t cm_bank_record_count(const cm_bank* bank) {
    return bank ? bank->value.size() : 0;
}

size_t cm_bank_dim(const cm_bank* bank) {
    return bank ? bank->value.dim() : 0;
}

cm_status cm_bank_prune(cm_bank* bank, size_t* out_removed) {
    return guarded([&]() -> cm_status {
        if (cm_status s = require(bank != nullptr, "null bank")) return s;
        size_t removed = bank->value.prune();
        if (out_removed) *out_removed = removed;
        return CM_OK;
    });
}

cm_status cm_bank_merge(const cm_bank* a, const cm_bank* b, cm_bank** out) {
    return guarded([&]() -> cm_status {
        if (cm_status s = require(a && b && out, "null argument")) return s;
        *out = new cm_bank{MemoryBank::merge(a->value, b->value)};
        return CM_OK;
    });
}

void cm_bank_destroy(cm_bank* bank) { delete bank; }

// ---------------------------------------------------------------------------
// Sessions
// ---------------------------------------------------------------------------

cm_status cm_session_create(const cm_config* config, uint64_t seed,
                            cm_session** out) {
    return guarded([&]() -> cm_status {
        if (cm_status s = require(out, "null out pointer")) return s;
        Config used = config ? config->value : Config{};
        if (seed != 0) used.seed = seed;
        *out = new cm_session{Session(used)};
        return CM_OK;
    });
}

cm_status cm_session_set_trace(cm_session* session, int enabled) {
    return guarded([&]() -> cm_status {
        if (cm_status s = require(session != nullptr, "null session")) return s;
        session->value.set_trace(enabled != 0);
        return CM_OK;
    });
}

cm_status cm_session_set_dump_report(cm_session* session, int enabled) {
    return guarded([&]() -> cm_status {
        if (cm_status s = require(session != nullptr, "null session")) return s;
        session->value.set_dump_report(enabled != 0);
        return CM_OK;
    });
}

cm_status cm_session_install_innate(cm_session* session,
                                    const char* spec_text) {
    return guarded([&]() -> cm_status {
        if (cm_status s = require(session && spec_text, "null argument"))
            return s;
        session->value.install_innate_text(spec_text);
        return CM_OK;
    });
}

cm_status cm_session_load_bank(cm_session* session, const char* path) {
    return guarded([&]() -> cm_status {
        if (cm_status s = require(session && path, "null argument")) return s;
        session->value.load_bank(path);
        return CM_OK;
    });
}

cm_status cm_session_save_bank(const cm_session* session, const char* path) {
    return guarded([&]() -> cm_status {
        if (cm_status s = require(session && path, "null argument")) return s;
        session->value.save_bank(path);
        return CM_OK;
    });
}

namespace {

cm_status run_script_common(cm_session* session, const ScenarioScript& script,
                            char** out_transcript) {
    // The session's bank and innate routing carry into the run; the script's
    // config overrides and specs apply on top. Afterwards the session holds
    // the post-run state, so a following save_bank persists the outcome.
    Session result(session->value.config());
    ScenarioOutcome outcome = run_scenario(
        script, session->value.config(), &result, session->value.trace(),
        session->value.dump_report(), MemoryBank(session->value.bank()),
        &session->value.registry());
    session->value = std::move(result);
    if (out_transcript) {
        cm_status s = set_out_string(outcome.transcript, out_transcript);
        if (s != CM_OK) return s;
    }
    if (!outcome.assertions_ok) {
        std::string message = "scenario assertions failed:";
        for (const std::string& failure : outcome.failures)
            message += "\n  " + failure;
        return fail_status(CM_ERR_ASSERTION, message);
    }
    return CM_OK;
}

}  // namespace

cm_status cm_session_run_script_text(cm_session* session,
                                     const char* script_text,
                                     char** out_transcript) {
    return guarded([&]() -> cm_status {
        if (cm_status s = require(session && script_text, "null argument"))
            return s;
        return run_script_common(
            session, ScenarioScript::parse_text(script_text), out_transcript);
    });
}

cm_status cm_session_run_script_file(cm_session* session, const char* path,
                                     char** out_transcript) {
    return guarded([&]() -> cm_status {
        if (cm_status s = require(session && path, "null argument")) return s;
        return run_script_common(session, ScenarioScript::parse_file(path),
                                 out_transcript);
    });
}

cm_status cm_session_turn(cm_session* session, const char* line,
                          char** out_text) {
    return guarded([&]() -> cm_status {
        if (cm_status s = require(session && line, "null argument")) return s;
        TurnResult turn = session->value.turn_text(line);
        std::string out = "tally reward=" + fmt_g9(turn.tally.reward_sum) +
                          " punishment=" + fmt_g9(turn.tally.punishment_sum) +
                          "\naction " + action_to_string(turn.action) + "\n";
        std::size_t shown = 0;
        for (const auto& [symbol, value] :
             session->value.expectation_symbols()) {
            if (shown >= 10) break;
            out += "expect " + symbol + " " + fmt_g9(value) + "\n";
            ++shown;
        }
        return set_out_string(out, out_text);
    });
}

cm_status cm_session_stats(const cm_session* session, char** out_text) {
    return guarded([&]() -> cm_status {
        if (cm_status s = require(session != nullptr, "null session")) return s;
        std::string out = session->value.stats_text();
        std::size_t shown = 0;
        for (const auto& [symbol, value] : session->value.memory_ranking()) {
            if (value <= 0.0 || shown >= 10) break;
            out += "memory " + symbol + " " + fmt_g9(value) + "\n";
            ++shown;
        }
        return set_out_string(out, out_text);
    });
}

void cm_session_destroy(cm_session* session) { delete session; }

// ---------------------------------------------------------------------------
// Demos
// ---------------------------------------------------------------------------

cm_status cm_demo_script(const char* name, char** out_text) {
    return guarded([&]() -> cm_status {
        if (cm_status s = require(name != nullptr, "null name")) return s;
        return set_out_string(demo_script(name), out_text);
    });
}

cm_status cm_demo_list(char** out_text) {
    return guarded([&]() -> cm_status {
        std::string out;
        for (const std::string& name : demo_names()) {
            out += name;
            out += '\n';
        }
        return set_out_string(out, out_text);
    });
}

}  // extern "C"
