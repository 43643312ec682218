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

#include <cstdint>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "chainmind/chainmind.h"

namespace {

struct StringGuard {
    char* text = nullptr;
    ~StringGuard() { cm_string_free(text); }
};

struct ConfigGuard {
    cm_config* handle = nullptr;
    ~ConfigGuard() { cm_config_destroy(handle); }
};

struct BankGuard {
    cm_bank* handle = nullptr;
    ~BankGuard() { cm_bank_destroy(handle); }
};

struct SessionGuard {
    cm_session* handle = nullptr;
    ~SessionGuard() { cm_session_destroy(handle); }
};

int report_error(const std::string& where, cm_status status) {
    std::cerr << "chainmind: " << where << ": " << cm_status_name(status)
              << ": " << cm_last_error() << "\n";
    // Assertion failures exit 1; usage and environment problems exit 2.
    return status == CM_ERR_ASSERTION ? 1 : 2;
}

cm_status make_config(const std::string& config_path, cm_config** out) {
    if (config_path.empty()) return cm_config_create(out);
    return cm_config_load(config_path.c_str(), out);
}

cm_status make_session(const std::string& config_path, std::uint64_t seed,
                       bool trace, bool dump_report, cm_session** out) {
    ConfigGuard config;
    if (cm_status s = make_config(config_path, &config.handle)) return s;
    if (cm_status s = cm_session_create(config.handle, seed, out)) return s;
    if (trace) cm_session_set_trace(*out, 1);
    if (dump_report) cm_session_set_dump_report(*out, 1);
    return CM_OK;
}

int run_repl(const std::string& config_path, std::uint64_t seed, bool trace,
             bool dump_report, const std::string& bank_path) {
    SessionGuard session;
    if (cm_status s = make_session(config_path, seed, trace, dump_report,
                                   &session.handle))
        return report_error("repl", s);
    if (!bank_path.empty()) {
        if (cm_status s =
                cm_session_load_bank(session.handle, bank_path.c_str()))
            return report_error("repl", s);
    }

    const char* help =
        "meta commands: :save <file>  :load <file>  :stats  :quit\n";
    std::cout << cm_version_string()
              << " interactive session (:quit to leave)\n";
    std::string line;
    while (true) {
        std::cout << "> " << std::flush;
        if (!std::getline(std::cin, line)) break;
        if (line.empty()) continue;
        if (line[0] == ':') {
            std::string command = line.substr(0, line.find(' '));
            std::string argument;
            if (line.size() > command.size())
                argument = line.substr(command.size() + 1);
            while (!argument.empty() && argument.front() == ' ')
                argument.erase(argument.begin());
            if (command == ":quit") break;
            if (command == ":stats") {
                StringGuard text;
                if (cm_session_stats(session.handle, &text.text) != CM_OK)
                    std::cout << "error: " << cm_last_error() << "\n" << help;
                else
                    std::cout << text.text;
                continue;
            }
            if (command == ":save" && !argument.empty()) {
                if (CM_OK !=
                        cm_session_save_bank(session.handle, argument.c_str()))
                    std::cout << "error: " << cm_last_error() << "\n" << help;
                else
                    std::cout << "saved " << argument << "\n";
                continue;
            }
            if (command == ":load" && !argument.empty()) {
                if (CM_OK !=
                        cm_session_load_bank(session.handle, argument.c_str()))
                    std::cout << "error: " << cm_last_error() << "\n" << help;
                else
                    std::cout << "loaded " << argument << "\n";
                continue;
            }
            std::cout << help;
            continue;
        }
        StringGuard text;
        if (cm_session_turn(session.handle, line.c_str(), &text.text) !=
            CM_OK) {
            std::cout << "error: " << cm_last_error() << "\n";
            continue;
        }
        std::cout << text.text;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"chainmind - associative token memory engine"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    std::string config_path;
    std::uint64_t seed = 0;
    bool trace = false;
    bool dump_report = false;
    app.add_option("--config", config_path, "config file (key=value lines)");
    app.add_option("--seed", seed, "deterministic stream seed");
    app.add_flag("--trace", trace, "print per-round decision traces");
    app.add_flag("--dump-report", dump_report,
                 "print activation reports per turn");

    // run <script>
    std::string run_script_path, run_bank, run_save_bank;
    CLI::App* run = app.add_subcommand("run", "run a scenario script");
    run->add_option("script", run_script_path, "scenario script file")
        ->required();
    run->add_option("--bank", run_bank, "load this bank before the run");
    run->add_option("--save-bank", run_save_bank,
                    "save the bank after the run");

    // repl
    std::string repl_bank;
    CLI::App* repl = app.add_subcommand("repl", "interactive session");
    repl->add_option("--bank", repl_bank, "load this bank first");

    // merge <a> <b> -o <out>
    std::string merge_a, merge_b, merge_out;
    CLI::App* merge = app.add_subcommand("merge", "merge two banks");
    merge->add_option("a", merge_a, "first bank")->required();
    merge->add_option("b", merge_b, "second bank")->required();
    merge->add_option("-o,--output", merge_out, "output bank")->required();

    // dump [<bank>] [--config]
    std::string dump_bank;
    bool dump_config = false;
    CLI::App* dump = app.add_subcommand("dump", "print a bank or the config");
    dump->add_option("bank", dump_bank, "bank file to print");
    dump->add_flag("--config", dump_config, "print the effective config");

    // demo <name>
    std::string demo_name;
    CLI::App* demo = app.add_subcommand("demo", "run a built-in demo");
    demo->add_option("name", demo_name, "world-peace | charging | hotel")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (run->parsed()) {
        SessionGuard session;
        if (cm_status s = make_session(config_path, seed, trace, dump_report,
                                       &session.handle))
            return report_error("run", s);
        if (!run_bank.empty()) {
            if (cm_status s =
                    cm_session_load_bank(session.handle, run_bank.c_str()))
                return report_error("run", s);
        }
        StringGuard transcript;
        cm_status s = cm_session_run_script_file(
            session.handle, run_script_path.c_str(), &transcript.text);
        if (transcript.text) std::cout << transcript.text;
        if (s != CM_OK) return report_error("run", s);
        if (!run_save_bank.empty()) {
            if (cm_status save_status = cm_session_save_bank(
                    session.handle, run_save_bank.c_str()))
                return report_error("run", save_status);
        }
        return 0;
    }

    if (repl->parsed())
        return run_repl(config_path, seed, trace, dump_report, repl_bank);

    if (merge->parsed()) {
        BankGuard a, b, merged;
        if (cm_status s = cm_bank_load(merge_a.c_str(), &a.handle))
            return report_error("merge", s);
        if (cm_status s = cm_bank_load(merge_b.c_str(), &b.handle))
            return report_error("merge", s);
        if (cm_status s = cm_bank_merge(a.handle, b.handle, &merged.handle))
            return report_error("merge", s);
        if (cm_status s = cm_bank_save(merged.handle, merge_out.c_str()))
            return report_error("merge", s);
        std::cout << "merged " << cm_bank_record_count(a.handle) << "+"
                  << cm_bank_record_count(b.handle) << " records into "
                  << merge_out << "\n";
        return 0;
    }

    if (dump->parsed()) {
        if (dump_config) {
            ConfigGuard config;
            if (cm_status s = make_config(config_path, &config.handle))
                return report_error("dump", s);
            StringGuard text;
            if (cm_status s = cm_config_dump(config.handle, &text.text))
                return report_error("dump", s);
            std::cout << text.text;
            return 0;
        }
        if (dump_bank.empty()) {
            std::cerr << "chainmind: dump: needs a bank file or --config\n";
            return 2;
        }
        BankGuard bank;
        if (cm_status s = cm_bank_load(dump_bank.c_str(), &bank.handle))
            return report_error("dump", s);
        StringGuard text;
        if (cm_status s = cm_bank_dump(bank.handle, &text.text))
            return report_error("dump", s);
        std::cout << text.text;
        return 0;
    }

    if (demo->parsed()) {
        StringGuard script;
        if (cm_status s = cm_demo_script(demo_name.c_str(), &script.text))
            return report_error("demo", s);
        SessionGuard session;
        if (cm_status s = make_session(config_path, seed, trace, dump_report,
                                       &session.handle))
            return report_error("demo", s);
        StringGuard transcript;
        cm_status s = cm_session_run_script_text(session.handle, script.text,
                                                 &transcript.text);
        if (transcript.text) std::cout << transcript.text;
        if (s != CM_OK) return report_error("demo", s);
        return 0;
    }

    std::cerr << app.help();
    return 2;
}
