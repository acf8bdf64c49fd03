// Copyright 2026 The projecho Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "projecho/projecho.h"

namespace {

struct StringDeleter {
    void operator()(char *s) const {
        pe_string_free(s);
    }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct ScenarioDeleter {
    void operator()(pe_scenario *s) const {
        pe_scenario_free(s);
    }
};

struct ResultDeleter {
    void operator()(pe_result_set *r) const {
        pe_result_set_free(r);
    }
};

int exit_code(pe_status status) {
    // Invalid arguments can only come from scenario content here.
    return status == PE_ERR_INVALID_ARGUMENT ? PE_ERR_SCENARIO : static_cast<int>(status);
}

int report(pe_status status) {
    std::cerr << "projecho: " << pe_last_error() << "\n";
    return exit_code(status);
}

bool write_file(const std::string &path, const char *text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    out.close();
    return static_cast<bool>(out);
}

struct RunArgs {
    std::string scenario;
    std::optional<std::uint64_t> seed;
    std::string out;
    bool csv = false;
    int threads = 1;
    bool timing = false;
};

int cmd_run(const RunArgs &args) {
    pe_scenario *raw = nullptr;
    if (pe_status st = pe_scenario_load(args.scenario.c_str(), &raw); st != PE_OK) {
        return report(st);
    }
    std::unique_ptr<pe_scenario, ScenarioDeleter> scenario(raw);
    if (args.seed) {
        pe_scenario_set_seed(scenario.get(), *args.seed);
    }
    std::string out_path = args.out;
    if (out_path.empty()) {
        char *p = nullptr;
        pe_scenario_output(scenario.get(), &p);
        out_path = OwnedString(p).get();
    }

    pe_result_set *raw_results = nullptr;
    if (pe_status st = pe_run(scenario.get(), args.threads, args.timing ? 1 : 0, &raw_results); st != PE_OK) {
        return report(st);
    }
    std::unique_ptr<pe_result_set, ResultDeleter> results(raw_results);

    char *text = nullptr;
    if (pe_status st = pe_result_jsonl(results.get(), &text); st != PE_OK) {
        return report(st);
    }
    OwnedString jsonl(text);
    char *csv_text = nullptr;
    if (pe_status st = pe_result_csv(results.get(), &csv_text); st != PE_OK) {
        return report(st);
    }
    OwnedString csv(csv_text);

    if (out_path.empty()) {
        std::cout << (args.csv ? csv.get() : jsonl.get());
        std::cout.flush();
    } else {
        if (!write_file(out_path, jsonl.get())) {
            std::cerr << "projecho: cannot write '" << out_path << "'\n";
            return PE_ERR_IO;
        }
        if (args.csv && !write_file(out_path + ".csv", csv.get())) {
            std::cerr << "projecho: cannot write '" << out_path << ".csv'\n";
            return PE_ERR_IO;
        }
    }

    char *summary = nullptr;
    if (pe_status st = pe_result_summary(results.get(), &summary); st != PE_OK) {
        return report(st);
    }
    std::cerr << OwnedString(summary).get();
    return 0;
}

int cmd_validate(const std::string &path) {
    pe_scenario *raw = nullptr;
    if (pe_status st = pe_scenario_load(path.c_str(), &raw); st != PE_OK) {
        return report(st);
    }
    std::unique_ptr<pe_scenario, ScenarioDeleter> scenario(raw);
    char *text = nullptr;
    pe_scenario_emit(scenario.get(), &text);
    std::cout << OwnedString(text).get();
    return 0;
}

int cmd_check(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "projecho: cannot open '" << path << "'\n";
        return PE_ERR_IO;
    }
    std::string line;
    int line_no = 0;
    int records = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        if (pe_check_record(line.c_str()) != PE_OK) {
            std::cerr << "projecho: " << path << ":" << line_no << ": " << pe_last_error() << "\n";
            return PE_ERR_SCENARIO;
        }
        ++records;
    }
    std::cout << records << " records ok\n";
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Projected Loschmidt echo and Renyi entropy simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", pe_version());

    RunArgs run_args;
    auto *run = app.add_subcommand("run", "Run a scenario and emit one record per protocol and time point");
    run->add_option("scenario", run_args.scenario, "Scenario file")->required();
    run->add_option("--seed", run_args.seed, "Override the scenario seed")->envname("PROJECHO_SEED");
    run->add_option("--out", run_args.out, "Write JSONL records here instead of stdout");
    run->add_flag("--csv", run_args.csv, "Also write <out>.csv, or print CSV when writing to stdout");
    run->add_option("--threads", run_args.threads, "Worker threads for shot sampling")
        ->envname("PROJECHO_THREADS")
        ->check(CLI::PositiveNumber);
    run->add_flag("--timing", run_args.timing, "Add wall-clock seconds to records");

    std::string validate_path;
    auto *validate = app.add_subcommand("validate", "Parse a scenario and print it with defaults filled in");
    validate->add_option("scenario", validate_path, "Scenario file")->required();

    std::string check_path;
    auto *check = app.add_subcommand("check", "Check a JSONL record file against the record schema");
    check->add_option("records", check_path, "JSONL file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : PE_ERR_SCENARIO;
    }
    if (*run) {
        return cmd_run(run_args);
    }
    if (*validate) {
        return cmd_validate(validate_path);
    }
    return cmd_check(check_path);
}
