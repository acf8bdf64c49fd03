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

#include "projecho/report.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <map>

#include <json.hpp>

#include "projecho/error.hpp"

namespace projecho {

namespace {

using Json = nlohmann::ordered_json;

Json optional_number(const std::optional<double> &v) {
    return v ? Json(*v) : Json(nullptr);
}

std::string hex16(std::uint64_t v) {
    std::array<char, 17> buf{};
    std::snprintf(buf.data(), buf.size(), "%016llx", static_cast<unsigned long long>(v));
    return buf.data();
}

std::string csv_number(const std::optional<double> &v) {
    if (!v) {
        return "";
    }
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), *v);
    return std::string(buf.data(), res.ptr);
}

std::string cell(const std::optional<double> &v, const char *fmt = "%14.8g") {
    std::array<char, 64> buf{};
    if (v) {
        std::snprintf(buf.data(), buf.size(), fmt, *v);
    } else {
        std::snprintf(buf.data(), buf.size(), "%14s", "-");
    }
    return buf.data();
}

Json to_json(const ResultRecord &r) {
    Json j;
    j["scenario_hash"] = hex16(r.scenario_hash);
    j["protocol"] = std::string(to_string(r.protocol));
    j["time_index"] = r.time_index;
    j["t"] = r.t;
    j["seed"] = r.seed;
    j["quantity"] = r.quantity;
    j["estimate"] = optional_number(r.estimate);
    j["stderr"] = optional_number(r.stderr_value);
    j["oracle"] = optional_number(r.oracle);
    j["discrepancy_sigma"] = optional_number(r.discrepancy_sigma());
    Json extras = Json::object();
    for (const auto &[k, v] : r.extras) {
        extras[k] = v;
    }
    j["extras"] = extras;
    Json counts = Json::object();
    for (const auto &[k, v] : r.counts) {
        counts[k] = v;
    }
    j["counts"] = counts;
    if (r.wall_seconds) {
        j["wall_seconds"] = *r.wall_seconds;
    }
    return j;
}

}  // namespace

std::string to_jsonl(std::span<const ResultRecord> records) {
    std::string out;
    for (const auto &r : records) {
        out += to_json(r).dump();
        out += '\n';
    }
    return out;
}

std::string to_csv(std::span<const ResultRecord> records) {
    std::string out = "protocol,time_index,t,seed,quantity,estimate,stderr,oracle,discrepancy_sigma\n";
    for (const auto &r : records) {
        out += std::string(to_string(r.protocol)) + "," + std::to_string(r.time_index) + "," + csv_number(r.t) +
               "," + std::to_string(r.seed) + "," + r.quantity + "," + csv_number(r.estimate) + "," +
               csv_number(r.stderr_value) + "," + csv_number(r.oracle) + "," + csv_number(r.discrepancy_sigma()) +
               "\n";
    }
    return out;
}

std::string summarize(std::span<const ResultRecord> records) {
    if (records.empty()) {
        throw_invalid("no records");
    }
    std::vector<Protocol> order;
    std::map<Protocol, std::vector<const ResultRecord *>> groups;
    for (const auto &r : records) {
        if (!groups.contains(r.protocol)) {
            order.push_back(r.protocol);
        }
        groups[r.protocol].push_back(&r);
    }
    std::string out = "# " + std::to_string(records.size()) + " records, scenario " +
                      hex16(records.front().scenario_hash) + ", seed " + std::to_string(records.front().seed) +
                      "\n# t in units of 1/J (unit coupling strength); entropies in nats\n";
    for (Protocol p : order) {
        const auto &rows = groups[p];
        out += "\n## " + std::string(to_string(p)) + " (" + rows.front()->quantity + ")\n";
        std::array<char, 128> head{};
        std::snprintf(head.data(), head.size(), "%10s %14s %14s %14s %14s\n", "t", "estimate", "stderr", "oracle",
                      "disc/sigma");
        out += head.data();
        for (const ResultRecord *r : rows) {
            std::array<char, 32> t{};
            std::snprintf(t.data(), t.size(), "%10.4g", r->t);
            out += std::string(t.data()) + " " + cell(r->estimate) + " " + cell(r->stderr_value) + " " +
                   cell(r->oracle) + " " + cell(r->discrepancy_sigma(), "%14.3f") + "\n";
        }
    }
    return out;
}

std::optional<std::string> check_record_schema(std::string_view line) {
    Json j = Json::parse(line.begin(), line.end(), nullptr, false);
    if (j.is_discarded()) {
        return "not valid JSON";
    }
    if (!j.is_object()) {
        return "record is not an object";
    }
    auto require = [&](const char *key, auto predicate, const char *what) -> std::optional<std::string> {
        if (!j.contains(key)) {
            return std::string("missing key '") + key + "'";
        }
        if (!predicate(j[key])) {
            return std::string("key '") + key + "' must be " + what;
        }
        return std::nullopt;
    };
    auto is_string = [](const Json &v) { return v.is_string(); };
    auto is_number = [](const Json &v) { return v.is_number(); };
    auto is_unsigned = [](const Json &v) { return v.is_number_unsigned(); };
    auto is_nullable = [](const Json &v) { return v.is_null() || v.is_number(); };
    auto is_number_map = [](const Json &v) {
        if (!v.is_object()) {
            return false;
        }
        for (const auto &item : v.items()) {
            if (!item.value().is_number()) {
                return false;
            }
        }
        return true;
    };
    auto is_count_map = [](const Json &v) {
        if (!v.is_object()) {
            return false;
        }
        for (const auto &item : v.items()) {
            if (!item.value().is_number_unsigned()) {
                return false;
            }
        }
        return true;
    };
    auto is_protocol = [](const Json &v) {
        return v.is_string() && protocol_from_string(v.get<std::string>()).has_value();
    };
    std::optional<std::string> err;
    if ((err = require("scenario_hash", is_string, "a string")) || (err = require("protocol", is_protocol, "a known protocol")) ||
        (err = require("time_index", is_unsigned, "a non-negative integer")) ||
        (err = require("t", is_number, "a number")) || (err = require("seed", is_unsigned, "a non-negative integer")) ||
        (err = require("quantity", is_string, "a string")) ||
        (err = require("estimate", is_nullable, "a number or null")) ||
        (err = require("stderr", is_nullable, "a number or null")) ||
        (err = require("oracle", is_nullable, "a number or null")) ||
        (err = require("discrepancy_sigma", is_nullable, "a number or null")) ||
        (err = require("extras", is_number_map, "an object of numbers")) ||
        (err = require("counts", is_count_map, "an object of non-negative integers"))) {
        return err;
    }
    static const std::array<const char *, 13> kKeys{"scenario_hash", "protocol", "time_index", "t", "seed",
                                                     "quantity", "estimate", "stderr", "oracle",
                                                     "discrepancy_sigma", "extras", "counts", "wall_seconds"};
    for (const auto &item : j.items()) {
        bool known = false;
        for (const char *k : kKeys) {
            known = known || item.key() == k;
        }
        if (!known) {
            return "unexpected key '" + item.key() + "'";
        }
    }
    if (j.contains("wall_seconds") && !j["wall_seconds"].is_number()) {
        return "key 'wall_seconds' must be a number";
    }
    if (j["scenario_hash"].get<std::string>().size() != 16) {
        return "key 'scenario_hash' must be 16 hex digits";
    }
    return std::nullopt;
}

}  // namespace projecho
