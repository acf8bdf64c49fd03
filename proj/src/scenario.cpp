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

#include "projecho/scenario.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "projecho/error.hpp"

namespace projecho {

namespace {

constexpr std::array<std::pair<Protocol, std::string_view>, 8> kProtocolNames{{
    {Protocol::Loschmidt, "loschmidt"},
    {Protocol::Renyi2Exact, "renyi2-exact"},
    {Protocol::Renyi2Protocol, "renyi2-protocol"},
    {Protocol::Renyi2RandomUnitary, "renyi2-random-unitary"},
    {Protocol::Renyi2RandomizedMeasurement, "renyi2-randomized-measurement"},
    {Protocol::RenyiN, "renyi-n"},
    {Protocol::OtocLe, "otoc-le"},
    {Protocol::Phase, "phase"},
}};

const std::set<std::string, std::less<>> kKnownKeys{
    "model",   "n_a",         "n_b",         "b_qubits",     "psi0",        "b0",         "j",
    "h",       "cross_coupling", "p",        "s",            "periodic",    "bath_coupling", "times",
    "t_start", "t_stop",      "t_steps",     "protocol",     "n_cycle",     "n_total",    "n_unitaries",
    "n_samples", "shots_per_u", "renyi_n",   "perturbation", "rm_region",   "phase_m1",   "phase_m1p",
    "phase_m2", "seed",       "output",
};

std::string_view trim(std::string_view s) {
    const char *ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) {
        return {};
    }
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
    std::vector<std::string_view> out;
    while (true) {
        auto comma = s.find(',');
        out.push_back(trim(s.substr(0, comma)));
        if (comma == std::string_view::npos) {
            break;
        }
        s.remove_prefix(comma + 1);
    }
    return out;
}

std::string format_double(double v) {
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

struct Entry {
    std::string value;
    int line = 0;
};

class Reader {
   public:
    explicit Reader(std::map<std::string, Entry, std::less<>> entries) : entries_(std::move(entries)) {
    }

    bool has(std::string_view key) const {
        return entries_.find(key) != entries_.end();
    }

    [[noreturn]] void fail(std::string_view key, const std::string &what) const {
        auto it = entries_.find(key);
        std::string where = it == entries_.end() ? "" : "line " + std::to_string(it->second.line) + ": ";
        throw_scenario(where + "key '" + std::string(key) + "': " + what);
    }

    const std::string &raw(std::string_view key) const {
        return entries_.find(key)->second.value;
    }

    template <class T>
    T number_from(std::string_view key, std::string_view text) const {
        T v{};
        auto res = std::from_chars(text.data(), text.data() + text.size(), v);
        if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size()) {
            fail(key, "cannot parse '" + std::string(text) + "' as a number");
        }
        if constexpr (std::is_floating_point_v<T>) {
            if (!std::isfinite(v)) {
                fail(key, "value must be finite");
            }
        }
        return v;
    }

    template <class T>
    void number(std::string_view key, T &out) const {
        if (has(key)) {
            out = number_from<T>(key, raw(key));
        }
    }

    void boolean(std::string_view key, bool &out) const {
        if (!has(key)) {
            return;
        }
        const std::string &v = raw(key);
        if (v == "true" || v == "1") {
            out = true;
        } else if (v == "false" || v == "0") {
            out = false;
        } else {
            fail(key, "expected true or false");
        }
    }

    template <class T>
    std::vector<T> list(std::string_view key) const {
        std::vector<T> out;
        if (raw(key).empty()) {
            return out;
        }
        for (auto item : split_list(raw(key))) {
            out.push_back(number_from<T>(key, item));
        }
        return out;
    }

   private:
    std::map<std::string, Entry, std::less<>> entries_;
};

std::string check_bits(const Reader &r, std::string_view key, std::string value, int width) {
    if (value.empty()) {
        return std::string(static_cast<std::size_t>(width), '0');
    }
    if (static_cast<int>(value.size()) != width) {
        r.fail(key, "expected " + std::to_string(width) + " bits, got " + std::to_string(value.size()));
    }
    if (value.find_first_not_of("01") != std::string::npos) {
        r.fail(key, "bit string may only contain 0 and 1");
    }
    return value;
}

std::uint64_t bits_to_index(const std::string &bits) {
    std::uint64_t idx = 0;
    for (std::size_t k = 0; k < bits.size(); ++k) {
        if (bits[k] == '1') {
            idx |= std::uint64_t{1} << k;
        }
    }
    return idx;
}

void positive(const Reader &r, std::string_view key, std::uint64_t v) {
    if (v == 0) {
        r.fail(key, "must be positive");
    }
}

}  // namespace

std::string_view to_string(Protocol protocol) {
    for (const auto &[p, name] : kProtocolNames) {
        if (p == protocol) {
            return name;
        }
    }
    return "unknown";
}

std::optional<Protocol> protocol_from_string(std::string_view name) {
    for (const auto &[p, n] : kProtocolNames) {
        if (n == name) {
            return p;
        }
    }
    return std::nullopt;
}

Bipartition Scenario::bipartition() const {
    return Bipartition(n_a, n_b, b_qubits);
}

std::uint64_t Scenario::psi0_index() const {
    return bits_to_index(psi0);
}

std::uint64_t Scenario::b0_index() const {
    return bits_to_index(b0);
}

Scenario parse_scenario(std::string_view text) {
    std::map<std::string, Entry, std::less<>> entries;
    int line_no = 0;
    while (!text.empty()) {
        auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw_scenario("line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        std::string key(trim(line.substr(0, eq)));
        std::string value(trim(line.substr(eq + 1)));
        if (!kKnownKeys.contains(key)) {
            throw_scenario("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
        if (auto it = entries.find(key); it != entries.end()) {
            throw_scenario("line " + std::to_string(line_no) + ": key '" + key + "' already set on line " +
                           std::to_string(it->second.line));
        }
        entries.emplace(std::move(key), Entry{std::move(value), line_no});
    }

    Reader r(std::move(entries));
    for (std::string_view key : {"model", "n_a", "n_b"}) {
        if (!r.has(key)) {
            throw_scenario("missing required key '" + std::string(key) + "'");
        }
    }

    Scenario s;
    s.model = r.raw("model");
    if (s.model != "tfim" && s.model != "padic") {
        r.fail("model", "expected tfim or padic, got '" + s.model + "'");
    }
    r.number("n_a", s.n_a);
    r.number("n_b", s.n_b);
    if (s.n_a < 1) {
        r.fail("n_a", "subsystem A needs at least one qubit");
    }
    if (s.n_b < 1) {
        r.fail("n_b", "bipartition needs n_b >= 1 (subsystem B cannot be empty)");
    }
    if (2 * s.n_b + s.n_a > kMaxQubits) {
        r.fail("n_b", "tripartite register n_a + 2 n_b exceeds " + std::to_string(kMaxQubits) + " qubits");
    }
    if (r.has("b_qubits")) {
        s.b_qubits = r.list<int>("b_qubits");
    }
    try {
        (void)s.bipartition();
    } catch (const Error &e) {
        r.fail(r.has("b_qubits") ? "b_qubits" : "n_b", e.what());
    }
    s.psi0 = check_bits(r, "psi0", r.has("psi0") ? r.raw("psi0") : "", s.n_a);
    s.b0 = check_bits(r, "b0", r.has("b0") ? r.raw("b0") : "", s.n_b);

    r.number("j", s.j);
    r.number("h", s.h);
    r.number("cross_coupling", s.cross_coupling);
    r.number("p", s.p);
    r.number("s", s.s);
    r.boolean("periodic", s.periodic);
    if (r.has("bath_coupling")) {
        s.bath_coupling = r.number_from<double>("bath_coupling", r.raw("bath_coupling"));
    }
    if (s.model == "padic") {
        if (!s.bath_coupling) {
            throw_scenario("model padic requires key 'bath_coupling'");
        }
        if (!is_prime(s.p)) {
            r.fail("p", std::to_string(s.p) + " is not prime");
        }
        if (s.n_a < 2) {
            r.fail("n_a", "the p-adic chain needs at least two sites");
        }
    }

    const bool grid = r.has("t_start") || r.has("t_stop") || r.has("t_steps");
    if (r.has("times") && grid) {
        r.fail("times", "give either times or t_start/t_stop/t_steps, not both");
    }
    if (r.has("times")) {
        s.times = r.list<double>("times");
        if (s.times.empty()) {
            r.fail("times", "time list is empty");
        }
    } else {
        double start = 0.0;
        double stop = 2.0;
        std::uint64_t steps = 5;
        r.number("t_start", start);
        r.number("t_stop", stop);
        r.number("t_steps", steps);
        positive(r, "t_steps", steps);
        if (steps > 1 && !(stop > start)) {
            r.fail("t_stop", "must exceed t_start");
        }
        for (std::uint64_t i = 0; i < steps; ++i) {
            s.times.push_back(steps == 1 ? start
                                         : start + (stop - start) * static_cast<double>(i) /
                                                       static_cast<double>(steps - 1));
        }
    }
    for (std::size_t i = 1; i < s.times.size(); ++i) {
        if (!(s.times[i] > s.times[i - 1])) {
            r.fail(r.has("times") ? "times" : "t_steps", "time grid must be strictly increasing");
        }
    }

    if (r.has("protocol")) {
        for (auto name : split_list(r.raw("protocol"))) {
            auto p = protocol_from_string(name);
            if (!p) {
                r.fail("protocol", "unknown protocol '" + std::string(name) + "'");
            }
            for (Protocol q : s.protocols) {
                if (q == *p) {
                    r.fail("protocol", "protocol '" + std::string(name) + "' listed twice");
                }
            }
            s.protocols.push_back(*p);
        }
    } else {
        s.protocols.push_back(Protocol::Renyi2Exact);
    }

    r.number("n_cycle", s.n_cycle);
    r.number("n_total", s.n_total);
    r.number("n_unitaries", s.n_unitaries);
    r.number("n_samples", s.n_samples);
    r.number("shots_per_u", s.shots_per_u);
    positive(r, "n_cycle", s.n_cycle);
    positive(r, "n_total", s.n_total);
    if (s.n_unitaries < 2) {
        r.fail("n_unitaries", "must be at least 2");
    }
    if (s.n_samples < 2) {
        r.fail("n_samples", "must be at least 2");
    }
    r.number("renyi_n", s.renyi_n);
    if (s.renyi_n < 2) {
        r.fail("renyi_n", "Renyi order must be at least 2");
    }
    r.number("perturbation", s.perturbation);
    if (r.has("rm_region")) {
        const std::string &v = r.raw("rm_region");
        if (v == "whole") {
            s.rm_region = RandomizedRegion::Whole;
        } else if (v == "a") {
            s.rm_region = RandomizedRegion::SubsystemA;
        } else {
            r.fail("rm_region", "expected whole or a");
        }
    }
    r.number("phase_m1", s.phase_m1);
    r.number("phase_m1p", s.phase_m1p);
    r.number("phase_m2", s.phase_m2);
    const std::uint64_t db = std::uint64_t{1} << s.n_b;
    for (std::string_view key : {"phase_m1", "phase_m1p", "phase_m2"}) {
        std::uint64_t v = key == "phase_m1" ? s.phase_m1 : key == "phase_m1p" ? s.phase_m1p : s.phase_m2;
        if (v >= db) {
            r.fail(key, "label must be below D_B = " + std::to_string(db));
        }
    }
    if (s.phase_m1 == s.phase_m1p) {
        r.fail("phase_m1p", "must differ from phase_m1");
    }
    r.number("seed", s.seed);
    if (r.has("output")) {
        s.output = r.raw("output");
    }
    return s;
}

Scenario load_scenario(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw_io("cannot open scenario file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

namespace {

std::string emit_body(const Scenario &s) {
    std::ostringstream out;
    auto join = [](const auto &items, auto fmt) {
        std::string text;
        for (std::size_t i = 0; i < items.size(); ++i) {
            text += (i ? ", " : "") + fmt(items[i]);
        }
        return text;
    };
    out << "model = " << s.model << "\n";
    out << "n_a = " << s.n_a << "\n";
    out << "n_b = " << s.n_b << "\n";
    if (!s.b_qubits.empty()) {
        out << "b_qubits = " << join(s.b_qubits, [](int q) { return std::to_string(q); }) << "\n";
    }
    out << "psi0 = " << s.psi0 << "\n";
    out << "b0 = " << s.b0 << "\n";
    out << "j = " << format_double(s.j) << "\n";
    out << "h = " << format_double(s.h) << "\n";
    out << "cross_coupling = " << format_double(s.cross_coupling) << "\n";
    out << "p = " << s.p << "\n";
    out << "s = " << format_double(s.s) << "\n";
    out << "periodic = " << (s.periodic ? "true" : "false") << "\n";
    if (s.bath_coupling) {
        out << "bath_coupling = " << format_double(*s.bath_coupling) << "\n";
    }
    out << "times = " << join(s.times, format_double) << "\n";
    out << "protocol = " << join(s.protocols, [](Protocol p) { return std::string(to_string(p)); }) << "\n";
    out << "n_cycle = " << s.n_cycle << "\n";
    out << "n_total = " << s.n_total << "\n";
    out << "n_unitaries = " << s.n_unitaries << "\n";
    out << "n_samples = " << s.n_samples << "\n";
    out << "shots_per_u = " << s.shots_per_u << "\n";
    out << "renyi_n = " << s.renyi_n << "\n";
    out << "perturbation = " << format_double(s.perturbation) << "\n";
    out << "rm_region = " << (s.rm_region == RandomizedRegion::Whole ? "whole" : "a") << "\n";
    out << "phase_m1 = " << s.phase_m1 << "\n";
    out << "phase_m1p = " << s.phase_m1p << "\n";
    out << "phase_m2 = " << s.phase_m2 << "\n";
    return out.str();
}

}  // namespace

std::string emit_scenario(const Scenario &s) {
    std::string text = emit_body(s);
    text += "seed = " + std::to_string(s.seed) + "\n";
    if (!s.output.empty()) {
        text += "output = " + s.output + "\n";
    }
    return text;
}

std::uint64_t scenario_hash(const Scenario &s) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : emit_body(s)) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

Hamiltonian build_hamiltonian(const Scenario &s) {
    Bipartition bip = s.bipartition();
    if (s.model == "tfim") {
        return build_tfim(bip.num_qubits(), s.j, s.h, bip, s.cross_coupling);
    }
    if (s.model == "padic") {
        if (!s.bath_coupling) {
            throw_scenario("model padic requires key 'bath_coupling'");
        }
        return build_padic_xy(padic_with_bath(s.p, s.s, s.periodic, bip, *s.bath_coupling), bip);
    }
    throw_scenario("unknown model '" + s.model + "'");
}

}  // namespace projecho
