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

#include <doctest.h>

#include <cmath>
#include <set>

#include "projecho/rng.hpp"

using projecho::SeededRng;

TEST_CASE("same seed and stream reproduce the sequence") {
    SeededRng a(42, 7);
    SeededRng b(42, 7);
    for (int i = 0; i < 100; ++i) {
        CHECK(a() == b());
    }
}

TEST_CASE("copies fork identical sequences") {
    SeededRng a(3);
    a();
    SeededRng b = a;
    for (int i = 0; i < 20; ++i) {
        CHECK(a.uniform() == b.uniform());
    }
}

TEST_CASE("streams and derived children differ") {
    SeededRng root(1);
    std::set<std::uint64_t> firsts;
    for (std::uint64_t s = 0; s < 64; ++s) {
        firsts.insert(SeededRng(1, s)());
        firsts.insert(root.derive(s)());
    }
    CHECK(firsts.size() == 128);
    CHECK(root.derive(5)() == root.derive(5)());
    CHECK(root.derive(5).derive(1)() != root.derive(1).derive(5)());
}

TEST_CASE("uniform lies in [0, 1) with mean one half") {
    SeededRng rng(9);
    const int n = 200000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    double se = std::sqrt(1.0 / 12.0 / n);
    CHECK(std::abs(sum / n - 0.5) < 5 * se);
}

TEST_CASE("normal and complex normal moments") {
    SeededRng rng(11);
    const int n = 200000;
    double s1 = 0.0;
    double s2 = 0.0;
    double c2 = 0.0;
    for (int i = 0; i < n; ++i) {
        double x = rng.normal();
        s1 += x;
        s2 += x * x;
        c2 += std::norm(rng.complex_normal());
    }
    CHECK(std::abs(s1 / n) < 5 / std::sqrt(n));
    CHECK(std::abs(s2 / n - 1.0) < 5 * std::sqrt(2.0 / n));
    CHECK(std::abs(c2 / n - 1.0) < 5 * std::sqrt(1.0 / n));
}
