// Copyright 2026 The knotc authors
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

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "knot/f2.hpp"
#include "knot/rel.hpp"

using namespace knot;
using f2::AffineSubspace;
using f2::BitMatrix;
using f2::Vec;

TEST_CASE("rref of the identity is the identity") {
    BitMatrix m = BitMatrix::identity(5);
    auto pivots = f2::rref(m);
    REQUIRE(pivots == std::vector<int>{0, 1, 2, 3, 4});
    for (int i = 0; i < 5; ++i) REQUIRE(m.row[i] == (Vec{1} << i));
}

TEST_CASE("rref collapses dependent rows") {
    BitMatrix m(2, 2);
    m.row[0] = 0b11;
    m.row[1] = 0b11;
    auto pivots = f2::rref(m);
    REQUIRE(pivots == std::vector<int>{0});
    REQUIRE(m.row[0] == 0b11);
    REQUIRE(m.row[1] == 0);
}

TEST_CASE("rank matches brute-force span size") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        BitMatrix m(6, 6);
        for (auto& r : m.row) r = rng() & 0x3f;
        // Enumerate the row span.
        std::set<Vec> span;
        for (int sel = 0; sel < 64; ++sel) {
            Vec v = 0;
            for (int i = 0; i < 6; ++i)
                if ((sel >> i) & 1) v ^= m.row[i];
            span.insert(v);
        }
        int brute = 0;
        while ((1u << brute) < span.size()) ++brute;
        REQUIRE(f2::rank(m) == brute);
    }
}

TEST_CASE("subspace canonicalization is generator-order independent") {
    AffineSubspace a;
    a.dim = 4;
    a.basis = {0b0011, 0b0110};
    a.offset = 0b1000;
    AffineSubspace b;
    b.dim = 4;
    b.basis = {0b0110, 0b0101};  // same span
    b.offset = 0b1011;           // same coset (1000 ^ 0011)
    REQUIRE(f2::same_subspace(a, b));
}

TEST_CASE("offset inside the linear span canonicalizes to zero") {
    AffineSubspace a;
    a.dim = 3;
    a.basis = {0b011, 0b110};
    a.offset = 0b101;  // = 011 ^ 110
    REQUIRE(f2::canonicalize(a).offset == 0);
}

TEST_CASE("canonical equality iff identical point sets") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        auto rand_space = [&]() {
            AffineSubspace s;
            s.dim = 6;
            int k = static_cast<int>(rng() % 4);
            for (int i = 0; i < k; ++i) s.basis.push_back(rng() & 0x3f);
            s.offset = rng() & 0x3f;
            return s;
        };
        AffineSubspace a = rand_space(), b = rand_space();
        auto pa = f2::enumerate_points(a);
        auto pb = f2::enumerate_points(b);
        std::set<Vec> sa(pa.begin(), pa.end()), sb(pb.begin(), pb.end());
        REQUIRE(f2::same_subspace(a, b) == (sa == sb));
    }
}

TEST_CASE("solve round-trips constraints") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        AffineSubspace s;
        s.dim = 6;
        int k = static_cast<int>(rng() % 4);
        for (int i = 0; i < k; ++i) s.basis.push_back(rng() & 0x3f);
        s.offset = rng() & 0x3f;
        s = f2::canonicalize(s);
        f2::LinearSystem sys = f2::to_constraints(s);
        AffineSubspace back = f2::solve(sys);
        REQUIRE(f2::same_subspace(s, back));
    }
}

TEST_CASE("identity relation composes as a unit") {
    AffLagRelation id1 = AffLagRelation::identity(1);
    REQUIRE(is_lagrangian(id1));
    AffLagRelation r = rel_compose(id1, id1);
    REQUIRE(r.canonical_equal(id1));
}

TEST_CASE("converse is an involution and fixes the identity") {
    AffLagRelation id2 = AffLagRelation::identity(2);
    REQUIRE(rel_converse(id2).canonical_equal(id2));
    REQUIRE(rel_converse(rel_converse(id2)).canonical_equal(id2));
}

TEST_CASE("full space on one wire is not lagrangian") {
    AffLagRelation r;
    r.n_in = 1;
    r.n_out = 1;
    r.space = AffineSubspace::full(4);
    REQUIRE_FALSE(is_lagrangian(r));
}

TEST_CASE("relation json round trip") {
    AffLagRelation id2 = AffLagRelation::identity(2);
    auto j = relation_to_json(id2);
    AffLagRelation back = relation_from_json(j);
    REQUIRE(back.canonical_equal(id2));
    REQUIRE(is_lagrangian(back));
}

TEST_CASE("compose matches pointwise relational composition") {
    std::mt19937_64 rng(17);
    auto rand_rel = [&](int n_in, int n_out) {
        AffLagRelation r;
        r.n_in = n_in;
        r.n_out = n_out;
        AffineSubspace s;
        s.dim = 2 * (n_in + n_out);
        int k = static_cast<int>(rng() % (s.dim + 1));
        for (int i = 0; i < k; ++i) s.basis.push_back(rng() & ((Vec{1} << s.dim) - 1));
        s.offset = rng() & ((Vec{1} << s.dim) - 1);
        if (rng() % 8 == 0) s = AffineSubspace::empty_space(s.dim);
        r.space = f2::canonicalize(s);
        return r;
    };
    for (int trial = 0; trial < 300; ++trial) {
        int n = 1 + static_cast<int>(rng() % 2);
        int k = 1 + static_cast<int>(rng() % 2);
        int m = 1 + static_cast<int>(rng() % 2);
        AffLagRelation r1 = rand_rel(n, k), r2 = rand_rel(k, m);
        AffLagRelation comp = rel_compose(r1, r2);
        // Brute-force relational composition of the enumerations.
        std::set<Vec> expect;
        for (Vec p1 : enumerate_relation(r1))
            for (Vec p2 : enumerate_relation(r2)) {
                bool match = true;
                for (int i = 0; i < 2 * k && match; ++i) {
                    bool left = f2::get_bit(p1, 2 * n + i);
                    bool right = f2::get_bit(p2, i);
                    if (left != right) match = false;
                }
                if (!match) continue;
                Vec joined = 0;
                for (int i = 0; i < 2 * n; ++i)
                    if (f2::get_bit(p1, i)) joined = f2::set_bit(joined, i, true);
                for (int i = 0; i < 2 * m; ++i)
                    if (f2::get_bit(p2, 2 * k + i)) joined = f2::set_bit(joined, 2 * n + i, true);
                expect.insert(joined);
            }
        auto got_pts = enumerate_relation(comp);
        std::set<Vec> got(got_pts.begin(), got_pts.end());
        REQUIRE(got == expect);
    }
}

TEST_CASE("tensor point set is the cartesian product on one-wire relations") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        auto rand_rel = [&]() {
            AffLagRelation r;
            r.n_in = 1;
            r.n_out = 1;
            AffineSubspace s;
            s.dim = 4;
            int k = static_cast<int>(rng() % 4);
            for (int i = 0; i < k; ++i) s.basis.push_back(rng() & 0xf);
            s.offset = rng() & 0xf;
            r.space = f2::canonicalize(s);
            return r;
        };
        AffLagRelation r1 = rand_rel(), r2 = rand_rel();
        AffLagRelation t = rel_tensor(r1, r2);
        std::set<Vec> expect;
        for (Vec p1 : enumerate_relation(r1))
            for (Vec p2 : enumerate_relation(r2)) {
                // r1 wire = wire 0, r2 wire = wire 1 on each side.
                Vec v = 0;
                auto put = [&](bool bit, int pos) { if (bit) v = f2::set_bit(v, pos, true); };
                put(f2::get_bit(p1, 0), 0);  // x_in
                put(f2::get_bit(p2, 0), 1);
                put(f2::get_bit(p1, 1), 2);  // z_in
                put(f2::get_bit(p2, 1), 3);
                put(f2::get_bit(p1, 2), 4);  // x_out
                put(f2::get_bit(p2, 2), 5);
                put(f2::get_bit(p1, 3), 6);  // z_out
                put(f2::get_bit(p2, 3), 7);
                expect.insert(v);
            }
        auto got_pts = enumerate_relation(t);
        std::set<Vec> got(got_pts.begin(), got_pts.end());
        REQUIRE(got == expect);
    }
}

TEST_CASE("compose and tensor of lagrangian relations stay lagrangian when nonempty") {
    AffLagRelation id1 = AffLagRelation::identity(1);
    AffLagRelation t = rel_tensor(id1, id1);
    REQUIRE(is_lagrangian(t));
    REQUIRE(t.canonical_equal(AffLagRelation::identity(2)));
    REQUIRE(is_lagrangian(rel_compose(t, t)));
}
