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

#include "knot/doubled.hpp"
#include "knot/randomgen.hpp"
#include "knot/verify.hpp"

using namespace knot;

namespace {

const DoubledDiagram& expect_doubled(const RecognizeResult& r) {
    if (std::holds_alternative<NotDoubled>(r)) {
        INFO(std::get<NotDoubled>(r).reason);
        REQUIRE(std::holds_alternative<DoubledDiagram>(r));
    }
    return std::get<DoubledDiagram>(r);
}

/// Control on the first pair, target on the second.
OpenDiagram doubled_cnot(bool control_first) {
    OpenDiagram ctrl = make_junction_spider(1, 2, 0);
    OpenDiagram targ = make_loop_spider(2, 1, 0);
    if (control_first) {
        OpenDiagram top = par_compose(ctrl, parse_diagram("par(id.b, id.b)"));
        OpenDiagram bottom = par_compose(parse_diagram("par(id.b, id.b)"), targ);
        return seq_compose(top, bottom);
    }
    OpenDiagram top = par_compose(parse_diagram("par(id.b, id.b)"), ctrl);
    // control pair sits second: its first output pair becomes the middle;
    // route so the loop takes (target-in, middle).
    OpenDiagram bottom = par_compose(targ, parse_diagram("par(id.b, id.b)"));
    return seq_compose(top, bottom);
}

}  // namespace

TEST_CASE("junction and loop spiders carry the intended matrices") {
    // One pair in, one pair out, no decorator: the pair projector.
    ExactMatrix p = evaluate_zx(functor_Z(make_junction_spider(1, 1, 0)));
    ExactMatrix expect(4, 4);
    expect.at(0, 0) = expect.at(3, 3) = 1;
    REQUIRE(scalar_equal(p, expect));
    ExactMatrix q = evaluate_zx(functor_Z(make_loop_spider(1, 1, 0)));
    REQUIRE(scalar_equal(q, expect));
    // Decorated loop: the logical bit flip.
    ExactMatrix x = evaluate_zx(functor_Z(make_loop_spider(1, 1, 1)));
    ExactMatrix flip(4, 4);
    flip.at(3, 0) = flip.at(0, 3) = 1;
    REQUIRE(scalar_equal(x, flip));
}

TEST_CASE("recognition decomposes generator stacks") {
    OpenDiagram d = seq_compose(make_junction_spider(1, 2, 1),
                                par_compose(make_loop_spider(1, 1, 0),
                                            make_junction_spider(1, 1, 0)));
    auto r = recognize_doubled(d);
    const DoubledDiagram& dd = expect_doubled(r);
    REQUIRE(dd.n_in_pairs == 1);
    REQUIRE(dd.n_out_pairs == 2);
    int junctions = 0, loops = 0;
    for (const auto& c : dd.clusters) {
        if (c.kind == DoubledCluster::Kind::Junction) ++junctions;
        if (c.kind == DoubledCluster::Kind::Loop) ++loops;
    }
    REQUIRE(junctions == 2);
    REQUIRE(loops == 1);
}

TEST_CASE("recognition rejects non-paired diagrams") {
    REQUIRE(std::holds_alternative<NotDoubled>(recognize_doubled(parse_diagram("id.b"))));
    REQUIRE(std::holds_alternative<NotDoubled>(
        recognize_doubled(parse_diagram("par(id.b, id.b)"))));
    REQUIRE(std::holds_alternative<NotDoubled>(
        recognize_doubled(parse_diagram("par(id.g, id.g)"))));
    REQUIRE(std::holds_alternative<NotDoubled>(
        recognize_doubled(par_compose(make_junction_spider(1, 1, 0), parse_diagram("dec.circle.b")))));
}

TEST_CASE("collapse sends spiders to spiders") {
    auto r = recognize_doubled(make_junction_spider(2, 1, 1));
    const DoubledDiagram& dd = expect_doubled(r);
    OpenDiagram k = functor_K(dd);
    REQUIRE(k.nodes.size() == 1);
    REQUIRE(k.nodes[0] == "z:pi:0:3");
    auto r2 = recognize_doubled(make_loop_spider(1, 2, 0));
    OpenDiagram k2 = functor_K(expect_doubled(r2));
    REQUIRE(k2.nodes.size() == 1);
    REQUIRE(k2.nodes[0] == "x:0:0:3");
}

TEST_CASE("pair swap collapses to a wire swap") {
    OpenDiagram d = seq_compose(
        par_compose(make_junction_spider(1, 1, 0), make_junction_spider(1, 1, 0)),
        make_pair_swap());
    auto r = recognize_doubled(d);
    OpenDiagram k = functor_K(expect_doubled(r));
    ExactMatrix m = evaluate_zx(k);
    // Projectors vanish modulo scalars only on the code space; compare
    // against z-spiders wired through a swap instead.
    OpenDiagram expect = parse_diagram("seq(par(z:0:1:1, z:0:1:1), swap)");
    REQUIRE(scalar_equal(m, evaluate_zx(expect)));
}

TEST_CASE("doubled cnot collapses to the cnot permutation in both directions") {
    for (bool dir : {true, false}) {
        OpenDiagram d = doubled_cnot(dir);
        auto r = recognize_doubled(d);
        OpenDiagram k = functor_K(expect_doubled(r));
        ExactMatrix m = evaluate_zx(k);
        ExactMatrix cnot(4, 4);
        if (dir) {
            cnot.at(0, 0) = cnot.at(1, 1) = cnot.at(3, 2) = cnot.at(2, 3) = 1;
        } else {
            cnot.at(0, 0) = cnot.at(1, 1) = cnot.at(3, 1 + 2) = cnot.at(2, 3) = 1;
            // control on the second wire: |x y> -> |x+y y>
            cnot = ExactMatrix(4, 4);
            cnot.at(0, 0) = cnot.at(3, 1) = cnot.at(2, 2) = cnot.at(1, 3) = 1;
        }
        INFO((dir ? "control first" : "control second"));
        REQUIRE(scalar_equal(m, cnot));
        // The full image also matches the encoded gate.
        ExactMatrix full = evaluate_zx(functor_Z(d), 12);
        REQUIRE(full.rows == 16);
    }
}

TEST_CASE("ribbon and tangle junction forms decide equal") {
    for (auto [m, n, l] : {std::tuple{1, 1, 0}, {2, 1, 1}, {1, 2, 0}, {2, 2, 1}}) {
        OpenDiagram tangle = make_junction_spider(m, n, l);
        OpenDiagram ribbon = make_junction_spider_ribbon(m, n, l);
        INFO(m << "->" << n << " phase " << l);
        REQUIRE(decide_equal_doubled(tangle, ribbon) == DoubledVerdict::Equal);
    }
}

TEST_CASE("spider fusion battery decides equal") {
    // Two junction spiders in sequence fuse.
    OpenDiagram lhs = seq_compose(make_junction_spider(1, 1, 1), make_junction_spider(1, 2, 0));
    OpenDiagram rhs = make_junction_spider(1, 2, 1);
    REQUIRE(decide_equal_doubled(lhs, rhs) == DoubledVerdict::Equal);
    // Same for loop spiders.
    OpenDiagram lhs2 = seq_compose(make_loop_spider(1, 1, 1), make_loop_spider(1, 2, 1));
    OpenDiagram rhs2 = make_loop_spider(1, 2, 0);
    REQUIRE(decide_equal_doubled(lhs2, rhs2) == DoubledVerdict::Equal);
}

TEST_CASE("copy battery decides equal") {
    // A dot pair through a junction spider copies.
    OpenDiagram lhs = seq_compose(make_dot_pair(true), make_junction_spider(1, 2, 0));
    OpenDiagram rhs = par_compose(make_dot_pair(true), make_dot_pair(true));
    REQUIRE(decide_equal_doubled(lhs, rhs) == DoubledVerdict::Equal);
    // A bend through a loop spider copies dually.
    OpenDiagram bell = seq_compose(generator_diagram("cup.b"), make_junction_spider(1, 1, 0));
    OpenDiagram lhs2 = seq_compose(bell, make_loop_spider(1, 2, 0));
    OpenDiagram rhs2 = par_compose(bell, bell);
    REQUIRE(decide_equal_doubled(lhs2, rhs2) == DoubledVerdict::Equal);
}

TEST_CASE("bialgebra battery decides equal") {
    OpenDiagram x21 = make_loop_spider(2, 1, 0);
    OpenDiagram z12 = make_junction_spider(1, 2, 0);
    OpenDiagram lhs = seq_compose(x21, z12);
    OpenDiagram copies = par_compose(z12, z12);
    OpenDiagram mid = par_compose(
        par_compose(make_junction_spider(1, 1, 0), make_pair_swap()),
        make_junction_spider(1, 1, 0));
    OpenDiagram adds = par_compose(x21, x21);
    OpenDiagram rhs = seq_compose(seq_compose(copies, mid), adds);
    REQUIRE(decide_equal_doubled(lhs, rhs) == DoubledVerdict::Equal);
}

TEST_CASE("pi copy battery decides equal") {
    // A decorated junction wire through a loop spider copies the phase.
    OpenDiagram lhs = seq_compose(make_junction_spider(1, 1, 1), make_loop_spider(1, 2, 0));
    OpenDiagram rhs = seq_compose(
        make_loop_spider(1, 2, 0),
        par_compose(make_junction_spider(1, 1, 1), make_junction_spider(1, 1, 1)));
    REQUIRE(decide_equal_doubled(lhs, rhs) == DoubledVerdict::Equal);
}

TEST_CASE("doubled cnot differs from the doubled identity") {
    OpenDiagram cnot = doubled_cnot(true);
    OpenDiagram ident = par_compose(make_junction_spider(1, 1, 0), make_junction_spider(1, 1, 0));
    REQUIRE(decide_equal_doubled(cnot, ident) == DoubledVerdict::NotEqual);
}

TEST_CASE("verdicts agree with the collapse oracle on random pairs") {
    std::mt19937_64 rng(99);
    int compared = 0;
    std::vector<OpenDiagram> batch;
    for (int i = 0; i < 40; ++i) batch.push_back(random_doubled_diagram(rng, 6, 2));
    for (std::size_t i = 0; i < batch.size(); ++i)
        for (std::size_t j = i + 1; j < batch.size(); ++j) {
            const OpenDiagram &d1 = batch[i], &d2 = batch[j];
            if (d1.ins != d2.ins || d1.outs != d2.outs) continue;
            auto r1 = recognize_doubled(d1);
            auto r2 = recognize_doubled(d2);
            REQUIRE(std::holds_alternative<DoubledDiagram>(r1));
            REQUIRE(std::holds_alternative<DoubledDiagram>(r2));
            DoubledVerdict v = decide_equal_doubled(d1, d2);
            ExactMatrix k1 = evaluate_zx(functor_K(std::get<DoubledDiagram>(r1)));
            ExactMatrix k2 = evaluate_zx(functor_K(std::get<DoubledDiagram>(r2)));
            bool mat = scalar_equal(k1, k2);
            INFO("pair " << i << "," << j);
            REQUIRE((v == DoubledVerdict::Equal) == mat);
            ++compared;
        }
    REQUIRE(compared > 50);
}
