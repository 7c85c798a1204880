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

#include "knot/canonical.hpp"
#include "knot/zx.hpp"

using namespace knot;

TEST_CASE("every fragment axiom instance is oracle sound") {
    for (const RuleSchema& r : zx_rule_pack()) {
        INFO(r.variant);
        REQUIRE(static_cast<int>(r.lhs.ins.size() + r.lhs.outs.size()) <= 4);
        CHECK(scalar_equal(evaluate_zx(r.lhs), evaluate_zx(r.rhs)));
    }
}

TEST_CASE("fusion instance: two adjacent pi spiders cancel to phase zero") {
    OpenDiagram lhs = seq_compose(parse_diagram("z:pi:1:1"), parse_diagram("z:pi:1:1"));
    OpenDiagram rhs = parse_diagram("z:0:1:1");
    REQUIRE(scalar_equal(evaluate_zx(lhs), evaluate_zx(rhs)));
    OpenDiagram simp = simplify(lhs);
    REQUIRE(simp.nodes.empty());  // fuses to identity and is removed
}

TEST_CASE("hopf instance disconnects") {
    OpenDiagram lhs;
    lhs.nodes = {"z:0:1:2", "x:0:2:1"};
    lhs.ins = "q";
    lhs.outs = "q";
    lhs.edges = {{in_port(0), End{0, 0}},
                 {End{0, 1}, End{1, 0}},
                 {End{0, 2}, End{1, 1}},
                 {End{1, 2}, out_port(0)}};
    lhs.validate();
    OpenDiagram rhs = par_compose(parse_diagram("z:0:1:0"), parse_diagram("x:0:0:1"));
    REQUIRE(scalar_equal(evaluate_zx(lhs), evaluate_zx(rhs)));
    OpenDiagram simp = simplify(lhs);
    REQUIRE(scalar_equal(evaluate_zx(simp), evaluate_zx(lhs)));
    REQUIRE(zx_no_opposite_parallel_edges(simp));
}

TEST_CASE("a chain of five phase-free spiders becomes a single wire") {
    OpenDiagram d = parse_diagram("z:0:1:1");
    for (int i = 0; i < 4; ++i) d = seq_compose(d, parse_diagram("z:0:1:1"));
    OpenDiagram s = simplify(d);
    REQUIRE(s.nodes.empty());
    REQUIRE(canonical_hash(s) == canonical_hash(parse_diagram("id")));
}

TEST_CASE("apply_zx_rule: unfuse then fuse restores the diagram") {
    auto pack = zx_rule_pack();
    const RuleSchema* fusion = nullptr;
    for (const auto& r : pack)
        if (r.name == "fusion") { fusion = &r; break; }
    REQUIRE(fusion != nullptr);
    OpenDiagram host = fusion->rhs;
    auto rev = match_rule(host, *fusion, false);
    REQUIRE_FALSE(rev.empty());
    OpenDiagram unfused = apply_rule(host, *fusion, rev[0], false);
    auto fwd = match_rule(unfused, *fusion, true);
    REQUIRE_FALSE(fwd.empty());
    bool restored = false;
    for (const auto& m : fwd)
        if (canonical_hash(apply_rule(unfused, *fusion, m, true)) == canonical_hash(host))
            restored = true;
    REQUIRE(restored);
}

namespace {
// Random well-typed qubit diagram built by stacking layers.
OpenDiagram random_zx(std::mt19937_64& rng, int max_spiders, int max_boundary) {
    int width = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_boundary));
    OpenDiagram d = empty_diagram();
    for (int i = 0; i < width; ++i) d = par_compose(d, parse_diagram("id"));
    int spiders = static_cast<int>(rng() % static_cast<unsigned>(max_spiders + 1));
    for (int s = 0; s < spiders; ++s) {
        int w = static_cast<int>(d.outs.size());
        char color = (rng() & 1) ? 'z' : 'x';
        int phase = static_cast<int>(rng() & 1);
        int pos = w ? static_cast<int>(rng() % static_cast<unsigned>(w)) : 0;
        int m = w ? 1 + static_cast<int>(rng() % std::min<unsigned>(2, w - pos)) : 0;
        int n = static_cast<int>(rng() % 3);
        if (w == 0) break;
        if (m + n == 0) n = 1;
        if (static_cast<int>(d.outs.size()) - m + n > max_boundary + 2) continue;
        OpenDiagram layer = empty_diagram();
        for (int i = 0; i < pos; ++i) layer = par_compose(layer, parse_diagram("id"));
        layer = par_compose(layer, generator_diagram(spider_name(color, phase, m, n)));
        for (int i = pos + m; i < w; ++i) layer = par_compose(layer, parse_diagram("id"));
        d = seq_compose(d, layer);
    }
    return d;
}
}  // namespace

TEST_CASE("simplify preserves semantics and reaches reduced form") {
    std::mt19937_64 rng(2026);
    for (int trial = 0; trial < 300; ++trial) {
        OpenDiagram d = random_zx(rng, 10, 4);
        if (d.ins.size() + d.outs.size() > 8) continue;
        OpenDiagram s = simplify(d);
        INFO("trial " << trial);
        REQUIRE(scalar_equal(evaluate_zx(s), evaluate_zx(d)));
        REQUIRE(zx_no_same_color_adjacency(s));
        REQUIRE(zx_no_opposite_parallel_edges(s));
        if (!zx_is_zero_form(s)) REQUIRE(zx_no_removable_identity(s));
    }
}

TEST_CASE("simplify is idempotent") {
    std::mt19937_64 rng(4099);
    for (int trial = 0; trial < 200; ++trial) {
        OpenDiagram d = random_zx(rng, 10, 4);
        OpenDiagram s = simplify(d);
        REQUIRE(canonical_hash(simplify(s)) == canonical_hash(s));
    }
}

TEST_CASE("simplify strictly decreases the measure at each outcome") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        OpenDiagram d = random_zx(rng, 8, 4);
        OpenDiagram s = simplify(d);
        if (zx_is_zero_form(s)) continue;  // terminal zero replacement
        // Lexicographic (spiders, edges) never increases, and the output
        // admits no further move.
        REQUIRE((s.nodes.size() < d.nodes.size() ||
                 (s.nodes.size() == d.nodes.size() && s.edges.size() <= d.edges.size())));
    }
}
