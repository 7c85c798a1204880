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

#include "knot/canonical.hpp"
#include "knot/rulepack.hpp"
#include "knot/verify.hpp"

using namespace knot;

TEST_CASE("rule pack loads with all named rules present") {
    const auto& pack = default_rule_pack();
    for (int i = 1; i <= 22; ++i) {
        std::string name = "K" + std::to_string(i);
        INFO(name);
        REQUIRE_FALSE(rules_named(pack, name).empty());
    }
}

TEST_CASE("every rule instance is sound under the qubit semantics") {
    auto report = verify_rule_soundness(default_rule_pack(), Semantics::ZX);
    for (const auto& v : report) {
        INFO(v.instance << " [" << v.semantics << "] " << v.note);
        CHECK(v.sound);
    }
}

TEST_CASE("every rule instance is sound under the relation semantics") {
    auto report = verify_rule_soundness(default_rule_pack(), Semantics::Rel);
    for (const auto& v : report) {
        INFO(v.instance << " [" << v.semantics << "] " << v.note);
        CHECK(v.sound);
    }
}

TEST_CASE("a corrupted rule is reported unsound") {
    std::vector<RuleSchema> bad = parse_rule_pack(
        "rule BAD { lhs: seq(cross.op.bg.v1, cross.op.bg.v2); rhs: par(dec.circle.b, id.g); }");
    auto report = verify_rule_soundness(bad, Semantics::Both);
    REQUIRE_FALSE(report.empty());
    for (const auto& v : report) REQUIRE_FALSE(v.sound);
}

TEST_CASE("match counting on disjoint copies") {
    const auto& pack = default_rule_pack();
    const RuleSchema* k12 = rules_named(pack, "K12")[0];
    OpenDiagram one = parse_diagram("seq(split.b, merge.b)");
    OpenDiagram two = par_compose(one, one);
    REQUIRE(match_rule(one, *k12).size() == 1);
    REQUIRE(match_rule(two, *k12).size() == 2);
    OpenDiagram none = parse_diagram("id.b");
    REQUIRE(match_rule(none, *k12).empty());
}

TEST_CASE("two successive opposite crossings rewrite to parallel identities") {
    const auto& pack = default_rule_pack();
    OpenDiagram d = parse_diagram("seq(cross.op.bg.v1, cross.op.bg.v2)");
    auto k10 = rules_named(pack, "K10");
    const RuleSchema* r = k10[0];
    auto ms = match_rule(d, *r);
    REQUIRE(ms.size() == 1);
    OpenDiagram after = apply_rule(d, *r, ms[0]);
    REQUIRE(canonical_hash(after) == canonical_hash(parse_diagram("par(id.b, id.g)")));
}

TEST_CASE("spider-disappears on a lone bifurcation pair") {
    const auto& pack = default_rule_pack();
    const RuleSchema* k12 = rules_named(pack, "K12")[0];
    OpenDiagram d = parse_diagram("seq(split.b, merge.b)");
    auto ms = match_rule(d, *k12);
    REQUIRE(ms.size() == 1);
    OpenDiagram after = apply_rule(d, *k12, ms[0]);
    REQUIRE(canonical_hash(after) == canonical_hash(parse_diagram("id.b")));
}

TEST_CASE("forward then reverse application restores the diagram") {
    const auto& pack = default_rule_pack();
    // Exercise every concrete rule on its own lhs.
    for (const RuleSchema& r : pack) {
        if (r.meta_loop_commute) continue;
        INFO(r.variant);
        OpenDiagram host = r.lhs;
        auto ms = match_rule(host, r, true);
        REQUIRE_FALSE(ms.empty());
        OpenDiagram mid = apply_rule(host, r, ms[0], true);
        auto back = match_rule(mid, r, false);
        REQUIRE_FALSE(back.empty());
        bool restored = false;
        for (const auto& bm : back) {
            OpenDiagram again = apply_rule(mid, r, bm, false);
            if (canonical_hash(again) == canonical_hash(host)) {
                restored = true;
                break;
            }
        }
        CHECK(restored);
    }
}

TEST_CASE("loop commute side conditions are enforced") {
    OpenDiagram decorated = parse_diagram("dec.bar.b");
    REQUIRE_THROWS_AS(apply_loop_commute(decorated, 1, 1, true), SideConditionError);
    OpenDiagram plain = parse_diagram("merge.b");
    REQUIRE_THROWS_AS(apply_loop_commute(plain, 3, 1, true), SideConditionError);
    REQUIRE_NOTHROW(apply_loop_commute(plain, 2, 2, true));
}

TEST_CASE("boundary preservation under every pack rewrite") {
    const auto& pack = default_rule_pack();
    for (const RuleSchema& r : pack) {
        if (r.meta_loop_commute) continue;
        OpenDiagram host = par_compose(r.lhs, parse_diagram("dec.circle.b"));
        auto ms = match_rule(host, r, true);
        REQUIRE_FALSE(ms.empty());
        OpenDiagram after = apply_rule(host, r, ms[0], true);
        REQUIRE(after.ins == host.ins);
        REQUIRE(after.outs == host.outs);
        REQUIRE(typecheck(after).empty());
    }
}
