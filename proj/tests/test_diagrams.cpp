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
#include "knot/diagram.hpp"
#include "knot/expr.hpp"
#include "knot/json_io.hpp"

using namespace knot;

TEST_CASE("identity tensor has the expected boundary words") {
    OpenDiagram d = parse_diagram("par(id.b, id.g)");
    REQUIRE(word_bits(d.ins) == "10");
    REQUIRE(word_bits(d.outs) == "10");
}

TEST_CASE("par with empty is the other diagram up to relabeling") {
    OpenDiagram d = parse_diagram("par(empty, cross.same.bb.v1)");
    OpenDiagram e = parse_diagram("cross.same.bb.v1");
    REQUIRE(canonical_hash(d) == canonical_hash(e));
}

TEST_CASE("state and effect bookkeeping") {
    OpenDiagram d = parse_diagram("par(state.b, effect.g)");
    REQUIRE(word_bits(d.ins) == "0");
    REQUIRE(word_bits(d.outs) == "1");
}

TEST_CASE("seq of identities is an identity") {
    OpenDiagram d = parse_diagram("seq(id.b, id.b)");
    REQUIRE(canonical_hash(d) == canonical_hash(parse_diagram("id.b")));
}

TEST_CASE("mismatched colors fail to compose") {
    REQUIRE_THROWS_AS(parse_diagram("seq(id.b, id.g)"), TypeMismatchError);
}

TEST_CASE("snake composition yields a plain wire") {
    // Bend a black wire with a cup and a cap.
    OpenDiagram d = parse_diagram("seq(par(cup.b, id.b), par(id.b, cap.b))");
    REQUIRE(canonical_hash(d) == canonical_hash(parse_diagram("id.b")));
}

TEST_CASE("closed scalar diagram has empty boundaries") {
    OpenDiagram d = parse_diagram("seq(state.b, effect.b)");
    REQUIRE(d.ins.empty());
    REQUIRE(d.outs.empty());
    REQUIRE(d.nodes.size() == 2);
}

TEST_CASE("cup then cap forms a circle") {
    OpenDiagram d = parse_diagram("seq(cup.b, cap.b)");
    REQUIRE(d.nodes.empty());
    REQUIRE(d.circles[kBlack] == 1);
}

TEST_CASE("interchange law holds by construction") {
    std::string a = "split.b", b = "merge.g";  // 1->2 and 2->1
    OpenDiagram lhs = parse_diagram("seq(par(split.b, merge.g), par(merge.b, split.g))");
    OpenDiagram rhs =
        parse_diagram("par(seq(split.b, merge.b), seq(merge.g, split.g))");
    REQUIRE(canonical_hash(lhs) == canonical_hash(rhs));
}

TEST_CASE("seq associativity gives isomorphic graphs") {
    OpenDiagram l = parse_diagram("seq(seq(split.b, merge.b), dec.bar.b)");
    OpenDiagram r = parse_diagram("seq(split.b, seq(merge.b, dec.bar.b))");
    REQUIRE(canonical_hash(l) == canonical_hash(r));
}

TEST_CASE("hashes differ for different wire colors") {
    REQUIRE(canonical_hash(parse_diagram("id.b")) != canonical_hash(parse_diagram("id.g")));
}

TEST_CASE("node relabeling keeps the digest") {
    OpenDiagram d = parse_diagram("seq(split.b, merge.b)");
    // Reverse node order manually.
    OpenDiagram r = d;
    std::reverse(r.nodes.begin(), r.nodes.end());
    int last = static_cast<int>(d.nodes.size()) - 1;
    for (auto& e : r.edges) {
        if (!e.first.is_boundary()) e.first.node = last - e.first.node;
        if (!e.second.is_boundary()) e.second.node = last - e.second.node;
    }
    r.validate();
    REQUIRE(canonical_hash(d) == canonical_hash(r));
}

TEST_CASE("same-color crossing variants collapse during parsing") {
    REQUIRE(canonical_hash(parse_diagram("cross.same.bb.v2")) ==
            canonical_hash(parse_diagram("cross.same.bb.v1")));
    // Rule-pack loading keeps them distinct.
    FromExprOptions raw;
    raw.normalize_crossings = false;
    REQUIRE(canonical_hash(from_expr(parse_expr("cross.same.bb.v2"), raw)) !=
            canonical_hash(parse_diagram("cross.same.bb.v1")));
}

TEST_CASE("typecheck flags mixed-color crossing boundaries") {
    OpenDiagram d = parse_diagram("cross.op.bg.v1");
    REQUIRE(word_bits(d.ins) == "10");
    REQUIRE(word_bits(d.outs) == "01");
}

TEST_CASE("json graph round trip") {
    OpenDiagram d = parse_diagram("seq(cross.op.bg.v1, cross.op.bg.v2)");
    json j = diagram_to_json(d);
    OpenDiagram back = diagram_from_json(j);
    REQUIRE(canonical_hash(d) == canonical_hash(back));
}

TEST_CASE("validate rejects dangling ports") {
    OpenDiagram d;
    d.nodes.push_back("split.b");
    d.ins = "b";
    d.outs = "bb";
    d.edges.push_back({in_port(0), End{0, 0}});
    d.edges.push_back({out_port(0), End{0, 1}});
    // out port 1 and node port 2 left dangling
    REQUIRE_THROWS_AS(d.validate(), DiagramError);
}
