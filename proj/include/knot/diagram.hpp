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

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace knot {

// Wire colors. Braid diagrams use black ('b', printed as bit 1) and grey
// ('g', bit 0); ZX diagrams use qubit wires ('q').
constexpr char kBlack = 'b';
constexpr char kGrey = 'g';
constexpr char kQubit = 'q';

using Word = std::string;  // boundary word, one char per wire

inline std::string word_bits(const Word& w) {
    std::string s;
    for (char c : w) s += (c == kBlack ? '1' : c == kGrey ? '0' : 'q');
    return s;
}

struct TypeMismatchError : std::runtime_error {
    explicit TypeMismatchError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DiagramError : std::runtime_error {
    explicit DiagramError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Typing data for one generator symbol. Ports are numbered inputs first
/// (0..|ins|-1) then outputs.
struct GenDef {
    std::string name;
    Word ins;
    Word outs;
    bool structural = false;  // realized as wiring, never as a node

    int arity() const { return static_cast<int>(ins.size() + outs.size()); }
    char port_type(int p) const {
        return p < static_cast<int>(ins.size()) ? ins[p] : outs[p - ins.size()];
    }
};

namespace detail {
inline const std::vector<GenDef>& knot_table() {
    static const std::vector<GenDef> table = {
        {"id.b", "b", "b", true},
        {"id.g", "g", "g", true},
        {"state.b", "", "b", false},
        {"state.g", "", "g", false},
        {"effect.b", "b", "", false},
        {"effect.g", "g", "", false},
        {"cup.b", "", "bb", true},
        {"cup.g", "", "gg", true},
        {"cap.b", "bb", "", true},
        {"cap.g", "gg", "", true},
        {"cross.same.bb.v1", "bb", "bb", false},
        {"cross.same.bb.v2", "bb", "bb", false},
        {"cross.same.bb.v3", "bb", "bb", false},
        {"cross.same.gg.v1", "gg", "gg", false},
        {"cross.same.gg.v2", "gg", "gg", false},
        {"cross.same.gg.v3", "gg", "gg", false},
        // Opposite-color crossings. Class bg: the black strand passes over
        // the grey one; class gb: the grey strand passes over. v1 takes
        // (black, grey) to (grey, black); v2 is the mirrored orientation.
        {"cross.op.bg.v1", "bg", "gb", false},
        {"cross.op.bg.v2", "gb", "bg", false},
        {"cross.op.gb.v1", "bg", "gb", false},
        {"cross.op.gb.v2", "gb", "bg", false},
        {"split.b", "b", "bb", false},
        {"split.g", "g", "gg", false},
        {"merge.b", "bb", "b", false},
        {"merge.g", "gg", "g", false},
        {"dec.bar.b", "b", "b", false},
        {"dec.bar.g", "g", "g", false},
        {"dec.circle.b", "b", "b", false},
        {"dec.circle.g", "g", "g", false},
    };
    return table;
}
}  // namespace detail

/// ZX spider data decoded from a symbol such as "z:pi:2:1".
struct SpiderInfo {
    char color;     // 'z' or 'x'
    bool phase_pi;  // phase is pi (true) or 0 (false)
    int m;          // inputs
    int n;          // outputs
};

inline std::string spider_name(char color, bool phase_pi, int m, int n) {
    std::ostringstream os;
    os << color << ':' << (phase_pi ? "pi" : "0") << ':' << m << ':' << n;
    return os.str();
}

inline std::optional<SpiderInfo> parse_spider(const std::string& name) {
    if (name.size() < 7 || (name[0] != 'z' && name[0] != 'x') || name[1] != ':')
        return std::nullopt;
    std::vector<std::string> parts;
    std::string cur;
    for (char c : name) {
        if (c == ':') { parts.push_back(cur); cur.clear(); }
        else cur += c;
    }
    parts.push_back(cur);
    if (parts.size() != 4) return std::nullopt;
    SpiderInfo s;
    s.color = parts[0][0];
    if (parts[1] == "0") s.phase_pi = false;
    else if (parts[1] == "pi") s.phase_pi = true;
    else return std::nullopt;
    try {
        s.m = std::stoi(parts[2]);
        s.n = std::stoi(parts[3]);
    } catch (...) { return std::nullopt; }
    if (s.m < 0 || s.n < 0 || s.m + s.n == 0) return std::nullopt;
    return s;
}

/// Look up the typing of a generator symbol in either vocabulary.
/// Throws DiagramError for unknown names.
inline GenDef gen_def(const std::string& name) {
    for (const GenDef& g : detail::knot_table())
        if (g.name == name) return g;
    if (name == "id") return {"id", "q", "q", true};
    if (name == "cup") return {"cup", "", "qq", true};
    if (name == "cap") return {"cap", "qq", "", true};
    if (name == "swap") return {"swap", "qq", "qq", true};
    if (auto s = parse_spider(name)) {
        return {name, Word(static_cast<std::size_t>(s->m), kQubit),
                Word(static_cast<std::size_t>(s->n), kQubit), false};
    }
    throw DiagramError("unknown generator: " + name);
}

/// Parameter suffix of a dotted or colon-separated symbol name.
inline std::vector<std::string> gen_params(const std::string& name) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : name) {
        if (c == '.' || c == ':') { parts.push_back(cur); cur.clear(); }
        else cur += c;
    }
    parts.push_back(cur);
    parts.erase(parts.begin());
    return parts;
}

/// One endpoint of an edge: a node port, or a boundary port.
struct End {
    static constexpr std::int32_t kIn = -1;
    static constexpr std::int32_t kOut = -2;
    std::int32_t node = 0;  // node index, or kIn / kOut
    std::int32_t port = 0;

    bool is_boundary() const { return node < 0; }
    bool operator==(const End& o) const { return node == o.node && port == o.port; }
    bool operator<(const End& o) const {
        return node != o.node ? node < o.node : port < o.port;
    }
};

inline End in_port(int i) { return {End::kIn, i}; }
inline End out_port(int i) { return {End::kOut, i}; }

using Edge = std::pair<End, End>;

/// A wire-typed open graph. Nodes carry generator symbols; every node
/// port and boundary port is the endpoint of exactly one edge. Closed
/// zero-node loops are tracked per wire type in `circles`.
///
/// Values are immutable by convention after construction; all operations
/// return fresh diagrams.
struct OpenDiagram {
    std::vector<std::string> nodes;
    std::vector<Edge> edges;
    Word ins;
    Word outs;
    std::map<char, int> circles;

    char end_type(const End& e) const {
        if (e.node == End::kIn) return ins.at(e.port);
        if (e.node == End::kOut) return outs.at(e.port);
        return gen_def(nodes.at(e.node)).port_type(e.port);
    }

    /// Structural well-formedness: every port covered exactly once and
    /// edge endpoint types agree. Throws DiagramError on violation.
    void validate() const {
        std::map<std::pair<std::int32_t, std::int32_t>, int> seen;
        auto touch = [&](const End& e) { seen[{e.node, e.port}]++; };
        for (const Edge& e : edges) {
            touch(e.first);
            touch(e.second);
            if (end_type(e.first) != end_type(e.second))
                throw DiagramError("edge endpoint wire types differ");
        }
        std::size_t expect = ins.size() + outs.size();
        for (const std::string& s : nodes) expect += gen_def(s).arity();
        std::size_t total = 0;
        for (auto& [k, v] : seen) {
            if (v != 1) throw DiagramError("port covered more than once");
            total += v;
        }
        if (total != expect) throw DiagramError("port not covered by any edge");
        for (int i = 0; i < static_cast<int>(ins.size()); ++i)
            if (!seen.count({End::kIn, i})) throw DiagramError("input port uncovered");
        for (int i = 0; i < static_cast<int>(outs.size()); ++i)
            if (!seen.count({End::kOut, i})) throw DiagramError("output port uncovered");
    }

    /// The edge touching a given end, if any.
    int edge_at(const End& e) const {
        for (std::size_t i = 0; i < edges.size(); ++i)
            if (edges[i].first == e || edges[i].second == e) return static_cast<int>(i);
        return -1;
    }

    End peer(const End& e) const {
        int idx = edge_at(e);
        if (idx < 0) throw DiagramError("dangling end");
        const Edge& ed = edges[idx];
        return ed.first == e ? ed.second : ed.first;
    }
};

/// A single generator as a diagram. Structural symbols produce node-free
/// wiring; everything else produces one node.
inline OpenDiagram generator_diagram(const std::string& name) {
    GenDef g = gen_def(name);
    OpenDiagram d;
    d.ins = g.ins;
    d.outs = g.outs;
    if (g.structural) {
        if (g.name == "swap") {
            d.edges.push_back({in_port(0), out_port(1)});
            d.edges.push_back({in_port(1), out_port(0)});
        } else if (g.ins.empty() && g.outs.size() == 2) {  // cups
            d.edges.push_back({out_port(0), out_port(1)});
        } else if (g.outs.empty() && g.ins.size() == 2) {  // caps
            d.edges.push_back({in_port(0), in_port(1)});
        } else {  // identities
            d.edges.push_back({in_port(0), out_port(0)});
        }
        return d;
    }
    d.nodes.push_back(g.name);
    for (int p = 0; p < static_cast<int>(g.ins.size()); ++p)
        d.edges.push_back({in_port(p), End{0, p}});
    for (int p = 0; p < static_cast<int>(g.outs.size()); ++p)
        d.edges.push_back({out_port(p), End{0, static_cast<int>(g.ins.size()) + p}});
    return d;
}

namespace detail {
inline End shift_node(const End& e, int delta) {
    return e.is_boundary() ? e : End{e.node + delta, e.port};
}
}  // namespace detail

/// Side-by-side composition: a's wires before b's.
inline OpenDiagram par_compose(const OpenDiagram& a, const OpenDiagram& b) {
    OpenDiagram d;
    d.nodes = a.nodes;
    d.nodes.insert(d.nodes.end(), b.nodes.begin(), b.nodes.end());
    d.ins = a.ins + b.ins;
    d.outs = a.outs + b.outs;
    d.edges = a.edges;
    int dn = static_cast<int>(a.nodes.size());
    int din = static_cast<int>(a.ins.size());
    int dout = static_cast<int>(a.outs.size());
    auto shift = [&](End e) {
        if (e.node == End::kIn) return in_port(e.port + din);
        if (e.node == End::kOut) return out_port(e.port + dout);
        return End{e.node + dn, e.port};
    };
    for (const Edge& e : b.edges) d.edges.push_back({shift(e.first), shift(e.second)});
    d.circles = a.circles;
    for (auto& [k, v] : b.circles) d.circles[k] += v;
    return d;
}

/// Serial composition (a's outputs into b's inputs). Throws
/// TypeMismatchError if the boundary words differ.
inline OpenDiagram seq_compose(const OpenDiagram& a, const OpenDiagram& b) {
    if (a.outs != b.ins)
        throw TypeMismatchError("cannot compose: codomain \"" + word_bits(a.outs) +
                                "\" vs domain \"" + word_bits(b.ins) + "\"");
    OpenDiagram d;
    d.nodes = a.nodes;
    d.nodes.insert(d.nodes.end(), b.nodes.begin(), b.nodes.end());
    d.ins = a.ins;
    d.outs = b.outs;
    d.circles = a.circles;
    for (auto& [k, v] : b.circles) d.circles[k] += v;
    int dn = static_cast<int>(a.nodes.size());

    int k = static_cast<int>(a.outs.size());
    // Each interface wire i has an a-flank (a's out port i) and a b-flank
    // (b's in port i). A flank attaches to a real end, or links to another
    // wire's same-side flank (a cup among a's outputs, a cap among b's
    // inputs). Wires chain into paths between two real ends or into closed
    // circles.
    std::vector<End> from_a(k), from_b(k);
    std::vector<char> has_a(k, 0), has_b(k, 0);
    std::vector<int> a_link(k, -1), b_link(k, -1);
    auto push_plain = [&](End x, End y) { d.edges.push_back({x, y}); };

    for (const Edge& e : a.edges) {
        End u = e.first, v = e.second;
        bool ui = u.node == End::kOut, vi = v.node == End::kOut;
        if (ui && vi) { a_link[u.port] = v.port; a_link[v.port] = u.port; }
        else if (ui) { from_a[u.port] = v; has_a[u.port] = 1; }
        else if (vi) { from_a[v.port] = u; has_a[v.port] = 1; }
        else push_plain(u, v);
    }
    auto shift_b = [&](End e) {
        return e.is_boundary() ? e : End{e.node + dn, e.port};
    };
    for (const Edge& e : b.edges) {
        bool ui = e.first.node == End::kIn, vi = e.second.node == End::kIn;
        if (ui && vi) {
            b_link[e.first.port] = e.second.port;
            b_link[e.second.port] = e.first.port;
        } else if (ui) { from_b[e.first.port] = shift_b(e.second); has_b[e.first.port] = 1; }
        else if (vi) { from_b[e.second.port] = shift_b(e.first); has_b[e.second.port] = 1; }
        else push_plain(shift_b(e.first), shift_b(e.second));
    }

    std::vector<char> visited(k, 0);
    // Walk from (wire w, flank s): cross to the opposite flank; follow its
    // link if present; repeat until the opposite flank holds a real end.
    auto walk = [&](int w, char s) -> End {
        while (true) {
            visited[w] = 1;
            char t = (s == 'a') ? 'b' : 'a';
            int link = (t == 'a') ? a_link[w] : b_link[w];
            if (link < 0) return (t == 'a') ? from_a[w] : from_b[w];
            w = link;
            s = t;  // we arrive at wire `link` on flank t
        }
    };
    for (int i = 0; i < k; ++i) {
        if (visited[i]) continue;
        if (has_a[i]) {
            End right = walk(i, 'a');
            push_plain(from_a[i], right);
        } else if (has_b[i]) {
            End left = walk(i, 'b');
            push_plain(from_b[i], left);
        }
    }
    for (int i = 0; i < k; ++i) {
        if (visited[i]) continue;
        // Purely linked cycle: a circle of this wire's type.
        int w = i;
        char s = 'a';
        while (!visited[w]) {
            visited[w] = 1;
            char t = (s == 'a') ? 'b' : 'a';
            int link = (t == 'a') ? a_link[w] : b_link[w];
            w = link;
            s = t;
        }
        d.circles[a.outs[i]]++;
    }
    return d;
}

inline OpenDiagram empty_diagram() { return OpenDiagram{}; }

}  // namespace knot
