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
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "knot/canonical.hpp"
#include "knot/diagram.hpp"
#include "knot/expr.hpp"

namespace knot {

/// A named rewrite rule: two templates with identical boundary words.
/// `meta_loop_commute` marks the context rule, which is applied through a
/// dedicated checked interface rather than by template matching.
struct RuleSchema {
    std::string name;
    std::string variant;
    OpenDiagram lhs;
    OpenDiagram rhs;
    bool meta_loop_commute = false;
    std::string where;  // side-condition note, informational

    const OpenDiagram& side(bool forward) const { return forward ? lhs : rhs; }
    const OpenDiagram& other(bool forward) const { return forward ? rhs : lhs; }
};

struct InvalidMatchError : std::runtime_error {
    explicit InvalidMatchError(const std::string& m) : std::runtime_error(m) {}
};
struct SideConditionError : std::runtime_error {
    explicit SideConditionError(const std::string& m) : std::runtime_error(m) {}
};

/// An embedding of a rule side into a host diagram. `stub[k]` is the host
/// end the template's k-th boundary port plugs into; `pair_link[k] = j`
/// marks template ports glued to each other by a single host edge (then
/// the stub entries are unused for that pair). `consumed` lists host edges
/// removed by the rewrite.
struct RuleMatch {
    std::vector<int> node_map;
    std::vector<End> stub;
    std::vector<int> pair_link;
    std::vector<int> consumed;

    bool operator<(const RuleMatch& o) const {
        if (node_map != o.node_map) return node_map < o.node_map;
        auto key = [](const RuleMatch& m) {
            std::vector<std::int64_t> v;
            for (const End& e : m.stub) v.push_back((std::int64_t{e.node} << 20) | e.port);
            for (int p : m.pair_link) v.push_back(p);
            return v;
        };
        return key(*this) < key(o);
    }
};

namespace detail {

inline int tpl_boundary_index(const OpenDiagram& tpl, const End& e) {
    return e.node == End::kIn ? e.port : static_cast<int>(tpl.ins.size()) + e.port;
}

struct Matcher {
    const OpenDiagram& host;
    const OpenDiagram& tpl;
    EndMap host_ends;
    std::vector<int> assign;        // template node -> host node (-1 unset)
    std::vector<char> host_used;
    std::vector<RuleMatch> found;
    std::set<std::vector<std::int64_t>> dedupe;

    Matcher(const OpenDiagram& h, const OpenDiagram& t)
        : host(h), tpl(t), host_ends(h), assign(t.nodes.size(), -1), host_used(h.nodes.size(), 0) {}

    bool edge_ok(int tn, int tp, const End& other) {
        // Template node tn port tp must reach `other` (template coords).
        End h0{assign[tn], tp};
        auto it = host_ends.peer.find({h0.node, h0.port});
        if (it == host_ends.peer.end()) return false;
        const End& hp = it->second;
        if (other.is_boundary()) return true;  // deferred to stub collection
        if (assign[other.node] < 0) return true;  // checked when other is set
        return hp.node == assign[other.node] && hp.port == other.port;
    }

    bool consistent(int tn) {
        for (const Edge& e : tpl.edges) {
            const End &a = e.first, &b = e.second;
            if (!a.is_boundary() && a.node == tn && !edge_ok(tn, a.port, b)) return false;
            if (!b.is_boundary() && b.node == tn && !edge_ok(tn, b.port, a)) return false;
        }
        return true;
    }

    void emit() {
        int nb = static_cast<int>(tpl.ins.size() + tpl.outs.size());
        RuleMatch m;
        m.node_map = assign;
        m.stub.assign(nb, End{0, 0});
        m.pair_link.assign(nb, -1);
        std::set<int> consumed;
        // Internal host edges and boundary cuts.
        std::vector<std::pair<int, int>> bb_ports;  // template bb edges by port pair
        for (const Edge& e : tpl.edges) {
            const End &a = e.first, &b = e.second;
            if (a.is_boundary() && b.is_boundary()) {
                bb_ports.push_back({tpl_boundary_index(tpl, a), tpl_boundary_index(tpl, b)});
                continue;
            }
            if (!a.is_boundary() && !b.is_boundary()) {
                End h{assign[a.node], a.port};
                consumed.insert(host.edge_at(h));
                continue;
            }
            const End& bnd = a.is_boundary() ? a : b;
            const End& prt = a.is_boundary() ? b : a;
            End h{assign[prt.node], prt.port};
            End peer = host_ends.at(h);
            int k = tpl_boundary_index(tpl, bnd);
            consumed.insert(host.edge_at(h));
            if (!peer.is_boundary() && assign_contains(peer.node)) {
                // The host edge joins two matched ports: find the template
                // boundary port on the far side.
                int far = tpl_port_at(peer);
                if (far < 0) return;  // far port is covered by an internal
                                      // template edge: inconsistent
                m.pair_link[k] = far;
            } else {
                m.stub[k] = peer;
            }
        }
        // Boundary-boundary template edges match free host edges.
        // Enumerate assignments recursively.
        std::vector<int> free_edges;
        for (int i = 0; i < static_cast<int>(host.edges.size()); ++i) {
            if (consumed.count(i)) continue;
            const Edge& e = host.edges[i];
            auto touches_matched = [&](const End& x) {
                return !x.is_boundary() && assign_contains(x.node);
            };
            if (touches_matched(e.first) || touches_matched(e.second)) continue;
            free_edges.push_back(i);
        }
        std::vector<int> chosen;
        emit_bb(bb_ports, 0, free_edges, chosen, m, consumed);
    }

    bool assign_contains(int host_node) const {
        return std::find(assign.begin(), assign.end(), host_node) != assign.end();
    }

    int tpl_port_at(const End& host_end) const {
        // Template boundary index whose incident node port maps onto host_end.
        for (const Edge& e : tpl.edges) {
            const End &a = e.first, &b = e.second;
            const End* bnd = nullptr;
            const End* prt = nullptr;
            if (a.is_boundary() && !b.is_boundary()) { bnd = &a; prt = &b; }
            else if (b.is_boundary() && !a.is_boundary()) { bnd = &b; prt = &a; }
            else continue;
            if (assign[prt->node] == host_end.node && prt->port == host_end.port)
                return tpl_boundary_index(tpl, *bnd);
        }
        return -1;
    }

    void emit_bb(const std::vector<std::pair<int, int>>& bb, std::size_t i,
                 const std::vector<int>& free_edges, std::vector<int>& chosen, RuleMatch m,
                 std::set<int> consumed) {
        if (i == bb.size()) {
            m.consumed.assign(consumed.begin(), consumed.end());
            std::vector<std::int64_t> key;
            for (int n : m.node_map) key.push_back(n);
            std::vector<std::int64_t> sorted_nodes(key);
            std::sort(sorted_nodes.begin(), sorted_nodes.end());
            key = sorted_nodes;
            for (const End& e : m.stub) key.push_back((std::int64_t{e.node} << 20) | e.port);
            for (int p : m.pair_link) key.push_back(p);
            if (dedupe.insert(key).second) found.push_back(m);
            return;
        }
        auto [ka, kb] = bb[i];
        char ta = ka < static_cast<int>(tpl.ins.size()) ? tpl.ins[ka]
                                                        : tpl.outs[ka - tpl.ins.size()];
        for (int ei : free_edges) {
            if (std::find(chosen.begin(), chosen.end(), ei) != chosen.end()) continue;
            const Edge& e = host.edges[ei];
            if (host.end_type(e.first) != ta) continue;
            for (int orient = 0; orient < 2; ++orient) {
                RuleMatch m2 = m;
                m2.stub[ka] = orient ? e.second : e.first;
                m2.stub[kb] = orient ? e.first : e.second;
                std::set<int> c2 = consumed;
                c2.insert(ei);
                chosen.push_back(ei);
                emit_bb(bb, i + 1, free_edges, chosen, m2, c2);
                chosen.pop_back();
            }
        }
    }

    void search(int tn) {
        if (tn == static_cast<int>(tpl.nodes.size())) {
            emit();
            return;
        }
        for (int hn = 0; hn < static_cast<int>(host.nodes.size()); ++hn) {
            if (host_used[hn] || host.nodes[hn] != tpl.nodes[tn]) continue;
            assign[tn] = hn;
            host_used[hn] = 1;
            if (consistent(tn)) search(tn + 1);
            host_used[hn] = 0;
            assign[tn] = -1;
        }
    }
};

}  // namespace detail

/// All embeddings of the rule's source side into `d`, deterministically
/// ordered. Distinct matches produce distinct rewrites.
inline std::vector<RuleMatch> match_rule(const OpenDiagram& d, const RuleSchema& r,
                                         bool forward = true) {
    if (r.meta_loop_commute) return {};  // applied through the checked interface
    const OpenDiagram& src = r.side(forward);
    // Circles in the template must be present in the host.
    for (const auto& [t, c] : src.circles) {
        auto it = d.circles.find(t);
        if (c > 0 && (it == d.circles.end() || it->second < c)) return {};
    }
    detail::Matcher m(d, src);
    m.search(0);
    std::sort(m.found.begin(), m.found.end());
    return m.found;
}

/// Replace the matched source side with the rule's other side. Boundary
/// words of `d` never change.
inline OpenDiagram apply_rule(const OpenDiagram& d, const RuleSchema& r, const RuleMatch& match,
                              bool forward = true) {
    if (r.meta_loop_commute)
        throw InvalidMatchError("context rule must be applied via apply_loop_commute");
    const OpenDiagram& src = r.side(forward);
    const OpenDiagram& dst = r.other(forward);
    if (src.ins != dst.ins || src.outs != dst.outs)
        throw InvalidMatchError("rule sides have different boundary words");

    OpenDiagram out;
    out.ins = d.ins;
    out.outs = d.outs;
    out.circles = d.circles;
    for (const auto& [t, c] : src.circles) out.circles[t] -= c;
    for (const auto& [t, c] : dst.circles) out.circles[t] += c;

    // Keep unmatched host nodes.
    std::vector<int> remap(d.nodes.size(), -1);
    std::vector<char> matched(d.nodes.size(), 0);
    for (int hn : match.node_map) matched[hn] = 1;
    for (int i = 0; i < static_cast<int>(d.nodes.size()); ++i) {
        if (matched[i]) continue;
        remap[i] = static_cast<int>(out.nodes.size());
        out.nodes.push_back(d.nodes[i]);
    }
    // Append destination nodes.
    int dst_off = static_cast<int>(out.nodes.size());
    for (const std::string& s : dst.nodes) out.nodes.push_back(s);

    auto remap_end = [&](const End& e) {
        if (e.is_boundary()) return e;
        return End{remap[e.node], e.port};
    };
    std::set<int> consumed(match.consumed.begin(), match.consumed.end());
    for (int i = 0; i < static_cast<int>(d.edges.size()); ++i) {
        if (consumed.count(i)) continue;
        const Edge& e = d.edges[i];
        out.edges.push_back({remap_end(e.first), remap_end(e.second)});
    }

    // Interface splicing. Each template boundary port k has an outside
    // attachment (host stub or pair_link to port j) and an inside
    // attachment from the destination template (node port or bb link).
    int nb = static_cast<int>(src.ins.size() + src.outs.size());
    std::vector<End> inside(nb);
    std::vector<int> inside_link(nb, -1);
    std::vector<char> inside_real(nb, 0);
    for (const Edge& e : dst.edges) {
        const End &a = e.first, &b = e.second;
        bool ab = a.is_boundary(), bb_ = b.is_boundary();
        if (ab && bb_) {
            int ka = detail::tpl_boundary_index(dst, a);
            int kb = detail::tpl_boundary_index(dst, b);
            inside_link[ka] = kb;
            inside_link[kb] = ka;
        } else if (ab) {
            int k = detail::tpl_boundary_index(dst, a);
            inside[k] = End{b.node + dst_off, b.port};
            inside_real[k] = 1;
        } else if (bb_) {
            int k = detail::tpl_boundary_index(dst, b);
            inside[k] = End{a.node + dst_off, a.port};
            inside_real[k] = 1;
        } else {
            out.edges.push_back({End{a.node + dst_off, a.port}, End{b.node + dst_off, b.port}});
        }
    }
    std::vector<End> outside(nb);
    std::vector<int> outside_link(match.pair_link);
    std::vector<char> outside_real(nb, 0);
    for (int k = 0; k < nb; ++k) {
        if (outside_link[k] < 0) {
            outside[k] = remap_end(match.stub[k]);
            outside_real[k] = 1;
        }
    }

    // Walk chains alternating outside/inside links.
    std::vector<char> visited(nb, 0);
    auto walk = [&](int k, char s) -> End {
        while (true) {
            visited[k] = 1;
            char t = (s == 'o') ? 'i' : 'o';
            int link = (t == 'o') ? outside_link[k] : inside_link[k];
            if (link < 0) return (t == 'o') ? outside[k] : inside[k];
            k = link;
            s = t;
        }
    };
    for (int k = 0; k < nb; ++k) {
        if (visited[k]) continue;
        if (outside_real[k]) {
            End right = walk(k, 'o');
            out.edges.push_back({outside[k], right});
        } else if (inside_real[k]) {
            End left = walk(k, 'i');
            out.edges.push_back({inside[k], left});
        }
    }
    for (int k = 0; k < nb; ++k) {
        if (visited[k]) continue;
        // Closed chain: adds a circle of this port's wire type.
        char t = k < static_cast<int>(src.ins.size()) ? src.ins[k] : src.outs[k - src.ins.size()];
        int w = k;
        char s = 'o';
        while (!visited[w]) {
            visited[w] = 1;
            char tt = (s == 'o') ? 'i' : 'o';
            int link = (tt == 'o') ? outside_link[w] : inside_link[w];
            w = link;
            s = tt;
        }
        out.circles[t]++;
    }
    for (auto it = out.circles.begin(); it != out.circles.end();) {
        if (it->second < 0) throw InvalidMatchError("rule consumes more circles than present");
        if (it->second == 0) it = out.circles.erase(it);
        else ++it;
    }
    out.validate();
    return out;
}

}  // namespace knot
