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

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "knot/functors.hpp"

namespace knot {

// A braid diagram in the paired-wire sublanguage: every boundary wire
// belongs to an adjacent black pair, and the nodes decompose into
// junction clusters (tangle- or ribbon-drawn, one fused spider each),
// grey loop clusters threading one strand of each attached pair, dot
// pairs, pair bends, and strand permutations.

struct PairEnd {
    enum class Kind { BoundaryIn, BoundaryOut, Cluster };
    Kind kind;
    int index = 0;  // pair index or cluster id
};

struct DoubledCluster {
    enum class Kind { Junction, Loop, Bend, DotPair };
    Kind kind;
    int phase = 0;  // decorator parity
    std::vector<int> nodes;
    int arity = 0;  // attached pairs
};

struct DoubledPairEdge {
    PairEnd a, b;
};

struct DoubledDiagram {
    int n_in_pairs = 0;
    int n_out_pairs = 0;
    std::vector<DoubledCluster> clusters;
    std::vector<DoubledPairEdge> pairs;
};

struct NotDoubled {
    std::string reason;
    std::vector<int> witness_nodes;
};

using RecognizeResult = std::variant<DoubledDiagram, NotDoubled>;

/// Decompose a braid diagram into paired-wire generators, or report a
/// witness subgraph that fits none.
inline RecognizeResult recognize_doubled(const OpenDiagram& d) {
    auto fail = [&](const std::string& why, std::vector<int> nodes = {}) {
        return RecognizeResult{NotDoubled{why, std::move(nodes)}};
    };
    if (!typecheck(d).empty()) return fail("diagram does not typecheck");
    if (d.ins.size() % 2 || d.outs.size() % 2) return fail("odd boundary");
    for (char c : d.ins + d.outs)
        if (c != kBlack) return fail("boundary wire is not black");

    enum class NK { Junction, BarB, Dot, CrossOp, CrossSame, BarG };
    std::vector<NK> kind(d.nodes.size());
    for (std::size_t i = 0; i < d.nodes.size(); ++i) {
        const std::string& s = d.nodes[i];
        if (s == "merge.b" || s == "split.b") kind[i] = NK::Junction;
        else if (s == "dec.bar.b") kind[i] = NK::BarB;
        else if (s == "state.b" || s == "effect.b") kind[i] = NK::Dot;
        else if (s.rfind("cross.op.", 0) == 0) kind[i] = NK::CrossOp;
        else if (s.rfind("cross.same.bb", 0) == 0) kind[i] = NK::CrossSame;
        else if (s == "dec.bar.g") kind[i] = NK::BarG;
        else
            return fail("generator outside the paired sublanguage: " + s,
                        {static_cast<int>(i)});
    }

    detail::EndMap em(d);
    auto cross_black_ports = [&](int n) -> std::pair<int, int> {
        GenDef def = gen_def(d.nodes[n]);
        return {def.ins[0] == kBlack ? 0 : 1, def.outs[0] == kBlack ? 2 : 3};
    };
    auto cross_grey_ports = [&](int n) -> std::pair<int, int> {
        auto [bi, bo] = cross_black_ports(n);
        return {bi ^ 1, bo == 2 ? 3 : 2};
    };

    // --- Grey loops -----------------------------------------------------
    std::vector<int> loop_of_node(d.nodes.size(), -1);
    std::vector<int> loop_phase;
    std::vector<std::vector<int>> loop_crossings;
    {
        std::set<std::pair<int, int>> seen;
        for (int n = 0; n < static_cast<int>(d.nodes.size()); ++n) {
            if (kind[n] != NK::CrossOp && kind[n] != NK::BarG) continue;
            int start_port = kind[n] == NK::CrossOp ? cross_grey_ports(n).first : 0;
            if (seen.count({n, start_port})) continue;
            int lid = static_cast<int>(loop_phase.size());
            loop_phase.push_back(0);
            loop_crossings.push_back({});
            End cur{n, start_port};
            while (!seen.count({cur.node, cur.port})) {
                int node = cur.node;
                loop_of_node[node] = lid;
                int exit_port;
                if (kind[node] == NK::CrossOp) {
                    auto [gi, go] = cross_grey_ports(node);
                    exit_port = (cur.port == gi) ? go : gi;
                    loop_crossings[lid].push_back(node);
                } else {
                    exit_port = (cur.port == 0) ? 1 : 0;
                    loop_phase[lid] ^= 1;
                }
                seen.insert({cur.node, cur.port});
                seen.insert({node, exit_port});
                End peer = em.at(End{node, exit_port});
                if (peer.is_boundary()) return fail("grey wire reaches the boundary");
                cur = peer;
            }
        }
    }

    // --- Reduced black paths ---------------------------------------------
    auto is_slot_node = [&](int n) {
        return kind[n] == NK::Junction || kind[n] == NK::BarB || kind[n] == NK::Dot;
    };
    auto pass_through = [&](const End& e) -> std::optional<std::pair<End, int>> {
        if (e.is_boundary() || is_slot_node(e.node)) return std::nullopt;
        if (kind[e.node] == NK::CrossOp) {
            auto [bi, bo] = cross_black_ports(e.node);
            int other = (e.port == bi) ? bo : bi;
            return std::pair<End, int>{End{e.node, other}, loop_of_node[e.node]};
        }
        return std::pair<End, int>{End{e.node, 3 - e.port}, -1};
    };

    struct ReducedEdge {
        End a, b;
        std::vector<int> loops;
    };
    std::vector<ReducedEdge> redges;
    std::map<std::pair<std::int32_t, std::int32_t>, int> redge_at;
    {
        std::vector<End> starts;
        for (int i = 0; i < static_cast<int>(d.ins.size()); ++i) starts.push_back(in_port(i));
        for (int i = 0; i < static_cast<int>(d.outs.size()); ++i) starts.push_back(out_port(i));
        for (int n = 0; n < static_cast<int>(d.nodes.size()); ++n) {
            if (!is_slot_node(n)) continue;
            for (int p = 0; p < gen_def(d.nodes[n]).arity(); ++p) starts.push_back(End{n, p});
        }
        std::set<std::pair<std::int32_t, std::int32_t>> done;
        for (const End& s : starts) {
            if (done.count({s.node, s.port})) continue;
            ReducedEdge re;
            re.a = s;
            End cur = s;
            while (true) {
                End peer = em.at(cur);
                auto hop = pass_through(peer);
                if (!hop) {
                    re.b = peer;
                    break;
                }
                if (hop->second >= 0) re.loops.push_back(hop->second);
                cur = hop->first;
            }
            done.insert({re.a.node, re.a.port});
            done.insert({re.b.node, re.b.port});
            int id = static_cast<int>(redges.size());
            redge_at[{re.a.node, re.a.port}] = id;
            redge_at[{re.b.node, re.b.port}] = id;
            redges.push_back(std::move(re));
        }
    }
    // Closed black cycles through crossings only are not part of any
    // generator.
    for (int n = 0; n < static_cast<int>(d.nodes.size()); ++n) {
        if (kind[n] != NK::CrossSame && kind[n] != NK::CrossOp) continue;
        End cur{n, cross_black_ports(n).first};
        if (kind[n] == NK::CrossSame) cur = End{n, 0};
        bool reaches = false;
        for (int guard = 0; guard <= static_cast<int>(d.edges.size()); ++guard) {
            End peer = em.at(cur);
            auto hop = pass_through(peer);
            if (!hop) { reaches = true; break; }
            cur = hop->first;
        }
        if (!reaches) return fail("closed black cycle through crossings", {n});
    }

    // --- Junction clusters and internal wires ----------------------------
    std::vector<int> uf(d.nodes.size());
    for (std::size_t i = 0; i < uf.size(); ++i) uf[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int x) { return uf[x] == x ? x : uf[x] = find(uf[x]); };
    auto junctionish = [&](const End& e) {
        return !e.is_boundary() && (kind[e.node] == NK::Junction || kind[e.node] == NK::BarB);
    };
    std::set<int> internal_edges;
    for (int i = 0; i < static_cast<int>(redges.size()); ++i) {
        const ReducedEdge& re = redges[i];
        if (re.loops.empty() && junctionish(re.a) && junctionish(re.b)) {
            uf[find(re.a.node)] = find(re.b.node);
            internal_edges.insert(i);
        }
    }

    // --- Attachment groups -------------------------------------------------
    DoubledDiagram out;
    out.n_in_pairs = static_cast<int>(d.ins.size()) / 2;
    out.n_out_pairs = static_cast<int>(d.outs.size()) / 2;
    // Group ids: boundary-in pairs, boundary-out pairs, then clusters.
    int gin = 0, gout = out.n_in_pairs;
    int gcluster = out.n_in_pairs + out.n_out_pairs;
    std::map<int, int> junction_group;  // uf root -> group id
    std::vector<int> node_group(d.nodes.size(), -1);
    for (int n = 0; n < static_cast<int>(d.nodes.size()); ++n) {
        if (kind[n] != NK::Junction && kind[n] != NK::BarB) continue;
        int root = find(n);
        auto it = junction_group.find(root);
        int gid;
        if (it == junction_group.end()) {
            gid = gcluster + static_cast<int>(out.clusters.size());
            junction_group[root] = gid;
            out.clusters.push_back({DoubledCluster::Kind::Junction, 0, {}, 0});
        } else {
            gid = it->second;
        }
        node_group[n] = gid;
        out.clusters[gid - gcluster].nodes.push_back(n);
        if (kind[n] == NK::BarB) out.clusters[gid - gcluster].phase ^= 1;
    }
    std::vector<int> loop_group(loop_phase.size(), -1);
    for (std::size_t l = 0; l < loop_phase.size(); ++l) {
        loop_group[l] = gcluster + static_cast<int>(out.clusters.size());
        out.clusters.push_back(
            {DoubledCluster::Kind::Loop, loop_phase[l], loop_crossings[l], 0});
    }
    auto group_of = [&](const End& e) -> int {
        if (e.node == End::kIn) return gin + e.port / 2;
        if (e.node == End::kOut) return gout + e.port / 2;
        return node_group[e.node];  // -1 for dots until grouped
    };

    // Dot pairs: dots attaching the same far group pair off two at a time.
    {
        std::map<int, std::vector<int>> by_far;  // far group -> dot nodes
        for (int n = 0; n < static_cast<int>(d.nodes.size()); ++n) {
            if (kind[n] != NK::Dot) continue;
            int e = redge_at.at({n, 0});
            const ReducedEdge& re = redges[e];
            End other = (re.a == End{n, 0}) ? re.b : re.a;
            if (!re.loops.empty()) return fail("dot strand threads a loop", {n});
            if (!other.is_boundary() && kind[other.node] == NK::Dot)
                return fail("dots joined by a bare strand", {n, other.node});
            int far = group_of(other);
            if (far < 0) return fail("dot attaches nothing recognizable", {n});
            by_far[far].push_back(n);
        }
        for (auto& [far, dots] : by_far) {
            if (dots.size() % 2) return fail("unpaired dot", dots);
            for (std::size_t i = 0; i + 1 < dots.size(); i += 2) {
                int gid = gcluster + static_cast<int>(out.clusters.size());
                out.clusters.push_back(
                    {DoubledCluster::Kind::DotPair, 0, {dots[i], dots[i + 1]}, 0});
                node_group[dots[i]] = gid;
                node_group[dots[i + 1]] = gid;
            }
        }
    }

    // --- Pair edges ----------------------------------------------------------
    auto pair_end_of_group = [&](int g) -> PairEnd {
        if (g < gout) return PairEnd{PairEnd::Kind::BoundaryIn, g - gin};
        if (g < gcluster) return PairEnd{PairEnd::Kind::BoundaryOut, g - gout};
        return PairEnd{PairEnd::Kind::Cluster, g - gcluster};
    };
    std::map<std::pair<int, int>, int> strand_count;
    std::map<int, int> loop_uses;
    for (int i = 0; i < static_cast<int>(redges.size()); ++i) {
        if (internal_edges.count(i)) continue;
        const ReducedEdge& re = redges[i];
        int ga = group_of(re.a);
        int gb = group_of(re.b);
        if (ga < 0 || gb < 0) return fail("strand attaches nothing recognizable");
        if (re.loops.size() > 1) return fail("strand threads more than one loop");
        if (re.loops.size() == 1) {
            if (ga != gb) return fail("loop threads an unbent strand pair");
            loop_uses[re.loops[0]]++;
            out.pairs.push_back(
                {pair_end_of_group(ga),
                 pair_end_of_group(loop_group[re.loops[0]])});
            continue;
        }
        if (ga == gb) {
            if (ga < gcluster && re.a.port / 2 != re.b.port / 2)
                return fail("bent strand joins two boundary pairs");
            // A bend: the pair turns around through a cup or cap.
            int gid = gcluster + static_cast<int>(out.clusters.size());
            out.clusters.push_back({DoubledCluster::Kind::Bend, 0, {}, 0});
            out.pairs.push_back({pair_end_of_group(ga), pair_end_of_group(gid)});
            continue;
        }
        if (ga < gcluster && gb < gcluster)
            return fail("pair runs boundary to boundary without a generator");
        auto key = std::minmax(ga, gb);
        strand_count[{key.first, key.second}]++;
    }
    for (auto& [key, count] : strand_count) {
        if (count % 2) return fail("unpaired strand between attachment groups");
        for (int k = 0; k < count / 2; ++k)
            out.pairs.push_back({pair_end_of_group(key.first), pair_end_of_group(key.second)});
    }
    // Dots consume their strands as one pair per dot-pair cluster; the two
    // strands of a dot pair were counted as ordinary strands above.
    for (std::size_t l = 0; l < loop_phase.size(); ++l)
        if (loop_uses[static_cast<int>(l)] != static_cast<int>(loop_crossings[l].size()))
            return fail("loop crossing not attached to a bent strand pair",
                        loop_crossings[l]);
    // Boundary pairs must attach exactly one pair edge.
    {
        std::vector<int> uses(gcluster, 0);
        for (auto& p : out.pairs) {
            if (p.a.kind == PairEnd::Kind::BoundaryIn) uses[gin + p.a.index]++;
            if (p.a.kind == PairEnd::Kind::BoundaryOut) uses[gout + p.a.index]++;
            if (p.b.kind == PairEnd::Kind::BoundaryIn) uses[gin + p.b.index]++;
            if (p.b.kind == PairEnd::Kind::BoundaryOut) uses[gout + p.b.index]++;
        }
        for (int g = 0; g < gcluster; ++g)
            if (uses[g] != 1) return fail("boundary pair strands split across generators");
    }

    for (auto& p : out.pairs) {
        if (p.a.kind == PairEnd::Kind::Cluster) out.clusters[p.a.index].arity++;
        if (p.b.kind == PairEnd::Kind::Cluster) out.clusters[p.b.index].arity++;
    }
    for (std::size_t c = 0; c < out.clusters.size(); ++c)
        if (out.clusters[c].arity == 0)
            return fail("closed generator cluster with no pairs", out.clusters[c].nodes);
    return RecognizeResult{std::move(out)};
}

/// Collapse a recognized paired diagram to its one-wire-per-pair image:
/// junction clusters and bends become z spiders, loop and dot clusters
/// x spiders; phases carry the decorator parity.
inline OpenDiagram functor_K(const DoubledDiagram& dd) {
    OpenDiagram out;
    out.ins = Word(dd.n_in_pairs, kQubit);
    out.outs = Word(dd.n_out_pairs, kQubit);
    std::vector<int> next_port(dd.clusters.size(), 0);
    std::vector<int> node_of(dd.clusters.size(), -1);
    for (std::size_t c = 0; c < dd.clusters.size(); ++c) {
        const DoubledCluster& cl = dd.clusters[c];
        char color = (cl.kind == DoubledCluster::Kind::Junction ||
                      cl.kind == DoubledCluster::Kind::Bend)
                         ? 'z'
                         : 'x';
        node_of[c] = static_cast<int>(out.nodes.size());
        out.nodes.push_back(spider_name(color, cl.phase != 0, 0, cl.arity));
    }
    auto conv = [&](const PairEnd& p) -> End {
        if (p.kind == PairEnd::Kind::BoundaryIn) return in_port(p.index);
        if (p.kind == PairEnd::Kind::BoundaryOut) return out_port(p.index);
        return End{node_of[p.index], next_port[p.index]++};
    };
    for (const DoubledPairEdge& p : dd.pairs)
        out.edges.push_back({conv(p.a), conv(p.b)});
    out.validate();
    return out;
}

enum class DoubledVerdict { Equal, NotEqual, NotDoubledInput };

/// Semantic equality decision for paired diagrams; complete on the
/// paired sublanguage.
inline DoubledVerdict decide_equal_doubled(const OpenDiagram& d1, const OpenDiagram& d2,
                                           const ImageTable& tab = default_image_table()) {
    RecognizeResult r1 = recognize_doubled(d1);
    RecognizeResult r2 = recognize_doubled(d2);
    if (std::holds_alternative<NotDoubled>(r1) || std::holds_alternative<NotDoubled>(r2))
        return DoubledVerdict::NotDoubledInput;
    return functor_G(d1, tab).canonical_equal(functor_G(d2, tab)) ? DoubledVerdict::Equal
                                                                  : DoubledVerdict::NotEqual;
}

// ----------------------------------------------------------------------
// Constructors for paired-generator diagrams.
// ----------------------------------------------------------------------

/// Junction cluster on whole pairs, tangle-drawn: all input strands merge
/// into a trunk, optionally decorated, then split into the output pairs.
inline OpenDiagram make_junction_spider(int m, int n, int l) {
    if (m + n == 0) throw DiagramError("spider needs at least one pair");
    OpenDiagram d;
    if (m > 0) {
        d = empty_diagram();
        for (int i = 0; i < 2 * m; ++i) d = par_compose(d, generator_diagram("id.b"));
        for (int k = 2 * m; k > 1; --k) {
            OpenDiagram layer = generator_diagram("merge.b");
            for (int i = 2; i < k; ++i) layer = par_compose(layer, generator_diagram("id.b"));
            d = seq_compose(d, layer);
        }
    } else {
        d = seq_compose(generator_diagram("cup.b"), generator_diagram("merge.b"));
    }
    for (int i = 0; i < l; ++i) d = seq_compose(d, generator_diagram("dec.bar.b"));
    if (n > 0) {
        for (int k = 1; k < 2 * n; ++k) {
            OpenDiagram layer = generator_diagram("split.b");
            for (int i = 1; i < k; ++i) layer = par_compose(layer, generator_diagram("id.b"));
            d = seq_compose(d, layer);
        }
    } else {
        d = seq_compose(d, seq_compose(generator_diagram("split.b"), generator_diagram("cap.b")));
    }
    return d;
}

/// Junction cluster, ribbon-drawn: strand-wise junction trees fused by a
/// pair trunk. Same semantics as the tangle form.
inline OpenDiagram make_junction_spider_ribbon(int m, int n, int l) {
    if (m < 1 || n < 1) return make_junction_spider(m, n, l);
    OpenDiagram d = empty_diagram();
    for (int i = 0; i < 2 * m; ++i) d = par_compose(d, generator_diagram("id.b"));
    // Merge first strands of all pairs together, then second strands:
    // reorder pairwise with crossings, merge groupwise.
    // Simpler ribbon: repeatedly merge neighbouring pairs strandwise.
    while (static_cast<int>(d.outs.size()) > 2) {
        int w = static_cast<int>(d.outs.size());
        // Merge pair (0,1) with pair (2,3) strandwise: swap wires 1,2,
        // merge (0,1) and (2,3).
        OpenDiagram swap_layer = generator_diagram("id.b");
        swap_layer = par_compose(swap_layer, generator_diagram("cross.same.bb.v1"));
        swap_layer = par_compose(swap_layer, generator_diagram("id.b"));
        for (int i = 4; i < w; ++i) swap_layer = par_compose(swap_layer, generator_diagram("id.b"));
        d = seq_compose(d, swap_layer);
        OpenDiagram merge_layer = par_compose(generator_diagram("merge.b"),
                                              generator_diagram("merge.b"));
        for (int i = 4; i < w; ++i)
            merge_layer = par_compose(merge_layer, generator_diagram("id.b"));
        d = seq_compose(d, merge_layer);
    }
    // One pair left: fuse through a trunk with the decorator, then split
    // out ribbon-wise.
    OpenDiagram trunk = seq_compose(generator_diagram("merge.b"), generator_diagram("split.b"));
    d = seq_compose(d, trunk);
    for (int i = 0; i < l; ++i) {
        OpenDiagram bar = par_compose(generator_diagram("dec.bar.b"), generator_diagram("id.b"));
        d = seq_compose(d, bar);
    }
    while (static_cast<int>(d.outs.size()) < 2 * n) {
        int w = static_cast<int>(d.outs.size());
        OpenDiagram split_layer = par_compose(generator_diagram("split.b"),
                                              generator_diagram("split.b"));
        for (int i = 2; i < w; ++i)
            split_layer = par_compose(split_layer, generator_diagram("id.b"));
        d = seq_compose(d, split_layer);
        OpenDiagram swap_layer = generator_diagram("id.b");
        swap_layer = par_compose(swap_layer, generator_diagram("cross.same.bb.v1"));
        swap_layer = par_compose(swap_layer, generator_diagram("id.b"));
        for (int i = 4; i < w + 2; ++i)
            swap_layer = par_compose(swap_layer, generator_diagram("id.b"));
        d = seq_compose(d, swap_layer);
    }
    return d;
}

/// Loop cluster: in-pairs bend through caps, out-pairs through cups, one
/// strand of every pair threads a closed grey loop carrying l grey bars.
inline OpenDiagram make_loop_spider(int m, int n, int l) {
    int k = m + n;
    if (k == 0) throw DiagramError("spider needs at least one pair");
    OpenDiagram d;
    d.ins = Word(2 * m, kBlack);
    d.outs = Word(2 * n, kBlack);
    for (int i = 0; i < k; ++i) d.nodes.push_back("cross.op.bg.v1");
    for (int i = 0; i < l; ++i) d.nodes.push_back("dec.bar.g");
    // cross.op.bg.v1 ports: 0 black in, 1 grey in, 2 grey out, 3 black out.
    for (int i = 0; i < m; ++i) {
        d.edges.push_back({in_port(2 * i), End{i, 0}});
        d.edges.push_back({End{i, 3}, in_port(2 * i + 1)});
    }
    for (int j = 0; j < n; ++j) {
        int c = m + j;
        d.edges.push_back({out_port(2 * j), End{c, 0}});
        d.edges.push_back({End{c, 3}, out_port(2 * j + 1)});
    }
    std::vector<End> chain;
    for (int i = 0; i < k; ++i) {
        chain.push_back(End{i, 1});
        chain.push_back(End{i, 2});
    }
    for (int b = 0; b < l; ++b) {
        chain.push_back(End{k + b, 0});
        chain.push_back(End{k + b, 1});
    }
    for (std::size_t i = 1; i + 1 < chain.size(); i += 2)
        d.edges.push_back({chain[i], chain[i + 1]});
    d.edges.push_back({chain.back(), chain.front()});
    d.validate();
    return d;
}

/// Dot pair: a paired state or effect.
inline OpenDiagram make_dot_pair(bool is_state) {
    std::string dot = is_state ? "state.b" : "effect.b";
    return par_compose(generator_diagram(dot), generator_diagram(dot));
}

/// Swap of two adjacent black pairs by four strand crossings.
inline OpenDiagram make_pair_swap() {
    auto layer = [&](const std::vector<int>& at, int width) {
        OpenDiagram l = empty_diagram();
        int i = 0;
        while (i < width) {
            if (std::find(at.begin(), at.end(), i) != at.end()) {
                l = par_compose(l, generator_diagram("cross.same.bb.v1"));
                i += 2;
            } else {
                l = par_compose(l, generator_diagram("id.b"));
                i += 1;
            }
        }
        return l;
    };
    OpenDiagram d = layer({1}, 4);
    d = seq_compose(d, layer({0, 2}, 4));
    d = seq_compose(d, layer({1}, 4));
    return d;
}

}  // namespace knot
