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
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "knot/diagram.hpp"

namespace knot {

namespace detail {

struct EndMap {
    std::map<std::pair<std::int32_t, std::int32_t>, End> peer;

    explicit EndMap(const OpenDiagram& d) {
        for (const Edge& e : d.edges) {
            peer[{e.first.node, e.first.port}] = e.second;
            peer[{e.second.node, e.second.port}] = e.first;
        }
    }
    End at(const End& e) const { return peer.at({e.node, e.port}); }
};

// Canonical ids assigned by breadth-first traversal from the given seed
// ends, visiting node ports in port order. Returns the visit order.
inline std::vector<int> bfs_order(const OpenDiagram& d, const EndMap& em,
                                  const std::vector<End>& seeds,
                                  std::vector<int>& id_of /* -1 = unseen */) {
    std::vector<int> order;
    std::queue<End> q;
    for (const End& s : seeds) q.push(s);
    while (!q.empty()) {
        End e = q.front();
        q.pop();
        End p = em.at(e);
        if (p.is_boundary()) continue;
        if (id_of[p.node] >= 0) continue;
        id_of[p.node] = static_cast<int>(order.size());
        order.push_back(p.node);
        int ar = gen_def(d.nodes[p.node]).arity();
        for (int k = 0; k < ar; ++k) q.push(End{p.node, k});
    }
    return order;
}

inline std::string encode_part(const OpenDiagram& d, const EndMap& em,
                               const std::vector<int>& id_of, const std::vector<int>& order) {
    std::ostringstream os;
    auto enc_end = [&](const End& e) -> std::string {
        if (e.node == End::kIn) return "I" + std::to_string(e.port);
        if (e.node == End::kOut) return "O" + std::to_string(e.port);
        return "N" + std::to_string(id_of[e.node]) + ":" + std::to_string(e.port);
    };
    for (int n : order) {
        os << d.nodes[n] << "[";
        int ar = gen_def(d.nodes[n]).arity();
        for (int k = 0; k < ar; ++k) os << enc_end(em.at(End{n, k})) << ";";
        os << "]";
    }
    return os.str();
}

}  // namespace detail

/// Canonical textual form of a diagram. Isomorphic diagrams (under any
/// node relabeling that fixes the boundary order) encode identically.
inline std::string canonical_string(const OpenDiagram& d) {
    detail::EndMap em(d);
    std::vector<int> id_of(d.nodes.size(), -1);
    std::vector<End> seeds;
    for (int i = 0; i < static_cast<int>(d.ins.size()); ++i) seeds.push_back(in_port(i));
    for (int i = 0; i < static_cast<int>(d.outs.size()); ++i) seeds.push_back(out_port(i));
    std::vector<int> order = detail::bfs_order(d, em, seeds, id_of);

    std::ostringstream os;
    os << "in:" << d.ins << " out:" << d.outs << " ";
    os << detail::encode_part(d, em, id_of, order);

    // Closed components: canonicalize each by the best seed, then sort.
    std::vector<std::string> closed;
    for (int n = 0; n < static_cast<int>(d.nodes.size()); ++n) {
        if (id_of[n] >= 0) continue;
        // Component of n, still unlabeled.
        std::vector<int> comp;
        {
            std::vector<int> tmp(id_of);
            std::vector<End> s{{n, 0}};
            tmp[n] = 0;  // force n first
            std::vector<int> got{n};
            int ar = gen_def(d.nodes[n]).arity();
            std::queue<End> q;
            for (int k = 0; k < ar; ++k) q.push(End{n, k});
            while (!q.empty()) {
                End e = q.front();
                q.pop();
                End p = em.at(e);
                if (p.is_boundary() || tmp[p.node] >= 0) continue;
                tmp[p.node] = static_cast<int>(got.size());
                got.push_back(p.node);
                int a2 = gen_def(d.nodes[p.node]).arity();
                for (int k = 0; k < a2; ++k) q.push(End{p.node, k});
            }
            comp = got;
        }
        std::string best;
        for (int seed : comp) {
            std::vector<int> tmp(d.nodes.size(), -1);
            // Mark everything outside this component as taken so the BFS
            // stays inside (cannot happen anyway: components are closed).
            tmp[seed] = 0;
            std::vector<int> order2{seed};
            std::queue<End> q;
            int ar = gen_def(d.nodes[seed]).arity();
            for (int k = 0; k < ar; ++k) q.push(End{seed, k});
            while (!q.empty()) {
                End e = q.front();
                q.pop();
                End p = em.at(e);
                if (p.is_boundary() || tmp[p.node] >= 0) continue;
                tmp[p.node] = static_cast<int>(order2.size());
                order2.push_back(p.node);
                int a2 = gen_def(d.nodes[p.node]).arity();
                for (int k = 0; k < a2; ++k) q.push(End{p.node, k});
            }
            std::string enc = detail::encode_part(d, em, tmp, order2);
            if (best.empty() || enc < best) best = enc;
        }
        closed.push_back(best);
        // Mark component labeled so we do not revisit it.
        for (int m : comp) id_of[m] = 1 << 30;
    }
    std::sort(closed.begin(), closed.end());
    for (const std::string& c : closed) os << " {" << c << "}";
    for (const auto& [t, cnt] : d.circles)
        if (cnt) os << " circle:" << t << "x" << cnt;
    return os.str();
}

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

/// Digest equal for isomorphic diagrams (isomorphism fixing boundary order).
inline std::uint64_t canonical_hash(const OpenDiagram& d) {
    return fnv1a(canonical_string(d));
}

}  // namespace knot
