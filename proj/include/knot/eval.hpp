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
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "knot/diagram.hpp"
#include "knot/exact.hpp"

namespace knot {

struct SizeCapError : std::runtime_error {
    explicit SizeCapError(const std::string& msg) : std::runtime_error(msg) {}
};

inline int default_size_cap() {
    if (const char* env = std::getenv("KNOTC_SIZE_CAP")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 10;
}

namespace detail {

struct Tensor {
    std::vector<int> vars;        // distinct variable ids; vars[0] is the MSB
    std::vector<long long> data;  // 2^vars.size() entries
    int exp = 0;                  // global sqrt2 exponent

    static Tensor scalar(long long v, int exp = 0) {
        Tensor t;
        t.data = {v};
        t.exp = exp;
        return t;
    }
};

inline Tensor tensor_merge(const Tensor& a, const Tensor& b) {
    std::vector<int> vars = a.vars;
    for (int v : b.vars)
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    Tensor out;
    out.vars = vars;
    out.exp = a.exp + b.exp;
    std::size_t n = vars.size();
    out.data.assign(std::size_t{1} << n, 0);
    // Positions of each factor's vars inside the merged index.
    auto positions = [&](const Tensor& t) {
        std::vector<int> pos;
        for (int v : t.vars)
            pos.push_back(static_cast<int>(std::find(vars.begin(), vars.end(), v) - vars.begin()));
        return pos;
    };
    std::vector<int> pa = positions(a), pb = positions(b);
    for (std::size_t idx = 0; idx < out.data.size(); ++idx) {
        auto sub = [&](const std::vector<int>& pos) {
            std::size_t s = 0;
            for (std::size_t i = 0; i < pos.size(); ++i) {
                int bit = (idx >> (n - 1 - pos[i])) & 1;
                s = (s << 1) | static_cast<std::size_t>(bit);
            }
            return s;
        };
        long long va = a.data[sub(pa)];
        if (!va) continue;
        long long vb = b.data[sub(pb)];
        if (!vb) continue;
        out.data[idx] = va * vb;
    }
    return out;
}

inline Tensor sum_out(const Tensor& t, int var) {
    auto it = std::find(t.vars.begin(), t.vars.end(), var);
    if (it == t.vars.end()) return t;
    int pos = static_cast<int>(it - t.vars.begin());
    Tensor out;
    out.vars = t.vars;
    out.vars.erase(out.vars.begin() + pos);
    out.exp = t.exp;
    std::size_t n = t.vars.size();
    out.data.assign(std::size_t{1} << out.vars.size(), 0);
    for (std::size_t idx = 0; idx < t.data.size(); ++idx) {
        if (!t.data[idx]) continue;
        // Delete bit `pos` (counting from MSB) from idx.
        std::size_t hi = idx >> (n - pos);
        std::size_t lo = idx & ((std::size_t{1} << (n - 1 - pos)) - 1);
        out.data[(hi << (n - 1 - pos)) | lo] += t.data[idx];
    }
    return out;
}

/// Spider tensor over the node's incident edge variables, tracing out
/// repeated variables (self-loops) on the fly.
inline Tensor spider_tensor(const SpiderInfo& s, const std::vector<int>& port_vars) {
    std::vector<int> vars;
    for (int v : port_vars)
        if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    Tensor t;
    t.vars = vars;
    int arity = s.m + s.n;
    t.exp = (s.color == 'x') ? 2 - arity : 0;
    t.data.assign(std::size_t{1} << vars.size(), 0);
    for (std::size_t idx = 0; idx < t.data.size(); ++idx) {
        auto val_of = [&](int var) {
            int pos = static_cast<int>(std::find(vars.begin(), vars.end(), var) - vars.begin());
            return static_cast<int>((idx >> (vars.size() - 1 - pos)) & 1);
        };
        int ones = 0, zeros = 0, parity = 0;
        for (int pv : port_vars) {
            int b = val_of(pv);
            parity ^= b;
            (b ? ones : zeros)++;
        }
        long long v = 0;
        if (s.color == 'z') {
            if (zeros == arity) v = 1;
            else if (ones == arity) v = s.phase_pi ? -1 : 1;
        } else {
            if (parity == (s.phase_pi ? 1 : 0)) v = 1;
        }
        t.data[idx] = v;
    }
    return t;
}

}  // namespace detail

/// Contract a qubit-wire diagram to its exact matrix. Rows index outputs,
/// columns inputs, both in binary order with wire 0 as the leading bit.
/// Closed components that evaluate to a nonzero scalar are dropped; a
/// closed component evaluating to zero zeroes the whole matrix.
inline ExactMatrix evaluate_zx(const OpenDiagram& d, int size_cap = default_size_cap()) {
    for (char c : d.ins + d.outs)
        if (c != kQubit) throw DiagramError("evaluate_zx: non-qubit wire");
    int nin = static_cast<int>(d.ins.size());
    int nout = static_cast<int>(d.outs.size());
    if (nin + nout > size_cap)
        throw SizeCapError("boundary size " + std::to_string(nin + nout) +
                           " exceeds cap " + std::to_string(size_cap));

    // Edge variables.
    std::vector<int> in_var(nin, -1), out_var(nout, -1);
    std::map<std::pair<std::int32_t, std::int32_t>, int> var_at;  // node port -> var
    int nvars = static_cast<int>(d.edges.size());
    for (int i = 0; i < nvars; ++i) {
        auto bind = [&](const End& e) {
            if (e.node == End::kIn) in_var[e.port] = i;
            else if (e.node == End::kOut) out_var[e.port] = i;
            else var_at[{e.node, e.port}] = i;
        };
        bind(d.edges[i].first);
        bind(d.edges[i].second);
    }
    std::set<int> boundary_vars;
    for (int v : in_var) boundary_vars.insert(v);
    for (int v : out_var) boundary_vars.insert(v);

    std::vector<detail::Tensor> tensors;
    for (int n = 0; n < static_cast<int>(d.nodes.size()); ++n) {
        auto s = parse_spider(d.nodes[n]);
        if (!s) throw DiagramError("evaluate_zx: non-spider node " + d.nodes[n]);
        std::vector<int> pv;
        for (int p = 0; p < s->m + s->n; ++p) pv.push_back(var_at.at({n, p}));
        tensors.push_back(detail::spider_tensor(*s, pv));
    }

    // Greedy elimination of internal variables: repeatedly contract the
    // variable whose combined tensor has the fewest variables.
    std::set<int> internal;
    for (int v = 0; v < nvars; ++v)
        if (!boundary_vars.count(v)) internal.insert(v);
    while (!internal.empty()) {
        int best_var = -1;
        std::size_t best_size = SIZE_MAX;
        for (int v : internal) {
            std::set<int> uni;
            for (const auto& t : tensors)
                if (std::find(t.vars.begin(), t.vars.end(), v) != t.vars.end())
                    uni.insert(t.vars.begin(), t.vars.end());
            if (uni.size() < best_size) {
                best_size = uni.size();
                best_var = v;
            }
        }
        detail::Tensor acc = detail::Tensor::scalar(1);
        std::vector<detail::Tensor> rest;
        for (auto& t : tensors) {
            if (std::find(t.vars.begin(), t.vars.end(), best_var) != t.vars.end())
                acc = detail::tensor_merge(acc, t);
            else
                rest.push_back(std::move(t));
        }
        rest.push_back(detail::sum_out(acc, best_var));
        tensors = std::move(rest);
        internal.erase(best_var);
    }

    // Separate scalar tensors (closed components) from boundary ones.
    bool zero = false;
    int ignored_exp = 0;
    detail::Tensor acc = detail::Tensor::scalar(1);
    for (auto& t : tensors) {
        if (t.vars.empty()) {
            if (t.data[0] == 0) zero = true;
            ignored_exp += t.exp;  // dropped modulo scalar
        } else {
            acc = detail::tensor_merge(acc, t);
        }
    }
    (void)ignored_exp;

    ExactMatrix m(std::int64_t{1} << nout, std::int64_t{1} << nin);
    m.sqrt2_exp = acc.exp;
    if (!zero) {
        std::size_t n = acc.vars.size();
        std::vector<int> pos_of(nvars, -1);
        for (std::size_t i = 0; i < acc.vars.size(); ++i) pos_of[acc.vars[i]] = static_cast<int>(i);
        for (std::int64_t r = 0; r < m.rows; ++r) {
            for (std::int64_t c = 0; c < m.cols; ++c) {
                // Assignment of boundary vars implied by (r, c); conflicts
                // (one var read twice with different bits) give entry 0.
                std::vector<int> assign(nvars, -1);
                bool ok = true;
                auto put = [&](int var, int bit) {
                    if (assign[var] == -1) assign[var] = bit;
                    else if (assign[var] != bit) ok = false;
                };
                for (int i = 0; i < nin; ++i) put(in_var[i], static_cast<int>((c >> (nin - 1 - i)) & 1));
                for (int i = 0; i < nout; ++i) put(out_var[i], static_cast<int>((r >> (nout - 1 - i)) & 1));
                if (!ok) continue;
                std::size_t idx = 0;
                bool covered = true;
                for (std::size_t i = 0; i < n; ++i) {
                    int bit = assign[acc.vars[i]];
                    if (bit < 0) { covered = false; break; }
                    idx = (idx << 1) | static_cast<std::size_t>(bit);
                }
                if (!covered) continue;  // var untouched by boundary: impossible
                m.at(r, c) = acc.data[idx];
            }
        }
    }
    return m;
}

}  // namespace knot
