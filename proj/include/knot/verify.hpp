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

#include <atomic>
#include <functional>
#include <thread>

#include "knot/functors.hpp"
#include "knot/rulepack.hpp"

namespace knot {

/// A loop of the opposite color passing across a bundle of same-colored
/// wires: each arc crosses every wire once.
inline OpenDiagram make_loop_around(const Word& wires) {
    if (wires.empty()) throw DiagramError("loop needs at least one wire");
    char wc = wires[0];
    for (char c : wires)
        if (c != wc) throw DiagramError("loop bundle must be one color");
    char lc = (wc == kBlack) ? kGrey : kBlack;
    std::string cup = std::string("cup.") + lc;
    std::string cap = std::string("cap.") + lc;
    // Crossing with the loop strand first: domain (loop, wire).
    std::string cross = (lc == kGrey) ? "cross.op.gb.v2" : "cross.op.bg.v1";
    // Wait: domain of bg.v1 is (b,g); gb.v2 is (g,b). For a grey loop over
    // black wires the strand pair is (g,b): use gb.v2 (grey drawn over).
    // For a black loop over grey wires the pair is (b,g): bg.v1.
    int k = static_cast<int>(wires.size());
    OpenDiagram d = generator_diagram(cup);  // (l1, l2)
    for (int i = 0; i < k; ++i) d = par_compose(d, generator_diagram(std::string("id.") + wc));
    // Wires now: l1 l2 w1..wk. Walk l2 down across every wire.
    auto cross_at = [&](OpenDiagram cur, int pos) {
        // Cross wires (pos, pos+1) = (loop, wire).
        OpenDiagram layer = empty_diagram();
        Word w = cur.outs;
        for (int i = 0; i < pos; ++i)
            layer = par_compose(layer, generator_diagram(std::string("id.") + w[i]));
        layer = par_compose(layer, generator_diagram(cross));
        for (int i = pos + 2; i < static_cast<int>(w.size()); ++i)
            layer = par_compose(layer, generator_diagram(std::string("id.") + w[i]));
        return seq_compose(cur, layer);
    };
    for (int i = 0; i < k; ++i) d = cross_at(d, 1 + i);
    // Wires: l1 w1..wk l2. Walk l1 down likewise.
    for (int i = 0; i < k; ++i) d = cross_at(d, i);
    // Wires: w1..wk l1 l2; close the loop.
    OpenDiagram closer = empty_diagram();
    for (int i = 0; i < k; ++i)
        closer = par_compose(closer, generator_diagram(std::string("id.") + wc));
    closer = par_compose(closer, generator_diagram(cap));
    return seq_compose(d, closer);
}

/// Checked application of the loop-commute rule: verify the side
/// conditions, then move p loops at the context's inputs to q loops at
/// its outputs (the context `ctx` itself is untouched).
inline OpenDiagram apply_loop_commute(const OpenDiagram& ctx, int p, int q, bool build_lhs) {
    if (p < 0 || p > 2 || q < 0 || q > 2)
        throw SideConditionError("loop counts must lie in {0, 1, 2}");
    for (const std::string& n : ctx.nodes)
        if (n.rfind("dec.", 0) == 0)
            throw SideConditionError("context contains a decorator: " + n);
    for (char c : ctx.ins)
        if (c != ctx.ins[0]) throw SideConditionError("context input wires must be one color");
    for (char c : ctx.outs)
        if (c != ctx.outs[0]) throw SideConditionError("context output wires must be one color");
    if (ctx.ins.empty() || ctx.outs.empty())
        throw SideConditionError("context needs input and output wires");
    OpenDiagram d = ctx;
    if (build_lhs) {
        for (int i = 0; i < p; ++i) d = seq_compose(make_loop_around(ctx.ins), d);
    } else {
        for (int i = 0; i < q; ++i) d = seq_compose(d, make_loop_around(ctx.outs));
    }
    return d;
}

enum class Semantics { ZX, Rel, Both };

struct RuleVerdict {
    std::string rule;
    std::string instance;
    std::string semantics;
    bool sound = false;
    std::string note;
};

inline bool zx_sides_equal(const OpenDiagram& lhs, const OpenDiagram& rhs, const ImageTable& tab) {
    return scalar_equal(evaluate_zx(functor_Z(lhs, tab)), evaluate_zx(functor_Z(rhs, tab)));
}

inline bool rel_sides_equal(const OpenDiagram& lhs, const OpenDiagram& rhs,
                            const ImageTable& tab) {
    return functor_G(lhs, tab).canonical_equal(functor_G(rhs, tab));
}

/// Contexts used to instantiate the loop-commute rule during verification.
inline std::vector<OpenDiagram> loop_commute_context_family() {
    std::vector<std::string> exprs = {
        "id.b",
        "id.g",
        "merge.b",
        "split.b",
        "merge.g",
        "split.g",
        "par(id.b, id.b)",
        "seq(split.b, merge.b)",
        "seq(merge.b, split.b)",
        "seq(par(split.b, id.b), par(id.b, merge.b))",
    };
    std::vector<OpenDiagram> out;
    for (const auto& e : exprs) out.push_back(parse_diagram(e));
    return out;
}

/// Mechanized soundness check of a rule pack: every instance is evaluated
/// under the requested semantics; the loop-commute rule is instantiated
/// over the fixed context family and all loop counts.
inline std::vector<RuleVerdict> verify_rule_soundness(const std::vector<RuleSchema>& pack,
                                                      Semantics sem,
                                                      const ImageTable& tab = default_image_table(),
                                                      int jobs = 1) {
    struct Item {
        const RuleSchema* rule;
        OpenDiagram lhs, rhs;
        std::string instance;
    };
    std::vector<Item> items;
    for (const RuleSchema& r : pack) {
        if (r.meta_loop_commute) {
            auto ctxs = loop_commute_context_family();
            for (std::size_t ci = 0; ci < ctxs.size(); ++ci) {
                for (int p = 0; p <= 2; ++p)
                    for (int q = 0; q <= 2; ++q) {
                        Item it;
                        it.rule = &r;
                        it.lhs = apply_loop_commute(ctxs[ci], p, q, true);
                        it.rhs = apply_loop_commute(ctxs[ci], p, q, false);
                        it.instance = r.variant + ".ctx" + std::to_string(ci) + ".p" +
                                      std::to_string(p) + "q" + std::to_string(q);
                        items.push_back(std::move(it));
                    }
            }
        } else {
            items.push_back({&r, r.lhs, r.rhs, r.variant});
        }
    }

    std::vector<RuleVerdict> report(items.size() * (sem == Semantics::Both ? 2 : 1));
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= items.size()) break;
            const Item& it = items[i];
            std::size_t slot = i * (sem == Semantics::Both ? 2 : 1);
            auto run = [&](Semantics s, std::size_t at) {
                RuleVerdict v;
                v.rule = it.rule->name;
                v.instance = it.instance;
                v.semantics = (s == Semantics::ZX) ? "zx" : "rel";
                try {
                    v.sound = (s == Semantics::ZX) ? zx_sides_equal(it.lhs, it.rhs, tab)
                                                   : rel_sides_equal(it.lhs, it.rhs, tab);
                    if (!v.sound) v.note = "sides differ";
                } catch (const std::exception& e) {
                    v.sound = false;
                    v.note = e.what();
                }
                report[at] = std::move(v);
            };
            if (sem == Semantics::Both) {
                run(Semantics::ZX, slot);
                run(Semantics::Rel, slot + 1);
            } else {
                run(sem, slot);
            }
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return report;
}

inline bool all_sound(const std::vector<RuleVerdict>& report) {
    for (const auto& v : report)
        if (!v.sound) return false;
    return true;
}

/// Compare two braid diagrams under both semantics; the verdicts are
/// expected to agree on the supported fragment.
inline std::pair<bool, bool> cross_check(const OpenDiagram& d1, const OpenDiagram& d2,
                                         const ImageTable& tab = default_image_table()) {
    bool mat = scalar_equal(evaluate_zx(functor_Z(d1, tab)), evaluate_zx(functor_Z(d2, tab)));
    bool rel = functor_G(d1, tab).canonical_equal(functor_G(d2, tab));
    return {mat, rel};
}

}  // namespace knot
