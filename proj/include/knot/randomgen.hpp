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

#include <random>

#include "knot/doubled.hpp"

namespace knot {

/// Random well-typed braid diagram, built by stacking generator layers on
/// a random starting word.
inline OpenDiagram random_knot_diagram(std::mt19937_64& rng, int max_nodes = 10,
                                       int max_width = 4) {
    auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
    int width = 1 + pick(max_width);
    OpenDiagram d = empty_diagram();
    for (int i = 0; i < width; ++i)
        d = par_compose(d, generator_diagram((rng() & 1) ? "id.b" : "id.g"));
    int nodes = pick(max_nodes + 1);
    for (int s = 0; s < nodes; ++s) {
        const Word w = d.outs;
        int k = static_cast<int>(w.size());
        // Collect placements: (generator, position).
        std::vector<std::pair<std::string, int>> options;
        for (int p = 0; p < k; ++p) {
            char c = w[p];
            std::string suffix = (c == kBlack) ? ".b" : ".g";
            options.push_back({"dec.bar" + suffix, p});
            options.push_back({"dec.circle" + suffix, p});
            options.push_back({"split" + suffix, p});
            options.push_back({"effect" + suffix, p});
            if (p + 1 < k) {
                char c2 = w[p + 1];
                if (c == c2) {
                    options.push_back({"merge" + suffix, p});
                    options.push_back({std::string("cross.same.") +
                                           (c == kBlack ? "bb" : "gg") + ".v1",
                                       p});
                    options.push_back({"cap" + suffix, p});
                } else {
                    options.push_back({(c == kBlack) ? "cross.op.bg.v1" : "cross.op.bg.v2", p});
                }
            }
        }
        for (int p = 0; p <= k; ++p) {
            options.push_back({"state.b", p});
            options.push_back({"state.g", p});
            if (k + 1 < max_width + 2) {
                options.push_back({"cup.b", p});
                options.push_back({"cup.g", p});
            }
        }
        if (options.empty()) break;
        auto [gen, pos] = options[pick(static_cast<int>(options.size()))];
        GenDef def = gen_def(gen);
        int consumed = static_cast<int>(def.ins.size());
        if (static_cast<int>(w.size()) - consumed + static_cast<int>(def.outs.size()) >
            max_width + 2)
            continue;
        OpenDiagram layer = empty_diagram();
        for (int i = 0; i < pos; ++i)
            layer = par_compose(layer, generator_diagram(std::string("id.") + std::string(1, w[i])));
        layer = par_compose(layer, generator_diagram(gen));
        for (int i = pos + consumed; i < k; ++i)
            layer = par_compose(layer, generator_diagram(std::string("id.") + std::string(1, w[i])));
        d = seq_compose(d, layer);
    }
    return d;
}

/// Random paired-wire diagram over the doubled generators: junction and
/// loop spiders, dot pairs, bends and pair swaps. A projecting junction
/// layer keeps every boundary pair attached to a generator.
inline OpenDiagram random_doubled_diagram(std::mt19937_64& rng, int max_generators = 12,
                                          int max_pairs = 3) {
    auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
    int pairs = 1 + pick(max_pairs);
    OpenDiagram d = empty_diagram();
    for (int i = 0; i < pairs; ++i) d = par_compose(d, make_junction_spider(1, 1, 0));
    int gens = pick(max_generators + 1);
    for (int s = 0; s < gens; ++s) {
        int width = static_cast<int>(d.outs.size()) / 2;
        int choice = pick(6);
        OpenDiagram layer = empty_diagram();
        if (choice == 0 && width >= 2) {
            // pair swap at a random adjacent spot
            int pos = pick(width - 1);
            for (int i = 0; i < pos; ++i) layer = par_compose(layer, make_junction_spider(1, 1, 0));
            layer = par_compose(layer, make_pair_swap());
            for (int i = pos + 2; i < width; ++i)
                layer = par_compose(layer, make_junction_spider(1, 1, 0));
        } else {
            bool loop = choice & 1;
            int m = 1 + pick(std::min(2, width));
            int pos = pick(width - m + 1);
            int n = 1 + pick(2);
            if (width - m + n > max_pairs) n = 1;
            if (width - m + n < 1) n = 1;
            int l = pick(2);
            OpenDiagram spider = loop ? make_loop_spider(m, n, l)
                                      : (pick(2) ? make_junction_spider(m, n, l)
                                                 : make_junction_spider_ribbon(m, n, l));
            for (int i = 0; i < pos; ++i) layer = par_compose(layer, make_junction_spider(1, 1, 0));
            layer = par_compose(layer, spider);
            for (int i = pos + m; i < width; ++i)
                layer = par_compose(layer, make_junction_spider(1, 1, 0));
        }
        d = seq_compose(d, layer);
    }
    return d;
}

}  // namespace knot
