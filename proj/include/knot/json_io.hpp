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

#include <string>

#include <nlohmann/json.hpp>

#include "knot/diagram.hpp"

namespace knot {

using nlohmann::json;

inline json end_to_json(const End& e) {
    if (e.node == End::kIn) return json{{"boundary", "in"}, {"index", e.port}};
    if (e.node == End::kOut) return json{{"boundary", "out"}, {"index", e.port}};
    return json{{"node", e.node}, {"port", e.port}};
}

inline End end_from_json(const json& j) {
    if (j.contains("boundary")) {
        int idx = j.at("index").get<int>();
        return j.at("boundary").get<std::string>() == "in" ? in_port(idx) : out_port(idx);
    }
    return End{j.at("node").get<std::int32_t>(), j.at("port").get<std::int32_t>()};
}

inline json diagram_to_json(const OpenDiagram& d) {
    json nodes = json::array();
    for (std::size_t i = 0; i < d.nodes.size(); ++i) {
        nodes.push_back({{"id", i},
                         {"symbol", d.nodes[i]},
                         {"params", gen_params(d.nodes[i])}});
    }
    json edges = json::array();
    for (const Edge& e : d.edges)
        edges.push_back(json::array({end_to_json(e.first), end_to_json(e.second)}));
    json in = json::array(), out = json::array();
    for (char c : d.ins) in.push_back(std::string(1, c));
    for (char c : d.outs) out.push_back(std::string(1, c));
    json j{{"nodes", nodes}, {"edges", edges}, {"in", in}, {"out", out}};
    if (!d.circles.empty()) {
        json c = json::object();
        for (auto& [t, n] : d.circles)
            if (n) c[std::string(1, t)] = n;
        j["circles"] = c;
    }
    return j;
}

inline OpenDiagram diagram_from_json(const json& j) {
    OpenDiagram d;
    std::map<int, int> id_map;
    for (const json& n : j.at("nodes")) {
        id_map[n.at("id").get<int>()] = static_cast<int>(d.nodes.size());
        d.nodes.push_back(n.at("symbol").get<std::string>());
    }
    for (const std::string& s : j.at("in")) d.ins += s.at(0);
    for (const std::string& s : j.at("out")) d.outs += s.at(0);
    for (const json& e : j.at("edges")) {
        End a = end_from_json(e.at(0)), b = end_from_json(e.at(1));
        if (!a.is_boundary()) a.node = id_map.at(a.node);
        if (!b.is_boundary()) b.node = id_map.at(b.node);
        d.edges.push_back({a, b});
    }
    if (j.contains("circles"))
        for (auto& [k, v] : j.at("circles").items()) d.circles[k.at(0)] = v.get<int>();
    d.validate();
    return d;
}

}  // namespace knot
