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

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "knot/rewrite.hpp"

namespace knot {

/// Parse a rule pack. Drawn crossing variants are kept distinct here so
/// the variant-collapse rules remain meaningful.
inline std::vector<RuleSchema> parse_rule_pack(const std::string& text) {
    std::vector<RuleSchema> rules;
    std::map<std::string, int> counts;
    FromExprOptions raw;
    raw.normalize_crossings = false;

    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        if (tok[0] == '#') {
            std::string rest;
            std::getline(in, rest);
            continue;
        }
        if (tok != "rule") throw ParseError("rule pack: expected 'rule', got " + tok);
        RuleSchema r;
        in >> r.name;
        in >> tok;
        if (tok != "{") throw ParseError("rule pack: expected {");
        bool have_lhs = false, have_rhs = false;
        while (in >> tok && tok != "}") {
            std::string value;
            std::getline(in, value, ';');
            if (tok == "lhs:") {
                r.lhs = from_expr(parse_expr(value), raw);
                have_lhs = true;
            } else if (tok == "rhs:") {
                r.rhs = from_expr(parse_expr(value), raw);
                have_rhs = true;
            } else if (tok == "meta:") {
                std::istringstream v(value);
                std::string kind;
                v >> kind;
                if (kind != "loopcommute")
                    throw ParseError("rule pack: unknown meta rule " + kind);
                r.meta_loop_commute = true;
            } else if (tok == "where:") {
                r.where = value;
            } else {
                throw ParseError("rule pack: unknown key " + tok);
            }
        }
        if (!r.meta_loop_commute) {
            if (!have_lhs || !have_rhs)
                throw ParseError("rule pack: " + r.name + " missing lhs or rhs");
            if (r.lhs.ins != r.rhs.ins || r.lhs.outs != r.rhs.outs)
                throw ParseError("rule pack: " + r.name + " boundary words differ");
            r.lhs.validate();
            r.rhs.validate();
        }
        r.variant = r.name + "." + std::to_string(++counts[r.name]);
        rules.push_back(std::move(r));
    }
    return rules;
}

inline std::vector<RuleSchema> load_rule_pack(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open rule pack: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_rule_pack(ss.str());
}

inline const std::vector<RuleSchema>& default_rule_pack() {
    static const std::vector<RuleSchema> pack =
        load_rule_pack(std::string(KNOT_DATA_DIR) + "/rules.kpack");
    return pack;
}

/// Instances sharing a rule name, in pack order.
inline std::vector<const RuleSchema*> rules_named(const std::vector<RuleSchema>& pack,
                                                  const std::string& name) {
    std::vector<const RuleSchema*> out;
    for (const RuleSchema& r : pack)
        if (r.name == name) out.push_back(&r);
    return out;
}

}  // namespace knot
