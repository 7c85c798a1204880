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

#include <cctype>
#include <memory>
#include <string>
#include <vector>

#include "knot/diagram.hpp"

namespace knot {

/// Syntax tree over generator leaves and n-ary seq/par combinators.
struct DiagramExpr {
    enum class Kind { Leaf, Seq, Par };
    Kind kind = Kind::Leaf;
    std::string name;  // for leaves
    std::vector<DiagramExpr> args;

    static DiagramExpr leaf(std::string n) {
        DiagramExpr e;
        e.kind = Kind::Leaf;
        e.name = std::move(n);
        return e;
    }
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

namespace detail {

struct ExprParser {
    const std::string& src;
    std::size_t pos = 0;

    explicit ExprParser(const std::string& s) : src(s) {}

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < src.size() && src[pos] == c) { ++pos; return true; }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw ParseError(what + " at offset " + std::to_string(pos));
    }

    static bool name_char(char c) {
        return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '.' || c == ':';
    }

    DiagramExpr parse_term() {
        skip_ws();
        std::size_t start = pos;
        while (pos < src.size() && name_char(src[pos])) ++pos;
        if (pos == start) fail("expected name or combinator");
        std::string word = src.substr(start, pos - start);
        if (word == "seq" || word == "par") {
            if (!eat('(')) fail("expected ( after " + word);
            DiagramExpr e;
            e.kind = (word == "seq") ? DiagramExpr::Kind::Seq : DiagramExpr::Kind::Par;
            e.args.push_back(parse_term());
            while (eat(',')) e.args.push_back(parse_term());
            if (!eat(')')) fail("expected , or )");
            if (e.args.size() < 2) fail(word + " needs at least two arguments");
            return e;
        }
        return DiagramExpr::leaf(word);
    }

    DiagramExpr parse_all() {
        DiagramExpr e = parse_term();
        skip_ws();
        if (pos != src.size()) fail("trailing input");
        return e;
    }
};

}  // namespace detail

inline DiagramExpr parse_expr(const std::string& src) {
    detail::ExprParser p(src);
    return p.parse_all();
}

/// Options for elaborating an expression into a graph.
struct FromExprOptions {
    // Collapse the drawn same-color crossing variants to v1. All three are
    // equal by rule; one representative avoids spurious match multiplicity.
    bool normalize_crossings = true;
};

/// Build the open graph denoted by an expression. Associativity, units and
/// the interchange law are quotiented away by the graph form.
inline OpenDiagram from_expr(const DiagramExpr& e, const FromExprOptions& opt = {},
                             const std::string& path = "$") {
    switch (e.kind) {
        case DiagramExpr::Kind::Leaf: {
            if (e.name == "empty") return empty_diagram();
            std::string name = e.name;
            if (opt.normalize_crossings && name.rfind("cross.same.", 0) == 0 &&
                (name.back() == '2' || name.back() == '3')) {
                name = name.substr(0, name.size() - 1) + "1";
            }
            try {
                return generator_diagram(name);
            } catch (const DiagramError& err) {
                throw ParseError(std::string(err.what()) + " (" + path + ")");
            }
        }
        case DiagramExpr::Kind::Seq: {
            OpenDiagram d = from_expr(e.args[0], opt, path + ".0");
            for (std::size_t i = 1; i < e.args.size(); ++i) {
                OpenDiagram next = from_expr(e.args[i], opt, path + "." + std::to_string(i));
                try {
                    d = seq_compose(d, next);
                } catch (const TypeMismatchError& err) {
                    throw TypeMismatchError(std::string(err.what()) + " (" + path + "." +
                                            std::to_string(i) + ")");
                }
            }
            return d;
        }
        case DiagramExpr::Kind::Par: {
            OpenDiagram d = from_expr(e.args[0], opt, path + ".0");
            for (std::size_t i = 1; i < e.args.size(); ++i)
                d = par_compose(d, from_expr(e.args[i], opt, path + "." + std::to_string(i)));
            return d;
        }
    }
    throw ParseError("corrupt expression");
}

inline OpenDiagram parse_diagram(const std::string& src, const FromExprOptions& opt = {}) {
    OpenDiagram d = from_expr(parse_expr(src), opt);
    d.validate();
    return d;
}

}  // namespace knot
