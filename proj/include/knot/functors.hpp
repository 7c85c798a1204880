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

#include "knot/canonical.hpp"
#include "knot/eval.hpp"
#include "knot/expr.hpp"
#include "knot/rel.hpp"

namespace knot {

struct UnmappedGeneratorError : std::runtime_error {
    explicit UnmappedGeneratorError(const std::string& g)
        : std::runtime_error("no image registered for generator " + g) {}
};

/// Per-generator semantic images: a small qubit-wire diagram and a
/// phase-space relation.
struct GeneratorImage {
    std::string gen;
    std::string zx_expr;
    OpenDiagram zx;
    AffLagRelation rel;
};

struct ImageTable {
    std::map<std::string, GeneratorImage> images;

    const GeneratorImage& at(const std::string& gen) const {
        auto it = images.find(gen);
        if (it == images.end()) throw UnmappedGeneratorError(gen);
        return it->second;
    }
    bool has(const std::string& gen) const { return images.count(gen) != 0; }
};

inline std::string default_data_dir() {
#ifdef KNOT_DATA_DIR
    return KNOT_DATA_DIR;
#else
    return "data";
#endif
}

/// Parse an `image <gen> { zx: <expr>; rel: <json>; }` table.
inline ImageTable parse_image_table(const std::string& text) {
    ImageTable tab;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        if (tok.rfind("#", 0) == 0) {
            std::string rest;
            std::getline(in, rest);
            continue;
        }
        if (tok != "image") throw ParseError("image table: expected 'image', got " + tok);
        GeneratorImage img;
        in >> img.gen;
        in >> tok;
        if (tok != "{") throw ParseError("image table: expected {");
        bool have_zx = false, have_rel = false;
        while (in >> tok && tok != "}") {
            std::string value;
            std::getline(in, value, ';');
            if (tok == "zx:") {
                img.zx_expr = value;
                img.zx = parse_diagram(value);
                have_zx = true;
            } else if (tok == "rel:") {
                img.rel = relation_from_json(nlohmann::json::parse(value));
                have_rel = true;
            } else {
                throw ParseError("image table: unknown key " + tok);
            }
        }
        if (!have_zx || !have_rel)
            throw ParseError("image table: " + img.gen + " missing zx or rel");
        GenDef def = gen_def(img.gen);
        if (img.zx.ins.size() != def.ins.size() || img.zx.outs.size() != def.outs.size())
            throw ParseError("image table: arity mismatch for " + img.gen);
        if (img.rel.n_in != static_cast<int>(def.ins.size()) ||
            img.rel.n_out != static_cast<int>(def.outs.size()))
            throw ParseError("image table: relation arity mismatch for " + img.gen);
        tab.images[img.gen] = img;
    }
    return tab;
}

inline ImageTable load_image_table(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open image table: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_image_table(ss.str());
}

inline const ImageTable& default_image_table() {
    static const ImageTable tab = load_image_table(default_data_dir() + "/images.ktab");
    return tab;
}

/// Wire-color typing check for braid diagrams. Returns a list of
/// violations; empty means well typed.
inline std::vector<std::string> typecheck(const OpenDiagram& d) {
    std::vector<std::string> issues;
    for (const std::string& n : d.nodes) {
        try {
            GenDef g = gen_def(n);
            for (char c : g.ins + g.outs)
                if (c == kQubit) issues.push_back("qubit wire in braid diagram at " + n);
        } catch (const DiagramError& e) {
            issues.push_back(e.what());
        }
    }
    for (const Edge& e : d.edges) {
        char a = d.end_type(e.first), b = d.end_type(e.second);
        if (a != b) {
            std::ostringstream os;
            os << "edge color mismatch: " << a << " vs " << b;
            issues.push_back(os.str());
        }
    }
    try {
        d.validate();
    } catch (const DiagramError& e) {
        issues.push_back(e.what());
    }
    return issues;
}

/// Node-wise substitution of braid generators by their qubit-wire images,
/// glued along the same boundaries. Every wire maps to one qubit wire.
inline OpenDiagram functor_Z(const OpenDiagram& d, const ImageTable& tab = default_image_table()) {
    OpenDiagram out;
    out.ins = Word(d.ins.size(), kQubit);
    out.outs = Word(d.outs.size(), kQubit);
    for (const auto& [t, c] : d.circles)
        if (c) out.circles[kQubit] += c;

    struct Pin {
        bool real = false;
        End end{0, 0};
        int link = -1;
    };
    std::vector<std::vector<Pin>> pins(d.nodes.size());
    for (int i = 0; i < static_cast<int>(d.nodes.size()); ++i) {
        const GeneratorImage& img = tab.at(d.nodes[i]);
        const OpenDiagram& im = img.zx;
        int off = static_cast<int>(out.nodes.size());
        out.nodes.insert(out.nodes.end(), im.nodes.begin(), im.nodes.end());
        for (const auto& [t, c] : im.circles)
            if (c) out.circles[kQubit] += c;
        pins[i].resize(gen_def(d.nodes[i]).arity());
        for (const Edge& e : im.edges) {
            const End &a = e.first, &b = e.second;
            bool ab = a.is_boundary(), bb = b.is_boundary();
            auto bidx = [&](const End& x) {
                return x.node == End::kIn ? x.port
                                          : static_cast<int>(im.ins.size()) + x.port;
            };
            if (ab && bb) {
                pins[i][bidx(a)].link = bidx(b);
                pins[i][bidx(b)].link = bidx(a);
            } else if (ab || bb) {
                const End& bnd = ab ? a : b;
                const End& prt = ab ? b : a;
                Pin& p = pins[i][bidx(bnd)];
                p.real = true;
                p.end = End{prt.node + off, prt.port};
            } else {
                out.edges.push_back({End{a.node + off, a.port}, End{b.node + off, b.port}});
            }
        }
    }

    // Resolve wires: braid edges connect pins/boundary, pass-through pins
    // link onward inside one image.
    detail::EndMap em(d);
    std::vector<char> edge_done(d.edges.size(), 0);
    // Walk from `end` (an end of a braid edge) to the terminal it reaches.
    auto trace = [&](End e) -> End {
        while (true) {
            int ei = d.edge_at(e);
            edge_done[ei] = 1;
            End o = em.at(e);
            if (o.node == End::kIn) return in_port(o.port);
            if (o.node == End::kOut) return out_port(o.port);
            Pin& p = pins[o.node][o.port];
            if (p.real) return p.end;
            e = End{o.node, p.link};  // continue through the image wiring
        }
    };
    // Start at ends whose own side is a terminal.
    for (int ei = 0; ei < static_cast<int>(d.edges.size()); ++ei) {
        if (edge_done[ei]) continue;
        const Edge& e = d.edges[ei];
        auto terminal_side = [&](const End& x) -> std::optional<End> {
            if (x.node == End::kIn) return in_port(x.port);
            if (x.node == End::kOut) return out_port(x.port);
            const Pin& p = pins[x.node][x.port];
            if (p.real) return p.end;
            return std::nullopt;
        };
        std::optional<End> t1 = terminal_side(e.first);
        std::optional<End> t2 = terminal_side(e.second);
        if (t1) {
            End right = trace(e.first);
            out.edges.push_back({*t1, right});
        } else if (t2) {
            End right = trace(e.second);
            out.edges.push_back({*t2, right});
        }
    }
    for (int ei = 0; ei < static_cast<int>(d.edges.size()); ++ei) {
        if (edge_done[ei]) continue;
        // Cycle through pass-through images only: a closed qubit loop.
        End e = d.edges[ei].first;
        while (!edge_done[d.edge_at(e)]) {
            edge_done[d.edge_at(e)] = 1;
            End o = em.at(e);
            const Pin& p = pins[o.node][o.port];
            e = End{o.node, p.link};
        }
        out.circles[kQubit]++;
    }
    out.validate();
    return out;
}

namespace detail {

/// Constraint tensor over edge-indexed phase-space variable pairs.
struct RelTensor {
    std::vector<int> vars;  // edge ids; edge k owns coords (2i, 2i+1) = (x, z)
    f2::AffineSubspace space;
};

inline RelTensor rel_merge(const RelTensor& a, const RelTensor& b) {
    RelTensor out;
    out.vars = a.vars;
    for (int v : b.vars)
        if (std::find(out.vars.begin(), out.vars.end(), v) == out.vars.end())
            out.vars.push_back(v);
    int dim = 2 * static_cast<int>(out.vars.size());
    f2::LinearSystem sys;
    sys.vars = dim;
    auto add_from = [&](const RelTensor& t) {
        std::vector<int> pos(t.vars.size());
        for (std::size_t i = 0; i < t.vars.size(); ++i)
            pos[i] = static_cast<int>(std::find(out.vars.begin(), out.vars.end(), t.vars[i]) -
                                      out.vars.begin());
        f2::LinearSystem cs = f2::to_constraints(t.space);
        for (std::size_t r = 0; r < cs.lhs.size(); ++r) {
            f2::Vec row = 0;
            for (std::size_t i = 0; i < t.vars.size(); ++i) {
                if (f2::get_bit(cs.lhs[r], 2 * static_cast<int>(i)))
                    row = f2::set_bit(row, 2 * pos[i], true);
                if (f2::get_bit(cs.lhs[r], 2 * static_cast<int>(i) + 1))
                    row = f2::set_bit(row, 2 * pos[i] + 1, true);
            }
            sys.add(row, cs.rhs[r]);
        }
    };
    add_from(a);
    add_from(b);
    out.space = f2::solve(sys);
    return out;
}

inline RelTensor rel_eliminate(const RelTensor& t, int var) {
    auto it = std::find(t.vars.begin(), t.vars.end(), var);
    if (it == t.vars.end()) return t;
    int pos = static_cast<int>(it - t.vars.begin());
    RelTensor out;
    out.vars = t.vars;
    out.vars.erase(out.vars.begin() + pos);
    if (t.space.empty) {
        out.space = f2::AffineSubspace::empty_space(2 * static_cast<int>(out.vars.size()));
        return out;
    }
    std::vector<int> keep;
    for (int i = 0; i < static_cast<int>(t.vars.size()); ++i) {
        if (i == pos) continue;
        keep.push_back(2 * i);
        keep.push_back(2 * i + 1);
    }
    out.space = f2::project(t.space, keep);
    return out;
}

}  // namespace detail

/// Node-wise translation into a phase-space relation: each wire carries an
/// (x, z) pair, each generator imposes its image constraints, internal
/// wires are projected out.
inline AffLagRelation functor_G(const OpenDiagram& d, const ImageTable& tab = default_image_table()) {
    int nin = static_cast<int>(d.ins.size());
    int nout = static_cast<int>(d.outs.size());

    std::map<std::pair<std::int32_t, std::int32_t>, int> var_at;
    std::vector<int> in_var(nin, -1), out_var(nout, -1);
    int nedges = static_cast<int>(d.edges.size());
    for (int i = 0; i < nedges; ++i) {
        auto bind = [&](const End& e) {
            if (e.node == End::kIn) in_var[e.port] = i;
            else if (e.node == End::kOut) out_var[e.port] = i;
            else var_at[{e.node, e.port}] = i;
        };
        bind(d.edges[i].first);
        bind(d.edges[i].second);
    }
    std::set<int> boundary_vars(in_var.begin(), in_var.end());
    boundary_vars.insert(out_var.begin(), out_var.end());

    std::vector<detail::RelTensor> tensors;
    for (int n = 0; n < static_cast<int>(d.nodes.size()); ++n) {
        const GeneratorImage& img = tab.at(d.nodes[n]);
        GenDef def = gen_def(d.nodes[n]);
        int ar = def.arity();
        // The image relation lives on port coordinates ordered
        // (x_in.., z_in.., x_out.., z_out). Re-express on per-port (x,z)
        // pairs, then identify ports that share an edge (self-loops).
        std::vector<int> port_edge(ar);
        for (int p = 0; p < ar; ++p) port_edge[p] = var_at.at({n, p});
        detail::RelTensor t;
        for (int p = 0; p < ar; ++p)
            if (std::find(t.vars.begin(), t.vars.end(), port_edge[p]) == t.vars.end())
                t.vars.push_back(port_edge[p]);
        int dim = 2 * static_cast<int>(t.vars.size());
        f2::LinearSystem sys;
        sys.vars = dim;
        int n_in_ports = static_cast<int>(def.ins.size());
        auto coord_of_port = [&](int p, bool z_part) {
            int vi = static_cast<int>(std::find(t.vars.begin(), t.vars.end(), port_edge[p]) -
                                      t.vars.begin());
            return 2 * vi + (z_part ? 1 : 0);
        };
        auto img_coord = [&](int c) {
            // Relation coordinate c -> (port, is_z).
            const AffLagRelation& r = img.rel;
            if (c < r.n_in) return std::pair<int, bool>{c, false};
            c -= r.n_in;
            if (c < r.n_in) return std::pair<int, bool>{c, true};
            c -= r.n_in;
            if (c < r.n_out) return std::pair<int, bool>{n_in_ports + c, false};
            c -= r.n_out;
            return std::pair<int, bool>{n_in_ports + c, true};
        };
        f2::LinearSystem cs = f2::to_constraints(img.rel.space);
        for (std::size_t r = 0; r < cs.lhs.size(); ++r) {
            f2::Vec row = 0;
            for (int c = 0; c < img.rel.ambient(); ++c) {
                if (!f2::get_bit(cs.lhs[r], c)) continue;
                auto [p, zp] = img_coord(c);
                int tc = coord_of_port(p, zp);
                row = f2::set_bit(row, tc, !f2::get_bit(row, tc));
            }
            sys.add(row, cs.rhs[r]);
        }
        t.space = f2::solve(sys);
        tensors.push_back(std::move(t));
    }

    // Eliminate internal edge variables greedily.
    std::set<int> internal;
    for (int v = 0; v < nedges; ++v)
        if (!boundary_vars.count(v)) internal.insert(v);
    while (!internal.empty()) {
        int best = -1;
        std::size_t best_size = SIZE_MAX;
        for (int v : internal) {
            std::set<int> uni;
            for (const auto& t : tensors)
                if (std::find(t.vars.begin(), t.vars.end(), v) != t.vars.end())
                    uni.insert(t.vars.begin(), t.vars.end());
            if (uni.size() < best_size) {
                best_size = uni.size();
                best = v;
            }
        }
        detail::RelTensor acc;
        acc.space = f2::AffineSubspace::full(0);
        std::vector<detail::RelTensor> rest;
        for (auto& t : tensors) {
            if (std::find(t.vars.begin(), t.vars.end(), best) != t.vars.end())
                acc = detail::rel_merge(acc, t);
            else
                rest.push_back(std::move(t));
        }
        rest.push_back(detail::rel_eliminate(acc, best));
        tensors = std::move(rest);
        internal.erase(best);
    }
    detail::RelTensor acc;
    acc.space = f2::AffineSubspace::full(0);
    for (auto& t : tensors) acc = detail::rel_merge(acc, t);

    // Assemble final coordinates (x_in.., z_in.., x_out.., z_out). Boundary
    // ports sharing one edge variable (bare through-wires) add equalities.
    // Extend the tensor with one fresh variable per boundary port, tied to
    // its edge variable, then project onto the port variables.
    int nb = nin + nout;
    f2::LinearSystem sys;
    std::vector<int> port_pos(nb);
    {
        // Variables: acc.vars, any boundary edge vars not already present,
        // then one fresh variable per boundary port (ids offset by nedges).
        std::vector<int> vars = acc.vars;
        auto ensure = [&](int v) {
            if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
        };
        for (int v : in_var) ensure(v);
        for (int v : out_var) ensure(v);
        for (int k = 0; k < nb; ++k) {
            vars.push_back(nedges + k);
        }
        int dim = 2 * static_cast<int>(vars.size());
        sys.vars = dim;
        auto pos_of = [&](int var) {
            return static_cast<int>(std::find(vars.begin(), vars.end(), var) - vars.begin());
        };
        f2::LinearSystem cs = f2::to_constraints(acc.space);
        for (std::size_t r = 0; r < cs.lhs.size(); ++r) {
            f2::Vec row = 0;
            for (std::size_t i = 0; i < acc.vars.size(); ++i) {
                if (f2::get_bit(cs.lhs[r], 2 * static_cast<int>(i)))
                    row = f2::set_bit(row, 2 * pos_of(acc.vars[i]), true);
                if (f2::get_bit(cs.lhs[r], 2 * static_cast<int>(i) + 1))
                    row = f2::set_bit(row, 2 * pos_of(acc.vars[i]) + 1, true);
            }
            sys.add(row, cs.rhs[r]);
        }
        for (int k = 0; k < nb; ++k) {
            int ev = (k < nin) ? in_var[k] : out_var[k - nin];
            int pp = pos_of(nedges + k);
            port_pos[k] = pp;
            int ep = pos_of(ev);
            // port var equals edge var, coordinatewise
            f2::Vec rx = 0;
            rx = f2::set_bit(rx, 2 * pp, true);
            rx = f2::set_bit(rx, 2 * ep, true);
            sys.add(rx, false);
            f2::Vec rz = 0;
            rz = f2::set_bit(rz, 2 * pp + 1, true);
            rz = f2::set_bit(rz, 2 * ep + 1, true);
            sys.add(rz, false);
        }
    }
    f2::AffineSubspace joined = f2::solve(sys);
    std::vector<int> keep;
    for (int k = 0; k < nin; ++k) keep.push_back(2 * port_pos[k]);          // x_in
    for (int k = 0; k < nin; ++k) keep.push_back(2 * port_pos[k] + 1);      // z_in
    for (int k = 0; k < nout; ++k) keep.push_back(2 * port_pos[nin + k]);   // x_out
    for (int k = 0; k < nout; ++k) keep.push_back(2 * port_pos[nin + k] + 1);
    return AffLagRelation::make(nin, nout, f2::project(joined, keep));
}

/// Phase-space relation of an exact stabilizer matrix, derived by brute
/// force from its Pauli symmetries. Oracle helper for small shapes.
inline AffLagRelation relation_from_matrix(const ExactMatrix& m, int n_in, int n_out) {
    int q = n_in + n_out;
    if (q > 6) throw SizeCapError("relation_from_matrix: too many wires");
    if (m.is_zero()) {
        return AffLagRelation::make(n_in, n_out,
                                    f2::AffineSubspace::empty_space(2 * (n_in + n_out)));
    }
    // Vector form on (in + out) qubits: psi[in, out] = M[out, in].
    std::int64_t dim = std::int64_t{1} << q;
    std::vector<long long> psi(dim, 0);
    for (std::int64_t r = 0; r < m.rows; ++r)
        for (std::int64_t c = 0; c < m.cols; ++c) psi[(c << n_out) | r] = m.at(r, c);

    // Pauli action: represent X^a Z^b acting on computational indices.
    auto apply_pauli = [&](std::uint64_t a, std::uint64_t b, const std::vector<long long>& v) {
        std::vector<long long> out(dim, 0);
        for (std::int64_t i = 0; i < dim; ++i) {
            if (!v[i]) continue;
            std::int64_t j = i ^ static_cast<std::int64_t>(a);
            int sign = f2::parity(static_cast<std::uint64_t>(i) & b);
            out[j] += sign ? -v[i] : v[i];
        }
        return out;
    };
    auto eq = [&](const std::vector<long long>& u, const std::vector<long long>& v, int s) {
        for (std::int64_t i = 0; i < dim; ++i)
            if (u[i] != (s > 0 ? v[i] : -v[i])) return false;
        return true;
    };

    // Collect the sign-definite Pauli symmetries and solve the answer
    // conditions for the compatible phase-space points.
    f2::LinearSystem sys;
    sys.vars = 2 * q;  // per qubit k: x at 2k, z at 2k+1... flattened below
    std::vector<std::pair<std::uint64_t, std::uint64_t>> stab;
    std::vector<bool> sign_bits;
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << q); ++a)
        for (std::uint64_t b = 0; b < (std::uint64_t{1} << q); ++b) {
            auto w = apply_pauli(a, b, psi);
            int s = 0;
            if (eq(w, psi, +1)) s = +1;
            else if (eq(w, psi, -1)) s = -1;
            if (!s) continue;
            stab.push_back({a, b});
            sign_bits.push_back(s < 0);
        }
    // Point v (per qubit: x_k, z_k): answer to P = X^a Z^b is
    // sum_k a_k z_k + b_k x_k; require it to equal the sign bit.
    for (std::size_t i = 0; i < stab.size(); ++i) {
        auto [a, b] = stab[i];
        f2::Vec row = 0;
        for (int k = 0; k < q; ++k) {
            if ((a >> k) & 1) row = f2::set_bit(row, 2 * k + 1, !f2::get_bit(row, 2 * k + 1));
            if ((b >> k) & 1) row = f2::set_bit(row, 2 * k, !f2::get_bit(row, 2 * k));
        }
        sys.add(row, sign_bits[i]);
    }
    f2::AffineSubspace pts = f2::solve(sys);
    // Qubit index k: inputs first (qubit 0 = leading input wire), then
    // outputs. Reorder into (x_in.., z_in.., x_out.., z_out): note the
    // vector form indexes inputs as the HIGH bits, with wire 0 highest.
    std::vector<int> keep;
    for (int i = 0; i < n_in; ++i) keep.push_back(2 * (n_out + n_in - 1 - i));
    for (int i = 0; i < n_in; ++i) keep.push_back(2 * (n_out + n_in - 1 - i) + 1);
    for (int i = 0; i < n_out; ++i) keep.push_back(2 * (n_out - 1 - i));
    for (int i = 0; i < n_out; ++i) keep.push_back(2 * (n_out - 1 - i) + 1);
    return AffLagRelation::make(n_in, n_out, f2::project(pts, keep));
}

}  // namespace knot
