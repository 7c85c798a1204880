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

#include <nlohmann/json.hpp>

#include "knot/f2.hpp"

namespace knot {

struct ArityMismatchError : std::runtime_error {
    explicit ArityMismatchError(const std::string& m) : std::runtime_error(m) {}
};

/// Affine relation between phase spaces: an affine subspace of
/// F2^(2 n_in) (+) F2^(2 n_out). Coordinates are ordered
/// (x_in..., z_in..., x_out..., z_out...): wire i contributes x at
/// position i and z at position n+i within its block.
struct AffLagRelation {
    int n_in = 0;
    int n_out = 0;
    f2::AffineSubspace space;

    int ambient() const { return 2 * (n_in + n_out); }

    static AffLagRelation make(int n_in, int n_out, f2::AffineSubspace s) {
        AffLagRelation r;
        r.n_in = n_in;
        r.n_out = n_out;
        r.space = f2::canonicalize(s);
        return r;
    }

    static AffLagRelation identity(int n) {
        f2::LinearSystem sys;
        sys.vars = 4 * n;
        for (int i = 0; i < n; ++i) {
            sys.add((f2::Vec{1} << i) | (f2::Vec{1} << (2 * n + i)), false);          // x
            sys.add((f2::Vec{1} << (n + i)) | (f2::Vec{1} << (3 * n + i)), false);    // z
        }
        return make(n, n, f2::solve(sys));
    }

    // Coordinate index helpers.
    int xi(int wire) const { return wire; }
    int zi(int wire) const { return n_in + wire; }
    int xo(int wire) const { return 2 * n_in + wire; }
    int zo(int wire) const { return 2 * n_in + n_out + wire; }

    bool canonical_equal(const AffLagRelation& o) const {
        return n_in == o.n_in && n_out == o.n_out && f2::same_subspace(space, o.space);
    }
};

/// Relational composition: { (u,w) | exists v: (u,v) in r1, (v,w) in r2 }.
inline AffLagRelation rel_compose(const AffLagRelation& r1, const AffLagRelation& r2) {
    if (r1.n_out != r2.n_in)
        throw ArityMismatchError("rel_compose: " + std::to_string(r1.n_out) + " vs " +
                                 std::to_string(r2.n_in));
    int n = r1.n_in, k = r1.n_out, m = r2.n_out;
    if (r1.space.empty || r2.space.empty)
        return AffLagRelation::make(n, m, f2::AffineSubspace::empty_space(2 * (n + m)));
    // Joint variables: u (2n), v (2k), w (2m).
    int vars = 2 * n + 2 * k + 2 * m;
    f2::LinearSystem sys;
    sys.vars = vars;
    auto lift = [&](f2::Vec row, int src_a, int dst_a, int len_a, int src_b, int dst_b,
                    int len_b) {
        f2::Vec out = 0;
        for (int i = 0; i < len_a; ++i)
            if (f2::get_bit(row, src_a + i)) out = f2::set_bit(out, dst_a + i, true);
        for (int i = 0; i < len_b; ++i)
            if (f2::get_bit(row, src_b + i)) out = f2::set_bit(out, dst_b + i, true);
        return out;
    };
    f2::LinearSystem c1 = f2::to_constraints(r1.space);
    for (std::size_t i = 0; i < c1.lhs.size(); ++i)
        sys.add(lift(c1.lhs[i], 0, 0, 2 * n, 2 * n, 2 * n, 2 * k), c1.rhs[i]);
    f2::LinearSystem c2 = f2::to_constraints(r2.space);
    for (std::size_t i = 0; i < c2.lhs.size(); ++i)
        sys.add(lift(c2.lhs[i], 0, 2 * n, 2 * k, 2 * k, 2 * n + 2 * k, 2 * m), c2.rhs[i]);
    f2::AffineSubspace joint = f2::solve(sys);
    if (joint.empty)
        return AffLagRelation::make(n, m, f2::AffineSubspace::empty_space(2 * (n + m)));
    std::vector<int> keep;
    for (int i = 0; i < 2 * n; ++i) keep.push_back(i);
    for (int i = 0; i < 2 * m; ++i) keep.push_back(2 * n + 2 * k + i);
    return AffLagRelation::make(n, m, f2::project(joint, keep));
}

/// Tensor (side by side) with interleaved coordinate blocks.
inline AffLagRelation rel_tensor(const AffLagRelation& r1, const AffLagRelation& r2) {
    int n = r1.n_in + r2.n_in, m = r1.n_out + r2.n_out;
    if (r1.space.empty || r2.space.empty)
        return AffLagRelation::make(n, m, f2::AffineSubspace::empty_space(2 * (n + m)));
    AffLagRelation out;
    out.n_in = n;
    out.n_out = m;
    // Coordinate maps from each factor into the combined ambient space.
    auto remap = [&](const AffLagRelation& r, int in_off, int out_off, f2::Vec v) {
        f2::Vec res = 0;
        for (int i = 0; i < r.n_in; ++i) {
            if (f2::get_bit(v, r.xi(i))) res = f2::set_bit(res, in_off + i, true);
            if (f2::get_bit(v, r.zi(i))) res = f2::set_bit(res, n + in_off + i, true);
        }
        for (int i = 0; i < r.n_out; ++i) {
            if (f2::get_bit(v, r.xo(i))) res = f2::set_bit(res, 2 * n + out_off + i, true);
            if (f2::get_bit(v, r.zo(i))) res = f2::set_bit(res, 2 * n + m + out_off + i, true);
        }
        return res;
    };
    f2::AffineSubspace s;
    s.dim = 2 * (n + m);
    s.offset = remap(r1, 0, 0, r1.space.offset) ^ remap(r2, r1.n_in, r1.n_out, r2.space.offset);
    for (f2::Vec b : r1.space.basis) s.basis.push_back(remap(r1, 0, 0, b));
    for (f2::Vec b : r2.space.basis) s.basis.push_back(remap(r2, r1.n_in, r1.n_out, b));
    out.space = f2::canonicalize(s);
    return out;
}

/// Relational converse (swap input and output blocks).
inline AffLagRelation rel_converse(const AffLagRelation& r) {
    AffLagRelation out;
    out.n_in = r.n_out;
    out.n_out = r.n_in;
    if (r.space.empty) {
        out.space = f2::AffineSubspace::empty_space(r.ambient());
        return out;
    }
    auto remap = [&](f2::Vec v) {
        f2::Vec res = 0;
        for (int i = 0; i < r.n_in; ++i) {
            if (f2::get_bit(v, r.xi(i))) res = f2::set_bit(res, out.xo(i), true);
            if (f2::get_bit(v, r.zi(i))) res = f2::set_bit(res, out.zo(i), true);
        }
        for (int i = 0; i < r.n_out; ++i) {
            if (f2::get_bit(v, r.xo(i))) res = f2::set_bit(res, out.xi(i), true);
            if (f2::get_bit(v, r.zo(i))) res = f2::set_bit(res, out.zi(i), true);
        }
        return res;
    };
    f2::AffineSubspace s;
    s.dim = r.ambient();
    s.offset = remap(r.space.offset);
    for (f2::Vec b : r.space.basis) s.basis.push_back(remap(b));
    out.space = f2::canonicalize(s);
    return out;
}

/// Symplectic pairing on the doubled space: omega(v,w) summed over the in
/// block and the out block (over F2 the sign of the out block is moot).
inline int omega_pair(const AffLagRelation& r, f2::Vec v, f2::Vec w) {
    int acc = 0;
    for (int i = 0; i < r.n_in; ++i) {
        acc ^= (f2::get_bit(v, r.xi(i)) & f2::get_bit(w, r.zi(i)));
        acc ^= (f2::get_bit(v, r.zi(i)) & f2::get_bit(w, r.xi(i)));
    }
    for (int i = 0; i < r.n_out; ++i) {
        acc ^= (f2::get_bit(v, r.xo(i)) & f2::get_bit(w, r.zo(i)));
        acc ^= (f2::get_bit(v, r.zo(i)) & f2::get_bit(w, r.xo(i)));
    }
    return acc;
}

/// Nonempty: linear part isotropic and of dimension n_in + n_out.
/// The empty relation counts as Lagrangian.
inline bool is_lagrangian(const AffLagRelation& r) {
    if (r.space.empty) return true;
    const auto& basis = r.space.basis;
    if (static_cast<int>(basis.size()) != r.n_in + r.n_out) return false;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j)
            if (omega_pair(r, basis[i], basis[j])) return false;
    return true;
}

/// All points of the relation; oracle helper (ambient dim <= 16 by default).
inline std::vector<f2::Vec> enumerate_relation(const AffLagRelation& r, int cap_dim = 16) {
    if (r.ambient() > cap_dim)
        throw std::runtime_error("enumerate_relation: ambient dimension exceeds cap");
    return f2::enumerate_points(r.space);
}

inline std::string bits_to_string(f2::Vec v, int dim) {
    std::string s;
    for (int i = 0; i < dim; ++i) s += f2::get_bit(v, i) ? '1' : '0';
    return s;
}

inline f2::Vec bits_from_string(const std::string& s) {
    f2::Vec v = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] == '1') v = f2::set_bit(v, static_cast<int>(i), true);
    return v;
}

inline nlohmann::json relation_to_json(const AffLagRelation& r) {
    nlohmann::json j;
    j["n_in"] = r.n_in;
    j["n_out"] = r.n_out;
    j["empty"] = r.space.empty;
    if (!r.space.empty) {
        f2::AffineSubspace c = f2::canonicalize(r.space);
        nlohmann::json basis = nlohmann::json::array();
        for (f2::Vec b : c.basis) basis.push_back(bits_to_string(b, c.dim));
        j["basis"] = basis;
        j["offset"] = bits_to_string(c.offset, c.dim);
    } else {
        j["basis"] = nlohmann::json::array();
        j["offset"] = bits_to_string(0, r.ambient());
    }
    return j;
}

inline AffLagRelation relation_from_json(const nlohmann::json& j) {
    AffLagRelation r;
    r.n_in = j.at("n_in").get<int>();
    r.n_out = j.at("n_out").get<int>();
    f2::AffineSubspace s;
    s.dim = r.ambient();
    s.empty = j.value("empty", false);
    if (!s.empty) {
        for (const auto& b : j.at("basis")) s.basis.push_back(bits_from_string(b.get<std::string>()));
        s.offset = bits_from_string(j.at("offset").get<std::string>());
    }
    r.space = f2::canonicalize(s);
    return r;
}

}  // namespace knot
