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

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace knot::f2 {

// Vectors over F2 with at most 64 coordinates, stored as bitmasks.
// Coordinate i is bit (1 << i).
using Vec = std::uint64_t;

inline int parity(Vec v) { return std::popcount(v) & 1; }

inline bool get_bit(Vec v, int i) { return (v >> i) & 1u; }

inline Vec set_bit(Vec v, int i, bool b) {
    return b ? (v | (Vec{1} << i)) : (v & ~(Vec{1} << i));
}

/// Dense bit matrix, one Vec per row.
struct BitMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Vec> row;

    BitMatrix() = default;
    BitMatrix(int r, int c) : rows(r), cols(c), row(r, 0) {}

    bool at(int r, int c) const { return get_bit(row[r], c); }
    void set(int r, int c, bool b) { row[r] = set_bit(row[r], c, b); }

    static BitMatrix identity(int n) {
        BitMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.row[i] = Vec{1} << i;
        return m;
    }
};

/// Reduced row echelon form in place. Returns the pivot column of each
/// nonzero row, in order.
inline std::vector<int> rref(BitMatrix& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int sel = -1;
        for (int i = r; i < m.rows; ++i) {
            if (m.at(i, c)) { sel = i; break; }
        }
        if (sel < 0) continue;
        std::swap(m.row[r], m.row[sel]);
        for (int i = 0; i < m.rows; ++i) {
            if (i != r && m.at(i, c)) m.row[i] ^= m.row[r];
        }
        pivots.push_back(c);
        ++r;
    }
    // Zero rows sink to the bottom already; drop them from view by caller
    // convention (rows stay allocated).
    return pivots;
}

inline int rank(BitMatrix m) { return static_cast<int>(rref(m).size()); }

/// Affine subspace of F2^dim: offset + span(basis). `empty` marks the
/// empty set; then basis/offset are meaningless.
struct AffineSubspace {
    int dim = 0;
    bool empty = false;
    std::vector<Vec> basis;  // independent spanning vectors
    Vec offset = 0;

    static AffineSubspace empty_space(int dim) {
        AffineSubspace s;
        s.dim = dim;
        s.empty = true;
        return s;
    }
    static AffineSubspace point(int dim, Vec p) {
        AffineSubspace s;
        s.dim = dim;
        s.offset = p;
        return s;
    }
    static AffineSubspace full(int dim) {
        AffineSubspace s;
        s.dim = dim;
        for (int i = 0; i < dim; ++i) s.basis.push_back(Vec{1} << i);
        return s;
    }

    int linear_dim() const { return empty ? -1 : static_cast<int>(basis.size()); }
};

/// Canonical form: basis rows in RREF (pivots increasing), offset reduced
/// so its pivot coordinates are zero. Two descriptions of the same point
/// set canonicalize identically.
inline AffineSubspace canonicalize(const AffineSubspace& s) {
    if (s.empty) return AffineSubspace::empty_space(s.dim);
    BitMatrix m(static_cast<int>(s.basis.size()), s.dim);
    m.row = s.basis;
    std::vector<int> pivots = rref(m);
    AffineSubspace out;
    out.dim = s.dim;
    out.basis.assign(m.row.begin(), m.row.begin() + pivots.size());
    Vec off = s.offset;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        if (get_bit(off, pivots[i])) off ^= out.basis[i];
    }
    out.offset = off;
    return out;
}

inline bool same_subspace(const AffineSubspace& a, const AffineSubspace& b) {
    if (a.dim != b.dim) return false;
    AffineSubspace ca = canonicalize(a), cb = canonicalize(b);
    if (ca.empty != cb.empty) return false;
    if (ca.empty) return true;
    return ca.offset == cb.offset && ca.basis == cb.basis;
}

inline bool contains(const AffineSubspace& s, Vec p) {
    if (s.empty) return false;
    AffineSubspace c = canonicalize(s);
    Vec v = p ^ c.offset;
    // Reduce v against the RREF basis.
    for (const Vec& b : c.basis) {
        Vec low = b & -b;
        if (v & low) v ^= b;
    }
    return v == 0;
}

/// All points, in increasing order of the combination index. Guarded by a
/// size cap; meant for oracle use only.
inline std::vector<Vec> enumerate_points(const AffineSubspace& s, int max_dim = 20) {
    if (s.empty) return {};
    AffineSubspace c = canonicalize(s);
    int k = static_cast<int>(c.basis.size());
    if (k > max_dim) throw std::runtime_error("enumerate_points: subspace too large");
    std::vector<Vec> pts;
    pts.reserve(std::size_t{1} << k);
    for (std::uint64_t sel = 0; sel < (std::uint64_t{1} << k); ++sel) {
        Vec p = c.offset;
        for (int i = 0; i < k; ++i)
            if ((sel >> i) & 1) p ^= c.basis[i];
        pts.push_back(p);
    }
    return pts;
}

/// Constraint system H x = b over F2; rows paired with right-hand bits.
struct LinearSystem {
    int vars = 0;
    std::vector<Vec> lhs;
    std::vector<bool> rhs;

    void add(Vec coeffs, bool b) {
        lhs.push_back(coeffs);
        rhs.push_back(b);
    }
};

/// Solve H x = b. Returns the solution set as an affine subspace of
/// F2^vars (possibly empty).
inline AffineSubspace solve(const LinearSystem& sys) {
    int n = sys.vars;
    // Augmented elimination: store rhs as an extra bit column n.
    if (n >= 63) throw std::runtime_error("solve: too many variables");
    BitMatrix m(static_cast<int>(sys.lhs.size()), n + 1);
    for (std::size_t i = 0; i < sys.lhs.size(); ++i) {
        m.row[i] = sys.lhs[i];
        if (sys.rhs[i]) m.row[i] |= Vec{1} << n;
    }
    std::vector<int> pivots = rref(m);
    // Inconsistent iff some pivot is the rhs column.
    if (!pivots.empty() && pivots.back() == n) return AffineSubspace::empty_space(n);

    std::vector<char> is_pivot(n, 0);
    AffineSubspace out;
    out.dim = n;
    Vec off = 0;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        is_pivot[pivots[i]] = 1;
        if (get_bit(m.row[i], n)) off = set_bit(off, pivots[i], true);
    }
    out.offset = off;
    for (int c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        Vec v = Vec{1} << c;
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            if (m.at(static_cast<int>(i), c)) v = set_bit(v, pivots[i], true);
        }
        out.basis.push_back(v);
    }
    return canonicalize(out);
}

/// Constraint-form view of an affine subspace: rows h with h·x = b for all
/// points x. Computed as the kernel complement of the basis.
inline LinearSystem to_constraints(const AffineSubspace& s) {
    LinearSystem sys;
    sys.vars = s.dim;
    if (s.empty) {
        sys.add(0, true);  // 0 = 1
        return sys;
    }
    // Find all h with h·basis_i = 0; those h x = h·offset are the rows.
    // Kernel of basis^T: solve via RREF of the basis matrix.
    BitMatrix m(static_cast<int>(s.basis.size()), s.dim);
    m.row = s.basis;
    std::vector<int> pivots = rref(m);
    std::vector<char> is_pivot(s.dim, 0);
    for (int p : pivots) is_pivot[p] = 1;
    for (int c = 0; c < s.dim; ++c) {
        if (is_pivot[c]) continue;
        // h has a 1 at the free column c and at pivot columns whose row has
        // a 1 in column c... (constraint: x_c = sum of pivot couplings).
        Vec h = Vec{1} << c;
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            if (m.at(static_cast<int>(i), c)) h = set_bit(h, pivots[i], true);
        }
        sys.add(h, parity(h & s.offset));
    }
    return sys;
}

/// Project an affine subspace onto a subset of coordinates (given as the
/// list of kept coordinate indices, in output order).
inline AffineSubspace project(const AffineSubspace& s, const std::vector<int>& keep) {
    if (s.empty) return AffineSubspace::empty_space(static_cast<int>(keep.size()));
    AffineSubspace out;
    out.dim = static_cast<int>(keep.size());
    auto remap = [&](Vec v) {
        Vec r = 0;
        for (std::size_t i = 0; i < keep.size(); ++i)
            if (get_bit(v, keep[i])) r |= Vec{1} << i;
        return r;
    };
    out.offset = remap(s.offset);
    for (Vec b : s.basis) out.basis.push_back(remap(b));
    return canonicalize(out);
}

}  // namespace knot::f2
