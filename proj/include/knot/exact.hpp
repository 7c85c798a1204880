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

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace knot {

/// Exact linear-map value: an integer matrix together with a global
/// factor (sqrt 2)^k. Rows index output basis states, columns input
/// basis states, both in binary counting order (qubit 0 = most
/// significant bit).
struct ExactMatrix {
    std::int64_t rows = 1;
    std::int64_t cols = 1;
    int sqrt2_exp = 0;
    std::vector<long long> a;  // rows*cols entries, row-major

    ExactMatrix() : a(1, 1) {}
    ExactMatrix(std::int64_t r, std::int64_t c) : rows(r), cols(c), a(r * c, 0) {}

    long long& at(std::int64_t r, std::int64_t c) { return a[r * cols + c]; }
    long long at(std::int64_t r, std::int64_t c) const { return a[r * cols + c]; }

    bool is_zero() const {
        for (long long v : a)
            if (v != 0) return false;
        return true;
    }

    static ExactMatrix identity(int qubits) {
        std::int64_t n = std::int64_t{1} << qubits;
        ExactMatrix m(n, n);
        for (std::int64_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    ExactMatrix mul(const ExactMatrix& rhs) const {
        if (cols != rhs.rows) throw std::runtime_error("ExactMatrix: shape mismatch in mul");
        ExactMatrix out(rows, rhs.cols);
        out.sqrt2_exp = sqrt2_exp + rhs.sqrt2_exp;
        for (std::int64_t i = 0; i < rows; ++i)
            for (std::int64_t k = 0; k < cols; ++k) {
                long long v = at(i, k);
                if (!v) continue;
                for (std::int64_t j = 0; j < rhs.cols; ++j)
                    out.at(i, j) += v * rhs.at(k, j);
            }
        return out;
    }

    ExactMatrix tensor(const ExactMatrix& rhs) const {
        ExactMatrix out(rows * rhs.rows, cols * rhs.cols);
        out.sqrt2_exp = sqrt2_exp + rhs.sqrt2_exp;
        for (std::int64_t i = 0; i < rows; ++i)
            for (std::int64_t j = 0; j < cols; ++j) {
                long long v = at(i, j);
                if (!v) continue;
                for (std::int64_t k = 0; k < rhs.rows; ++k)
                    for (std::int64_t l = 0; l < rhs.cols; ++l)
                        out.at(i * rhs.rows + k, j * rhs.cols + l) = v * rhs.at(k, l);
            }
        return out;
    }

    std::string to_string() const {
        std::ostringstream os;
        for (std::int64_t i = 0; i < rows; ++i) {
            os << (i ? "\n" : "");
            for (std::int64_t j = 0; j < cols; ++j) os << (j ? " " : "") << at(i, j);
        }
        if (sqrt2_exp) os << "\n*(sqrt2^" << sqrt2_exp << ")";
        return os.str();
    }
};

/// Equality up to a nonzero scalar (a rational times a power of sqrt 2).
/// Shapes must agree; two all-zero matrices compare equal.
inline bool scalar_equal(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) return false;
    bool za = a.is_zero(), zb = b.is_zero();
    if (za || zb) return za && zb;
    // Find the first nonzero entry of each; cross-multiply to avoid
    // rationals. The sqrt2 exponents only contribute a global nonzero
    // factor, so they never affect the verdict.
    std::size_t ia = 0, ib = 0;
    while (a.a[ia] == 0) ++ia;
    while (b.a[ib] == 0) ++ib;
    if (ia != ib) return false;
    long long ra = a.a[ia], rb = b.a[ib];
    for (std::size_t k = 0; k < a.a.size(); ++k) {
        // a_k / ra == b_k / rb  <=>  a_k * rb == b_k * ra
        if (a.a[k] * rb != b.a[k] * ra) return false;
    }
    return true;
}

}  // namespace knot
