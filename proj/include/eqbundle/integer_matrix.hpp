#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

#include "eqbundle/errors.hpp"
#include "eqbundle/rational.hpp"

namespace eqbundle {

using IntMat = std::vector<std::vector<Int>>;  // row-major, rectangular

inline Int int_abs(const Int& v) { return v < 0 ? Int(-v) : v; }

/// Smith normal form diagonal (d_1 | d_2 | ...), all non-negative, computed by
/// unimodular row/column operations. Pivot choice: smallest nonzero absolute
/// value, ties broken row-major, for reproducibility.
inline std::vector<Int> smith_normal_form(IntMat a) {
    size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    std::vector<Int> diag;
    size_t t = 0;
    while (t < rows && t < cols) {
        // locate pivot
        long pr = -1, pc = -1;
        Int best;
        for (size_t r = t; r < rows; ++r)
            for (size_t c = t; c < cols; ++c) {
                if (a[r][c] == 0) continue;
                Int v = int_abs(a[r][c]);
                if (pr < 0 || v < best) {
                    best = v;
                    pr = static_cast<long>(r);
                    pc = static_cast<long>(c);
                }
            }
        if (pr < 0) break;  // all zero
        std::swap(a[t], a[pr]);
        for (size_t r = 0; r < rows; ++r) std::swap(a[r][t], a[r][pc]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t r = t + 1; r < rows; ++r) {
                if (a[r][t] == 0) continue;
                Int q = floor_div(a[r][t], a[t][t]);
                for (size_t c = t; c < cols; ++c) a[r][c] -= q * a[t][c];
                if (a[r][t] != 0) {
                    std::swap(a[t], a[r]);
                    clean = false;
                }
            }
            for (size_t c = t + 1; c < cols; ++c) {
                if (a[t][c] == 0) continue;
                Int q = floor_div(a[t][c], a[t][t]);
                for (size_t r = t; r < rows; ++r) a[r][c] -= q * a[r][t];
                if (a[t][c] != 0) {
                    for (size_t r = t; r < rows; ++r) std::swap(a[r][t], a[r][c]);
                    clean = false;
                }
            }
        }
        // divisibility fix-up: pivot must divide every remaining entry
        bool redo = false;
        for (size_t r = t + 1; r < rows && !redo; ++r)
            for (size_t c = t + 1; c < cols && !redo; ++c)
                if (a[r][c] % a[t][t] != 0) {
                    for (size_t cc = t; cc < cols; ++cc) a[t][cc] += a[r][cc];
                    redo = true;
                }
        if (redo) continue;  // re-run the same t
        if (a[t][t] < 0) a[t][t] = -a[t][t];
        diag.push_back(a[t][t]);
        ++t;
    }
    return diag;
}

inline long matrix_rank(const IntMat& a) {
    auto d = smith_normal_form(a);
    long rank = 0;
    for (const auto& v : d)
        if (v != 0) ++rank;
    return rank;
}

/// Row-style Hermite normal form: row echelon with positive pivots and
/// entries above each pivot reduced into [0, pivot). Zero rows are dropped;
/// the result is the unique HNF basis of the row lattice.
inline IntMat hermite_normal_form(IntMat a) {
    size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    size_t rank = 0;
    for (size_t c = 0; c < cols && rank < rows; ++c) {
        // eliminate below via gcd row operations
        for (;;) {
            long piv = -1;
            Int best;
            for (size_t r = rank; r < rows; ++r) {
                if (a[r][c] == 0) continue;
                Int v = int_abs(a[r][c]);
                if (piv < 0 || v < best) {
                    best = v;
                    piv = static_cast<long>(r);
                }
            }
            if (piv < 0) break;
            std::swap(a[rank], a[piv]);
            bool reduced_all = true;
            for (size_t r = rank + 1; r < rows; ++r) {
                if (a[r][c] == 0) continue;
                Int q = floor_div(a[r][c], a[rank][c]);
                for (size_t cc = 0; cc < cols; ++cc) a[r][cc] -= q * a[rank][cc];
                if (a[r][c] != 0) reduced_all = false;
            }
            if (reduced_all) break;
        }
        if (a[rank][c] == 0) continue;
        if (a[rank][c] < 0)
            for (size_t cc = 0; cc < cols; ++cc) a[rank][cc] = -a[rank][cc];
        for (size_t r = 0; r < rank; ++r) {
            Int q = floor_div(a[r][c], a[rank][c]);
            if (q == 0) continue;
            for (size_t cc = 0; cc < cols; ++cc) a[r][cc] -= q * a[rank][cc];
        }
        ++rank;
    }
    a.resize(rank);
    return a;
}

/// Membership of v in the row lattice spanned by an HNF basis.
inline bool in_row_lattice(const IntMat& hnf, std::vector<Int> v) {
    size_t cols = v.size();
    for (const auto& row : hnf) {
        size_t pivot = 0;
        while (pivot < cols && row[pivot] == 0) ++pivot;
        if (pivot == cols) continue;
        if (v[pivot] % row[pivot] != 0) return false;
        Int q = v[pivot] / row[pivot];
        if (q != 0)
            for (size_t c = pivot; c < cols; ++c) v[c] -= q * row[c];
    }
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

/// First solution of sum_i x_i * rows[i] = target with x_i >= 0 integers,
/// exploring larger x_i first, so the returned solution is lexicographically
/// maximal. Rows must have non-negative entries.
inline std::optional<std::vector<long>> solve_nonneg(const std::vector<std::vector<long>>& rows,
                                                     const std::vector<long>& target) {
    size_t n = rows.size(), m = target.size();
    std::vector<long> want = target, x(n, 0);
    for (long w : want)
        if (w < 0) return std::nullopt;

    // rows entirely zero can take any coefficient; pin them to 0
    std::function<bool(size_t)> go = [&](size_t i) -> bool {
        bool done = true;
        for (long w : want)
            if (w != 0) done = false;
        if (done) {
            for (size_t j = i; j < n; ++j) x[j] = 0;
            return true;
        }
        if (i == n) return false;
        long cap = -1;
        for (size_t c = 0; c < m; ++c) {
            if (rows[i][c] == 0) continue;
            long q = want[c] / rows[i][c];
            cap = (cap < 0) ? q : std::min(cap, q);
        }
        if (cap < 0) cap = 0;  // zero row contributes nothing
        for (long v = cap; v >= 0; --v) {
            for (size_t c = 0; c < m; ++c) want[c] -= v * rows[i][c];
            bool feasible = true;
            for (size_t c = 0; c < m; ++c)
                if (want[c] < 0) feasible = false;
            if (feasible) {
                x[i] = v;
                if (go(i + 1)) return true;
            }
            for (size_t c = 0; c < m; ++c) want[c] += v * rows[i][c];
        }
        return false;
    };
    if (!go(0)) return std::nullopt;
    return x;
}

}  // namespace eqbundle
