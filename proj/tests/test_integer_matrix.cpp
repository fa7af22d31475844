#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "eqbundle/integer_matrix.hpp"

using namespace eqbundle;

namespace {

IntMat mat(std::initializer_list<std::initializer_list<long>> rows) {
    IntMat m;
    for (auto& r : rows) {
        IntMat::value_type row;
        for (long v : r) row.emplace_back(v);
        m.push_back(std::move(row));
    }
    return m;
}

Int det3(const IntMat& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace

TEST_CASE("smith normal form basics") {
    auto m = mat({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
    auto d = smith_normal_form(m);
    REQUIRE(d.size() == 3);
    CHECK(d[0] == 2);
    CHECK(d[1] == 6);
    CHECK(d[2] == 12);  // invariant factors 2 | 6 | 12
    for (size_t i = 0; i + 1 < d.size(); ++i)
        if (d[i] != 0 && d[i + 1] != 0) CHECK(d[i + 1] % d[i] == 0);
    // product of invariant factors = |det| for a full-rank square matrix
    Int prod = d[0] * d[1] * d[2];
    CHECK(prod == int_abs(det3(m)));

    CHECK(smith_normal_form(mat({{0, 0}, {0, 0}})).empty());
    auto identity = smith_normal_form(mat({{1, 0}, {0, 1}}));
    CHECK(identity == std::vector<Int>{Int(1), Int(1)});
}

TEST_CASE("smith normal form randomized against determinant") {
    std::mt19937 rng(17);
    std::uniform_int_distribution<long> val(-6, 6);
    for (int t = 0; t < 60; ++t) {
        IntMat m(3, IntMat::value_type(3));
        for (auto& r : m)
            for (auto& v : r) v = Int(val(rng));
        Int d = det3(m);
        auto snf = smith_normal_form(m);
        Int prod = 1;
        long rank = 0;
        for (auto& v : snf)
            if (v != 0) {
                prod *= v;
                ++rank;
            }
        if (d != 0) {
            CHECK(rank == 3);
            CHECK(prod == int_abs(d));
        } else {
            CHECK(rank < 3);
        }
        CHECK(matrix_rank(m) == rank);
    }
}

TEST_CASE("hermite normal form") {
    auto h = hermite_normal_form(mat({{2, 3, 6, 2}, {5, 6, 1, 6}, {8, 3, 1, 1}}));
    REQUIRE(h.size() == 3);
    // pivots positive, echelon shape, entries above pivots reduced
    size_t last_pivot = 0;
    for (size_t r = 0; r < h.size(); ++r) {
        size_t p = 0;
        while (p < h[r].size() && h[r][p] == 0) ++p;
        REQUIRE(p < h[r].size());
        CHECK(h[r][p] > 0);
        if (r > 0) CHECK(p > last_pivot);
        last_pivot = p;
        for (size_t rr = 0; rr < r; ++rr) {
            CHECK(h[rr][p] >= 0);
            CHECK(h[rr][p] < h[r][p]);
        }
    }
    // HNF is unique: row-permuted input yields the same basis
    auto h2 = hermite_normal_form(mat({{8, 3, 1, 1}, {2, 3, 6, 2}, {5, 6, 1, 6}}));
    CHECK(h == h2);
}

TEST_CASE("lattice membership") {
    auto basis = hermite_normal_form(mat({{2, 0, 1}, {0, 3, 1}}));
    auto vec = [](std::initializer_list<long> v) {
        std::vector<Int> out;
        for (long x : v) out.emplace_back(x);
        return out;
    };
    CHECK(in_row_lattice(basis, vec({2, 0, 1})));
    CHECK(in_row_lattice(basis, vec({2, 3, 2})));
    CHECK(in_row_lattice(basis, vec({-2, 3, 0})));
    CHECK(!in_row_lattice(basis, vec({1, 0, 1})));
    CHECK(!in_row_lattice(basis, vec({0, 0, 1})));
}

TEST_CASE("non-negative integer solving") {
    std::vector<std::vector<long>> rows = {{1, 0, 1}, {0, 1, 1}, {1, 1, 2}};
    auto sol = solve_nonneg(rows, {2, 1, 3});
    REQUIRE(sol.has_value());
    // lexicographically maximal solution takes the first row as often as possible
    CHECK((*sol)[0] == 2);
    // verify
    std::vector<long> got(3, 0);
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t c = 0; c < 3; ++c) got[c] += (*sol)[i] * rows[i][c];
    CHECK(got == std::vector<long>{2, 1, 3});

    CHECK(!solve_nonneg(rows, {1, 0, 0}).has_value());
    CHECK(solve_nonneg({}, {0, 0}).has_value());
    CHECK(!solve_nonneg({}, {1}).has_value());
}
