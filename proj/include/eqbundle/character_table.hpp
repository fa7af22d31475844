#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "eqbundle/cyclotomic.hpp"
#include "eqbundle/errors.hpp"
#include "eqbundle/finite_group.hpp"

namespace eqbundle {

/// A class function with cyclotomic values, one per conjugacy class of its
/// group (in class order).
struct Character {
    GroupPtr group;
    std::vector<Cyclotomic> values;

    Int degree() const {
        const Cyclotomic& v = values[0];
        if (!v.is_rational() || !is_integer(v.rational_value()))
            throw NotACharacter("degree is not a rational integer");
        return v.rational_value().get_num();
    }
    bool is_linear() const { return degree() == 1; }

    bool operator==(const Character& o) const {
        return group.get() == o.group.get() && values == o.values;
    }
    bool operator!=(const Character& o) const { return !(*this == o); }
};

/// Value-level equality for characters living on structurally identical groups
/// (e.g. the same subgroup materialized through different parents).
inline bool values_equal(const Character& a, const Character& b) {
    return a.values == b.values;
}

inline Character trivial_character(const GroupPtr& g) {
    Character c;
    c.group = g;
    c.values.assign(g->classes().count(), Cyclotomic(1));
    return c;
}

inline Character character_sum(const Character& a, const Character& b) {
    if (a.group.get() != b.group.get())
        throw PreconditionViolated("character sum across different groups");
    Character r;
    r.group = a.group;
    r.values.resize(a.values.size());
    for (size_t i = 0; i < a.values.size(); ++i) r.values[i] = a.values[i] + b.values[i];
    return r;
}

inline Character character_scale(const Character& a, long m) {
    Character r;
    r.group = a.group;
    r.values.resize(a.values.size());
    for (size_t i = 0; i < a.values.size(); ++i) r.values[i] = a.values[i].scaled(Rat(m));
    return r;
}

/// Pointwise (tensor-product) multiplication of characters.
inline Character character_pointwise(const Character& a, const Character& b) {
    if (a.group.get() != b.group.get())
        throw PreconditionViolated("character product across different groups");
    Character r;
    r.group = a.group;
    r.values.resize(a.values.size());
    for (size_t i = 0; i < a.values.size(); ++i) r.values[i] = a.values[i] * b.values[i];
    return r;
}

struct CharacterTable {
    GroupPtr group;
    std::vector<Character> irreducibles;

    int count() const { return static_cast<int>(irreducibles.size()); }
    const Character& at(int i) const { return irreducibles[i]; }

    /// Exact row match, or -1.
    int index_of(const Character& chi) const {
        for (int i = 0; i < count(); ++i)
            if (irreducibles[i].values == chi.values) return i;
        return -1;
    }

    /// Per-class values of a degree-1 row as explicit roots of unity.
    std::vector<RootOfUnity> linear_root_values(int row) const {
        const Character& chi = irreducibles[row];
        if (!chi.is_linear()) throw PreconditionViolated("not a linear character");
        std::vector<RootOfUnity> out;
        out.reserve(chi.values.size());
        for (const auto& v : chi.values) {
            auto r = as_root_of_unity(v);
            if (!r) throw InternalError("linear character value is not a root of unity");
            out.push_back(*r);
        }
        return out;
    }
};

using TablePtr = std::shared_ptr<const CharacterTable>;

namespace detail {

inline long mod_pow(long base, long exp, long p) {
    long r = 1 % p;
    base %= p;
    if (base < 0) base += p;
    while (exp > 0) {
        if (exp & 1) r = r * base % p;
        base = base * base % p;
        exp >>= 1;
    }
    return r;
}

inline long mod_inv(long a, long p) {
    long r = mod_pow(a, p - 2, p);
    if (r * a % p != 1 % p) throw InternalError("modular inverse failed");
    return r;
}

/// Smallest prime p = 1 (mod e) with p > 2*sqrt(n); p > e ensures p does not
/// divide the group order.
inline long dixon_prime(long e, long n) {
    long bound = static_cast<long>(2.0 * std::sqrt(static_cast<double>(n))) + 1;
    for (long p = e + 1;; p += e) {
        if (p <= bound) continue;
        if (is_prime(p)) return p;
    }
}

inline long primitive_root(long p) {
    std::vector<long> qs = prime_factors(p - 1);
    for (long g = 2; g < p; ++g) {
        bool ok = true;
        for (long q : qs)
            if (mod_pow(g, (p - 1) / q, p) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    throw InternalError("no primitive root found");
}

using ModMatrix = std::vector<std::vector<long>>;

/// Characteristic polynomial mod p (monic, ascending coefficients) via
/// Hessenberg reduction; no divisions other than by pivots.
inline std::vector<long> charpoly_mod(ModMatrix h, long p) {
    long d = static_cast<long>(h.size());
    for (auto& row : h)
        for (auto& v : row) v = ((v % p) + p) % p;
    for (long col = 0; col + 2 < d; ++col) {
        long piv = -1;
        for (long r = col + 1; r < d; ++r)
            if (h[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        if (piv != col + 1) {
            std::swap(h[piv], h[col + 1]);
            for (long r = 0; r < d; ++r) std::swap(h[r][piv], h[r][col + 1]);
        }
        long inv = mod_inv(h[col + 1][col], p);
        for (long r = col + 2; r < d; ++r) {
            if (h[r][col] == 0) continue;
            long f = h[r][col] * inv % p;
            for (long c = 0; c < d; ++c) h[r][c] = ((h[r][c] - f * h[col + 1][c]) % p + p) % p;
            for (long rr = 0; rr < d; ++rr) h[rr][col + 1] = (h[rr][col + 1] + f * h[rr][r]) % p;
        }
    }
    auto norm = [p](long v) {
        v %= p;
        return v < 0 ? v + p : v;
    };
    std::vector<std::vector<long>> polys;
    polys.push_back({1});
    for (long m = 1; m <= d; ++m) {
        std::vector<long> pm(m + 1, 0);
        const auto& prev = polys[m - 1];
        long a = norm(h[m - 1][m - 1]);
        for (long i = 0; i < m; ++i) {
            pm[i + 1] = (pm[i + 1] + prev[i]) % p;
            pm[i] = (pm[i] - a * prev[i]) % p;
        }
        long run = 1;
        for (long i = 1; i < m; ++i) {
            run = run * norm(h[m - i][m - i - 1]) % p;
            if (run == 0) break;
            long coef = norm(h[m - 1 - i][m - 1]) * run % p;
            if (coef == 0) continue;
            const auto& pk = polys[m - 1 - i];
            for (size_t t = 0; t < pk.size(); ++t) pm[t] = (pm[t] - coef * pk[t]) % p;
        }
        for (auto& c : pm) c = norm(c);
        polys.push_back(std::move(pm));
    }
    return polys.back();
}

/// Kernel basis of a (mod p), rows in reduced echelon form, deterministic.
inline ModMatrix kernel_mod(ModMatrix a, long p) {
    long rows = static_cast<long>(a.size());
    long cols = rows == 0 ? 0 : static_cast<long>(a[0].size());
    std::vector<long> pivot_col;
    long rank = 0;
    for (long c = 0; c < cols && rank < rows; ++c) {
        long piv = -1;
        for (long r = rank; r < rows; ++r)
            if (a[r][c] % p != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[rank], a[piv]);
        long inv = mod_inv(((a[rank][c] % p) + p) % p, p);
        for (long cc = 0; cc < cols; ++cc) a[rank][cc] = (a[rank][cc] % p + p) % p * inv % p;
        for (long r = 0; r < rows; ++r) {
            if (r == rank) continue;
            long f = ((a[r][c] % p) + p) % p;
            if (f == 0) continue;
            for (long cc = 0; cc < cols; ++cc)
                a[r][cc] = ((a[r][cc] - f * a[rank][cc]) % p + p) % p;
        }
        pivot_col.push_back(c);
        ++rank;
    }
    std::vector<bool> is_pivot(cols, false);
    for (long c : pivot_col) is_pivot[c] = true;
    ModMatrix basis;
    for (long c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<long> v(cols, 0);
        v[c] = 1;
        for (long r = 0; r < rank; ++r) v[pivot_col[r]] = (p - a[r][c]) % p;
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Row-reduce (mod p) in place; returns pivot columns. Rows stay normalized.
inline std::vector<long> rref_mod(ModMatrix& m, long p) {
    long rows = static_cast<long>(m.size());
    long cols = rows == 0 ? 0 : static_cast<long>(m[0].size());
    std::vector<long> pivots;
    long rank = 0;
    for (long c = 0; c < cols && rank < rows; ++c) {
        long piv = -1;
        for (long r = rank; r < rows; ++r)
            if (m[r][c] % p != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[rank], m[piv]);
        long inv = mod_inv(((m[rank][c] % p) + p) % p, p);
        for (long cc = 0; cc < cols; ++cc) m[rank][cc] = ((m[rank][cc] % p) + p) % p * inv % p;
        for (long r = 0; r < rows; ++r) {
            if (r == rank) continue;
            long f = ((m[r][c] % p) + p) % p;
            if (f == 0) continue;
            for (long cc = 0; cc < cols; ++cc)
                m[r][cc] = ((m[r][cc] - f * m[rank][cc]) % p + p) % p;
        }
        pivots.push_back(c);
        ++rank;
    }
    m.resize(rank);
    return pivots;
}

/// Dixon's method: simultaneous eigenvectors of the class-algebra matrices
/// over F_p, then exact recovery of character values as cyclotomic integers
/// through the discrete-log correspondence of roots of unity.
inline std::vector<Character> dixon_irreducibles(const GroupPtr& gp) {
    const FiniteGroup& g = *gp;
    const ConjugacyClasses& cls = g.classes();
    const long n = g.order();
    const long k = cls.count();
    const long e = g.exponent();
    const long p = dixon_prime(e, n);
    const long z = mod_pow(primitive_root(p), (p - 1) / e, p);

    std::vector<std::vector<int>> class_members(k);
    for (int i = 0; i < n; ++i) class_members[cls.class_of[i]].push_back(i);
    std::vector<long> invclass(k);
    for (long i = 0; i < k; ++i) invclass[i] = cls.class_of[g.inv(cls.representatives[i])];

    // class matrices are sparse: column l of M_i has at most |C_i| nonzero
    // entries, so they are stored per column as (row, count) pairs
    using SparseMatrix = std::vector<std::vector<std::pair<long, long>>>;
    auto class_matrix = [&](long i) {
        std::vector<std::map<long, long>> cols(k);
        for (int x : class_members[i]) {
            int xinv = g.inv(x);
            for (long l = 0; l < k; ++l) {
                int j = cls.class_of[g.mul(xinv, cls.representatives[l])];
                ++cols[l][j];
            }
        }
        SparseMatrix m(k);
        for (long l = 0; l < k; ++l)
            for (const auto& [row, cnt] : cols[l]) m[l].emplace_back(row, cnt % p);
        return m;
    };
    auto apply_sparse = [&](const SparseMatrix& m, const std::vector<long>& v) {
        std::vector<long> out(k, 0);
        for (long l = 0; l < k; ++l) {
            if (v[l] == 0) continue;
            for (const auto& [row, cnt] : m[l]) out[row] = (out[row] + cnt * v[l]) % p;
        }
        return out;
    };

    struct Space {
        ModMatrix basis;           // rows = vectors, reduced echelon form
        std::vector<long> pivots;  // pivot columns, ascending
    };
    std::vector<Space> spaces;
    {
        Space whole;
        whole.basis.assign(k, std::vector<long>(k, 0));
        for (long i = 0; i < k; ++i) {
            whole.basis[i][i] = 1;
            whole.pivots.push_back(i);
        }
        spaces.push_back(std::move(whole));
    }
    // split by classes of small element order first: their matrices have few
    // distinct eigenvalues, which keeps the per-eigenvalue kernel work on
    // large subspaces down (decisive for cyclic groups near the order cap)
    std::vector<long> split_order;
    for (long i = 1; i < k; ++i) split_order.push_back(i);
    std::stable_sort(split_order.begin(), split_order.end(), [&](long x, long y) {
        return g.element_order(cls.representatives[x]) < g.element_order(cls.representatives[y]);
    });
    for (long i : split_order) {
        bool any_big = false;
        for (const auto& s : spaces)
            if (s.basis.size() > 1) any_big = true;
        if (!any_big) break;
        SparseMatrix mi = class_matrix(i);
        std::vector<Space> next;
        for (auto& sp : spaces) {
            long d = static_cast<long>(sp.basis.size());
            if (d == 1) {
                next.push_back(std::move(sp));
                continue;
            }
            // matrix of M_i restricted to the subspace, using pivot coordinates
            ModMatrix restricted(d, std::vector<long>(d, 0));
            for (long r = 0; r < d; ++r) {
                std::vector<long> w = apply_sparse(mi, sp.basis[r]);
                for (long s = 0; s < d; ++s) restricted[s][r] = w[sp.pivots[s]];
            }
            std::vector<long> cp = charpoly_mod(restricted, p);
            long split_total = 0;
            for (long lam = 0; lam < p && split_total < d; ++lam) {
                long val = 0;
                for (long t = static_cast<long>(cp.size()) - 1; t >= 0; --t)
                    val = (val * lam + cp[t]) % p;
                if (val != 0) continue;
                ModMatrix shifted = restricted;
                for (long t = 0; t < d; ++t) shifted[t][t] = ((shifted[t][t] - lam) % p + p) % p;
                ModMatrix ker = kernel_mod(shifted, p);
                if (ker.empty()) continue;
                if (static_cast<long>(ker.size()) == d) {
                    // M_i acts as the scalar lam here: nothing to split
                    split_total = d;
                    next.push_back(std::move(sp));
                    break;
                }
                Space child;
                for (const auto& coords : ker) {
                    std::vector<long> v(k, 0);
                    for (long r = 0; r < d; ++r) {
                        if (coords[r] == 0) continue;
                        for (long c = 0; c < k; ++c)
                            v[c] = (v[c] + coords[r] * sp.basis[r][c]) % p;
                    }
                    child.basis.push_back(std::move(v));
                }
                child.pivots = rref_mod(child.basis, p);
                split_total += static_cast<long>(child.basis.size());
                next.push_back(std::move(child));
            }
            if (split_total != d) throw InternalError("class-algebra eigenspace split incomplete");
        }
        spaces = std::move(next);
    }
    if (static_cast<long>(spaces.size()) != k)
        throw InternalError("class algebra did not split into 1-dimensional eigenspaces");

    std::vector<long> size_inv(k);
    for (long i = 0; i < k; ++i) size_inv[i] = mod_inv(cls.sizes[i] % p, p);

    long sqrt_n = 0;
    while ((sqrt_n + 1) * (sqrt_n + 1) <= n) ++sqrt_n;

    // shared lift data: power-class sequences and, for the degree-1 fast
    // path, discrete logarithms of the roots of unity in F_p
    std::vector<std::vector<int>> power_class(k);
    for (long i = 0; i < k; ++i) {
        int rep = cls.representatives[i];
        long m = g.element_order(rep);
        power_class[i].reserve(m);
        int x = 0;
        for (long t = 0; t < m; ++t) {
            power_class[i].push_back(cls.class_of[x]);
            x = g.mul(x, rep);
        }
    }
    std::map<long, std::map<long, long>> dlog_by_order;
    auto dlog_table = [&](long m) -> const std::map<long, long>& {
        auto it = dlog_by_order.find(m);
        if (it != dlog_by_order.end()) return it->second;
        long zm = mod_pow(z, e / m, p);
        std::map<long, long> table;
        long w = 1;
        for (long t = 0; t < m; ++t) {
            table.emplace(w, t);
            w = w * zm % p;
        }
        return dlog_by_order.emplace(m, std::move(table)).first->second;
    };

    std::vector<Character> out;
    for (const auto& sp : spaces) {
        if (sp.basis.size() != 1) throw InternalError("non-1-dimensional eigenspace survived");
        std::vector<long> omega = sp.basis[0];
        if (omega[0] % p == 0) throw InternalError("eigenvector vanishes on the identity class");
        long scale = mod_inv(omega[0], p);
        for (auto& v : omega) v = v * scale % p;

        long t_sum = 0;
        for (long i = 0; i < k; ++i)
            t_sum = (t_sum + omega[i] * omega[invclass[i]] % p * size_inv[i]) % p;
        long d2 = n % p * mod_inv(t_sum, p) % p;
        long deg = 0;
        for (long d = 1; d <= sqrt_n; ++d)
            if (d * d % p == d2) {
                deg = d;
                break;
            }
        if (deg == 0) throw InternalError("degree recovery failed");

        std::vector<long> value_mod(k);
        for (long i = 0; i < k; ++i) value_mod[i] = deg % p * omega[i] % p * size_inv[i] % p;

        Character chi;
        chi.group = gp;
        chi.values.resize(k);
        for (long i = 0; i < k; ++i) {
            int rep = cls.representatives[i];
            long m = g.element_order(rep);
            if (deg == 1) {
                // a single root of unity: recover the exponent by discrete log
                const auto& table = dlog_table(m);
                auto hit = table.find(value_mod[i]);
                if (hit == table.end())
                    throw InternalError("linear value is not a power of the chosen root");
                chi.values[i] = Cyclotomic::root(m, hit->second);
                continue;
            }
            long zm = mod_pow(z, e / m, p);
            long zm_inv = mod_inv(zm, p);
            long m_inv = mod_inv(m % p, p);
            const auto& pc = power_class[i];
            std::vector<std::pair<long, Rat>> terms;
            for (long j = 0; j < m; ++j) {
                long acc = 0;
                long w = mod_pow(zm_inv, j, p);
                long wt = 1;
                for (long t = 0; t < m; ++t) {
                    acc = (acc + value_mod[pc[t]] * wt) % p;
                    wt = wt * w % p;
                }
                long cj = acc * m_inv % p;
                if (cj < 0) cj += p;
                if (cj == 0) continue;
                if (cj > deg) throw InternalError("character lift multiplicity out of range");
                terms.emplace_back(j, Rat(cj));
            }
            chi.values[i] = Cyclotomic::from_terms(m, terms);
        }
        out.push_back(std::move(chi));
    }

    Int degree_sq_sum = 0;
    for (const auto& chi : out) degree_sq_sum += chi.degree() * chi.degree();
    if (degree_sq_sum != n) throw InternalError("sum of squared degrees does not match group order");

    std::sort(out.begin(), out.end(), [](const Character& a, const Character& b) {
        Int da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        for (size_t i = 0; i < a.values.size(); ++i) {
            int c = Cyclotomic::compare(a.values[i], b.values[i]);
            if (c != 0) return c < 0;
        }
        return false;
    });
    for (size_t i = 0; i + 1 < out.size(); ++i)
        if (out[i].values == out[i + 1].values) throw InternalError("duplicate irreducible rows");
    return out;
}

}  // namespace detail

/// The full irreducible character table, exact, in a deterministic order
/// (degree, then lexicographic on canonicalized values). Memoized per group
/// instance.
inline TablePtr character_table(const GroupPtr& g) {
    static std::map<const FiniteGroup*, std::pair<GroupPtr, TablePtr>> cache;
    static std::mutex mtx;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(g.get());
        if (it != cache.end()) return it->second.second;
    }
    auto table = std::make_shared<CharacterTable>();
    table->group = g;
    table->irreducibles = detail::dixon_irreducibles(g);
    TablePtr result = table;
    std::lock_guard<std::mutex> lock(mtx);
    cache.emplace(g.get(), std::make_pair(g, result));
    return result;
}

/// Class-wise transport of a character of the parent to a subgroup.
inline Character restrict_to(const Character& chi, const SubgroupView& s) {
    if (chi.group.get() != s.sub.parent.get())
        throw PreconditionViolated("restriction: character lives on a different group");
    const auto& parent_cls = chi.group->classes();
    const auto& sub_cls = s.grp->classes();
    Character r;
    r.group = s.grp;
    r.values.resize(sub_cls.count());
    for (int c = 0; c < sub_cls.count(); ++c) {
        int parent_elt = s.to_parent[sub_cls.representatives[c]];
        r.values[c] = chi.values[parent_cls.class_of[parent_elt]];
    }
    return r;
}

/// Induced character via the standard coset-sum formula
/// psi(g) = (1/|S|) sum_{x in G, x^{-1} g x in S} chi(x^{-1} g x).
inline Character induce_from(const Character& chi_s, const SubgroupView& s) {
    if (chi_s.group.get() != s.grp.get())
        throw PreconditionViolated("induction: character does not live on the subgroup");
    GroupPtr parent = s.sub.parent;
    const auto& g = *parent;
    const auto& parent_cls = g.classes();
    const auto& sub_cls = s.grp->classes();
    Character r;
    r.group = parent;
    r.values.resize(parent_cls.count());
    Rat scale(1, s.sub.order());
    scale.canonicalize();
    for (int c = 0; c < parent_cls.count(); ++c) {
        int rep = parent_cls.representatives[c];
        Cyclotomic acc;
        for (int x = 0; x < g.order(); ++x) {
            int y = g.mul(g.mul(g.inv(x), rep), x);
            int local = s.from_parent[y];
            if (local < 0) continue;
            acc = acc + chi_s.values[sub_cls.class_of[local]];
        }
        r.values[c] = acc.scaled(scale);
    }
    return r;
}

/// The conjugated character {}^g chi (h -> chi(g^{-1} h g)) on a normal
/// subgroup materialized as s; g is a parent element index.
inline Character conjugate_character(const Character& chi, const SubgroupView& s, int g_parent) {
    if (chi.group.get() != s.grp.get())
        throw PreconditionViolated("conjugation: character does not live on the subgroup");
    const auto& g = *s.sub.parent;
    const auto& sub_cls = s.grp->classes();
    int ginv = g.inv(g_parent);
    Character r;
    r.group = s.grp;
    r.values.resize(sub_cls.count());
    for (int c = 0; c < sub_cls.count(); ++c) {
        int h = s.to_parent[sub_cls.representatives[c]];
        int moved = g.mul(g.mul(ginv, h), g_parent);
        int local = s.from_parent[moved];
        if (local < 0)
            throw PreconditionViolated("conjugation left the subgroup; subgroup is not normal");
        r.values[c] = chi.values[sub_cls.class_of[local]];
    }
    return r;
}

/// (1/|G|) sum_g a(g) conj(b(g)), computed class-wise with an integer
/// accumulator fast path (character values are cyclotomic integers).
inline Cyclotomic inner_product(const Character& a, const Character& b) {
    if (a.group.get() != b.group.get())
        throw PreconditionViolated("inner product across different groups");
    const auto& cls = a.group->classes();
    const long n = a.group->order();
    const long k = cls.count();

    long E = 1;
    for (const auto& v : a.values) E = lcm_long(E, v.order());
    for (const auto& v : b.values) E = lcm_long(E, v.order());

    // fast path: everything has small integer coefficients
    bool fast = true;
    std::vector<std::vector<std::pair<long, long long>>> ta(k), tb(k);
    for (long i = 0; i < k && fast; ++i) {
        auto la = a.values[i].integer_terms_at(E);
        auto lb = b.values[i].integer_terms_at(E);
        if (!la || !lb) {
            fast = false;
            break;
        }
        ta[i] = std::move(*la);
        tb[i] = std::move(*lb);
    }
    if (fast) {
        constexpr long long kBound = 1LL << 55;
        std::vector<long long> dense(E, 0);
        for (long i = 0; i < k && fast; ++i) {
            long long size = cls.sizes[i];
            for (const auto& [ea, ca] : ta[i]) {
                for (const auto& [eb, cb] : tb[i]) {
                    long exp = (ea - eb) % E;
                    if (exp < 0) exp += E;
                    long long add = ca * cb * size;
                    dense[exp] += add;
                    if (dense[exp] > kBound || dense[exp] < -kBound || add > kBound ||
                        add < -kBound) {
                        fast = false;
                        break;
                    }
                }
                if (!fast) break;
            }
        }
        if (fast) {
            long deg = euler_phi(E);
            const auto& rows = detail::power_rows(E);
            std::vector<long long> red(deg, 0);
            bool ok = true;
            for (long j = 0; j < E && ok; ++j) {
                if (dense[j] == 0) continue;
                if (j < deg) {
                    red[j] += dense[j];
                } else {
                    for (long i = 0; i < deg; ++i) {
                        if (rows[j][i] == 0) continue;
                        red[i] += dense[j] * rows[j][i];
                        if (red[i] > kBound || red[i] < -kBound) {
                            ok = false;
                            break;
                        }
                    }
                }
            }
            if (ok) {
                std::vector<Rat> coeffs(deg);
                for (long i = 0; i < deg; ++i) {
                    coeffs[i] = Rat(Int(static_cast<long>(red[i])), Int(n));
                    coeffs[i].canonicalize();
                }
                return Cyclotomic::from_reduced_basis(E, std::move(coeffs));
            }
        }
    }
    // general exact path
    Cyclotomic acc;
    for (long i = 0; i < k; ++i) {
        Cyclotomic term = a.values[i] * b.values[i].conjugate();
        acc = acc + term.scaled(Rat(cls.sizes[i]));
    }
    Rat inv_n(1, n);
    inv_n.canonicalize();
    return acc.scaled(inv_n);
}

/// Decompose a genuine character into irreducible constituents; throws
/// NotACharacter when a multiplicity comes out negative or non-integral.
inline std::vector<std::pair<int, Int>> decompose(const Character& psi) {
    TablePtr table = character_table(psi.group);
    std::vector<std::pair<int, Int>> out;
    Int degree_acc = 0;
    for (int i = 0; i < table->count(); ++i) {
        Cyclotomic ip = inner_product(psi, table->at(i));
        if (!ip.is_rational() || !is_integer(ip.rational_value()))
            throw NotACharacter("multiplicity of constituent " + std::to_string(i) +
                                " is not an integer");
        Int m = ip.rational_value().get_num();
        if (m < 0)
            throw NotACharacter("multiplicity of constituent " + std::to_string(i) +
                                " is negative");
        if (m > 0) {
            out.emplace_back(i, m);
            degree_acc += m * table->at(i).degree();
        }
    }
    if (degree_acc != psi.degree())
        throw NotACharacter("constituents do not account for the full degree");
    return out;
}

}  // namespace eqbundle
