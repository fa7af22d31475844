#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "eqbundle/errors.hpp"
#include "eqbundle/rational.hpp"

namespace eqbundle {

inline long euler_phi(long n) {
    long result = n;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

inline std::vector<long> prime_factors(long n) {
    std::vector<long> ps;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

namespace detail {

using IPoly = std::vector<Int>;  // dense, little-endian, no trailing zeros

inline void ipoly_trim(IPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

/// Exact division of integer polynomials; remainder must vanish.
inline IPoly ipoly_div_exact(const IPoly& num, const IPoly& den) {
    IPoly r = num, q(num.size(), Int(0));
    while (r.size() >= den.size() && !r.empty()) {
        Int c = r.back() / den.back();
        size_t shift = r.size() - den.size();
        q[shift] = c;
        for (size_t i = 0; i < den.size(); ++i) r[shift + i] -= c * den[i];
        ipoly_trim(r);
    }
    if (!r.empty()) throw InternalError("inexact polynomial division");
    ipoly_trim(q);
    return q;
}

inline const IPoly& cyclotomic_polynomial(long e) {
    static std::map<long, IPoly> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(e);
    if (it != cache.end()) return it->second;

    // Phi_e = (x^e - 1) / prod_{d | e, d < e} Phi_d, computed recursively without
    // re-entering the lock.
    std::vector<long> todo{e}, order;
    while (!todo.empty()) {
        long m = todo.back();
        todo.pop_back();
        if (cache.count(m)) continue;
        order.push_back(m);
        for (long d = 1; d < m; ++d)
            if (m % d == 0 && !cache.count(d)) todo.push_back(d);
    }
    std::sort(order.begin(), order.end());
    for (long m : order) {
        if (cache.count(m)) continue;
        IPoly p(m + 1, Int(0));
        p[0] = -1;
        p[m] = 1;  // x^m - 1
        for (long d = 1; d < m; ++d)
            if (m % d == 0) p = ipoly_div_exact(p, cache.at(d));
        cache.emplace(m, std::move(p));
    }
    return cache.at(e);
}

/// Rows j = 0..e-1: coefficients of x^j mod Phi_e over the basis 1..x^{phi(e)-1}.
/// Coefficients stay small for e <= 512; overflow is checked while building.
inline const std::vector<std::vector<long long>>& power_rows(long e) {
    static std::map<long, std::vector<std::vector<long long>>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(e);
    if (it != cache.end()) return it->second;

    const IPoly& poly = cyclotomic_polynomial(e);
    long deg = static_cast<long>(poly.size()) - 1;  // = phi(e)
    std::vector<IPoly> rows_big(e, IPoly(deg, Int(0)));
    for (long j = 0; j < std::min(e, deg); ++j) rows_big[j][j] = 1;
    for (long j = deg; j < e; ++j) {
        // x * rows_big[j-1], then cancel the top coefficient against monic Phi_e.
        IPoly cur(deg + 1, Int(0));
        for (long i = 0; i < deg; ++i) cur[i + 1] = rows_big[j - 1][i];
        Int top = cur[deg];
        for (long i = 0; i < deg; ++i) rows_big[j][i] = cur[i] - top * poly[i];
    }
    std::vector<std::vector<long long>> rows(e, std::vector<long long>(deg, 0));
    for (long j = 0; j < e; ++j)
        for (long i = 0; i < deg; ++i) {
            if (!rows_big[j][i].fits_slong_p())
                throw InternalError("power-basis reduction coefficient overflow");
            rows[j][i] = rows_big[j][i].get_si();
        }
    return cache.emplace(e, std::move(rows)).first->second;
}

}  // namespace detail

/// An exact element of the cyclotomic field Q(zeta_e), stored over the power
/// basis {zeta_e^j : 0 <= j < phi(e)} reduced modulo the e-th cyclotomic
/// polynomial. The stored order is the conductor of the element (never
/// congruent to 2 mod 4), so equality is plain coefficient comparison.
class Cyclotomic {
  public:
    Cyclotomic() : order_(1), c_{Rat(0)} {}
    explicit Cyclotomic(const Rat& q) : order_(1), c_{q} {}
    explicit Cyclotomic(long v) : order_(1), c_{Rat(v)} {}

    /// zeta_order^exponent
    static Cyclotomic root(long order, long exponent) {
        return from_terms(order, {{exponent, Rat(1)}});
    }

    static Cyclotomic from_rational(const Rat& q) { return Cyclotomic(q); }

    /// sum of coeff * zeta_order^exponent over the given terms
    static Cyclotomic from_terms(long order, const std::vector<std::pair<long, Rat>>& terms) {
        if (order < 1) throw PreconditionViolated("cyclotomic order must be positive");
        std::vector<Rat> dense(order, Rat(0));
        for (const auto& [exp, coeff] : terms) {
            long j = exp % order;
            if (j < 0) j += order;
            dense[j] += coeff;
        }
        return from_dense_exponents(order, dense);
    }

    /// Build from coefficients already reduced to the power basis at order e.
    static Cyclotomic from_reduced_basis(long e, std::vector<Rat> coeffs) {
        if (static_cast<long>(coeffs.size()) != euler_phi(e))
            throw PreconditionViolated("from_reduced_basis: wrong coefficient count");
        return make_minimized(e, std::move(coeffs));
    }

    /// Build from a full exponent vector (length e, not yet reduced mod Phi_e).
    static Cyclotomic from_dense_exponents(long e, const std::vector<Rat>& dense) {
        long deg = euler_phi(e);
        const auto& rows = detail::power_rows(e);
        std::vector<Rat> red(deg, Rat(0));
        for (long j = 0; j < e; ++j) {
            if (dense[j] == 0) continue;
            if (j < deg) {
                red[j] += dense[j];
            } else {
                const auto& row = rows[j];
                for (long i = 0; i < deg; ++i)
                    if (row[i] != 0) red[i] += dense[j] * rat_ll(row[i]);
            }
        }
        return make_minimized(e, std::move(red));
    }

    long order() const { return order_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const { return order_ == 1 && c_[0] == 0; }
    bool is_rational() const { return order_ == 1; }
    Rat rational_value() const {
        if (!is_rational()) throw PreconditionViolated("not a rational value: " + str());
        return c_[0];
    }

    bool operator==(const Cyclotomic& o) const { return order_ == o.order_ && c_ == o.c_; }
    bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

    /// Deterministic total order: by conductor, then coefficients.
    static int compare(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.order_ != b.order_) return a.order_ < b.order_ ? -1 : 1;
        for (size_t i = 0; i < a.c_.size(); ++i) {
            int c = mpq_cmp(a.c_[i].get_mpq_t(), b.c_[i].get_mpq_t());
            if (c != 0) return c < 0 ? -1 : 1;
        }
        return 0;
    }
    bool operator<(const Cyclotomic& o) const { return compare(*this, o) < 0; }

    Cyclotomic operator-() const {
        Cyclotomic r = *this;
        for (auto& q : r.c_) q = -q;
        return r;
    }

    Cyclotomic operator+(const Cyclotomic& o) const {
        if (order_ == o.order_) {
            std::vector<Rat> sum(c_.size());
            for (size_t i = 0; i < c_.size(); ++i) sum[i] = c_[i] + o.c_[i];
            return make_minimized(order_, std::move(sum));
        }
        long e = lcm_long(order_, o.order_);
        std::vector<Rat> dense(e, Rat(0));
        add_exponents_into(dense, e);
        o.add_exponents_into(dense, e);
        return from_dense_exponents(e, dense);
    }

    Cyclotomic operator-(const Cyclotomic& o) const { return *this + (-o); }

    Cyclotomic operator*(const Cyclotomic& o) const {
        if (is_zero() || o.is_zero()) return Cyclotomic();
        if (is_rational()) return o.scaled(c_[0]);
        if (o.is_rational()) return scaled(o.c_[0]);
        long e = lcm_long(order_, o.order_);
        long sa = e / order_, sb = e / o.order_;
        std::vector<Rat> dense(e, Rat(0));
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            for (size_t j = 0; j < o.c_.size(); ++j) {
                if (o.c_[j] == 0) continue;
                long exp = (static_cast<long>(i) * sa + static_cast<long>(j) * sb) % e;
                dense[exp] += c_[i] * o.c_[j];
            }
        }
        return from_dense_exponents(e, dense);
    }

    Cyclotomic scaled(const Rat& q) const {
        if (q == 0) return Cyclotomic();
        Cyclotomic r = *this;
        for (auto& c : r.c_) c *= q;
        return r;
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Phi_e.
    Cyclotomic inverse() const {
        if (is_zero()) throw DivisionByZero("inverse of zero cyclotomic");
        if (is_rational()) return Cyclotomic(rat_inv(c_[0]));
        const auto& phi_poly = detail::cyclotomic_polynomial(order_);
        std::vector<Rat> modulus(phi_poly.size());
        for (size_t i = 0; i < phi_poly.size(); ++i) modulus[i] = Rat(phi_poly[i]);
        // extended gcd over Q[x]: u*this + v*Phi = gcd (a nonzero constant)
        std::vector<Rat> r0 = modulus, r1 = c_;
        rpoly_trim(r1);
        std::vector<Rat> u0{Rat(0)}, u1{Rat(1)};
        while (rpoly_deg(r1) > 0) {
            auto [q, rem] = rpoly_divmod(r0, r1);
            auto u2 = rpoly_sub(u0, rpoly_mul(q, u1));
            r0 = std::move(r1);
            r1 = std::move(rem);
            u0 = std::move(u1);
            u1 = std::move(u2);
        }
        if (r1.empty()) throw InternalError("cyclotomic inverse: gcd with modulus not constant");
        Rat scale = rat_inv(r1[0]);
        std::vector<Rat> dense(order_, Rat(0));
        for (size_t i = 0; i < u1.size(); ++i) dense[i % order_] += u1[i] * scale;
        return from_dense_exponents(order_, dense);
    }

    Cyclotomic operator/(const Cyclotomic& o) const { return *this * o.inverse(); }

    /// Galois action zeta_e -> zeta_e^t; requires gcd(t, e) = 1.
    Cyclotomic galois(long t) const {
        long e = order_;
        t %= e;
        if (t < 0) t += e;
        if (gcd_long(t, e) != 1) throw PreconditionViolated("galois exponent not coprime to order");
        if (e == 1 || t == 1) return *this;
        std::vector<Rat> dense(e, Rat(0));
        for (size_t j = 0; j < c_.size(); ++j)
            if (c_[j] != 0) dense[(static_cast<long>(j) * t) % e] += c_[j];
        return from_dense_exponents(e, dense);
    }

    /// Complex conjugation (zeta -> zeta^{-1}).
    Cyclotomic conjugate() const { return order_ == 1 ? *this : galois(order_ - 1); }

    Cyclotomic pow(long k) const {
        if (k < 0) return inverse().pow(-k);
        Cyclotomic acc(Rat(1)), base = *this;
        while (k > 0) {
            if (k & 1) acc = acc * base;
            base = base * base;
            k >>= 1;
        }
        return acc;
    }

    /// Exponent-form terms lifted to order E (order() must divide E); exponents < E.
    std::vector<std::pair<long, Rat>> terms_at(long E) const {
        if (E % order_ != 0) throw PreconditionViolated("terms_at: order must divide E");
        long s = E / order_;
        std::vector<std::pair<long, Rat>> out;
        for (size_t j = 0; j < c_.size(); ++j)
            if (c_[j] != 0) out.emplace_back(static_cast<long>(j) * s, c_[j]);
        return out;
    }

    /// Same, but only when every coefficient is an integer fitting in long long.
    std::optional<std::vector<std::pair<long, long long>>> integer_terms_at(long E) const {
        if (E % order_ != 0) return std::nullopt;
        long s = E / order_;
        std::vector<std::pair<long, long long>> out;
        for (size_t j = 0; j < c_.size(); ++j) {
            if (c_[j] == 0) continue;
            if (!is_integer(c_[j]) || !c_[j].get_num().fits_slong_p()) return std::nullopt;
            out.emplace_back(static_cast<long>(j) * s, c_[j].get_num().get_si());
        }
        return out;
    }

    /// Rendering in E(e)^j notation, e.g. "1/2", "E(8)^3", "-E(4)+2".
    std::string str() const {
        if (is_rational()) return rat_str(c_[0]);
        std::ostringstream os;
        bool first = true;
        for (size_t j = 0; j < c_.size(); ++j) {
            if (c_[j] == 0) continue;
            Rat coeff = c_[j];
            bool neg = coeff < 0;
            if (neg) coeff = -coeff;
            if (first) {
                if (neg) os << "-";
                first = false;
            } else {
                os << (neg ? "-" : "+");
            }
            std::string mono;
            if (j == 0)
                mono = "";
            else if (j == 1)
                mono = "E(" + std::to_string(order_) + ")";
            else
                mono = "E(" + std::to_string(order_) + ")^" + std::to_string(j);
            if (mono.empty())
                os << rat_str(coeff);
            else if (coeff == 1)
                os << mono;
            else
                os << rat_str(coeff) << "*" << mono;
        }
        return os.str();
    }

  private:
    long order_;
    std::vector<Rat> c_;  // length phi(order_)

    Cyclotomic(long order, std::vector<Rat> c) : order_(order), c_(std::move(c)) {}

    void add_exponents_into(std::vector<Rat>& dense, long E) const {
        long s = E / order_;
        for (size_t j = 0; j < c_.size(); ++j)
            if (c_[j] != 0) dense[static_cast<long>(j) * s] += c_[j];
    }

    // --- rational polynomial helpers (for inverse) ---
    static long rpoly_deg(const std::vector<Rat>& p) { return static_cast<long>(p.size()) - 1; }
    static void rpoly_trim(std::vector<Rat>& p) {
        while (!p.empty() && p.back() == 0) p.pop_back();
    }
    static std::vector<Rat> rpoly_sub(const std::vector<Rat>& a, const std::vector<Rat>& b) {
        std::vector<Rat> r(std::max(a.size(), b.size()), Rat(0));
        for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
        for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
        rpoly_trim(r);
        return r;
    }
    static std::vector<Rat> rpoly_mul(const std::vector<Rat>& a, const std::vector<Rat>& b) {
        if (a.empty() || b.empty()) return {};
        std::vector<Rat> r(a.size() + b.size() - 1, Rat(0));
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
        rpoly_trim(r);
        return r;
    }
    static std::pair<std::vector<Rat>, std::vector<Rat>> rpoly_divmod(std::vector<Rat> num,
                                                                      const std::vector<Rat>& den) {
        std::vector<Rat> q(num.size(), Rat(0));
        while (num.size() >= den.size() && !num.empty()) {
            Rat c = num.back() / den.back();
            size_t shift = num.size() - den.size();
            q[shift] = c;
            for (size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
            rpoly_trim(num);
        }
        rpoly_trim(q);
        return {q, num};
    }

    /// c * zeta_e^j with c != 0: closed-form conductor computation.
    static Cyclotomic make_monomial(long e, long j, Rat c) {
        for (;;) {
            long g = gcd_long(j, e);
            if (g > 1) {
                e /= g;
                j /= g;
            }
            if (e == 1) return Cyclotomic(c);
            if (e == 2) return Cyclotomic(-c);
            if (e % 4 == 2) {
                // zeta_{2m}^j (j odd, m odd) = -zeta_m^{(j+m)/2}
                long m = e / 2;
                j = ((j + m) / 2) % m;
                c = -c;
                e = m;
                continue;
            }
            break;
        }
        long deg = euler_phi(e);
        if (j < deg) {
            std::vector<Rat> v(deg, Rat(0));
            v[j] = c;
            return Cyclotomic(e, std::move(v));
        }
        const auto& row = detail::power_rows(e)[j];
        std::vector<Rat> v(deg, Rat(0));
        for (long i = 0; i < deg; ++i)
            if (row[i] != 0) v[i] = c * rat_ll(row[i]);
        return Cyclotomic(e, std::move(v));
    }

    static bool galois_fixed_under(long e, long esub, const std::vector<Rat>& v) {
        long deg = euler_phi(e);
        const auto& rows = detail::power_rows(e);
        for (long t = 1 + esub; t < e; t += esub) {
            if (gcd_long(t, e) != 1) continue;
            std::vector<Rat> image(deg, Rat(0));
            for (long j = 0; j < deg; ++j) {
                if (v[j] == 0) continue;
                long ex = (j * t) % e;
                if (ex < deg) {
                    image[ex] += v[j];
                } else {
                    const auto& row = rows[ex];
                    for (long i = 0; i < deg; ++i)
                        if (row[i] != 0) image[i] += v[j] * rat_ll(row[i]);
                }
            }
            if (image != v) return false;
        }
        return true;
    }

    /// Coordinates of zeta_esub^i (i < phi(esub)) over the order-e basis.
    static const std::vector<std::vector<Rat>>& subfield_columns(long e, long esub) {
        static std::map<std::pair<long, long>, std::vector<std::vector<Rat>>> cache;
        static std::mutex mtx;
        std::lock_guard<std::mutex> lock(mtx);
        auto key = std::make_pair(e, esub);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        long deg = euler_phi(e), dsub = euler_phi(esub), s = e / esub;
        const auto& rows = detail::power_rows(e);
        std::vector<std::vector<Rat>> cols(dsub, std::vector<Rat>(deg, Rat(0)));
        for (long i = 0; i < dsub; ++i) {
            long ex = (i * s) % e;
            if (ex < deg) {
                cols[i][ex] = 1;
            } else {
                for (long r = 0; r < deg; ++r)
                    if (rows[ex][r] != 0) cols[i][r] = rat_ll(rows[ex][r]);
            }
        }
        return cache.emplace(key, std::move(cols)).first->second;
    }

    /// Solve for coordinates of v over Q(zeta_esub); must be solvable when the
    /// Galois-fixedness pretest passed.
    static std::vector<Rat> descend(long e, long esub, const std::vector<Rat>& v) {
        const auto& cols = subfield_columns(e, esub);
        long rows_n = euler_phi(e), cols_n = euler_phi(esub);
        std::vector<std::vector<Rat>> aug(rows_n, std::vector<Rat>(cols_n + 1, Rat(0)));
        for (long r = 0; r < rows_n; ++r) {
            for (long c = 0; c < cols_n; ++c) aug[r][c] = cols[c][r];
            aug[r][cols_n] = v[r];
        }
        std::vector<long> pivot_of_col(cols_n, -1);
        long rank = 0;
        for (long c = 0; c < cols_n && rank < rows_n; ++c) {
            long piv = -1;
            for (long r = rank; r < rows_n; ++r)
                if (aug[r][c] != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) continue;
            std::swap(aug[rank], aug[piv]);
            Rat inv = rat_inv(aug[rank][c]);
            for (long cc = c; cc <= cols_n; ++cc) aug[rank][cc] *= inv;
            for (long r = 0; r < rows_n; ++r) {
                if (r == rank || aug[r][c] == 0) continue;
                Rat f = aug[r][c];
                for (long cc = c; cc <= cols_n; ++cc) aug[r][cc] -= f * aug[rank][cc];
            }
            pivot_of_col[c] = rank;
            ++rank;
        }
        for (long r = rank; r < rows_n; ++r)
            if (aug[r][cols_n] != 0) throw InternalError("cyclotomic subfield descent inconsistent");
        std::vector<Rat> y(cols_n, Rat(0));
        for (long c = 0; c < cols_n; ++c)
            if (pivot_of_col[c] >= 0) y[c] = aug[pivot_of_col[c]][cols_n];
        return y;
    }

    /// Canonicalize a reduced coefficient vector: minimize the stored order.
    static Cyclotomic make_minimized(long e, std::vector<Rat> v) {
        for (;;) {
            if (e == 1) return Cyclotomic(1, std::move(v));
            long deg = static_cast<long>(v.size());
            long nonzero = -1, count = 0;
            for (long j = 0; j < deg; ++j)
                if (v[j] != 0) {
                    nonzero = j;
                    ++count;
                }
            if (count == 0) return Cyclotomic();
            if (count == 1 && nonzero == 0) return Cyclotomic(v[0]);
            if (count == 1) return make_monomial(e, nonzero, v[nonzero]);
            if (e % 4 == 2) {
                // Q(zeta_e) = Q(zeta_{e/2}) for e = 2 mod 4: substitute monomials down.
                long m = e / 2;
                std::vector<Rat> dense(m, Rat(0));
                for (long j = 0; j < deg; ++j) {
                    if (v[j] == 0) continue;
                    if (j == 0) {
                        dense[0] += v[j];
                        continue;
                    }
                    long g = gcd_long(j, e), ee = e / g, jj = j / g;
                    Rat c = v[j];
                    // zeta_ee^jj with ee = 2 mod 4 (ee shares that property iff g odd);
                    // handle both parities explicitly.
                    if (ee % 2 == 0) {
                        long mm = ee / 2;  // odd
                        long j2 = ((jj + mm) / 2) % mm;
                        dense[(j2 * (m / mm)) % m] += -c;
                    } else {
                        dense[(jj * (m / ee)) % m] += c;
                    }
                }
                Cyclotomic r = from_dense_exponents(m, dense);
                return r;
            }
            bool descended = false;
            for (long q : prime_factors(e)) {
                long esub = e / q;
                if (esub <= 2) continue;  // rational cases already excluded above
                if (euler_phi(esub) == deg) {
                    // same degree can only happen for e = 2 mod 4, handled above
                    continue;
                }
                if (!galois_fixed_under(e, esub, v)) continue;
                v = descend(e, esub, v);
                e = esub;
                descended = true;
                break;
            }
            if (!descended) return Cyclotomic(e, std::move(v));
        }
    }
};

inline Cyclotomic operator*(const Rat& q, const Cyclotomic& x) { return x.scaled(q); }

/// e^{2 pi i k / m} as a compact torsion element; order is the exact
/// multiplicative order (gcd-reduced).
class RootOfUnity {
  public:
    RootOfUnity() : order_(1), exp_(0) {}
    RootOfUnity(long order, long exponent) {
        if (order < 1) throw PreconditionViolated("root-of-unity order must be positive");
        exponent %= order;
        if (exponent < 0) exponent += order;
        long g = gcd_long(exponent, order);
        if (exponent == 0) {
            order_ = 1;
            exp_ = 0;
        } else {
            order_ = order / g;
            exp_ = exponent / g;
        }
    }

    static RootOfUnity one() { return RootOfUnity(); }
    static RootOfUnity minus_one() { return RootOfUnity(2, 1); }

    long order() const { return order_; }
    long exponent() const { return exp_; }
    bool is_one() const { return order_ == 1; }

    RootOfUnity operator*(const RootOfUnity& o) const {
        long m = lcm_long(order_, o.order_);
        return RootOfUnity(m, exp_ * (m / order_) + o.exp_ * (m / o.order_));
    }
    RootOfUnity inverse() const { return RootOfUnity(order_, order_ - exp_); }
    RootOfUnity pow(long k) const {
        long e = (exp_ % order_) * (k % order_) % order_;
        return RootOfUnity(order_, e);
    }

    bool operator==(const RootOfUnity& o) const { return order_ == o.order_ && exp_ == o.exp_; }
    bool operator!=(const RootOfUnity& o) const { return !(*this == o); }
    bool operator<(const RootOfUnity& o) const {
        return order_ != o.order_ ? order_ < o.order_ : exp_ < o.exp_;
    }

    /// Angle as a fraction of a full turn, in [0, 1).
    Rat turns() const {
        Rat t(exp_, order_);
        t.canonicalize();
        return t;
    }

    Cyclotomic to_cyclotomic() const { return Cyclotomic::root(order_, exp_); }

    std::string str() const {
        if (order_ == 1) return "1";
        if (order_ == 2) return "-1";
        if (exp_ == 1) return "E(" + std::to_string(order_) + ")";
        return "E(" + std::to_string(order_) + ")^" + std::to_string(exp_);
    }

  private:
    long order_, exp_;
};

/// All n-th roots A of x (as roots of unity, A^n = x), in increasing order of
/// exponent over the common cyclotomic order n*order(x).
inline std::vector<RootOfUnity> nth_roots(const RootOfUnity& x, long n) {
    if (n < 1) throw PreconditionViolated("nth_roots: n must be >= 1");
    long m = x.order();
    std::vector<RootOfUnity> out;
    out.reserve(n);
    for (long t = 0; t < n; ++t) out.emplace_back(n * m, x.exponent() + t * m);
    return out;
}

/// Recognize a cyclotomic value as a root of unity, if it is one.
inline std::optional<RootOfUnity> as_root_of_unity(const Cyclotomic& x) {
    if (x.is_rational()) {
        if (x.rational_value() == 1) return RootOfUnity::one();
        if (x.rational_value() == -1) return RootOfUnity::minus_one();
        return std::nullopt;
    }
    // torsion of Q(zeta_m)^* is mu_m for even m, mu_{2m} for odd m
    long m = x.order();
    long big = (m % 2 == 0) ? m : 2 * m;
    static std::map<long, std::map<Cyclotomic, long>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(big);
    if (it == cache.end()) {
        std::map<Cyclotomic, long> table;
        for (long t = 0; t < big; ++t) table.emplace(Cyclotomic::root(big, t), t);
        it = cache.emplace(big, std::move(table)).first;
    }
    auto hit = it->second.find(x);
    if (hit == it->second.end()) return std::nullopt;
    return RootOfUnity(big, hit->second);
}

}  // namespace eqbundle
