#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "eqbundle/bundles.hpp"
#include "eqbundle/character_table.hpp"
#include "eqbundle/circle_action.hpp"
#include "eqbundle/errors.hpp"

namespace eqbundle {

/// Explicit clutching data of a G-line bundle over the circle, for a linear
/// invariant fiber character phi and a dihedral image D_n:
///   h(z,v) = (z, phi(h) v),  a(z,v) = (zeta z, A v),  b(z,v) = (conj(z), phi_b z^k v)
/// with A an n-th root of phi(a^n) and k in 0..2n-1 (the values k and k+n give
/// the two bundles sharing the fiber at 1; they differ by a sign at mu).
struct LineCocycle {
    int phi_tilde_irr = -1;  // Irr(G_1) index of the extension at 1
    RootOfUnity phi_b;       // value of that extension on b
    RootOfUnity A;
    long k = 0;
    BundleClass cls;

    std::string action_formula(long n) const {
        std::ostringstream os;
        os << "a:(z,v)->(E(" << n << ")*z, " << A.str() << "*v); b:(z,v)->(conj(z), "
           << phi_b.str() << (k == 0 ? std::string("") : "*z^" + std::to_string(k)) << "*v)";
        return os.str();
    }
};

namespace detail {

inline void require_linear_invariant(const CircleAction& act, const Character& phi) {
    if (!act.dihedral())
        throw PreconditionViolated("line cocycles require a dihedral image");
    if (phi.group.get() != act.h_view.grp.get())
        throw PreconditionViolated("phi must be a class function on H");
    if (phi.degree() != 1) throw PreconditionViolated("phi must be one-dimensional");
    if (!is_g_invariant(act, phi))
        throw PreconditionViolated("phi must have invariant character");
}

/// phi evaluated at a parent element of H, as a root of unity.
inline RootOfUnity linear_value_at(const CircleAction& act, const Character& phi, int parent_elt) {
    int local = act.h_view.from_parent[parent_elt];
    if (local < 0) throw PreconditionViolated("element is not in H");
    const auto& cls = act.h_view.grp->classes();
    auto r = as_root_of_unity(phi.values[cls.class_of[local]]);
    if (!r) throw InternalError("linear character value is not a root of unity");
    return *r;
}

/// phi(a^n) and phi(abab^{-1}), the two roots entering every statement here.
inline std::pair<RootOfUnity, RootOfUnity> structure_values(const CircleAction& act,
                                                            const Character& phi) {
    const auto& g = *act.group;
    int a = *act.a, b = *act.b;
    int an = g.power(a, act.n());
    int abab = g.mul(g.mul(g.mul(a, b), a), g.inv(b));
    return {linear_value_at(act, phi, an), linear_value_at(act, phi, abab)};
}

/// Affine symbolic action on (t, s): point turn t -> sign*t + c, phase
/// s -> s + d + f*t, everything exact mod 1 (f stays integral).
struct SymbolicMap {
    int sign = 1;
    Rat c = Rat(0);
    Rat d = Rat(0);
    Rat f = Rat(0);

    static SymbolicMap compose(const SymbolicMap& second, const SymbolicMap& first) {
        SymbolicMap r;
        r.sign = second.sign * first.sign;
        Rat c = (second.sign == 1) ? Rat(first.c + second.c) : Rat(second.c - first.c);
        r.c = mod1(c);
        r.d = mod1(Rat(first.d + second.d + second.f * first.c));
        r.f = (second.sign == 1) ? Rat(first.f + second.f) : Rat(second.f - first.f);
        return r;
    }

    bool operator==(const SymbolicMap& o) const {
        return sign == o.sign && c == o.c && d == o.d && f == o.f;
    }
};

}  // namespace detail

/// The identity phi(a^n)^2 = phi(abab^{-1})^n, which holds for every invariant
/// linear character in the dihedral case; exposed as a self-test.
inline bool line_character_identity_holds(const CircleAction& act, const Character& phi) {
    detail::require_linear_invariant(act, phi);
    auto [van, vabab] = detail::structure_values(act, phi);
    return van.pow(2) == vabab.pow(act.n());
}

/// Closed-form triviality for n even: all four line classes with fiber phi are
/// trivial iff phi(a^n) = phi(abab^{-1})^{n/2}; otherwise all four are
/// nontrivial.
inline bool line_bundles_all_trivial(const CircleAction& act, const Character& phi) {
    detail::require_linear_invariant(act, phi);
    if (act.n() % 2 != 0)
        throw PreconditionViolated("the closed-form test applies to even n only");
    auto [van, vabab] = detail::structure_values(act, phi);
    return van == vabab.pow(act.n() / 2);
}

/// Number of trivial classes among the four line bundles with fiber phi,
/// by the closed forms: exactly 2 for n odd; 4 or 0 for n even.
inline int line_trivial_count_closed_form(const CircleAction& act, const Character& phi) {
    detail::require_linear_invariant(act, phi);
    if (act.n() % 2 == 1) return 2;
    return line_bundles_all_trivial(act, phi) ? 4 : 0;
}

/// The four explicit cocycles with fiber phi: both extensions at 1, each with
/// the two exponents k, k+n. The canonical root A is the one of smallest
/// exponent; k absorbs the choice.
inline std::vector<LineCocycle> build_line_cocycles(const CircleAction& act,
                                                    const Character& phi) {
    detail::require_linear_invariant(act, phi);
    const auto& g = *act.group;
    const long n = act.n();
    int a = *act.a, b = *act.b;

    ExtensionResult ext = extension_count(act.group, act.g1_view.sub, act.kernel, phi);
    if (ext.count != 2) throw InternalError("an index-2 extension must have exactly two lifts");
    auto [van, vabab] = detail::structure_values(act, phi);
    RootOfUnity A = nth_roots(van, n).front();
    RootOfUnity rel = A.pow(-2) * vabab;  // = zeta_n^{k0}
    if (n % rel.order() != 0) throw InternalError("relation value is not an n-th root of unity");
    long k0 = rel.order() == 1 ? 0 : rel.exponent() * (n / rel.order());

    TablePtr g1t = character_table(act.g1_view.grp);
    TablePtr gmut = character_table(act.gmu_view->grp);
    const auto& gmu_cls = act.gmu_view->grp->classes();
    int ab = g.mul(a, b);
    int ab_inv = g.inv(ab);

    std::vector<LineCocycle> out;
    for (int theta : ext.irr_indices) {
        if (!g1t->at(theta).is_linear())
            throw InternalError("an extension of a linear character must be linear");
        int b_local = act.g1_view.from_parent[b];
        auto theta_roots = g1t->linear_root_values(theta);
        RootOfUnity theta_b = theta_roots[act.g1_view.grp->classes().class_of[b_local]];
        for (long k : {k0, k0 + n}) {
            LineCocycle c;
            c.phi_tilde_irr = theta;
            c.phi_b = theta_b;
            c.A = A;
            c.k = k;
            // fiber at mu: h -> phi(h), ab -> A * mu^k * theta(b)
            RootOfUnity psi_ab = A * RootOfUnity(2 * n, k) * theta_b;
            int w_index = -1;
            for (int row = 0; row < gmut->count(); ++row) {
                if (!gmut->at(row).is_linear()) continue;
                bool match = true;
                for (int cl = 0; cl < gmu_cls.count() && match; ++cl) {
                    int parent_elt = act.gmu_view->to_parent[gmu_cls.representatives[cl]];
                    RootOfUnity expect;
                    if (act.h_view.from_parent[parent_elt] >= 0) {
                        expect = detail::linear_value_at(act, phi, parent_elt);
                    } else {
                        int h_part = g.mul(ab_inv, parent_elt);
                        expect = psi_ab * detail::linear_value_at(act, phi, h_part);
                    }
                    if (!(gmut->at(row).values[cl] == expect.to_cyclotomic())) match = false;
                }
                if (match) {
                    w_index = row;
                    break;
                }
            }
            if (w_index < 0) throw InternalError("cocycle fiber at mu matches no character");
            c.cls.fiber_at_1.assign(g1t->count(), 0);
            c.cls.fiber_at_1[theta] = 1;
            c.cls.fiber_at_mu = std::vector<long>(gmut->count(), 0);
            (*c.cls.fiber_at_mu)[w_index] = 1;
            out.push_back(std::move(c));
        }
    }
    return out;
}

/// Verify symbolically that the cocycle's three formulas define a G-action:
/// the words a^n, b^2 and (ab)^2 must act exactly as the kernel elements they
/// equal, with the circle coordinate tracked as a rational turn.
inline bool cocycle_relations_hold(const CircleAction& act, const LineCocycle& c,
                                   const Character& phi) {
    detail::require_linear_invariant(act, phi);
    const auto& g = *act.group;
    const long n = act.n();
    int a = *act.a, b = *act.b;

    detail::SymbolicMap Ta{1, mod1(Rat(1, n)), c.A.turns(), Rat(0)};
    detail::SymbolicMap Tb{-1, Rat(0), c.phi_b.turns(), Rat(c.k)};
    auto of_kernel = [&](int h) {
        return detail::SymbolicMap{1, Rat(0), detail::linear_value_at(act, phi, h).turns(),
                                   Rat(0)};
    };

    detail::SymbolicMap an_word;
    for (long i = 0; i < n; ++i) an_word = detail::SymbolicMap::compose(Ta, an_word);
    if (!(an_word == of_kernel(g.power(a, n)))) return false;

    detail::SymbolicMap b2_word = detail::SymbolicMap::compose(Tb, Tb);
    if (!(b2_word == of_kernel(g.mul(b, b)))) return false;

    detail::SymbolicMap ab_word = detail::SymbolicMap::compose(Ta, Tb);
    detail::SymbolicMap abab_word = detail::SymbolicMap::compose(ab_word, ab_word);
    int abab = g.mul(g.mul(a, b), g.mul(a, b));
    if (!(abab_word == of_kernel(abab))) return false;
    return true;
}

}  // namespace eqbundle
