#pragma once

#include <vector>

#include "eqbundle/character_table.hpp"
#include "eqbundle/circle_action.hpp"
#include "eqbundle/errors.hpp"

namespace eqbundle {

/// One G-orbit on Irr(H): the representative (minimal index in the canonical
/// table order), the members, the isotropy subgroup G_chi and its image type,
/// and the exponent e used by the counting formula.
struct OrbitData {
    int representative = 0;
    std::vector<int> members;
    Subgroup isotropy;
    ImageKind isotropy_image;
    int e = 0;  // 0 for rotation-group isotropy image, 2 for dihedral

    int size() const { return static_cast<int>(members.size()); }
};

namespace detail {

/// The permutation of Irr(H) induced by conjugation with parent element g.
inline std::vector<int> irr_permutation(const CircleAction& act, int g_parent) {
    TablePtr ht = character_table(act.h_view.grp);
    int k = ht->count();
    std::vector<int> perm(k, -1);
    for (int i = 0; i < k; ++i) {
        Character moved = conjugate_character(ht->at(i), act.h_view, g_parent);
        int j = ht->index_of(moved);
        if (j < 0) throw InternalError("conjugate of an irreducible is not in the table");
        perm[i] = j;
    }
    return perm;
}

}  // namespace detail

/// {}^g chi (h -> chi(g^{-1} h g)) for chi a class function on H.
inline Character act_on_character(const CircleAction& act, const Character& chi, int g_parent) {
    return conjugate_character(chi, act.h_view, g_parent);
}

/// Orbits of the G-action on Irr(H), ordered by representative index.
inline std::vector<OrbitData> orbit_decomposition(const CircleAction& act) {
    TablePtr ht = character_table(act.h_view.grp);
    int k = ht->count();
    const GroupPtr& g = act.group;

    // H acts trivially, so the action factors through coset representatives.
    std::vector<int> reps = coset_representatives(act.kernel);
    std::vector<std::vector<int>> perms;
    perms.reserve(reps.size());
    for (int r : reps) perms.push_back(detail::irr_permutation(act, r));

    std::vector<int> orbit_of(k, -1);
    std::vector<OrbitData> orbits;
    for (int i = 0; i < k; ++i) {
        if (orbit_of[i] >= 0) continue;
        OrbitData od;
        od.representative = i;
        std::vector<bool> in_orbit(k, false);
        for (const auto& p : perms)
            in_orbit[p[i]] = true;
        for (int j = 0; j < k; ++j)
            if (in_orbit[j]) {
                od.members.push_back(j);
                orbit_of[j] = static_cast<int>(orbits.size());
            }
        // isotropy: union of the kernel-cosets whose permutation fixes the rep
        std::vector<int> members;
        for (size_t r = 0; r < reps.size(); ++r) {
            if (perms[r][i] != i) continue;
            for (int h : act.kernel.members) members.push_back(g->mul(reps[r], h));
        }
        od.isotropy = make_subgroup(g, std::move(members));
        od.isotropy_image = isotropy_image(act, od.isotropy);
        od.e = od.isotropy_image.dihedral ? 2 : 0;
        if (static_cast<long>(od.members.size()) * od.isotropy.order() != g->order())
            throw InternalError("orbit-stabilizer count mismatch");
        orbits.push_back(std::move(od));
    }
    return orbits;
}

/// True iff {}^g psi = psi for all g (psi may be reducible).
inline bool is_g_invariant(const CircleAction& act, const Character& psi) {
    if (psi.group.get() != act.h_view.grp.get())
        throw PreconditionViolated("is_g_invariant expects a class function on H");
    for (int r : coset_representatives(act.kernel)) {
        Character moved = conjugate_character(psi, act.h_view, r);
        if (moved.values != psi.values) return false;
    }
    return true;
}

}  // namespace eqbundle
