#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "eqbundle/character_table.hpp"
#include "eqbundle/errors.hpp"
#include "eqbundle/finite_group.hpp"

namespace eqbundle {

/// An element of O(2) with exact rational angle bookkeeping:
///   det = +1: z -> e^{2 pi i turns} z          (rotation by 2*pi*turns)
///   det = -1: z -> e^{2 pi i turns} conj(z)    (reflection across the line at angle pi*turns)
struct O2Element {
    int det = 1;
    Rat turns = Rat(0);

    static O2Element identity() { return {1, Rat(0)}; }
    static O2Element rotation(const Rat& t) { return {1, mod1(t)}; }
    static O2Element reflection(const Rat& t) { return {-1, mod1(t)}; }

    bool is_identity() const { return det == 1 && turns == 0; }

    friend O2Element operator*(const O2Element& a, const O2Element& b) {
        // apply b first, then a: turns compose as a.turns + a.det * b.turns
        O2Element r;
        r.det = a.det * b.det;
        Rat t = (a.det == 1) ? Rat(a.turns + b.turns) : Rat(a.turns - b.turns);
        r.turns = mod1(t);
        return r;
    }

    O2Element inverse() const {
        if (det == 1) return {1, mod1(-turns)};
        return *this;  // reflections are involutions
    }

    bool operator==(const O2Element& o) const { return det == o.det && turns == o.turns; }
    bool operator!=(const O2Element& o) const { return !(*this == o); }
    bool operator<(const O2Element& o) const {
        if (det != o.det) return det > o.det;  // rotations first
        return turns < o.turns;
    }

    std::string str() const {
        if (det == 1) return "rot(" + rat_str(turns) + ")";
        return "refl(" + rat_str(turns) + ")";
    }
};

struct ImageKind {
    bool dihedral = false;
    long n = 1;

    bool operator==(const ImageKind& o) const { return dihedral == o.dihedral && n == o.n; }
    std::string str() const {
        return (dihedral ? "D_" : "Z_") + std::to_string(n);
    }
};

/// A validated circle action: the group G together with rho: G -> O(2),
/// normalized so that some reflection in the image (if any) is the x-axis
/// reflection. Derived data (kernel H, image type, the chosen elements a and
/// b, stabilizers of the distinguished points) is computed once here.
class CircleAction {
  public:
    GroupPtr group;
    std::vector<O2Element> rho;        // normalized, per element
    std::vector<O2Element> rho_input;  // as supplied, for traceability
    Subgroup kernel;                   // H
    ImageKind image;
    std::optional<int> a;  // absent iff the image is the trivial rotation group
    std::optional<int> b;  // present iff the image is dihedral
    SubgroupView h_view;
    SubgroupView g1_view;                  // stabilizer of the point 1
    std::optional<SubgroupView> gmu_view;  // stabilizer of mu (dihedral only)

    bool dihedral() const { return image.dihedral; }
    long n() const { return image.n; }
    bool trivial_image() const { return !image.dihedral && image.n == 1; }
    /// The action has fixed points iff the image is trivial or D_1.
    bool has_fixed_points() const { return trivial_image() || (image.dihedral && image.n == 1); }
    /// mu = e^{pi i / n}, as a fraction of a full turn.
    Rat mu() const {
        Rat m(1, 2 * image.n);
        m.canonicalize();
        return m;
    }
};

/// Extend generator images to the whole group, verify the homomorphism
/// property on all pairs, normalize the reflection axis, and fix a and b.
inline CircleAction build_circle_action(GroupPtr g, std::vector<O2Element> images_on_generators) {
    const auto& gens = g->generators();
    if (images_on_generators.size() != gens.size()) {
        if (gens.empty() && g->order() == 1 && images_on_generators.empty()) {
            // trivial group: fall through with no generators
        } else {
            throw PreconditionViolated(images_on_generators.empty()
                                           ? "no generator images supplied"
                                           : "one O(2) image per generator required");
        }
    }

    const int n_elts = g->order();
    std::vector<O2Element> rho(n_elts);
    std::vector<bool> have(n_elts, false);
    rho[0] = O2Element::identity();
    have[0] = true;
    // breadth-first extension along generator words
    std::vector<int> queue{0};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int cur = queue[qi];
        for (size_t i = 0; i < gens.size(); ++i) {
            int nx = g->mul(gens[i], cur);
            if (have[nx]) continue;
            rho[nx] = images_on_generators[i] * rho[cur];
            have[nx] = true;
            queue.push_back(nx);
        }
    }
    for (int i = 0; i < n_elts; ++i)
        if (!have[i]) throw InternalError("generator words do not reach every element");

    // exhaustive homomorphism check, with a witness pair on failure
    for (int x = 0; x < n_elts; ++x)
        for (int y = 0; y < n_elts; ++y)
            if (rho[g->mul(x, y)] != rho[x] * rho[y])
                throw NotAHomomorphism("rho(x*y) != rho(x)rho(y) for x = " + g->label(x) +
                                       ", y = " + g->label(y));

    CircleAction act;
    act.rho_input = rho;

    // normalize: rotate coordinates so the least reflection angle becomes 0
    bool any_reflection = false;
    Rat min_refl(0);
    bool first = true;
    for (const auto& m : rho)
        if (m.det == -1) {
            any_reflection = true;
            if (first || m.turns < min_refl) min_refl = m.turns;
            first = false;
        }
    if (any_reflection && min_refl != 0) {
        Rat u = min_refl / 2;
        O2Element c = O2Element::rotation(-u), cinv = O2Element::rotation(u);
        for (auto& m : rho) m = c * m * cinv;
    }

    // image structure
    std::map<Rat, int> rotation_turns;
    long reflections = 0;
    for (const auto& m : rho) {
        if (m.det == 1)
            rotation_turns.emplace(m.turns, 0);
        else
            ++reflections;
    }
    long n = static_cast<long>(rotation_turns.size());
    // the rotation subgroup of O(2) of order n is generated by 1/n of a turn
    for (const auto& [t, unused] : rotation_turns) {
        if (t == 0) continue;
        Rat expect = t * n;
        if (!is_integer(expect))
            throw InternalError("rotation angles do not form a cyclic group");
    }
    act.image.dihedral = any_reflection;
    act.image.n = n;

    act.group = g;
    act.rho = std::move(rho);

    // kernel H
    std::vector<int> ker;
    for (int i = 0; i < n_elts; ++i)
        if (act.rho[i].is_identity()) ker.push_back(i);
    act.kernel = Subgroup{g, ker};
    if (!is_normal(act.kernel)) throw InternalError("kernel of rho is not normal");
    if (static_cast<long>(n_elts) != static_cast<long>(ker.size()) * (any_reflection ? 2 * n : n))
        throw InternalError("image order does not match the index of the kernel");

    // chosen elements a (rotation by 1/n) and b (x-axis reflection)
    if (n > 1 || any_reflection) {
        Rat target(1, n);
        target.canonicalize();
        if (n == 1) target = Rat(0);
        for (int i = 0; i < n_elts; ++i)
            if (act.rho[i].det == 1 && act.rho[i].turns == target) {
                act.a = i;
                break;
            }
        if (!act.a) throw InternalError("no element maps to the rotation by 1/n");
    }
    if (any_reflection) {
        for (int i = 0; i < n_elts; ++i)
            if (act.rho[i].det == -1 && act.rho[i].turns == 0) {
                act.b = i;
                break;
            }
        if (!act.b) throw InternalError("no element maps to the x-axis reflection");
        // the defining relations: a^n, b^2, (ab)^2 all lie in H
        int a = *act.a, b = *act.b;
        int an = g->power(a, n);
        int ab = g->mul(a, b);
        if (!act.kernel.contains(an) || !act.kernel.contains(g->mul(b, b)) ||
            !act.kernel.contains(g->mul(ab, ab)))
            throw InternalError("dihedral relations fail in the kernel");
    }

    act.h_view = materialize(act.kernel);
    {
        std::vector<int> g1;
        for (int i = 0; i < n_elts; ++i) {
            const auto& m = act.rho[i];
            if (m.is_identity() || (m.det == -1 && m.turns == 0)) g1.push_back(i);
        }
        act.g1_view = materialize(Subgroup{g, g1});
    }
    if (any_reflection) {
        Rat axis(1, n);
        axis.canonicalize();
        if (n == 1) axis = Rat(0);
        std::vector<int> gmu;
        for (int i = 0; i < n_elts; ++i) {
            const auto& m = act.rho[i];
            if (m.is_identity() || (m.det == -1 && m.turns == axis)) gmu.push_back(i);
        }
        act.gmu_view = materialize(Subgroup{g, gmu});
    }
    return act;
}

/// Classify rho(s) for a subgroup s containing the kernel.
inline ImageKind isotropy_image(const CircleAction& act, const Subgroup& s) {
    for (int h : act.kernel.members)
        if (!s.contains(h))
            throw PreconditionViolated("isotropy_image requires a subgroup containing the kernel");
    std::map<Rat, int> rotations;
    bool any_reflection = false;
    for (int i : s.members) {
        if (act.rho[i].det == 1)
            rotations.emplace(act.rho[i].turns, 0);
        else
            any_reflection = true;
    }
    ImageKind k;
    k.dihedral = any_reflection;
    k.n = static_cast<long>(rotations.size());
    return k;
}

/// The action of a subgroup s (containing the kernel) on the same circle,
/// rebuilt through the full pipeline so its own coordinates are normalized
/// and its own a, b are fixed.
inline CircleAction restricted_action(const CircleAction& act, const Subgroup& s) {
    for (int h : act.kernel.members)
        if (!s.contains(h))
            throw PreconditionViolated("restricted_action requires a subgroup containing the kernel");
    SubgroupView view = materialize(s);
    std::vector<O2Element> images;
    for (int gen : view.grp->generators()) images.push_back(act.rho[view.to_parent[gen]]);
    CircleAction sub = build_circle_action(view.grp, std::move(images));
    // The kernel of the restriction is H again; the sorted materialization
    // makes the two H-copies positionally identical.
    if (sub.kernel.order() != act.kernel.order())
        throw InternalError("restricted action kernel mismatch");
    return sub;
}

}  // namespace eqbundle
