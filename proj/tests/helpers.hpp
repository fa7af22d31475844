#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "eqbundle/eqbundle.hpp"

namespace testutil {

using namespace eqbundle;

inline Perm cycle_of_length(int degree, int n) {
    Perm p = Perm::identity(degree);
    for (int i = 0; i < n; ++i) p.img[i] = (i + 1) % n;
    return p;
}

inline GroupPtr cyclic_group(int n) {
    if (n == 1) return FiniteGroup::from_permutations(1, {}, {});
    return FiniteGroup::from_permutations(n, {cycle_of_length(n, n)}, {"a"});
}

inline GroupPtr dihedral_group(int n) {
    Perm r = cycle_of_length(n < 3 ? 3 : n, n < 3 ? 0 : n);
    if (n < 3) {
        // realize D_1 and D_2 on separate points
        if (n == 1) return FiniteGroup::from_permutations(2, {parse_permutation(2, "(1 2)")}, {"f"});
        return FiniteGroup::from_permutations(4, {parse_permutation(4, "(1 2)"),
                                                  parse_permutation(4, "(3 4)")},
                                              {"r", "f"});
    }
    Perm f = Perm::identity(n);
    for (int i = 1; i < n; ++i) f.img[i] = n - i;  // fixes point 0 (1-based point 1)
    return FiniteGroup::from_permutations(n, {r, f}, {"r", "f"});
}

inline GroupPtr klein_group() {
    return FiniteGroup::from_permutations(
        4, {parse_permutation(4, "(1 2)"), parse_permutation(4, "(3 4)")}, {"a", "b"});
}

inline GroupPtr s3_group() {
    return FiniteGroup::from_permutations(
        3, {parse_permutation(3, "(1 2 3)"), parse_permutation(3, "(1 2)")}, {"r", "t"});
}

inline GroupPtr q8_group() {
    return FiniteGroup::from_permutations(8,
                                          {parse_permutation(8, "(1 2 5 6)(3 4 7 8)"),
                                           parse_permutation(8, "(1 3 5 7)(2 8 6 4)")},
                                          {"i", "j"});
}

inline GroupPtr z4sz4_group() {
    return FiniteGroup::from_permutations(
        16,
        {parse_permutation(16, "(1 5 9 13)(2 6 10 14)(3 7 11 15)(4 8 12 16)"),
         parse_permutation(16, "(1 2 3 4)(5 14 7 16)(9 10 11 12)(6 15 8 13)")},
        {"a", "b"});
}

inline Subgroup whole_group(const GroupPtr& g) {
    std::vector<int> all(g->order());
    for (int i = 0; i < g->order(); ++i) all[i] = i;
    return Subgroup{g, all};
}

/// Parse one embedded corpus action by file name.
inline CircleAction corpus_action(const std::string& file_name) {
    for (const auto& [name, content] : builtin_corpus())
        if (name == file_name) return action_from_file(parse_action_file(content));
    throw std::runtime_error("no corpus entry " + file_name);
}

inline std::vector<std::pair<std::string, CircleAction>> all_corpus_actions() {
    std::vector<std::pair<std::string, CircleAction>> out;
    for (const auto& [name, content] : builtin_corpus())
        out.emplace_back(name, action_from_file(parse_action_file(content)));
    return out;
}

/// Every subgroup, by closure growth; fine for the small corpus scale.
inline std::vector<Subgroup> all_subgroups(const GroupPtr& g) {
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> queue;
    std::vector<int> trivial{0};
    seen.insert(trivial);
    queue.push_back(trivial);
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        std::vector<int> base = queue[qi];
        for (int x = 1; x < g->order(); ++x) {
            std::vector<int> seeds = base;
            seeds.push_back(x);
            Subgroup s = subgroup_generated(g, seeds);
            if (seen.insert(s.members).second) queue.push_back(s.members);
        }
    }
    std::vector<Subgroup> out;
    for (const auto& m : seen) out.push_back(Subgroup{g, m});
    return out;
}

inline Character regular_character(const GroupPtr& g) {
    Character c;
    c.group = g;
    c.values.assign(g->classes().count(), Cyclotomic(0));
    c.values[0] = Cyclotomic(Rat(g->order()));
    return c;
}

/// Independent route for the class count: enumerate all multisets of Irr(K)
/// with the target total degree and filter by restriction equality computed
/// through full character arithmetic (no multiplicity matrices).
inline std::vector<Character> modules_with_restriction(const CircleAction& act,
                                                       const SubgroupView& view,
                                                       const Character& target_on_h) {
    TablePtr vt = character_table(view.grp);
    // H inside the view
    std::vector<int> h_local;
    for (int p : act.h_view.to_parent) h_local.push_back(view.from_parent[p]);
    std::sort(h_local.begin(), h_local.end());
    SubgroupView h_in = materialize(Subgroup{view.grp, h_local});

    long total = to_long(target_on_h.degree());
    std::vector<Character> found;
    std::vector<long> counts(vt->count(), 0);
    std::function<void(int, long)> rec = [&](int idx, long remaining) {
        if (remaining == 0) {
            Character sum;
            sum.group = view.grp;
            sum.values.assign(view.grp->classes().count(), Cyclotomic(0));
            for (int i = 0; i < vt->count(); ++i)
                for (long c = 0; c < counts[i]; ++c) sum = character_sum(sum, vt->at(i));
            Character res = restrict_to(sum, h_in);
            if (res.values == target_on_h.values) found.push_back(sum);
            return;
        }
        if (idx == vt->count()) return;
        long deg = to_long(vt->at(idx).degree());
        for (long m = 0; m * deg <= remaining; ++m) {
            counts[idx] = m;
            rec(idx + 1, remaining - m * deg);
        }
        counts[idx] = 0;
    };
    rec(0, total);
    return found;
}

inline long count_classes_bruteforce(const CircleAction& act, const FiberSpec& fiber) {
    auto orbits = orbit_decomposition(act);
    auto f = fiber_character(act, fiber, orbits);
    TablePtr ht = character_table(act.h_view.grp);
    Character target;
    target.group = act.h_view.grp;
    target.values.assign(ht->at(0).values.size(), Cyclotomic(0));
    for (size_t i = 0; i < f.size(); ++i)
        for (long c = 0; c < f[i]; ++c) target = character_sum(target, ht->at(i));
    if (!act.dihedral()) {
        // classes are exactly the invariant fiber characters: one per fiber
        return 1;
    }
    auto vs = modules_with_restriction(act, act.g1_view, target);
    auto ws = modules_with_restriction(act, *act.gmu_view, target);
    return static_cast<long>(vs.size()) * static_cast<long>(ws.size());
}

}  // namespace testutil
