#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "eqbundle/errors.hpp"
#include "eqbundle/permutation.hpp"
#include "eqbundle/rational.hpp"

namespace eqbundle {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Partition of a group into conjugacy classes. Class 0 is the class of the
/// identity; classes are ordered by their minimal element index, which is also
/// the stored representative.
struct ConjugacyClasses {
    std::vector<int> class_of;
    std::vector<int> representatives;
    std::vector<int> sizes;

    int count() const { return static_cast<int>(representatives.size()); }
};

inline constexpr int kDefaultMaxOrder = 512;

/// A finite group given by a full multiplication table on element indices
/// 0..order-1. Index 0 is the identity. Immutable after construction; the
/// constructor validates associativity, identity/inverse consistency and that
/// the recorded generators generate everything.
class FiniteGroup {
  public:
    static GroupPtr from_table(int order, std::vector<uint16_t> table, std::vector<int> generators,
                               std::vector<std::string> labels, bool canonicalize_order,
                               int max_order = kDefaultMaxOrder) {
        if (order < 1) throw PreconditionViolated("group order must be positive");
        if (order > max_order)
            throw OrderExceeded("group order " + std::to_string(order) +
                                " exceeds the configured maximum " + std::to_string(max_order));
        if (static_cast<int>(table.size()) != order * order)
            throw PreconditionViolated("multiplication table has wrong size");
        for (auto v : table)
            if (v >= order) throw PreconditionViolated("multiplication table entry out of range");
        auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
        g->n_ = order;
        g->mul_ = std::move(table);
        g->gens_ = std::move(generators);
        g->labels_ = std::move(labels);
        if (canonicalize_order) {
            for (int gi : g->gens_)
                if (gi < 0 || gi >= order)
                    throw PreconditionViolated("generator index out of range");
            g->reorder_bfs();
        }
        g->finish_construction();
        return g;
    }

    /// Closure of permutation generators under composition, in breadth-first
    /// word order (ties broken by generator index), so element ordering is
    /// reproducible byte-for-byte.
    static GroupPtr from_permutations(int degree, const std::vector<Perm>& generators,
                                      std::vector<std::string> gen_labels = {},
                                      int max_order = kDefaultMaxOrder) {
        for (const auto& p : generators) {
            if (p.degree() != degree) throw PreconditionViolated("generator degree mismatch");
            check_bijection(p);
        }
        if (gen_labels.empty())
            for (size_t i = 0; i < generators.size(); ++i)
                gen_labels.push_back("g" + std::to_string(i));
        if (gen_labels.size() != generators.size())
            throw PreconditionViolated("one label per generator required");

        std::vector<Perm> elems{Perm::identity(degree)};
        std::map<Perm, int> index{{elems[0], 0}};
        std::vector<std::string> labels{"e"};
        for (size_t cur = 0; cur < elems.size(); ++cur) {
            for (size_t gi = 0; gi < generators.size(); ++gi) {
                Perm cand = generators[gi] * elems[cur];
                if (index.count(cand)) continue;
                if (static_cast<int>(elems.size()) >= max_order)
                    throw OrderExceeded("permutation closure exceeds the configured maximum " +
                                        std::to_string(max_order));
                index.emplace(cand, static_cast<int>(elems.size()));
                elems.push_back(cand);
                labels.push_back(cur == 0 ? gen_labels[gi] : gen_labels[gi] + "*" + labels[cur]);
            }
        }
        int n = static_cast<int>(elems.size());
        std::vector<uint16_t> table(static_cast<size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                table[static_cast<size_t>(i) * n + j] = static_cast<uint16_t>(index.at(elems[i] * elems[j]));
        std::vector<int> gen_idx;
        for (const auto& p : generators) gen_idx.push_back(index.at(p));
        return from_table(n, std::move(table), std::move(gen_idx), std::move(labels), false,
                          max_order);
    }

    int order() const { return n_; }
    int identity() const { return 0; }
    int mul(int a, int b) const { return mul_[static_cast<size_t>(a) * n_ + b]; }
    int inv(int a) const { return inv_[a]; }
    const std::vector<int>& generators() const { return gens_; }
    const std::string& label(int i) const { return labels_[i]; }
    const std::vector<uint16_t>& table() const { return mul_; }
    const ConjugacyClasses& classes() const { return classes_; }
    int element_order(int i) const { return elt_order_[i]; }

    int power(int g, long k) const {
        long m = element_order(g);
        k %= m;
        if (k < 0) k += m;
        int acc = 0;
        for (long i = 0; i < k; ++i) acc = mul(acc, g);
        return acc;
    }

    /// g x g^{-1}
    int conj(int g, int x) const { return mul(mul(g, x), inv(g)); }

    bool is_abelian() const {
        for (int a = 0; a < n_; ++a)
            for (int b = a + 1; b < n_; ++b)
                if (mul(a, b) != mul(b, a)) return false;
        return true;
    }

    /// lcm of element orders
    long exponent() const {
        long e = 1;
        for (int i = 0; i < n_; ++i) e = lcm_long(e, elt_order_[i]);
        return e;
    }

  private:
    FiniteGroup() = default;

    int n_ = 0;
    std::vector<uint16_t> mul_;
    std::vector<int> inv_;
    std::vector<int> gens_;
    std::vector<std::string> labels_;
    std::vector<int> elt_order_;
    ConjugacyClasses classes_;

    void reorder_bfs() {
        std::vector<int> order_map(n_, -1);  // old -> new
        std::vector<int> new_to_old;
        auto visit = [&](int old) {
            if (order_map[old] >= 0) return;
            order_map[old] = static_cast<int>(new_to_old.size());
            new_to_old.push_back(old);
        };
        int id = find_identity();
        visit(id);
        for (size_t cur = 0; cur < new_to_old.size(); ++cur)
            for (int gi : gens_) visit(mul_raw(gi, new_to_old[cur]));
        if (static_cast<int>(new_to_old.size()) != n_)
            throw PreconditionViolated("generators do not generate the whole group");
        std::vector<uint16_t> table(static_cast<size_t>(n_) * n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                table[static_cast<size_t>(i) * n_ + j] = static_cast<uint16_t>(
                    order_map[mul_raw(new_to_old[i], new_to_old[j])]);
        std::vector<std::string> labels(n_);
        for (int i = 0; i < n_; ++i)
            labels[i] = labels_.empty() ? "" : labels_[new_to_old[i]];
        if (labels_.empty()) labels.clear();
        std::vector<int> gens;
        for (int gi : gens_) gens.push_back(order_map[gi]);
        mul_ = std::move(table);
        labels_ = std::move(labels);
        gens_ = std::move(gens);
    }

    int mul_raw(int a, int b) const { return mul_[static_cast<size_t>(a) * n_ + b]; }

    int find_identity() const {
        for (int e = 0; e < n_; ++e) {
            bool ok = true;
            for (int x = 0; x < n_ && ok; ++x)
                if (mul_raw(e, x) != x || mul_raw(x, e) != x) ok = false;
            if (ok) return e;
        }
        throw PreconditionViolated("multiplication table has no identity");
    }

    void finish_construction() {
        for (auto v : mul_)
            if (v >= n_) throw PreconditionViolated("multiplication table entry out of range");
        if (find_identity() != 0)
            throw PreconditionViolated("identity must be element 0 after canonical ordering");
        // inverses
        inv_.assign(n_, -1);
        for (int a = 0; a < n_; ++a) {
            for (int b = 0; b < n_; ++b)
                if (mul_raw(a, b) == 0 && mul_raw(b, a) == 0) {
                    inv_[a] = b;
                    break;
                }
            if (inv_[a] < 0) throw PreconditionViolated("element without a two-sided inverse");
        }
        // full associativity check; O(n^3) is affordable at the supported scale
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b) {
                int ab = mul_raw(a, b);
                for (int c = 0; c < n_; ++c)
                    if (mul_raw(ab, c) != mul_raw(a, mul_raw(b, c)))
                        throw PreconditionViolated("multiplication table is not associative");
            }
        if (gens_.empty() && n_ > 1)
            throw PreconditionViolated("nontrivial group needs at least one generator");
        for (int g : gens_)
            if (g < 0 || g >= n_) throw PreconditionViolated("generator index out of range");
        // generators generate
        {
            std::vector<bool> seen(n_, false);
            std::vector<int> stack{0};
            seen[0] = true;
            int count = 1;
            while (!stack.empty()) {
                int cur = stack.back();
                stack.pop_back();
                for (int g : gens_) {
                    int nx = mul_raw(g, cur);
                    if (!seen[nx]) {
                        seen[nx] = true;
                        ++count;
                        stack.push_back(nx);
                    }
                }
            }
            if (count != n_)
                throw PreconditionViolated("generators do not generate the whole group");
        }
        if (labels_.empty()) {
            labels_.resize(n_);
            labels_[0] = "e";
            for (int i = 1; i < n_; ++i) labels_[i] = "x" + std::to_string(i);
        }
        if (static_cast<int>(labels_.size()) != n_)
            throw PreconditionViolated("one label per element required");
        // element orders
        elt_order_.assign(n_, 1);
        for (int i = 0; i < n_; ++i) {
            int x = i, m = 1;
            while (x != 0) {
                x = mul_raw(x, i);
                ++m;
            }
            elt_order_[i] = m;
        }
        // conjugacy classes, ordered by minimal member
        classes_.class_of.assign(n_, -1);
        for (int i = 0; i < n_; ++i) {
            if (classes_.class_of[i] >= 0) continue;
            int cls = classes_.count();
            classes_.representatives.push_back(i);
            int size = 0;
            for (int g = 0; g < n_; ++g) {
                int y = mul_raw(mul_raw(g, i), inv_[g]);
                if (classes_.class_of[y] < 0) {
                    classes_.class_of[y] = cls;
                    ++size;
                }
            }
            classes_.sizes.push_back(size);
        }
    }
};

/// A subgroup of a parent group: a sorted, closed set of element indices.
struct Subgroup {
    GroupPtr parent;
    std::vector<int> members;  // sorted ascending, contains 0

    int order() const { return static_cast<int>(members.size()); }
    int index_in_parent() const { return parent->order() / order(); }
    bool contains(int g) const {
        return std::binary_search(members.begin(), members.end(), g);
    }
};

inline Subgroup make_subgroup(GroupPtr parent, std::vector<int> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    Subgroup s{std::move(parent), std::move(members)};
    if (s.members.empty() || s.members[0] != 0)
        throw PreconditionViolated("subgroup must contain the identity");
    for (int a : s.members) {
        if (a < 0 || a >= s.parent->order())
            throw PreconditionViolated("subgroup member out of range");
        if (!s.contains(s.parent->inv(a)))
            throw PreconditionViolated("subgroup not closed under inverse");
        for (int b : s.members)
            if (!s.contains(s.parent->mul(a, b)))
                throw PreconditionViolated("subgroup not closed under multiplication");
    }
    return s;
}

/// Smallest subgroup containing the seed elements.
inline Subgroup subgroup_generated(GroupPtr g, const std::vector<int>& seeds) {
    std::vector<bool> in(g->order(), false);
    in[0] = true;
    std::vector<int> stack{0};
    for (int s : seeds) {
        if (s < 0 || s >= g->order()) throw PreconditionViolated("seed element out of range");
        if (!in[s]) {
            in[s] = true;
            stack.push_back(s);
        }
    }
    std::vector<int> members;
    while (!stack.empty()) {
        int cur = stack.back();
        stack.pop_back();
        for (int s : seeds) {
            for (int nx : {g->mul(s, cur), g->mul(cur, s)}) {
                if (!in[nx]) {
                    in[nx] = true;
                    stack.push_back(nx);
                }
            }
        }
    }
    for (int i = 0; i < g->order(); ++i)
        if (in[i]) members.push_back(i);
    Subgroup sub{std::move(g), std::move(members)};
    return sub;
}

inline const ConjugacyClasses& conjugacy_classes(const GroupPtr& g) { return g->classes(); }

/// True iff ghg^{-1} stays in s for all g in the parent.
inline bool is_normal(const Subgroup& s) {
    const auto& g = *s.parent;
    for (int x : s.members)
        for (int y = 0; y < g.order(); ++y)
            if (!s.contains(g.conj(y, x))) return false;
    return true;
}

/// True iff h is a normal subgroup of k (both subgroups of the same parent).
inline bool is_normal_in(const Subgroup& h, const Subgroup& k) {
    const auto& g = *h.parent;
    for (int x : h.members) {
        if (!k.contains(x)) throw PreconditionViolated("h is not contained in k");
        for (int y : k.members)
            if (!h.contains(g.conj(y, x))) return false;
    }
    return true;
}

/// One representative per left coset gs, the first being the identity;
/// representatives are minimal element indices, in ascending order.
inline std::vector<int> coset_representatives(const Subgroup& s) {
    const auto& g = *s.parent;
    std::vector<bool> covered(g.order(), false);
    std::vector<int> reps;
    for (int x = 0; x < g.order(); ++x) {
        if (covered[x]) continue;
        reps.push_back(x);
        for (int h : s.members) covered[g.mul(x, h)] = true;
    }
    return reps;
}

/// A subgroup materialized as a FiniteGroup of its own, with index maps in
/// both directions. Materializations are memoized so that repeated requests
/// return the identical group instance (and hence share cached character
/// tables downstream).
struct SubgroupView {
    Subgroup sub;
    GroupPtr grp;
    std::vector<int> to_parent;    // local index -> parent index
    std::vector<int> from_parent;  // parent index -> local index or -1
};

inline SubgroupView materialize(const Subgroup& s) {
    static std::map<std::pair<const FiniteGroup*, std::vector<int>>, SubgroupView> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(s.parent.get(), s.members);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    const auto& g = *s.parent;
    int n = s.order();
    std::vector<int> from_parent(g.order(), -1);
    for (int i = 0; i < n; ++i) from_parent[s.members[i]] = i;
    std::vector<uint16_t> table(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int prod = g.mul(s.members[i], s.members[j]);
            table[static_cast<size_t>(i) * n + j] = static_cast<uint16_t>(from_parent[prod]);
        }
    // greedy generating set: smallest elements that extend the closure
    std::vector<int> gens;
    {
        std::vector<bool> in(n, false);
        in[0] = true;
        int covered = 1;
        while (covered < n) {
            int pick = -1;
            for (int i = 1; i < n; ++i)
                if (!in[i]) {
                    pick = i;
                    break;
                }
            gens.push_back(pick);
            std::vector<int> stack;
            for (int i = 0; i < n; ++i)
                if (in[i]) stack.push_back(i);
            while (!stack.empty()) {
                int cur = stack.back();
                stack.pop_back();
                for (int gi : gens) {
                    int nx = table[static_cast<size_t>(gi) * n + cur];
                    if (!in[nx]) {
                        in[nx] = true;
                        ++covered;
                        stack.push_back(nx);
                    }
                    nx = table[static_cast<size_t>(cur) * n + gi];
                    if (!in[nx]) {
                        in[nx] = true;
                        ++covered;
                        stack.push_back(nx);
                    }
                }
            }
        }
    }
    std::vector<std::string> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = g.label(s.members[i]);
    SubgroupView view;
    view.sub = s;
    view.grp = FiniteGroup::from_table(n, std::move(table), std::move(gens), std::move(labels),
                                       false, g.order());
    view.to_parent = s.members;
    view.from_parent = std::move(from_parent);
    return cache.emplace(std::move(key), std::move(view)).first->second;
}

/// The quotient k/h for h normal in k; elements are cosets labelled by their
/// minimal representative.
inline GroupPtr quotient_group(const Subgroup& k, const Subgroup& h) {
    if (!is_normal_in(h, k)) throw PreconditionViolated("quotient requires a normal subgroup");
    const auto& g = *k.parent;
    std::map<int, int> coset_index;           // min rep -> quotient index
    std::vector<int> coset_of(g.order(), -1);  // parent elt -> min rep of its coset
    std::vector<int> reps;
    for (int x : k.members) {
        if (coset_of[x] >= 0) continue;
        int min_rep = x;
        std::vector<int> coset;
        for (int hh : h.members) coset.push_back(g.mul(x, hh));
        for (int y : coset) min_rep = std::min(min_rep, y);
        for (int y : coset) coset_of[y] = min_rep;
        reps.push_back(min_rep);
    }
    std::sort(reps.begin(), reps.end());
    for (size_t i = 0; i < reps.size(); ++i) coset_index[reps[i]] = static_cast<int>(i);
    int n = static_cast<int>(reps.size());
    std::vector<uint16_t> table(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            table[static_cast<size_t>(i) * n + j] =
                static_cast<uint16_t>(coset_index.at(coset_of[g.mul(reps[i], reps[j])]));
    std::vector<int> gens;
    for (int i = 1; i < n; ++i) gens.push_back(i);
    if (n == 1) gens.clear();
    std::vector<std::string> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = g.label(reps[i]) + "H";
    return FiniteGroup::from_table(n, std::move(table), std::move(gens), std::move(labels), false,
                                   g.order());
}

inline bool is_cyclic(const FiniteGroup& g) {
    for (int i = 0; i < g.order(); ++i)
        if (g.element_order(i) == g.order()) return true;
    return false;
}

/// If g is dihedral of order 2m (m >= 1), returns m; D_1 is the 2-element
/// group and D_2 the Klein four-group under this convention.
inline std::optional<long> dihedral_parameter(const FiniteGroup& g) {
    if (g.order() % 2 != 0) return std::nullopt;
    long m = g.order() / 2;
    for (int r = 0; r < g.order(); ++r) {
        if (g.element_order(r) != m) continue;
        // <r> has index 2; find an inverting involution outside it
        std::vector<bool> in_r(g.order(), false);
        int x = 0;
        for (long i = 0; i < m; ++i) {
            in_r[x] = true;
            x = g.mul(x, r);
        }
        for (int s = 0; s < g.order(); ++s) {
            if (in_r[s] || g.element_order(s) != 2) continue;
            if (g.conj(s, r) == g.inv(r)) return m;
        }
        if (m <= 2) {
            // D_1 and D_2 are abelian; any involution outside <r> works
            for (int s = 0; s < g.order(); ++s)
                if (!in_r[s] && g.element_order(s) == 2) return m;
        }
    }
    return std::nullopt;
}

}  // namespace eqbundle
