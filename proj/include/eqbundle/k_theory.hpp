#pragma once

#include <string>
#include <vector>

#include "eqbundle/bundles.hpp"
#include "eqbundle/character_table.hpp"
#include "eqbundle/circle_action.hpp"
#include "eqbundle/errors.hpp"
#include "eqbundle/integer_matrix.hpp"
#include "eqbundle/orbits.hpp"

namespace eqbundle {

/// Presentation of a free abelian group by generators and relations, with the
/// free rank verified two independent ways (generator count minus relations,
/// and the Smith rank of the classification lattice).
struct FreeAbelianPresentation {
    long rank = 0;
    std::vector<std::string> generator_labels;
    IntMat relations;  // rows, in generator coordinates
};

/// The reduced group as an ideal inside the representation lattice Z^{Irr(G)}.
struct IdealBasis {
    long ambient_rank = 0;
    IntMat generators;  // one row per irreducible of G
    IntMat zbasis;      // Hermite basis of the generated sublattice
};

/// Pointwise product of two characters decomposed into irreducibles.
inline std::vector<std::pair<int, Int>> character_product(const Character& a, const Character& b) {
    return decompose(character_pointwise(a, b));
}

/// The Grothendieck group of the bundle semigroup: free abelian, with one
/// generator per rotation-type orbit and four (one relation) per
/// reflection-type orbit. The rank is cross-checked against the rank of the
/// classification-data lattice computed by integer elimination.
inline FreeAbelianPresentation k_group_presentation(const CircleAction& act) {
    auto orbits = orbit_decomposition(act);
    FreeAbelianPresentation pres;
    long gen_count = 0;
    for (size_t o = 0; o < orbits.size(); ++o) {
        std::string base = "L(" + std::to_string(o) + ")";
        if (orbits[o].e == 0) {
            pres.generator_labels.push_back(base);
            ++gen_count;
        } else {
            for (const char* suffix : {"^{++}", "^{+-}", "^{-+}", "^{--}"})
                pres.generator_labels.push_back(base + suffix);
            IntMat::value_type rel(gen_count + 4, Int(0));
            rel[gen_count + 0] = 1;   // ++
            rel[gen_count + 3] = 1;   // --
            rel[gen_count + 1] = -1;  // +-
            rel[gen_count + 2] = -1;  // -+
            pres.relations.push_back(std::move(rel));
            gen_count += 4;
        }
    }
    for (auto& rel : pres.relations) rel.resize(gen_count, Int(0));
    pres.rank = gen_count - static_cast<long>(pres.relations.size());

    // relations must be primitive and independent
    if (!pres.relations.empty()) {
        auto diag = smith_normal_form(pres.relations);
        if (static_cast<long>(diag.size()) != static_cast<long>(pres.relations.size()))
            throw InternalError("quadruple relations are not independent");
        for (const auto& d : diag)
            if (d != 1) throw InternalError("quadruple relation lattice has a nonunit divisor");
    }

    // independent computation: rank of the lattice of classification data
    long lattice_rank;
    if (!act.dihedral()) {
        // invariant vectors of Z^{Irr(H)} under the permutation action
        TablePtr ht = character_table(act.h_view.grp);
        int k = ht->count();
        IntMat diff;
        for (int r : coset_representatives(act.kernel)) {
            auto perm = detail::irr_permutation(act, r);
            for (int i = 0; i < k; ++i) {
                if (perm[i] == i) continue;
                IntMat::value_type row(k, Int(0));
                row[i] = 1;
                row[perm[i]] = -1;
                diff.push_back(std::move(row));
            }
        }
        lattice_rank = k - (diff.empty() ? 0 : matrix_rank(diff));
    } else {
        auto r1 = detail::restriction_matrix(act.g1_view, act.h_view);
        auto rmu = detail::restriction_matrix(*act.gmu_view, act.h_view);
        TablePtr ht = character_table(act.h_view.grp);
        IntMat m;
        for (const auto& row : r1) {
            IntMat::value_type v(ht->count());
            for (size_t c = 0; c < row.size(); ++c) v[c] = Int(row[c]);
            m.push_back(std::move(v));
        }
        for (const auto& row : rmu) {
            IntMat::value_type v(ht->count());
            for (size_t c = 0; c < row.size(); ++c) v[c] = Int(-row[c]);
            m.push_back(std::move(v));
        }
        lattice_rank = static_cast<long>(m.size()) - matrix_rank(m);
    }
    if (lattice_rank != pres.rank)
        throw InternalError("generator-count rank disagrees with the lattice rank");
    return pres;
}

/// The reduced group for an action with fixed points (image D_1, base point
/// -1): the ideal of the representation lattice generated by sigma - sigma'
/// where sigma' is sigma twisted by the nontrivial character pulled back from
/// G/H. Torsion-freeness is asserted via Smith normal form.
inline IdealBasis reduced_k_group(const CircleAction& act) {
    if (!act.dihedral() || act.n() != 1)
        throw PreconditionViolated("the reduced group needs a fixed point: image must be D_1");
    GroupPtr g = act.group;
    TablePtr gt = character_table(g);
    int k = gt->count();

    // the nontrivial linear character pulled back from G/H = D_1
    int sign_row = -1;
    for (int i = 0; i < k; ++i) {
        if (!gt->at(i).is_linear()) continue;
        bool matches = true;
        for (int c = 0; c < g->classes().count() && matches; ++c) {
            int rep = g->classes().representatives[c];
            Cyclotomic expect = act.kernel.contains(rep) ? Cyclotomic(1) : Cyclotomic(-1);
            if (!(gt->at(i).values[c] == expect)) matches = false;
        }
        if (matches) {
            sign_row = i;
            break;
        }
    }
    if (sign_row < 0) throw InternalError("no character realizes the D_1 pullback sign");

    IdealBasis ideal;
    ideal.ambient_rank = k;
    for (int i = 0; i < k; ++i) {
        auto twisted = character_product(gt->at(i), gt->at(sign_row));
        if (twisted.size() != 1 || twisted[0].second != 1)
            throw InternalError("twist by a linear character is not irreducible");
        IntMat::value_type row(k, Int(0));
        row[i] += 1;
        row[twisted[0].first] -= 1;
        ideal.generators.push_back(std::move(row));
    }
    ideal.zbasis = hermite_normal_form(ideal.generators);
    auto diag = smith_normal_form(ideal.generators);
    for (const auto& d : diag)
        if (d != 0 && d != 1) throw InternalError("reduced group has torsion");
    return ideal;
}

}  // namespace eqbundle
