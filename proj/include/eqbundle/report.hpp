#pragma once

#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "eqbundle/action_file.hpp"
#include "eqbundle/bundles.hpp"
#include "eqbundle/circle_action.hpp"
#include "eqbundle/k_theory.hpp"
#include "eqbundle/line_cocycles.hpp"
#include "eqbundle/orbits.hpp"

namespace eqbundle {

using Json = nlohmann::json;

namespace detail {

/// Render a multiplicity vector as "x0 + 2*x3" with the given variable stem.
inline std::string multiset_str(const std::vector<long>& mult, const std::string& stem) {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < mult.size(); ++i) {
        if (mult[i] == 0) continue;
        if (!first) os << " + ";
        if (mult[i] != 1) os << mult[i] << "*";
        os << stem << i;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

inline Json o2_json(const O2Element& m) {
    return Json{{"det", m.det}, {"turns", rat_str(m.turns)}};
}

inline Json image_json(const ImageKind& k) {
    return Json{{"kind", k.dihedral ? "dihedral" : "cyclic"}, {"n", k.n}};
}

inline std::string character_name(const std::string& stem, int i) {
    return stem + std::to_string(i);
}

/// Plain-text character table with class sizes and representative labels.
inline std::string table_text(const GroupPtr& g, const std::string& title,
                              const std::string& stem) {
    TablePtr t = character_table(g);
    const auto& cls = g->classes();
    std::ostringstream os;
    os << title << " (order " << g->order() << ", " << cls.count() << " classes)\n";
    std::vector<std::vector<std::string>> grid;
    std::vector<std::string> head{"class size"};
    for (int c = 0; c < cls.count(); ++c) head.push_back(std::to_string(cls.sizes[c]));
    grid.push_back(head);
    std::vector<std::string> reps{"class rep"};
    for (int c = 0; c < cls.count(); ++c) reps.push_back(g->label(cls.representatives[c]));
    grid.push_back(reps);
    for (int i = 0; i < t->count(); ++i) {
        std::vector<std::string> row{character_name(stem, i)};
        for (const auto& v : t->at(i).values) row.push_back(v.str());
        grid.push_back(row);
    }
    std::vector<size_t> width(grid[0].size(), 0);
    for (const auto& row : grid)
        for (size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    for (const auto& row : grid) {
        os << "  ";
        for (size_t c = 0; c < row.size(); ++c) {
            os << row[c];
            if (c + 1 < row.size()) os << std::string(width[c] - row[c].size() + 2, ' ');
        }
        os << "\n";
    }
    return os.str();
}

inline Json table_json(const GroupPtr& g) {
    TablePtr t = character_table(g);
    const auto& cls = g->classes();
    Json j;
    j["order"] = g->order();
    j["class_sizes"] = cls.sizes;
    Json reps = Json::array();
    for (int c = 0; c < cls.count(); ++c) reps.push_back(g->label(cls.representatives[c]));
    j["class_representatives"] = reps;
    Json rows = Json::array();
    for (int i = 0; i < t->count(); ++i) {
        Json row = Json::array();
        for (const auto& v : t->at(i).values) row.push_back(v.str());
        rows.push_back(row);
    }
    j["irreducibles"] = rows;
    return j;
}

}  // namespace detail

/// Header block describing the action: group, image type, kernel, a, b.
inline std::string action_header_text(const CircleAction& act, const std::string& name) {
    std::ostringstream os;
    const auto& g = *act.group;
    os << "action" << (name.empty() ? "" : " \"" + name + "\"") << ": group of order " << g.order()
       << ", image " << act.image.str() << ", |H| = " << act.kernel.order() << "\n";
    os << "  rho on generators (normalized";
    bool renormalized = false;
    for (size_t i = 0; i < act.rho.size(); ++i)
        if (act.rho[i] != act.rho_input[i]) renormalized = true;
    if (renormalized) os << "; input differed by a rotation change of coordinates";
    os << "):\n";
    for (int gi : g.generators())
        os << "    " << g.label(gi) << " -> " << act.rho[gi].str()
           << (act.rho[gi] != act.rho_input[gi] ? "   [input " + act.rho_input[gi].str() + "]"
                                                : "")
           << "\n";
    if (act.a) os << "  a = " << g.label(*act.a) << " (" << act.rho[*act.a].str() << ")\n";
    if (act.b) os << "  b = " << g.label(*act.b) << " (" << act.rho[*act.b].str() << ")\n";
    if (act.dihedral())
        os << "  distinguished points: 1 (|G_1| = " << act.g1_view.grp->order()
           << "), mu = E(" << 2 * act.n() << ") (|G_mu| = " << act.gmu_view->grp->order() << ")\n";
    return os.str();
}

inline Json action_header_json(const CircleAction& act, const std::string& name) {
    Json j;
    const auto& g = *act.group;
    if (!name.empty()) j["name"] = name;
    j["group"] = Json{{"order", g.order()}};
    Json gens = Json::array();
    for (int gi : g.generators()) gens.push_back(g.label(gi));
    j["group"]["generators"] = gens;
    j["image"] = detail::image_json(act.image);
    j["kernel_order"] = act.kernel.order();
    Json rho = Json::array();
    for (int gi : g.generators()) {
        Json r = detail::o2_json(act.rho[gi]);
        r["generator"] = g.label(gi);
        r["input"] = detail::o2_json(act.rho_input[gi]);
        rho.push_back(r);
    }
    j["rho"] = rho;
    if (act.a) j["a"] = g.label(*act.a);
    if (act.b) j["b"] = g.label(*act.b);
    return j;
}

/// chartab: the tables of G, H and (dihedral case) G_1, G_mu.
inline std::string chartab_text(const CircleAction& act, const std::string& name) {
    std::ostringstream os;
    os << action_header_text(act, name);
    os << detail::table_text(act.group, "character table of G", "X");
    if (act.kernel.order() != act.group->order())
        os << detail::table_text(act.h_view.grp, "character table of H", "chi");
    if (act.dihedral()) {
        os << detail::table_text(act.g1_view.grp, "character table of G_1", "x");
        os << detail::table_text(act.gmu_view->grp, "character table of G_mu", "y");
    }
    return os.str();
}

inline Json chartab_json(const CircleAction& act, const std::string& name) {
    Json j = action_header_json(act, name);
    j["tables"] = Json::object();
    j["tables"]["G"] = detail::table_json(act.group);
    j["tables"]["H"] = detail::table_json(act.h_view.grp);
    if (act.dihedral()) {
        j["tables"]["G_1"] = detail::table_json(act.g1_view.grp);
        j["tables"]["G_mu"] = detail::table_json(act.gmu_view->grp);
    }
    return j;
}

namespace detail {

struct OrbitCocycles {
    bool present = false;
    bool local_coordinates = false;  // computed on the restricted G_chi action
    long local_n = 0;
    std::vector<LineCocycle> cocycles;
    std::vector<bool> trivial;
};

/// Cocycles for a linear orbit: global coordinates when chi is invariant,
/// otherwise on the restricted G_chi action in its own normalized frame.
inline OrbitCocycles orbit_cocycles(const CircleAction& act, const OrbitData& orbit) {
    OrbitCocycles out;
    TablePtr ht = character_table(act.h_view.grp);
    const Character& chi = ht->at(orbit.representative);
    if (!chi.is_linear() || orbit.e != 2) return out;
    if (orbit.isotropy.order() == act.group->order()) {
        out.present = true;
        out.local_coordinates = false;
        out.local_n = act.n();
        out.cocycles = build_line_cocycles(act, chi);
        for (const auto& c : out.cocycles)
            out.trivial.push_back(bundle_is_trivial(act, c.cls).trivial);
    } else {
        CircleAction sub = restricted_action(act, orbit.isotropy);
        if (sub.h_view.grp->table() != act.h_view.grp->table())
            throw InternalError("restricted action H differs structurally");
        Character phi{sub.h_view.grp, chi.values};
        out.present = true;
        out.local_coordinates = true;
        out.local_n = sub.n();
        out.cocycles = build_line_cocycles(sub, phi);
        for (const auto& c : out.cocycles)
            out.trivial.push_back(bundle_is_trivial(sub, c.cls).trivial);
    }
    return out;
}

}  // namespace detail

/// classify: per-orbit data, generators with triviality, and explicit
/// cocycles for linear orbits.
inline std::string classify_text(const CircleAction& act, const std::string& name) {
    std::ostringstream os;
    os << action_header_text(act, name);
    auto orbits = orbit_decomposition(act);
    auto gens = orbit_generators(act);
    TablePtr ht = character_table(act.h_view.grp);
    os << "orbits of Irr(H): " << orbits.size() << "\n";
    for (size_t o = 0; o < orbits.size(); ++o) {
        const auto& od = orbits[o];
        os << "orbit " << o << ": representative chi" << od.representative << " (degree "
           << int_str(ht->at(od.representative).degree()) << "), members {";
        for (size_t i = 0; i < od.members.size(); ++i)
            os << (i ? ", " : "") << "chi" << od.members[i];
        os << "}\n";
        os << "  |G_chi| = " << od.isotropy.order() << ", rho(G_chi) = " << od.isotropy_image.str()
           << ", e = " << od.e << "\n";
        const auto& gs = gens[o];
        if (!gs.quadruple) {
            os << "  generator (single): L, fiber(1) = "
               << detail::multiset_str(gs.gens[0].cls.fiber_at_1, "x")
               << (gs.gens[0].trivial ? ", trivial" : ", nontrivial") << "\n";
        } else {
            os << "  generators (quadruple; L^{++} + L^{--} = L^{+-} + L^{-+}):\n";
            for (const auto& g : gs.gens) {
                os << "    " << g.label << ": fiber(1) = "
                   << detail::multiset_str(g.cls.fiber_at_1, "x") << ", fiber(mu) = "
                   << detail::multiset_str(*g.cls.fiber_at_mu, "y")
                   << (g.trivial ? ", trivial" : ", nontrivial") << "\n";
            }
        }
        auto coc = detail::orbit_cocycles(act, od);
        if (coc.present) {
            os << "  cocycles for phi = chi" << od.representative;
            if (coc.local_coordinates)
                os << " (in the normalized coordinates of the G_chi action, image D_"
                   << coc.local_n << ")";
            os << ":\n";
            for (size_t i = 0; i < coc.cocycles.size(); ++i) {
                const auto& c = coc.cocycles[i];
                os << "    k = " << c.k << ", A = " << c.A.str() << ": "
                   << c.action_formula(coc.local_n);
                if (!coc.local_coordinates)
                    for (const auto& g : gs.gens)
                        if (g.cls == c.cls) os << "   = " << g.label;
                os << (coc.trivial[i] ? "   [trivial]" : "   [nontrivial]") << "\n";
            }
        }
    }
    bool all_trivial = true;
    for (const auto& gs : gens)
        for (const auto& g : gs.gens)
            if (!g.trivial) all_trivial = false;
    if (!act.dihedral())
        os << "image is a rotation group: every bundle is trivial\n";
    else if (all_trivial)
        os << "every generator is trivial: every bundle is trivial\n";
    return os.str();
}

inline Json classify_json(const CircleAction& act, const std::string& name) {
    Json j = action_header_json(act, name);
    auto orbits = orbit_decomposition(act);
    auto gens = orbit_generators(act);
    TablePtr ht = character_table(act.h_view.grp);
    Json jorbits = Json::array();
    for (size_t o = 0; o < orbits.size(); ++o) {
        const auto& od = orbits[o];
        Json jo;
        jo["index"] = o;
        jo["representative"] = od.representative;
        jo["members"] = od.members;
        jo["degree"] = to_long(ht->at(od.representative).degree());
        jo["isotropy_order"] = od.isotropy.order();
        jo["isotropy_image"] = detail::image_json(od.isotropy_image);
        jo["e"] = od.e;
        Json jg = Json::array();
        for (const auto& g : gens[o].gens) {
            Json one;
            one["label"] = g.label;
            one["fiber_at_1"] = g.cls.fiber_at_1;
            if (g.cls.fiber_at_mu) one["fiber_at_mu"] = *g.cls.fiber_at_mu;
            one["trivial"] = g.trivial;
            jg.push_back(one);
        }
        jo["generators"] = jg;
        auto coc = detail::orbit_cocycles(act, od);
        if (coc.present) {
            Json jc = Json::array();
            for (size_t i = 0; i < coc.cocycles.size(); ++i) {
                const auto& c = coc.cocycles[i];
                Json one;
                one["phi_tilde"] = c.phi_tilde_irr;
                one["phi_b"] = c.phi_b.str();
                one["A"] = c.A.str();
                one["k"] = c.k;
                one["formula"] = c.action_formula(coc.local_n);
                one["trivial"] = static_cast<bool>(coc.trivial[i]);
                one["coordinates"] = coc.local_coordinates ? "G_chi" : "global";
                if (!coc.local_coordinates)
                    for (const auto& g : gens[o].gens)
                        if (g.cls == c.cls) one["generator"] = g.label;
                jc.push_back(one);
            }
            jo["cocycles"] = jc;
        }
        jorbits.push_back(jo);
    }
    j["orbits"] = jorbits;
    return j;
}

/// count: the closed-form class count, with optional enumeration.
inline std::string count_text(const CircleAction& act, const FiberSpec& fiber,
                              bool enumerate_classes, const std::string& name) {
    std::ostringstream os;
    os << action_header_text(act, name);
    os << "fiber:";
    if (fiber.mult.empty()) os << " (zero)";
    for (const auto& [o, m] : fiber.mult) os << " orbit" << o << " x " << m;
    os << "\n";
    os << "isomorphism classes: " << int_str(count_bundles(act, fiber)) << "\n";
    if (enumerate_classes) {
        auto classes = enumerate_bundles(act, fiber);
        for (size_t i = 0; i < classes.size(); ++i) {
            os << "  class " << i << ": fiber(1) = "
               << detail::multiset_str(classes[i].fiber_at_1, "x");
            if (classes[i].fiber_at_mu)
                os << ", fiber(mu) = " << detail::multiset_str(*classes[i].fiber_at_mu, "y");
            os << "\n";
        }
    }
    return os.str();
}

inline Json count_json(const CircleAction& act, const FiberSpec& fiber, bool enumerate_classes,
                       const std::string& name) {
    Json j = action_header_json(act, name);
    Json f = Json::object();
    for (const auto& [o, m] : fiber.mult) f[std::to_string(o)] = m;
    j["fiber"] = f;
    j["count"] = int_str(count_bundles(act, fiber));
    if (enumerate_classes) {
        Json arr = Json::array();
        for (const auto& c : enumerate_bundles(act, fiber)) {
            Json one;
            one["fiber_at_1"] = c.fiber_at_1;
            if (c.fiber_at_mu) one["fiber_at_mu"] = *c.fiber_at_mu;
            arr.push_back(one);
        }
        j["classes"] = arr;
    }
    return j;
}

/// kgroup: presentation (and optionally the reduced ideal for D_1 actions).
inline std::string kgroup_text(const CircleAction& act, bool reduced, const std::string& name) {
    std::ostringstream os;
    os << action_header_text(act, name);
    if (!reduced) {
        auto pres = k_group_presentation(act);
        os << "K-group: free abelian of rank " << pres.rank << "\n";
        os << "  generators:";
        for (const auto& l : pres.generator_labels) os << " " << l;
        os << "\n  relations: " << pres.relations.size() << " (one per quadruple)\n";
    } else {
        auto ideal = reduced_k_group(act);
        os << "reduced K-group at base point -1: free abelian of rank " << ideal.zbasis.size()
           << " (ambient representation lattice rank " << ideal.ambient_rank << ")\n";
        os << "  Z-basis rows over Irr(G):\n";
        for (const auto& row : ideal.zbasis) {
            os << "   ";
            for (const auto& v : row) os << " " << int_str(v);
            os << "\n";
        }
    }
    return os.str();
}

inline Json kgroup_json(const CircleAction& act, bool reduced, const std::string& name) {
    Json j = action_header_json(act, name);
    if (!reduced) {
        auto pres = k_group_presentation(act);
        j["rank"] = pres.rank;
        j["generators"] = pres.generator_labels;
        Json rel = Json::array();
        for (const auto& row : pres.relations) {
            Json r = Json::array();
            for (const auto& v : row) r.push_back(int_str(v));
            rel.push_back(r);
        }
        j["relations"] = rel;
    } else {
        auto ideal = reduced_k_group(act);
        j["ambient_rank"] = ideal.ambient_rank;
        j["rank"] = ideal.zbasis.size();
        Json basis = Json::array();
        for (const auto& row : ideal.zbasis) {
            Json r = Json::array();
            for (const auto& v : row) r.push_back(int_str(v));
            basis.push_back(r);
        }
        j["zbasis"] = basis;
    }
    return j;
}

}  // namespace eqbundle
