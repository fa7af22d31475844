#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "eqbundle/eqbundle.hpp"

namespace {

using namespace eqbundle;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

/// "0:1,2:3" -> orbit multiplicities
FiberSpec parse_fiber(const std::string& text) {
    FiberSpec spec;
    if (text.empty()) return spec;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos)
            throw ParseError("fiber entry '" + item + "' must look like orbit:mult");
        try {
            int orbit = std::stoi(item.substr(0, colon));
            long mult = std::stol(item.substr(colon + 1));
            if (mult < 0) throw ParseError("fiber multiplicities must be non-negative");
            if (mult > 0) spec.mult[orbit] += mult;
        } catch (const ParseError&) {
            throw;
        } catch (...) {
            throw ParseError("bad fiber entry '" + item + "'");
        }
    }
    return spec;
}

/// "irr:mult,..." over Irr(H), validated against orbit constancy
FiberSpec parse_fiber_irr(const CircleAction& act, const std::string& text) {
    TablePtr ht = character_table(act.h_view.grp);
    std::vector<long> mult(ht->count(), 0);
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos)
            throw ParseError("fiber entry '" + item + "' must look like irr:mult");
        try {
            int idx = std::stoi(item.substr(0, colon));
            long m = std::stol(item.substr(colon + 1));
            if (idx < 0 || idx >= ht->count()) throw ParseError("irreducible index out of range");
            mult[idx] += m;
        } catch (const ParseError&) {
            throw;
        } catch (...) {
            throw ParseError("bad fiber entry '" + item + "'");
        }
    }
    return fiber_spec_of_multiplicities(act, mult, orbit_decomposition(act));
}

CircleAction load_action(const std::string& path, std::string& name_out) {
    ActionFile af = parse_action_file(read_file(path));
    name_out = af.name;
    return action_from_file(af);
}

void emit(const std::string& text) { std::cout << text; }
void emit_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

int run_selftest() {
    for (const auto& [name, content] : builtin_corpus()) {
        ActionFile af = parse_action_file(content);
        CircleAction act = action_from_file(af);
        std::cout << "=== " << name << " ===\n";
        std::cout << classify_text(act, af.name);
        std::cout << kgroup_text(act, false, af.name);
        if (act.dihedral() && act.n() == 1) std::cout << kgroup_text(act, true, af.name);
        std::cout << "\n";
    }
    std::cout << "selftest: " << builtin_corpus().size() << " actions processed\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"classification of equivariant complex vector bundles over a circle"};
    app.require_subcommand(1);

    std::string file;
    bool json = false;

    auto* chartab = app.add_subcommand("chartab", "print the character tables of G, H, G_1, G_mu");
    chartab->add_option("file", file, "action description file")->required();
    chartab->add_flag("--json", json, "JSON output");

    auto* classify = app.add_subcommand(
        "classify", "orbits, semigroup generators with triviality, line-bundle cocycles");
    classify->add_option("file", file, "action description file")->required();
    classify->add_flag("--json", json, "JSON output");

    std::string fiber_text, fiber_irr_text;
    bool enumerate_classes = false;
    auto* count = app.add_subcommand("count", "count (and enumerate) classes with a given fiber");
    count->add_option("file", file, "action description file")->required();
    count->add_option("--fiber", fiber_text, "orbit multiplicities, e.g. \"0:1,2:3\"");
    count->add_option("--fiber-irr", fiber_irr_text,
                      "raw Irr(H) multiplicities, e.g. \"0:1,1:1\" (validated for invariance)");
    count->add_flag("--enumerate", enumerate_classes, "list the classification data of each class");
    count->add_flag("--json", json, "JSON output");

    bool reduced = false;
    auto* kgroup = app.add_subcommand("kgroup", "equivariant K-group presentation");
    kgroup->add_option("file", file, "action description file")->required();
    kgroup->add_flag("--reduced", reduced, "reduced K-group at the base point -1 (needs image D_1)");
    kgroup->add_flag("--json", json, "JSON output");

    auto* selftest = app.add_subcommand("selftest", "run every built-in corpus action");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (selftest->parsed()) return run_selftest();

        std::string name;
        CircleAction act = load_action(file, name);
        if (chartab->parsed()) {
            if (json)
                emit_json(chartab_json(act, name));
            else
                emit(chartab_text(act, name));
        } else if (classify->parsed()) {
            if (json)
                emit_json(classify_json(act, name));
            else
                emit(classify_text(act, name));
        } else if (count->parsed()) {
            if (!fiber_text.empty() && !fiber_irr_text.empty())
                throw ParseError("--fiber and --fiber-irr are mutually exclusive");
            FiberSpec spec = fiber_irr_text.empty() ? parse_fiber(fiber_text)
                                                    : parse_fiber_irr(act, fiber_irr_text);
            if (json)
                emit_json(count_json(act, spec, enumerate_classes, name));
            else
                emit(count_text(act, spec, enumerate_classes, name));
        } else if (kgroup->parsed()) {
            if (json)
                emit_json(kgroup_json(act, reduced, name));
            else
                emit(kgroup_text(act, reduced, name));
        }
        return 0;
    } catch (const PreconditionViolated& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
