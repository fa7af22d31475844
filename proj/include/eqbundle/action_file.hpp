#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "eqbundle/circle_action.hpp"
#include "eqbundle/errors.hpp"
#include "eqbundle/finite_group.hpp"
#include "eqbundle/permutation.hpp"

namespace eqbundle {

/// Parsed form of an action description file; a small TOML-compatible
/// key-value format with [group] and [rho] sections. See the README for the
/// full grammar.
struct ActionFile {
    std::string name;

    std::string kind;  // "permutation" | "cayley"
    int degree = 0;    // permutation kind
    int order = 0;     // cayley kind
    std::vector<std::string> generators;  // cycle strings (permutation) or indices (cayley)
    std::vector<long> table;              // cayley kind, row-major
    std::vector<std::string> labels;      // optional

    std::vector<int> dets;
    std::vector<std::string> turns;
};

namespace detail {

struct TomlValue {
    enum Kind { String, Integer, Array } kind = Integer;
    std::string str;
    long num = 0;
    std::vector<TomlValue> items;
};

inline std::string toml_strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline TomlValue toml_scalar(const std::string& raw, int line_no) {
    TomlValue v;
    std::string s = toml_strip(raw);
    if (s.empty()) throw ParseError("line " + std::to_string(line_no) + ": empty value");
    if (s.front() == '"') {
        if (s.size() < 2 || s.back() != '"')
            throw ParseError("line " + std::to_string(line_no) + ": unterminated string");
        v.kind = TomlValue::String;
        v.str = s.substr(1, s.size() - 2);
        return v;
    }
    try {
        size_t used = 0;
        v.num = std::stol(s, &used);
        if (used != s.size()) throw std::invalid_argument("");
        v.kind = TomlValue::Integer;
        return v;
    } catch (...) {
        throw ParseError("line " + std::to_string(line_no) + ": bad scalar '" + s + "'");
    }
}

/// Single-line arrays of scalars are enough for action files.
inline TomlValue toml_value(const std::string& raw, int line_no) {
    std::string s = toml_strip(raw);
    if (!s.empty() && s.front() == '[') {
        if (s.back() != ']')
            throw ParseError("line " + std::to_string(line_no) + ": unterminated array");
        TomlValue v;
        v.kind = TomlValue::Array;
        std::string inner = s.substr(1, s.size() - 2);
        std::string cur;
        bool in_string = false;
        for (char c : inner) {
            if (c == '"') in_string = !in_string;
            if (c == ',' && !in_string) {
                if (!toml_strip(cur).empty()) v.items.push_back(toml_scalar(cur, line_no));
                cur.clear();
            } else {
                cur += c;
            }
        }
        if (!toml_strip(cur).empty()) v.items.push_back(toml_scalar(cur, line_no));
        return v;
    }
    return toml_scalar(s, line_no);
}

}  // namespace detail

inline ActionFile parse_action_file(const std::string& text) {
    ActionFile af;
    std::istringstream is(text);
    std::string line, section;
    int line_no = 0;
    std::map<std::string, detail::TomlValue> values;
    while (std::getline(is, line)) {
        ++line_no;
        // strip comments (respect quotes)
        std::string clean;
        bool in_string = false;
        for (char c : line) {
            if (c == '"') in_string = !in_string;
            if (c == '#' && !in_string) break;
            clean += c;
        }
        clean = detail::toml_strip(clean);
        if (clean.empty()) continue;
        if (clean.front() == '[') {
            if (clean.back() != ']')
                throw ParseError("line " + std::to_string(line_no) + ": bad section header");
            section = detail::toml_strip(clean.substr(1, clean.size() - 2));
            continue;
        }
        auto eq = clean.find('=');
        if (eq == std::string::npos)
            throw ParseError("line " + std::to_string(line_no) + ": expected key = value");
        std::string key = detail::toml_strip(clean.substr(0, eq));
        if (key.empty()) throw ParseError("line " + std::to_string(line_no) + ": empty key");
        values[section + "." + key] = detail::toml_value(clean.substr(eq + 1), line_no);
    }

    auto get = [&](const std::string& key) -> const detail::TomlValue* {
        auto it = values.find(key);
        return it == values.end() ? nullptr : &it->second;
    };
    auto need = [&](const std::string& key) -> const detail::TomlValue& {
        auto* v = get(key);
        if (!v) throw ParseError("missing required key '" + key + "'");
        return *v;
    };
    auto as_string = [](const detail::TomlValue& v, const std::string& key) {
        if (v.kind != detail::TomlValue::String)
            throw ParseError("key '" + key + "' must be a string");
        return v.str;
    };
    auto as_int = [](const detail::TomlValue& v, const std::string& key) {
        if (v.kind != detail::TomlValue::Integer)
            throw ParseError("key '" + key + "' must be an integer");
        return v.num;
    };

    if (auto* v = get("group.name")) af.name = as_string(*v, "group.name");
    af.kind = as_string(need("group.kind"), "group.kind");
    if (af.kind == "permutation") {
        af.degree = static_cast<int>(as_int(need("group.degree"), "group.degree"));
        const auto& gens = need("group.generators");
        if (gens.kind != detail::TomlValue::Array)
            throw ParseError("group.generators must be an array");
        for (const auto& item : gens.items)
            af.generators.push_back(as_string(item, "group.generators[]"));
    } else if (af.kind == "cayley") {
        af.order = static_cast<int>(as_int(need("group.order"), "group.order"));
        const auto& tbl = need("group.table");
        if (tbl.kind != detail::TomlValue::Array)
            throw ParseError("group.table must be an array");
        for (const auto& item : tbl.items) af.table.push_back(as_int(item, "group.table[]"));
        const auto& gens = need("group.generators");
        if (gens.kind != detail::TomlValue::Array)
            throw ParseError("group.generators must be an array");
        for (const auto& item : gens.items)
            af.generators.push_back(std::to_string(as_int(item, "group.generators[]")));
    } else {
        throw ParseError("group.kind must be \"permutation\" or \"cayley\"");
    }
    if (auto* v = get("group.labels")) {
        if (v->kind != detail::TomlValue::Array) throw ParseError("group.labels must be an array");
        for (const auto& item : v->items) af.labels.push_back(as_string(item, "group.labels[]"));
    }

    const auto& dets = need("rho.dets");
    const auto& turns = need("rho.turns");
    if (dets.kind != detail::TomlValue::Array || turns.kind != detail::TomlValue::Array)
        throw ParseError("rho.dets and rho.turns must be arrays");
    for (const auto& item : dets.items) {
        long d = as_int(item, "rho.dets[]");
        if (d != 1 && d != -1) throw ParseError("rho.dets entries must be 1 or -1");
        af.dets.push_back(static_cast<int>(d));
    }
    for (const auto& item : turns.items) {
        if (item.kind == detail::TomlValue::String)
            af.turns.push_back(item.str);
        else
            af.turns.push_back(std::to_string(item.num));
    }
    if (af.dets.size() != af.turns.size())
        throw ParseError("rho.dets and rho.turns must have the same length");
    if (af.dets.size() != af.generators.size())
        throw ParseError("rho needs exactly one image per group generator");
    return af;
}

/// Build the group described by the file.
inline GroupPtr group_from_action_file(const ActionFile& af, int max_order = kDefaultMaxOrder) {
    if (af.kind == "permutation") {
        if (af.degree < 1) throw ParseError("group.degree must be positive");
        std::vector<Perm> gens;
        for (const auto& s : af.generators) gens.push_back(parse_permutation(af.degree, s));
        std::vector<std::string> labels = af.labels;
        if (!labels.empty() && labels.size() != gens.size())
            throw ParseError("group.labels must match the number of generators");
        return FiniteGroup::from_permutations(af.degree, gens, labels, max_order);
    }
    if (af.order < 1) throw ParseError("group.order must be positive");
    if (static_cast<long>(af.table.size()) != static_cast<long>(af.order) * af.order)
        throw ParseError("group.table must list order*order entries");
    std::vector<uint16_t> table;
    for (long v : af.table) {
        if (v < 0 || v >= af.order) throw ParseError("group.table entry out of range");
        table.push_back(static_cast<uint16_t>(v));
    }
    std::vector<int> gens;
    for (const auto& s : af.generators) gens.push_back(std::stoi(s));
    std::vector<std::string> labels = af.labels;
    if (!labels.empty() && static_cast<int>(labels.size()) != af.order)
        throw ParseError("group.labels must list one label per element");
    return FiniteGroup::from_table(af.order, std::move(table), std::move(gens), std::move(labels),
                                   /*canonicalize_order=*/true, max_order);
}

/// Build the validated circle action described by the file.
inline CircleAction action_from_file(const ActionFile& af, int max_order = kDefaultMaxOrder) {
    GroupPtr g = group_from_action_file(af, max_order);
    std::vector<O2Element> images;
    for (size_t i = 0; i < af.dets.size(); ++i) {
        Rat t = parse_fraction(af.turns[i]);
        images.push_back(af.dets[i] == 1 ? O2Element::rotation(t) : O2Element::reflection(t));
    }
    return build_circle_action(g, images);
}

}  // namespace eqbundle
