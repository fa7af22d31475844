#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "eqbundle/errors.hpp"

namespace eqbundle {

/// A permutation of {0, ..., degree-1}, stored as the image vector.
struct Perm {
    std::vector<int> img;

    int degree() const { return static_cast<int>(img.size()); }

    static Perm identity(int degree) {
        Perm p;
        p.img.resize(degree);
        for (int i = 0; i < degree; ++i) p.img[i] = i;
        return p;
    }

    /// (a*b)(x) = a(b(x))
    friend Perm operator*(const Perm& a, const Perm& b) {
        Perm r;
        r.img.resize(a.img.size());
        for (size_t i = 0; i < b.img.size(); ++i) r.img[i] = a.img[b.img[i]];
        return r;
    }

    Perm inverse() const {
        Perm r;
        r.img.resize(img.size());
        for (size_t i = 0; i < img.size(); ++i) r.img[img[i]] = static_cast<int>(i);
        return r;
    }

    bool operator==(const Perm& o) const { return img == o.img; }
    bool operator<(const Perm& o) const { return img < o.img; }
};

/// Validate that an image vector is a bijection on {0..degree-1}.
inline void check_bijection(const Perm& p) {
    std::vector<bool> seen(p.img.size(), false);
    for (int v : p.img) {
        if (v < 0 || v >= p.degree() || seen[v])
            throw NotBijective("permutation image is not a bijection");
        seen[v] = true;
    }
}

/// Parse 1-based cycle notation "(1 2 3)(4 5)" or a comma-separated image list
/// "2,3,1,5,4". "()" and the empty string denote the identity.
inline Perm parse_permutation(int degree, const std::string& text) {
    Perm p = Perm::identity(degree);
    const std::string& s = text;
    bool has_paren = s.find('(') != std::string::npos;
    if (!has_paren) {
        // image list (or empty = identity)
        bool blank = true;
        for (char c : s)
            if (!isspace(static_cast<unsigned char>(c))) blank = false;
        if (blank) return p;
        std::vector<int> img;
        std::string tok;
        std::istringstream is(s);
        while (std::getline(is, tok, ',')) {
            try {
                img.push_back(std::stoi(tok) - 1);
            } catch (...) {
                throw ParseError("bad permutation image entry '" + tok + "'");
            }
        }
        if (static_cast<int>(img.size()) != degree)
            throw ParseError("permutation image list has wrong length");
        p.img = img;
        check_bijection(p);
        return p;
    }
    size_t i = 0;
    while (i < s.size()) {
        if (isspace(static_cast<unsigned char>(s[i]))) {
            ++i;
            continue;
        }
        if (s[i] != '(') throw ParseError("expected '(' in cycle notation: " + text);
        ++i;
        std::vector<int> cycle;
        std::string tok;
        while (i < s.size() && s[i] != ')') {
            if (isspace(static_cast<unsigned char>(s[i])) || s[i] == ',') {
                if (!tok.empty()) {
                    cycle.push_back(std::stoi(tok));
                    tok.clear();
                }
            } else if (isdigit(static_cast<unsigned char>(s[i]))) {
                tok += s[i];
            } else {
                throw ParseError("bad character in cycle notation: " + text);
            }
            ++i;
        }
        if (i == s.size()) throw ParseError("unterminated cycle in: " + text);
        ++i;  // skip ')'
        if (!tok.empty()) cycle.push_back(std::stoi(tok));
        for (size_t k = 0; k < cycle.size(); ++k) {
            int from = cycle[k] - 1, to = cycle[(k + 1) % cycle.size()] - 1;
            if (from < 0 || from >= degree || to < 0 || to >= degree)
                throw ParseError("cycle entry out of range in: " + text);
            if (p.img[from] != from)
                throw NotBijective("point repeated across cycles in: " + text);
            p.img[from] = to;
        }
    }
    check_bijection(p);
    return p;
}

inline std::string cycle_string(const Perm& p) {
    std::ostringstream os;
    std::vector<bool> seen(p.img.size(), false);
    bool any = false;
    for (int start = 0; start < p.degree(); ++start) {
        if (seen[start] || p.img[start] == start) continue;
        any = true;
        os << "(";
        int x = start;
        bool first = true;
        do {
            seen[x] = true;
            if (!first) os << " ";
            os << (x + 1);
            first = false;
            x = p.img[x];
        } while (x != start);
        os << ")";
    }
    if (!any) return "()";
    return os.str();
}

}  // namespace eqbundle
