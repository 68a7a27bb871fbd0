#pragma once
#include <string>
#include <vector>

#include "gg/errors.hpp"
#include "gg/group.hpp"

namespace gg {

// Order-20 groups <x,y | x^5, y^4, x^y = x^e> for e in {2,4}, realized as
// C5 ⋊ C4 with y acting by x -> x^e (e=2 faithful, e=4 kernel of order 2).
inline FiniteGroup make_g20(int e, const RunConfig& cfg = {}) {
    if (e != 2 && e != 4) fail("ParameterOutOfRange", "g20 exponent must be 2 or 4");
    FiniteGroup N = make_cyclic(5), H = make_cyclic(4);
    std::vector<std::vector<Elem>> action(4, std::vector<Elem>(5));
    long long ek = 1;
    for (int h = 0; h < 4; ++h) {
        for (int n = 0; n < 5; ++n) action[h][n] = static_cast<Elem>((n * ek) % 5);
        ek = (ek * e) % 5;
    }
    return semidirect_product(N, H, action, cfg);
}

namespace detail {
inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t p = s.find(sep, start);
        parts.push_back(s.substr(start, p - start));
        if (p == std::string::npos) break;
        start = p + 1;
    }
    return parts;
}
inline int to_int(const std::string& s) {
    try {
        std::size_t pos;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (...) {
        fail("ParameterOutOfRange", "bad integer parameter '" + s + "'");
    }
}
} // namespace detail

// Colon-delimited family spec; '*' composes direct products
// (e.g. "sym:3*cyclic:3").
inline FiniteGroup build_group(const std::string& spec, const RunConfig& cfg = {}) {
    auto factors = detail::split(spec, '*');
    FiniteGroup result = make_cyclic(1);
    bool first = true;
    for (const auto& f : factors) {
        auto parts = detail::split(f, ':');
        const std::string& fam = parts[0];
        auto param = [&](std::size_t i) {
            if (parts.size() <= i) fail("ParameterOutOfRange", "missing parameter in '" + f + "'");
            return detail::to_int(parts[i]);
        };
        FiniteGroup g = [&]() -> FiniteGroup {
            if (fam == "cyclic") return make_cyclic(static_cast<std::size_t>(param(1)), cfg);
            if (fam == "dihedral") return make_dihedral(static_cast<std::size_t>(param(1)), cfg);
            if (fam == "sym") return make_symmetric(param(1), cfg);
            if (fam == "alt") return make_alternating(param(1), cfg);
            if (fam == "klein") return make_elemab(2, 2);
            if (fam == "sl2") return make_sl2(param(1), cfg);
            if (fam == "elemab") return make_elemab(param(1), param(2));
            if (fam == "g20") return make_g20(param(1), cfg);
            fail("UnknownFamily", fam);
        }();
        result = first ? std::move(g) : direct_product(result, g, cfg);
        first = false;
    }
    return result;
}

// Desk-scale catalog used by the verification suites and the test gate.
inline std::vector<std::string> catalog_all() {
    return {
        "cyclic:1",        "cyclic:2",        "cyclic:3",        "cyclic:4",
        "cyclic:5",        "cyclic:6",        "cyclic:8",        "cyclic:9",
        "cyclic:10",       "cyclic:12",       "cyclic:100",      "klein",
        "elemab:2:3",      "elemab:3:2",      "elemab:5:2",      "dihedral:3",
        "dihedral:4",      "dihedral:5",      "dihedral:6",      "dihedral:7",
        "dihedral:11",     "sym:3",           "sym:4",           "alt:4",
        "alt:5",           "sl2:2",           "g20:2",           "g20:4",
        "cyclic:2*cyclic:4", "cyclic:6*cyclic:3", "sym:3*cyclic:3", "alt:4*cyclic:2",
        "sym:3*sym:3",     "cyclic:6*cyclic:6",
    };
}

} // namespace gg
