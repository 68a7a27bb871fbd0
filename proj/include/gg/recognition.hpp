#pragma once
#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gg/classgraph.hpp"
#include "gg/dirichlet.hpp"
#include "gg/generation.hpp"
#include "gg/lattice.hpp"

namespace gg {

// ---------------------------------------------------------------------------
// Component families.
//
// Lambda*(G): connected components of all Gamma*_{a,b}(G), 0 <= a <= b,
// a+b <= truncation_level, anonymized (twin-compressed, no labels).
// Lambda1*(G): components of Gamma*_{1,t}(G), t <= truncation_level - 1.
// Every recovery below reads only the anonymized components.

enum class FamilyKind { full, a1 };

struct ComponentFamily {
    std::vector<AnonComponent> components;
    int truncation_level = 0;
    FamilyKind kind = FamilyKind::full;
};

namespace detail {

struct CompKey {
    cpp_int tv, e;
    std::vector<std::pair<cpp_int, cpp_int>> degs; // sorted (degree, mult)
    std::string canon;
    bool operator<(const CompKey& o) const {
        if (tv != o.tv) return tv < o.tv;
        if (e != o.e) return e < o.e;
        if (degs != o.degs) return degs < o.degs;
        return canon < o.canon;
    }
};

inline CompKey comp_key(const AnonComponent& c) {
    CompKey k;
    k.tv = c.total_vertices();
    k.e = c.edge_count();
    for (std::size_t i = 0; i < c.classes(); ++i) k.degs.push_back({c.degree(i), c.mult[i]});
    std::sort(k.degs.begin(), k.degs.end());
    k.canon = c.invariant_string();
    return k;
}

} // namespace detail

inline void sort_family(ComponentFamily& F) {
    std::vector<std::pair<detail::CompKey, std::size_t>> keyed;
    for (std::size_t i = 0; i < F.components.size(); ++i)
        keyed.push_back({detail::comp_key(F.components[i]), i});
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<AnonComponent> out;
    for (auto& [k, i] : keyed) out.push_back(std::move(F.components[i]));
    F.components = std::move(out);
}

inline ComponentFamily lambda_star(const FiniteGroup& G, int max_level, const RunConfig& cfg = {}) {
    if (max_level < 1) fail("ParameterOutOfRange", "max_level must be >= 1");
    auto L = SubgroupLattice::compute(G, cfg);
    GenerationTable T(L);
    ComponentFamily F;
    F.kind = FamilyKind::full;
    F.truncation_level = max_level;
    for (int a = 0; 2 * a <= max_level; ++a)
        for (int b = a; a + b <= max_level; ++b) {
            if (a + b < 1) continue;
            for (auto& c : anon_components_from_lattice(L, T, a, b))
                F.components.push_back(std::move(c));
        }
    sort_family(F);
    return F;
}

inline ComponentFamily lambda1_star(const FiniteGroup& G, int max_t, const RunConfig& cfg = {}) {
    if (max_t < 0) fail("ParameterOutOfRange", "max_t must be >= 0");
    auto L = SubgroupLattice::compute(G, cfg);
    GenerationTable T(L);
    ComponentFamily F;
    F.kind = FamilyKind::a1;
    F.truncation_level = max_t + 1;
    for (int t = 0; t <= max_t; ++t) {
        // Gamma*_{1,0} is the same unlabeled graph as Gamma*_{0,1}
        int a = t == 0 ? 0 : 1, b = t == 0 ? 1 : t;
        for (auto& c : anon_components_from_lattice(L, T, a, b)) F.components.push_back(std::move(c));
    }
    sort_family(F);
    return F;
}

inline bool families_equal(const ComponentFamily& F1, const ComponentFamily& F2) {
    if (F1.components.size() != F2.components.size()) return false;
    // bucket by the refinement invariant, then match each bucket by exact
    // isomorphism tests (isomorphy is an equivalence, so greedy matching works)
    std::map<std::string, std::vector<const AnonComponent*>> b1, b2;
    for (const auto& c : F1.components) b1[c.invariant_string()].push_back(&c);
    for (const auto& c : F2.components) b2[c.invariant_string()].push_back(&c);
    if (b1.size() != b2.size()) return false;
    for (auto i1 = b1.begin(), i2 = b2.begin(); i1 != b1.end(); ++i1, ++i2) {
        if (i1->first != i2->first || i1->second.size() != i2->second.size()) return false;
        std::vector<char> used(i2->second.size(), 0);
        for (const auto* ca : i1->second) {
            bool found = false;
            for (std::size_t j = 0; j < i2->second.size(); ++j) {
                if (used[j]) continue;
                if (anon_isomorphic(*ca, *i2->second[j])) {
                    used[j] = 1;
                    found = true;
                    break;
                }
            }
            if (!found) return false;
        }
    }
    return true;
}

inline nlohmann::json family_to_json(const ComponentFamily& F) {
    nlohmann::json j;
    j["kind"] = F.kind == FamilyKind::full ? "full" : "a1";
    j["truncation_level"] = F.truncation_level;
    j["components"] = nlohmann::json::array();
    for (const auto& c : F.components) j["components"].push_back(c.to_json());
    return j;
}

inline ComponentFamily family_from_json(const nlohmann::json& j) {
    ComponentFamily F;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "full")
        F.kind = FamilyKind::full;
    else if (kind == "a1")
        F.kind = FamilyKind::a1;
    else
        fail("ParameterOutOfRange", "unknown family kind " + kind);
    F.truncation_level = j.at("truncation_level").get<int>();
    for (const auto& cj : j.at("components")) F.components.push_back(AnonComponent::from_json(cj));
    return F;
}

// ---------------------------------------------------------------------------
// Shared helpers.

namespace detail {

// star leaf counts, ascending: u[i] = phi(d + i) for a full family
inline std::vector<cpp_int> star_ladder(const ComponentFamily& F) {
    std::vector<cpp_int> u;
    for (const auto& c : F.components)
        if (c.is_star()) u.push_back(c.edge_count());
    std::sort(u.begin(), u.end());
    return u;
}

inline bool is_trivial_family(const ComponentFamily& F) {
    if (F.components.empty()) return false;
    for (const auto& c : F.components) {
        bool k2 = c.total_vertices() == 2 && c.edge_count() == 1 && c.loop_count() == 0;
        bool looped1 = c.total_vertices() == 1 && c.edge_count() == 0 && c.loop_count() == 1;
        if (!k2 && !looped1) return false;
    }
    return true;
}

// bipartite component: some vertex adjacent to the whole opposite side
inline bool has_dominating_vertex(const AnonComponent& c) {
    if (c.is_k2()) return true;
    std::vector<int> col;
    if (!c.two_color(col)) return false;
    cpp_int tot[2] = {0, 0};
    for (std::size_t i = 0; i < c.classes(); ++i) tot[col[i]] += c.mult[i];
    for (std::size_t i = 0; i < c.classes(); ++i)
        if (c.degree(i) == tot[1 - col[i]]) return true;
    return false;
}

inline int ceil_log(long long base, const cpp_int& v) {
    int k = 0;
    cpp_int acc = 1;
    while (acc < v) {
        acc *= base;
        ++k;
    }
    return k;
}

inline std::vector<long long> divisors_of(long long n) {
    std::vector<long long> d;
    for (long long i = 1; i * i <= n; ++i)
        if (n % i == 0) {
            d.push_back(i);
            if (i != n / i) d.push_back(n / i);
        }
    std::sort(d.begin(), d.end());
    return d;
}

// exact solve of sum_{m | n} a_m (n/m)^(d+i) = phis[i], i = 0..D-1
inline DirichletPolynomial solve_P(const std::vector<cpp_int>& phis, long long n, int d) {
    auto divs = divisors_of(n);
    std::size_t D = divs.size();
    if (phis.size() < D)
        fail("InsufficientTruncation", "need " + std::to_string(D) + " consecutive phi values");
    std::vector<std::vector<cpp_rational>> M(D, std::vector<cpp_rational>(D + 1));
    for (std::size_t i = 0; i < D; ++i) {
        for (std::size_t j = 0; j < D; ++j)
            M[i][j] = cpp_rational(int_pow(cpp_int(n / divs[j]), d + static_cast<long long>(i)));
        M[i][D] = cpp_rational(phis[i]);
    }
    for (std::size_t col = 0; col < D; ++col) {
        std::size_t piv = col;
        while (piv < D && M[piv][col] == 0) ++piv;
        if (piv == D) fail("SingularSystem", "zero pivot in P recovery");
        std::swap(M[piv], M[col]);
        for (std::size_t r = 0; r < D; ++r) {
            if (r == col || M[r][col] == 0) continue;
            cpp_rational f = M[r][col] / M[col][col];
            for (std::size_t j = col; j <= D; ++j) M[r][j] -= f * M[col][j];
        }
    }
    DirichletPolynomial P;
    P.group_order = n;
    for (std::size_t j = 0; j < D; ++j) {
        cpp_rational a = M[j][D] / M[j][j];
        if (boost::multiprecision::denominator(a) != 1)
            fail("SingularSystem", "non-integral coefficient in P recovery");
        cpp_int ai = boost::multiprecision::numerator(a);
        if (ai != 0) P.coeffs[divs[j]] = ai;
    }
    return P;
}

// Frattini deletion on the (1,t) component: remove the opposite-side vertices
// adjacent to the whole order-n side; |Frat| = weight of the order-n side
// classes left isolated.
inline long long frattini_from_component(const AnonComponent& c, long long n) {
    std::vector<int> col;
    if (!c.two_color(col)) fail("InconsistentFamily", "frattini component is not bipartite");
    cpp_int tot[2] = {0, 0};
    for (std::size_t i = 0; i < c.classes(); ++i) tot[col[i]] += c.mult[i];
    int small;
    if (tot[0] == n && tot[1] != n)
        small = 0;
    else if (tot[1] == n && tot[0] != n)
        small = 1;
    else
        fail("InconsistentFamily", "no unique side of the recovered order");
    std::vector<char> deleted(c.classes(), 0);
    for (std::size_t i = 0; i < c.classes(); ++i)
        if (col[i] != small && c.degree(i) == n) deleted[i] = 1;
    cpp_int frat = 0;
    for (std::size_t i = 0; i < c.classes(); ++i) {
        if (col[i] != small) continue;
        bool isolated = true;
        c.adj[i].for_each_set([&](std::size_t j) {
            if (!deleted[j]) isolated = false;
        });
        if (isolated) frat += c.mult[i];
    }
    return static_cast<long long>(frat);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Recovery operations on full Lambda* families.

struct CyclicReport {
    bool is_cyclic = false;
    long long order = 0;
};

// Star test: a star passes when no non-star bipartite component shares its
// edge count; only cyclic groups (and only they) have two passing stars.
inline CyclicReport recognize_cyclic(const ComponentFamily& F) {
    if (F.kind != FamilyKind::full) fail("ParameterOutOfRange", "recognize_cyclic needs Lambda*");
    if (F.truncation_level < 3)
        fail("InsufficientTruncation", "recognize_cyclic needs truncation >= 3");
    if (F.components.empty()) return {false, 0};
    if (detail::is_trivial_family(F)) return {true, 1};
    std::vector<cpp_int> star_edges, nsb_edges;
    for (const auto& c : F.components) {
        if (c.is_star())
            star_edges.push_back(c.edge_count());
        else if (c.is_bipartite())
            nsb_edges.push_back(c.edge_count());
    }
    int passing = 0;
    for (const auto& e : star_edges)
        if (std::find(nsb_edges.begin(), nsb_edges.end(), e) == nsb_edges.end()) ++passing;
    if (passing < 2) return {false, 0};
    std::sort(star_edges.begin(), star_edges.end());
    if (star_edges.size() < 3)
        fail("InsufficientTruncation", "cyclic order recovery needs three stars");
    const cpp_int& u2 = star_edges[2];
    const AnonComponent* hit = nullptr;
    for (const auto& c : F.components)
        if (!c.is_star() && c.is_bipartite() && c.edge_count() == u2) {
            if (hit) fail("InconsistentFamily", "multiple bipartite components with u_2 edges");
            hit = &c;
        }
    if (!hit) fail("InsufficientTruncation", "no bipartite component with u_2 edges");
    return {true, static_cast<long long>(hit->parts().first)};
}

struct KleinDihedralReport {
    bool matched = false;
    long long order = 0;
};

inline KleinDihedralReport recognize_klein_or_dihedral(const ComponentFamily& F) {
    if (F.kind != FamilyKind::full)
        fail("ParameterOutOfRange", "recognize_klein_or_dihedral needs Lambda*");
    bool any_tri = false, all_universal = true, has_k3 = false;
    for (const auto& c : F.components) {
        if (!c.has_3cycle()) continue;
        any_tri = true;
        if (c.total_vertices() == 3 && c.edge_count() == 3 && c.loop_count() == 0) has_k3 = true;
        if (!c.has_universal_vertex()) all_universal = false;
    }
    if (!any_tri) return {false, 0};
    if (has_k3) return {true, 4};
    if (!all_universal) return {false, 0};
    auto u = detail::star_ladder(F);
    if (u.empty()) return {false, 0};
    // u[0] = phi(2) = 3p(p-1) for the dihedral group of order 2p
    for (long long p = 2; cpp_int(3) * p * (p - 1) <= u[0]; ++p) {
        if (cpp_int(3) * p * (p - 1) != u[0]) continue;
        bool prime = p >= 2;
        for (long long q = 2; q * q <= p; ++q)
            if (p % q == 0) prime = false;
        if (prime) return {true, 2 * p};
        break;
    }
    return {false, 0};
}

inline int recover_d(const ComponentFamily& F) {
    auto cyc = recognize_cyclic(F);
    if (cyc.is_cyclic) return cyc.order == 1 ? 0 : 1;
    auto u = detail::star_ladder(F);
    if (u.size() < 2) fail("InsufficientTruncation", "recover_d needs two stars");
    const cpp_int& u1 = u[1];
    int x = 0;
    bool tri = false;
    for (const auto& c : F.components) {
        if (c.nu() != u1) continue;
        if (c.has_3cycle())
            tri = true;
        else if (c.is_bipartite() && !c.is_star())
            ++x;
    }
    return tri ? 2 * x + 1 : 2 * x;
}

inline int component_level(const ComponentFamily& F, const AnonComponent& c) {
    int d = recover_d(F);
    auto u = detail::star_ladder(F);
    if (u.empty()) fail("InsufficientTruncation", "no stars in the family");
    cpp_int nu = c.nu();
    if (nu <= u[0]) return d;
    for (std::size_t i = 1; i < u.size(); ++i)
        if (u[i] == nu) return d + static_cast<int>(i);
    fail("InsufficientTruncation", "component statistic above the star ladder");
}

inline std::pair<int, int> recover_ab(const ComponentFamily& F, const AnonComponent& c) {
    int d = recover_d(F);
    int r = component_level(F, c);
    if (r <= d) fail("LevelAtMinimum", "(a,b) is not determined at level d");
    if (c.is_star()) return {0, r};
    if (c.has_3cycle()) return {r / 2, r / 2};
    auto u = detail::star_ladder(F);
    const cpp_int& target = u[static_cast<std::size_t>(r - d)];
    cpp_int sp = c.parts().first;
    int k = 0;
    for (const auto& o : F.components) {
        if (o.nu() != target || o.is_star() || !o.is_bipartite()) continue;
        if (o.parts().first < sp) ++k;
    }
    return {k + 1, r - k - 1};
}

inline long long recover_order(const ComponentFamily& F) {
    auto cyc = recognize_cyclic(F);
    if (cyc.is_cyclic) return cyc.order;
    auto u = detail::star_ladder(F);
    if (u.size() < 2) fail("InsufficientTruncation", "recover_order needs two stars");
    std::optional<cpp_int> best;
    for (const auto& c : F.components) {
        if (c.nu() != u[1] || c.is_star() || !c.is_bipartite()) continue;
        cpp_int sp = c.parts().first;
        if (!best || sp < *best) best = sp;
    }
    if (!best) fail("InsufficientTruncation", "no level-(d+1) bipartite component");
    return static_cast<long long>(*best);
}

inline DirichletPolynomial recover_P(const ComponentFamily& F) {
    auto cyc = recognize_cyclic(F);
    if (cyc.is_cyclic && cyc.order == 1) {
        DirichletPolynomial P;
        P.coeffs[1] = 1;
        return P;
    }
    long long n = cyc.is_cyclic ? cyc.order : recover_order(F);
    int d = cyc.is_cyclic ? 1 : recover_d(F);
    return detail::solve_P(detail::star_ladder(F), n, d);
}

inline long long recover_frattini_order(const ComponentFamily& F) {
    auto cyc = recognize_cyclic(F);
    if (cyc.is_cyclic && cyc.order == 1) return 1;
    long long n = cyc.is_cyclic ? cyc.order : recover_order(F);
    int d = cyc.is_cyclic ? 1 : recover_d(F);
    // any t with every maximal subgroup t-generated works; ceil(log2 n) is the
    // provable bound, truncation-1 the available fallback (validated in tests)
    int t = std::max(2, detail::ceil_log(2, cpp_int(n)));
    t = std::min(t, F.truncation_level - 1);
    if (t < std::max(2, d))
        fail("InsufficientTruncation", "no usable level for Frattini recovery");
    auto u = detail::star_ladder(F);
    std::size_t idx = static_cast<std::size_t>(t + 1 - d);
    if (idx >= u.size())
        fail("InsufficientTruncation", "no star at the Frattini recovery level");
    const cpp_int& target = u[idx];
    const AnonComponent* best = nullptr;
    cpp_int best_sp;
    for (const auto& c : F.components) {
        if (c.nu() != target || c.is_star() || !c.is_bipartite()) continue;
        cpp_int sp = c.parts().first;
        if (!best || sp < best_sp) {
            best = &c;
            best_sp = sp;
        }
    }
    if (!best) fail("InsufficientTruncation", "no bipartite component at the Frattini level");
    return detail::frattini_from_component(*best, n);
}

// ---------------------------------------------------------------------------
// Nilpotency.

// the unique multiset of primes with prod (1 - 1/p_i) = q, if any
inline std::optional<std::vector<long long>> unfat_factor(const cpp_rational& q0) {
    if (q0 <= 0 || q0 > 1) return std::nullopt;
    cpp_rational q = q0;
    std::vector<long long> ps;
    for (int iter = 0; iter < 4096; ++iter) {
        if (q == 1) {
            std::sort(ps.begin(), ps.end());
            return ps;
        }
        cpp_int den = boost::multiprecision::denominator(q);
        if (den > cpp_int(std::numeric_limits<long long>::max())) return std::nullopt;
        // the numerator contributions (p_i - 1) are never divisible by the
        // largest denominator prime, so peel that prime first
        long long d = static_cast<long long>(den), p = 0;
        for (long long f = 2; f * f <= d; ++f)
            while (d % f == 0) {
                p = f;
                d /= f;
            }
        if (d > 1) p = d;
        if (p < 2) return std::nullopt;
        q *= cpp_rational(p, p - 1);
        ps.push_back(p);
        if (q > 1) return std::nullopt;
    }
    return std::nullopt;
}

namespace detail {

// criterion on Gamma*_{1,d}: every opposite-side degree delta must satisfy
// delta/n = prod (1 - 1/p) over distinct primes
inline bool degrees_unfat_ok(const AnonComponent& c, long long n) {
    std::vector<int> col;
    if (!c.two_color(col)) fail("InconsistentFamily", "level-(d+1) component is not bipartite");
    cpp_int tot[2] = {0, 0};
    for (std::size_t i = 0; i < c.classes(); ++i) tot[col[i]] += c.mult[i];
    int small;
    if (tot[0] == n && tot[1] != n)
        small = 0;
    else if (tot[1] == n && tot[0] != n)
        small = 1;
    else
        fail("InconsistentFamily", "no unique side of the recovered order");
    for (std::size_t i = 0; i < c.classes(); ++i) {
        if (col[i] == small) continue;
        auto f = unfat_factor(cpp_rational(c.degree(i), cpp_int(n)));
        if (!f) return false;
        for (std::size_t j = 1; j < f->size(); ++j)
            if ((*f)[j] == (*f)[j - 1]) return false;
    }
    return true;
}

} // namespace detail

inline bool decide_nilpotent(const ComponentFamily& F) {
    auto cyc = recognize_cyclic(F);
    if (cyc.is_cyclic) return true;
    long long n = recover_order(F);
    auto P = recover_P(F);
    if (!dp_q_factorization(P)) return false;
    auto u = detail::star_ladder(F);
    const AnonComponent* best = nullptr;
    cpp_int best_sp;
    for (const auto& c : F.components) {
        if (c.nu() != u[1] || c.is_star() || !c.is_bipartite()) continue;
        cpp_int sp = c.parts().first;
        if (!best || sp < best_sp) {
            best = &c;
            best_sp = sp;
        }
    }
    if (!best) fail("InsufficientTruncation", "no level-(d+1) bipartite component");
    return detail::degrees_unfat_ok(*best, n);
}

// ---------------------------------------------------------------------------
// The Lambda1* pipeline.

struct LsttResult {
    long long order = 0;
    int d = 0;
    DirichletPolynomial P;
    long long frattini_order = 0;
    bool nilpotent = false;
};

inline LsttResult lstt_pipeline(const ComponentFamily& F) {
    if (F.kind != FamilyKind::a1) fail("ParameterOutOfRange", "lstt_pipeline needs Lambda1*");
    if (F.components.empty()) fail("InsufficientTruncation", "empty family");
    int max_t = F.truncation_level - 1;
    LsttResult R;
    if (detail::is_trivial_family(F)) {
        R.order = 1;
        R.d = 0;
        R.P.coeffs[1] = 1;
        R.frattini_order = 1;
        R.nilpotent = true;
        return R;
    }
    bool cyclic = false;
    for (const auto& c : F.components)
        if (c.has_degree1()) cyclic = true;

    std::vector<cpp_int> phis; // phis[i] = phi(d + i)
    std::vector<const AnonComponent*> tails; // Gamma*_{1,d}, Gamma*_{1,d+1}, ...
    if (cyclic) {
        R.d = 1;
        const AnonComponent* star = nullptr;
        const AnonComponent* nonbip = nullptr;
        for (const auto& c : F.components) {
            if (c.is_star()) {
                if (star) fail("InconsistentFamily", "two stars in a cyclic Lambda1* family");
                star = &c;
            } else if (!c.is_bipartite()) {
                if (nonbip) fail("InconsistentFamily", "two non-bipartite components");
                nonbip = &c;
            } else {
                tails.push_back(&c);
            }
        }
        if (!star || !nonbip)
            fail("InsufficientTruncation", "cyclic Lambda1* needs levels 1 and 2");
        if (tails.empty()) fail("InsufficientTruncation", "cyclic Lambda1* needs a level >= 3");
        std::sort(tails.begin(), tails.end(),
                  [](const AnonComponent* a, const AnonComponent* b) { return a->nu() < b->nu(); });
        cpp_int sp = tails[0]->parts().first;
        for (const auto* t : tails) {
            if (!detail::has_dominating_vertex(*t))
                fail("InconsistentFamily", "tail without a dominating vertex");
            if (t->parts().first != sp) fail("InconsistentFamily", "tails disagree on the order");
        }
        R.order = static_cast<long long>(sp);
        phis.push_back(star->edge_count()); // phi(1)
        // phi(2) = 2e + l of Gamma*_{1,1} directly: for |G| = 2 that graph has
        // no 3-cycle, so nu() would fall back to e
        phis.push_back(2 * nonbip->edge_count() + nonbip->loop_count());
        for (const auto* t : tails) phis.push_back(t->nu());
        R.nilpotent = true;
    } else {
        // tails = the maximal nu-suffix of bipartite components that have a
        // dominating vertex and agree on the smaller part; heads = the rest
        std::vector<const AnonComponent*> order;
        for (const auto& c : F.components) order.push_back(&c);
        std::sort(order.begin(), order.end(),
                  [](const AnonComponent* a, const AnonComponent* b) { return a->nu() < b->nu(); });
        auto tail_shaped = [&](const AnonComponent* c) {
            return c->is_bipartite() && !c->is_star() && detail::has_dominating_vertex(*c);
        };
        if (!tail_shaped(order.back()))
            fail("InsufficientTruncation", "no tail component in the family");
        cpp_int sp = order.back()->parts().first;
        std::size_t cut = order.size();
        while (cut > 0 && tail_shaped(order[cut - 1]) && order[cut - 1]->parts().first == sp)
            --cut;
        tails.assign(order.begin() + static_cast<long long>(cut), order.end());
        std::vector<const AnonComponent*> heads(order.begin(),
                                                order.begin() + static_cast<long long>(cut));
        if (tails.size() < 4)
            fail("InsufficientTruncation", "need four tail components for the estimates");
        if (heads.empty()) fail("InconsistentFamily", "no head components");
        long long n = static_cast<long long>(sp);
        // three consecutive consistent ratio estimates, converging from above
        for (std::size_t j = tails.size() - 3; j < tails.size(); ++j) {
            cpp_int fl = tails[j]->nu() / tails[j - 1]->nu();
            if (fl != n) fail("InconsistentFamily", "order ratio estimates disagree");
        }
        // three consecutive consistent log estimates of d
        int d = -1;
        for (std::size_t j = tails.size() - 3; j < tails.size(); ++j) {
            int dj = detail::ceil_log(n, tails[j]->nu()) - static_cast<int>(j) - 1;
            if (d == -1)
                d = dj;
            else if (d != dj)
                fail("InconsistentFamily", "d estimates disagree");
        }
        if (d < 2) fail("InconsistentFamily", "non-cyclic family with d < 2");
        R.order = n;
        R.d = d;
        cpp_int head_nu = 0;
        for (const auto* h : heads) head_nu += h->nu();
        phis.push_back(head_nu); // phi(d)
        for (const auto* t : tails) phis.push_back(t->nu());
        // sanity: the family must not extend past the declared truncation
        if (d + static_cast<int>(tails.size()) - 1 != max_t)
            fail("InconsistentFamily", "tail count disagrees with the truncation level");
    }
    R.P = detail::solve_P(phis, R.order, R.d);
    if (!cyclic) R.nilpotent = dp_q_factorization(R.P).has_value() &&
                               detail::degrees_unfat_ok(*tails[0], R.order);
    // Frattini from Gamma*_{1,t}: tails hold t = d (t = 2 when cyclic) onward
    int t = std::max(2, detail::ceil_log(2, cpp_int(R.order)));
    t = std::min(t, max_t);
    if (t < std::max(2, R.d))
        fail("InsufficientTruncation", "no usable level for Frattini recovery");
    std::size_t tidx = static_cast<std::size_t>(t - (cyclic ? 2 : R.d));
    if (tidx >= tails.size())
        fail("InsufficientTruncation", "no tail at the Frattini recovery level");
    R.frattini_order = detail::frattini_from_component(*tails[tidx], R.order);
    return R;
}

} // namespace gg
