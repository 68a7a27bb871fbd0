#pragma once
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include <json.hpp>

#include "gg/bitset.hpp"
#include "gg/config.hpp"
#include "gg/errors.hpp"

namespace gg {

using Elem = std::uint16_t;

// Finite group as an immutable Cayley table over element indices 0..n-1.
// Identity and inverses are derived; Latin-square/identity/inverse checks are
// always performed, full associativity only up to cfg.assoc_check_limit (or
// unconditionally trusted for groups built by the verified constructors).
class FiniteGroup {
public:
    static FiniteGroup from_table(const std::vector<std::vector<int>>& table,
                                  const RunConfig& cfg = {},
                                  std::vector<std::string> names = {}) {
        std::size_t n = table.size();
        if (n == 0) fail("NotAGroup", "empty table");
        if (n > cfg.max_group_order)
            throw CapExceeded("group order " + std::to_string(n) + " exceeds max_group_order");
        FiniteGroup g;
        g.n_ = n;
        g.t_.resize(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            if (table[i].size() != n) fail("NotAGroup", "table is not square");
            for (std::size_t j = 0; j < n; ++j) {
                int v = table[i][j];
                if (v < 0 || static_cast<std::size_t>(v) >= n)
                    fail("NotAGroup", "entry out of range at (" + std::to_string(i) + "," +
                                          std::to_string(j) + ")");
                g.t_[i * n + j] = static_cast<Elem>(v);
            }
        }
        g.names_ = std::move(names);
        g.validate(cfg, /*check_assoc=*/n <= cfg.assoc_check_limit);
        if (n > cfg.assoc_check_limit) g.spot_check_assoc();
        return g;
    }

    // For constructors whose multiplication is associative by construction.
    static FiniteGroup trusted(std::size_t n, std::vector<Elem> flat_table,
                               std::vector<std::string> names = {}) {
        FiniteGroup g;
        g.n_ = n;
        g.t_ = std::move(flat_table);
        g.names_ = std::move(names);
        g.validate({}, /*check_assoc=*/false);
        return g;
    }

    std::size_t order() const { return n_; }
    Elem mul(Elem a, Elem b) const { return t_[static_cast<std::size_t>(a) * n_ + b]; }
    Elem identity() const { return id_; }
    Elem inv(Elem a) const { return inv_[a]; }

    Elem conj(Elem a, Elem g) const { return mul(mul(inv(g), a), g); } // a^g

    Elem pow(Elem a, long long e) const {
        if (e < 0) return pow(inv(a), -e);
        Elem r = id_, b = a;
        while (e > 0) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }

    int elem_order(Elem a) const {
        int k = 1;
        Elem x = a;
        while (x != id_) {
            x = mul(x, a);
            ++k;
        }
        return k;
    }

    bool is_abelian() const {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j)
                if (t_[i * n_ + j] != t_[j * n_ + i]) return false;
        return true;
    }

    const std::vector<std::string>& names() const { return names_; }
    std::string name_of(Elem x) const {
        if (x < names_.size() && !names_[x].empty()) return names_[x];
        return "g" + std::to_string(x);
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["order"] = n_;
        std::vector<std::vector<int>> tbl(n_, std::vector<int>(n_));
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t k = 0; k < n_; ++k) tbl[i][k] = t_[i * n_ + k];
        j["table"] = tbl;
        if (!names_.empty()) j["names"] = names_;
        return j;
    }

    static FiniteGroup from_json(const nlohmann::json& j, const RunConfig& cfg = {}) {
        if (!j.contains("order") || !j.contains("table")) fail("NotAGroup", "missing order/table");
        auto tbl = j.at("table").get<std::vector<std::vector<int>>>();
        if (tbl.size() != j.at("order").get<std::size_t>())
            fail("NotAGroup", "order does not match table size");
        std::vector<std::string> names;
        if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
        return from_table(tbl, cfg, std::move(names));
    }

private:
    FiniteGroup() = default;

    void validate(const RunConfig& cfg, bool check_assoc) {
        (void)cfg;
        std::size_t n = n_;
        // Latin square
        std::vector<char> seen(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::fill(seen.begin(), seen.end(), 0);
            for (std::size_t j = 0; j < n; ++j) {
                Elem v = t_[i * n + j];
                if (seen[v]) fail("NotAGroup", "row " + std::to_string(i) + " is not a permutation");
                seen[v] = 1;
            }
        }
        for (std::size_t j = 0; j < n; ++j) {
            std::fill(seen.begin(), seen.end(), 0);
            for (std::size_t i = 0; i < n; ++i) {
                Elem v = t_[i * n + j];
                if (seen[v])
                    fail("NotAGroup", "column " + std::to_string(j) + " is not a permutation");
                seen[v] = 1;
            }
        }
        // identity
        bool found = false;
        for (std::size_t e = 0; e < n && !found; ++e) {
            bool ok = true;
            for (std::size_t x = 0; x < n && ok; ++x)
                ok = t_[e * n + x] == x && t_[x * n + e] == x;
            if (ok) {
                id_ = static_cast<Elem>(e);
                found = true;
            }
        }
        if (!found) fail("NotAGroup", "no two-sided identity");
        // inverses
        inv_.assign(n, 0);
        for (std::size_t a = 0; a < n; ++a) {
            bool got = false;
            for (std::size_t b = 0; b < n; ++b) {
                if (t_[a * n + b] == id_ && t_[b * n + a] == id_) {
                    inv_[a] = static_cast<Elem>(b);
                    got = true;
                    break;
                }
            }
            if (!got) fail("NotAGroup", "element " + std::to_string(a) + " has no inverse");
        }
        if (check_assoc) {
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t y = 0; y < n; ++y)
                    for (std::size_t z = 0; z < n; ++z)
                        if (t_[t_[x * n + y] * n + z] != t_[x * n + t_[y * n + z]])
                            fail("NotAGroup", "associativity fails at (" + std::to_string(x) + "," +
                                                  std::to_string(y) + "," + std::to_string(z) + ")");
        }
    }

    // Randomized associativity spot check for large imported tables.
    void spot_check_assoc() const {
        std::uint64_t s = 0x9e3779b97f4a7c15ull;
        auto rnd = [&]() {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            return static_cast<std::size_t>(s % n_);
        };
        for (int k = 0; k < 20000; ++k) {
            auto x = static_cast<Elem>(rnd()), y = static_cast<Elem>(rnd()),
                 z = static_cast<Elem>(rnd());
            if (mul(mul(x, y), z) != mul(x, mul(y, z)))
                fail("NotAGroup", "associativity spot check failed");
        }
    }

    std::size_t n_ = 0;
    std::vector<Elem> t_;
    Elem id_ = 0;
    std::vector<Elem> inv_;
    std::vector<std::string> names_;
};

// ---------------------------------------------------------------------------
// Builtin families.  Canonical element orderings are documented per family;
// identity is always index 0.

inline FiniteGroup make_cyclic(std::size_t n, const RunConfig& cfg = {}) {
    if (n == 0) fail("ParameterOutOfRange", "cyclic order must be positive");
    if (n > cfg.max_group_order) throw CapExceeded("cyclic order exceeds max_group_order");
    std::vector<Elem> t(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t[i * n + j] = static_cast<Elem>((i + j) % n);
    return FiniteGroup::trusted(n, std::move(t));
}

// Dihedral group of order 2m; element i + m*j encodes r^i s^j.
inline FiniteGroup make_dihedral(std::size_t m, const RunConfig& cfg = {}) {
    if (m == 0) fail("ParameterOutOfRange", "dihedral parameter must be positive");
    std::size_t n = 2 * m;
    if (n > cfg.max_group_order) throw CapExceeded("dihedral order exceeds max_group_order");
    std::vector<Elem> t(n * n);
    auto idx = [m](std::size_t i, std::size_t j) { return i + m * j; };
    for (std::size_t i1 = 0; i1 < m; ++i1)
        for (std::size_t j1 = 0; j1 < 2; ++j1)
            for (std::size_t i2 = 0; i2 < m; ++i2)
                for (std::size_t j2 = 0; j2 < 2; ++j2) {
                    // (r^i1 s^j1)(r^i2 s^j2) = r^(i1 + (-1)^j1 i2) s^(j1+j2)
                    std::size_t i = j1 ? (i1 + m - i2 % m) % m : (i1 + i2) % m;
                    std::size_t j = (j1 + j2) % 2;
                    t[idx(i1, j1) * n + idx(i2, j2)] = static_cast<Elem>(idx(i, j));
                }
    return FiniteGroup::trusted(n, std::move(t));
}

namespace detail {

inline std::vector<std::vector<int>> permutations_sorted(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> all;
    do all.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return all;
}

inline bool perm_even(const std::vector<int>& p) {
    int inv = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inv;
    return inv % 2 == 0;
}

// Group of permutations under composition (p*q)(i) = p[q[i]], identity first
// (identity is lexicographically least so sorted order already has it at 0).
inline FiniteGroup perm_group(const std::vector<std::vector<int>>& perms, const RunConfig& cfg) {
    std::size_t n = perms.size();
    if (n > cfg.max_group_order)
        throw CapExceeded("permutation group order " + std::to_string(n) + " exceeds cap");
    std::map<std::vector<int>, Elem> index;
    for (std::size_t i = 0; i < n; ++i) index[perms[i]] = static_cast<Elem>(i);
    std::vector<Elem> t(n * n);
    std::vector<int> c(perms[0].size());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < c.size(); ++k) c[k] = perms[i][perms[j][k]];
            auto it = index.find(c);
            if (it == index.end()) fail("NotAGroup", "permutation set not closed");
            t[i * n + j] = it->second;
        }
    return FiniteGroup::trusted(n, std::move(t));
}

} // namespace detail

inline FiniteGroup make_symmetric(int n, const RunConfig& cfg = {}) {
    if (n < 1 || n > 8) fail("ParameterOutOfRange", "sym:n supports 1 <= n <= 8");
    return detail::perm_group(detail::permutations_sorted(n), cfg);
}

inline FiniteGroup make_alternating(int n, const RunConfig& cfg = {}) {
    if (n < 1 || n > 8) fail("ParameterOutOfRange", "alt:n supports 1 <= n <= 8");
    auto all = detail::permutations_sorted(n);
    std::vector<std::vector<int>> even;
    for (auto& p : all)
        if (detail::perm_even(p)) even.push_back(p);
    return detail::perm_group(even, cfg);
}

// Elementary abelian p^k; element index = sum of digit_i * p^i.
inline FiniteGroup make_elemab(int p, int k) {
    auto is_prime = [](int q) {
        if (q < 2) return false;
        for (int d = 2; d * d <= q; ++d)
            if (q % d == 0) return false;
        return true;
    };
    if (!is_prime(p)) fail("ParameterOutOfRange", "elemab base must be prime");
    if (k < 1) fail("ParameterOutOfRange", "elemab exponent must be positive");
    double sz = std::pow(static_cast<double>(p), k);
    if (sz > 20000) fail("ParameterOutOfRange", "elemab order too large");
    std::size_t n = 1;
    for (int i = 0; i < k; ++i) n *= static_cast<std::size_t>(p);
    std::vector<Elem> t(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            std::size_t x = a, y = b, r = 0, m = 1;
            for (int i = 0; i < k; ++i) {
                r += ((x % p + y % p) % p) * m;
                x /= p;
                y /= p;
                m *= static_cast<std::size_t>(p);
            }
            t[a * n + b] = static_cast<Elem>(r);
        }
    return FiniteGroup::trusted(n, std::move(t));
}

// SL(2,q) for q in {2,4}.  Matrices (a,b;c,d) over GF(q) with det 1,
// enumerated in lexicographic (a,b,c,d) order, identity moved to index 0.
inline FiniteGroup make_sl2(int q, const RunConfig& cfg = {}) {
    if (q != 2 && q != 4) fail("ParameterOutOfRange", "sl2:q supports q in {2,4}");
    // GF(4) = {0,1,w,w+1} with w^2 = w+1; GF(2) is the prefix {0,1}.
    static const int mul4[4][4] = {{0, 0, 0, 0}, {0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}};
    auto fmul = [&](int a, int b) { return mul4[a][b]; };
    auto fadd = [&](int a, int b) { return a ^ b; };
    std::vector<std::array<int, 4>> mats;
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            for (int c = 0; c < q; ++c)
                for (int d = 0; d < q; ++d)
                    if (fadd(fmul(a, d), fmul(b, c)) == 1) mats.push_back({a, b, c, d});
    std::array<int, 4> id{1, 0, 0, 1};
    auto it = std::find(mats.begin(), mats.end(), id);
    std::iter_swap(mats.begin(), it);
    std::map<std::array<int, 4>, Elem> index;
    for (std::size_t i = 0; i < mats.size(); ++i) index[mats[i]] = static_cast<Elem>(i);
    std::size_t n = mats.size();
    if (n > cfg.max_group_order) throw CapExceeded("sl2 order exceeds cap");
    std::vector<Elem> t(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto &A = mats[i], &B = mats[j];
            std::array<int, 4> C{fadd(fmul(A[0], B[0]), fmul(A[1], B[2])),
                                 fadd(fmul(A[0], B[1]), fmul(A[1], B[3])),
                                 fadd(fmul(A[2], B[0]), fmul(A[3], B[2])),
                                 fadd(fmul(A[2], B[1]), fmul(A[3], B[3]))};
            t[i * n + j] = index.at(C);
        }
    return FiniteGroup::trusted(n, std::move(t));
}

// ---------------------------------------------------------------------------
// Products and quotients.

// Pairs (a,b) in row-major order: index = a*|H| + b.
inline FiniteGroup direct_product(const FiniteGroup& G, const FiniteGroup& H,
                                  const RunConfig& cfg = {}) {
    std::size_t n = G.order() * H.order();
    if (n > cfg.max_group_order) throw CapExceeded("direct product order exceeds cap");
    std::vector<Elem> t(n * n);
    std::size_t hn = H.order();
    for (std::size_t a1 = 0; a1 < G.order(); ++a1)
        for (std::size_t b1 = 0; b1 < hn; ++b1)
            for (std::size_t a2 = 0; a2 < G.order(); ++a2)
                for (std::size_t b2 = 0; b2 < hn; ++b2)
                    t[(a1 * hn + b1) * n + (a2 * hn + b2)] = static_cast<Elem>(
                        G.mul(static_cast<Elem>(a1), static_cast<Elem>(a2)) * hn +
                        H.mul(static_cast<Elem>(b1), static_cast<Elem>(b2)));
    return FiniteGroup::trusted(n, std::move(t));
}

// Semidirect product N ⋊ H.  Elements are pairs (h,n) with index h*|N|+n and
// (h1,n1)(h2,n2) = (h1 h2, action[h2](n1) · n2): action[h] is "conjugation by
// h" acting on N on the right, so the required homomorphism law is
// action[h1 h2] = action[h2] ∘ action[h1] (verified exhaustively, as is
// automorphy of each action[h]).
inline FiniteGroup semidirect_product(const FiniteGroup& N, const FiniteGroup& H,
                                      const std::vector<std::vector<Elem>>& action,
                                      const RunConfig& cfg = {}) {
    std::size_t nn = N.order(), hn = H.order();
    if (action.size() != hn) fail("ActionNotHomomorphism", "action must have one map per H element");
    for (std::size_t h = 0; h < hn; ++h) {
        if (action[h].size() != nn)
            fail("ActionNotHomomorphism", "action map has wrong domain size");
        std::vector<char> seen(nn, 0);
        for (auto v : action[h]) {
            if (v >= nn || seen[v]) fail("ActionNotHomomorphism", "action map is not a bijection");
            seen[v] = 1;
        }
        if (action[h][N.identity()] != N.identity())
            fail("ActionNotHomomorphism", "action does not fix the identity");
        for (std::size_t a = 0; a < nn; ++a)
            for (std::size_t b = 0; b < nn; ++b)
                if (action[h][N.mul(static_cast<Elem>(a), static_cast<Elem>(b))] !=
                    N.mul(action[h][a], action[h][b]))
                    fail("ActionNotHomomorphism", "action map is not an automorphism");
    }
    if (action[H.identity()] !=
        [&] {
            std::vector<Elem> e(nn);
            std::iota(e.begin(), e.end(), 0);
            return e;
        }())
        fail("ActionNotHomomorphism", "identity must act trivially");
    for (std::size_t h1 = 0; h1 < hn; ++h1)
        for (std::size_t h2 = 0; h2 < hn; ++h2) {
            Elem h12 = H.mul(static_cast<Elem>(h1), static_cast<Elem>(h2));
            for (std::size_t x = 0; x < nn; ++x)
                if (action[h12][x] != action[h2][action[h1][x]])
                    fail("ActionNotHomomorphism", "action is not a homomorphism into Aut(N)");
        }
    std::size_t n = nn * hn;
    if (n > cfg.max_group_order) throw CapExceeded("semidirect product order exceeds cap");
    std::vector<Elem> t(n * n);
    for (std::size_t h1 = 0; h1 < hn; ++h1)
        for (std::size_t n1 = 0; n1 < nn; ++n1)
            for (std::size_t h2 = 0; h2 < hn; ++h2)
                for (std::size_t n2 = 0; n2 < nn; ++n2) {
                    Elem h = H.mul(static_cast<Elem>(h1), static_cast<Elem>(h2));
                    Elem m = N.mul(action[h2][n1], static_cast<Elem>(n2));
                    t[(h1 * nn + n1) * n + (h2 * nn + n2)] =
                        static_cast<Elem>(static_cast<std::size_t>(h) * nn + m);
                }
    return FiniteGroup::trusted(n, std::move(t));
}

// Closure of a subset (as members bitset) — the subgroup it generates.
inline DynBitset subgroup_closure(const FiniteGroup& G, const std::vector<Elem>& gens) {
    DynBitset in(G.order());
    std::vector<Elem> elems;
    in.set(G.identity());
    elems.push_back(G.identity());
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (Elem g : gens) {
            Elem x = G.mul(elems[i], g);
            if (!in.test(x)) {
                in.set(x);
                elems.push_back(x);
            }
        }
    return in;
}

inline bool is_subgroup(const FiniteGroup& G, const DynBitset& S) {
    if (!S.test(G.identity())) return false;
    bool ok = true;
    S.for_each_set([&](std::size_t a) {
        if (!ok) return;
        S.for_each_set([&](std::size_t b) {
            if (!ok) return;
            if (!S.test(G.mul(static_cast<Elem>(a), static_cast<Elem>(b)))) ok = false;
        });
    });
    return ok;
}

inline bool is_normal(const FiniteGroup& G, const DynBitset& S) {
    bool ok = true;
    S.for_each_set([&](std::size_t a) {
        if (!ok) return;
        for (std::size_t g = 0; g < G.order() && ok; ++g)
            if (!S.test(G.conj(static_cast<Elem>(a), static_cast<Elem>(g)))) ok = false;
    });
    return ok;
}

// Quotient G/N; cosets ordered by least member (identity coset first).
inline FiniteGroup quotient(const FiniteGroup& G, const DynBitset& N, const RunConfig& cfg = {}) {
    if (!is_subgroup(G, N)) fail("NotNormal", "N is not a subgroup");
    if (!is_normal(G, N)) fail("NotNormal", "N is not normal in G");
    std::size_t n = G.order();
    std::vector<int> coset_of(n, -1);
    std::vector<Elem> reps;
    for (std::size_t g = 0; g < n; ++g) {
        if (coset_of[g] != -1) continue;
        int c = static_cast<int>(reps.size());
        reps.push_back(static_cast<Elem>(g)); // least member, scan order is ascending
        N.for_each_set([&](std::size_t h) {
            coset_of[G.mul(static_cast<Elem>(g), static_cast<Elem>(h))] = c;
        });
    }
    std::size_t q = reps.size();
    (void)cfg;
    std::vector<Elem> t(q * q);
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < q; ++j)
            t[i * q + j] = static_cast<Elem>(coset_of[G.mul(reps[i], reps[j])]);
    return FiniteGroup::trusted(q, std::move(t));
}

} // namespace gg
