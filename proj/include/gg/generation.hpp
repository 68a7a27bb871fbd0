#pragma once
#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "gg/config.hpp"
#include "gg/dirichlet.hpp"
#include "gg/errors.hpp"
#include "gg/gencontext.hpp"
#include "gg/group.hpp"
#include "gg/lattice.hpp"

namespace gg {

inline cpp_int int_pow(cpp_int b, long long e) {
    cpp_int r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// phi_G(t) by Hall's Möbius formula: sum over subgroups of mu(H) |H|^t.
inline cpp_int phi_hall(const SubgroupLattice& L, long long t) {
    cpp_int s = 0;
    for (int i = 0; i < L.size(); ++i)
        s += cpp_int(L.node(i).mobius) * int_pow(cpp_int(L.node(i).order), t);
    return s;
}

// phi_G(t) by pruned enumeration: DP over (closure of prefix, remaining
// length); the count below a prefix depends only on its closure, and once the
// closure is G all |G|^remaining completions count.  Uses only closure tests
// (no Möbius data) — the independent oracle against phi_hall.
inline cpp_int phi_enumerate(const FiniteGroup& G, long long t, SubgroupRegistry& reg,
                             const RunConfig& cfg = {}) {
    if (t < 0) fail("ParameterOutOfRange", "t must be non-negative");
    cpp_int space = int_pow(cpp_int(G.order()), t);
    if (space > cfg.max_vertices)
        throw CapExceeded("|G|^t = " + space.str() + " exceeds max_vertices");
    std::unordered_map<std::uint64_t, cpp_int> memo;
    auto key = [](int id, long long rem) {
        return (static_cast<std::uint64_t>(id) << 32) | static_cast<std::uint64_t>(rem);
    };
    std::function<cpp_int(int, long long)> count = [&](int id, long long rem) -> cpp_int {
        if (id == reg.full_id()) return int_pow(cpp_int(G.order()), rem);
        if (rem == 0) return 0;
        auto it = memo.find(key(id, rem));
        if (it != memo.end()) return it->second;
        cpp_int s = 0;
        for (std::size_t g = 0; g < G.order(); ++g)
            s += count(reg.extend(id, static_cast<Elem>(g)), rem - 1);
        memo.emplace(key(id, rem), s);
        return s;
    };
    return count(reg.trivial_id(), t);
}

inline cpp_int phi_enumerate(const FiniteGroup& G, long long t, const RunConfig& cfg = {}) {
    SubgroupRegistry reg(G);
    return phi_enumerate(G, t, reg, cfg);
}

// d(G): least t with a generating t-tuple; 0 for the trivial group.
inline int min_generators(const FiniteGroup& G, SubgroupRegistry& reg) {
    if (G.order() == 1) return 0;
    for (int t = 1;; ++t) {
        // DFS with memo: can subgroup id reach G with rem more elements?
        std::unordered_map<std::uint64_t, bool> memo;
        std::function<bool(int, int)> reach = [&](int id, int rem) -> bool {
            if (id == reg.full_id()) return true;
            if (rem == 0) return false;
            std::uint64_t k = (static_cast<std::uint64_t>(id) << 32) |
                              static_cast<std::uint64_t>(rem);
            auto it = memo.find(k);
            if (it != memo.end()) return it->second;
            bool ok = false;
            for (std::size_t g = 0; g < G.order() && !ok; ++g)
                ok = reach(reg.extend(id, static_cast<Elem>(g)), rem - 1);
            memo.emplace(k, ok);
            return ok;
        };
        if (reach(reg.trivial_id(), t)) return t;
    }
}

inline int min_generators(const FiniteGroup& G) {
    SubgroupRegistry reg(G);
    return min_generators(G, reg);
}

// Shortest, lexicographically least generating tuple.
inline std::vector<Elem> first_generating_tuple(const FiniteGroup& G, SubgroupRegistry& reg) {
    int d = min_generators(G, reg);
    std::vector<Elem> tup;
    std::function<bool(int, int)> dfs = [&](int id, int rem) -> bool {
        if (id == reg.full_id() && rem == 0) return true;
        if (rem == 0) return false;
        for (std::size_t g = 0; g < G.order(); ++g) {
            tup.push_back(static_cast<Elem>(g));
            // a generating d-tuple may hit G early; trailing entries are free,
            // lexicographic-least fills with the identity anyway
            if (dfs(reg.extend(id, static_cast<Elem>(g)), rem - 1)) return true;
            tup.pop_back();
        }
        return false;
    };
    dfs(reg.trivial_id(), d);
    return tup;
}

// Per-subgroup exact generating-tuple counts phi_H(t) for all lattice nodes,
// by the sieve phi_H(t) = |H|^t - sum_{K < H} phi_K(t).
class GenerationTable {
public:
    explicit GenerationTable(const SubgroupLattice& L) : L_(&L) {}

    const cpp_int& phi_exact(int id, long long t) const {
        ensure(t);
        return phi_[static_cast<std::size_t>(t)][static_cast<std::size_t>(id)];
    }
    cpp_int phi_full(long long t) const { return phi_exact(L_->full(), t); }
    const SubgroupLattice& lattice() const { return *L_; }

private:
    void ensure(long long t) const {
        while (static_cast<long long>(phi_.size()) <= t) {
            long long tt = static_cast<long long>(phi_.size());
            int n = L_->size();
            std::vector<cpp_int> row(static_cast<std::size_t>(n));
            // ascending-order sieve; nodes are sorted by order so subgroups of
            // node i all have ids with smaller order (ties cannot nest)
            for (int i = 0; i < n; ++i) {
                cpp_int v = int_pow(cpp_int(L_->node(i).order), tt);
                for (int j = 0; j < i; ++j)
                    if (L_->leq(j, i)) v -= row[static_cast<std::size_t>(j)];
                // j > i with leq(j,i) impossible: strict subgroup has smaller
                // order, and equal-order distinct subgroups are incomparable
                row[static_cast<std::size_t>(i)] = v;
            }
            phi_.push_back(std::move(row));
        }
    }

    const SubgroupLattice* L_;
    mutable std::vector<std::vector<cpp_int>> phi_; // [t][id]
};

// a_n = sum over subgroups of index n of mu(H).
inline DirichletPolynomial dirichlet_polynomial(const SubgroupLattice& L) {
    DirichletPolynomial P;
    P.group_order = static_cast<long long>(L.group().order());
    for (int i = 0; i < L.size(); ++i) {
        long long n = static_cast<long long>(L.index_in_group(i));
        P.coeffs[n] += L.node(i).mobius;
    }
    for (auto it = P.coeffs.begin(); it != P.coeffs.end();)
        it = (it->second == 0) ? P.coeffs.erase(it) : std::next(it);
    return P;
}

// Number of maximal subgroups of prime-power index n, recovered from P alone.
// Extraction: factor P into prime-power factors (1 - c/q^s) and sum c over
// factors with q = n; falls back to -a_n (exact for prime n) when P does not
// factor that way.  Cross-checked against the lattice oracle in the tests.
inline cpp_int count_maximal_of_index(const DirichletPolynomial& P, long long n) {
    if (detail::prime_power_base(n) == 0) fail("NotPrimePower", std::to_string(n));
    auto fac = dp_prime_power_factorization(P);
    if (fac) {
        cpp_int c = 0;
        for (auto& [q, cc] : *fac)
            if (q == n) c += cc;
        return c;
    }
    if (!detail::is_prime_ll(n))
        fail("UnfactorablePolynomial",
             "P does not factor into prime-power factors and n is not prime");
    auto it = P.coeffs.find(n);
    return it == P.coeffs.end() ? cpp_int(0) : -it->second;
}

// Lattice oracle for the same count.
inline cpp_int count_maximal_of_index_oracle(const SubgroupLattice& L, long long n) {
    cpp_int c = 0;
    for (int i = 0; i < L.size(); ++i)
        if (L.node(i).maximal && static_cast<long long>(L.index_in_group(i)) == n) ++c;
    return c;
}

// Gaschütz lifting: given N normal, a tuple of coset representatives whose
// cosets generate G/N, and d >= d(G), find x_i in the given cosets with
// <x_1..x_d> = G.
inline std::vector<Elem> gaschutz_lift(const FiniteGroup& G, const DynBitset& N,
                                       const std::vector<Elem>& quotient_tuple, int d,
                                       SubgroupRegistry& reg) {
    if (!is_subgroup(G, N) || !is_normal(G, N)) fail("NotNormal", "N must be normal in G");
    if (static_cast<int>(quotient_tuple.size()) != d)
        fail("ParameterOutOfRange", "quotient tuple must have length d");
    if (d < min_generators(G, reg)) fail("DTooSmall", "d < d(G)");
    // check <reps, N> = G
    std::vector<Elem> gens = quotient_tuple;
    N.for_each_set([&](std::size_t x) { gens.push_back(static_cast<Elem>(x)); });
    if (subgroup_closure(G, gens).count() != G.order())
        fail("QuotientTupleNotGenerating", "cosets do not generate G/N");
    // backtrack over coset members
    std::vector<Elem> coset_members;
    std::vector<std::vector<Elem>> cosets(quotient_tuple.size());
    for (std::size_t i = 0; i < quotient_tuple.size(); ++i)
        N.for_each_set([&](std::size_t h) {
            cosets[i].push_back(G.mul(quotient_tuple[i], static_cast<Elem>(h)));
        });
    std::vector<Elem> pick;
    std::function<bool(std::size_t, int)> dfs = [&](std::size_t i, int id) -> bool {
        if (i == cosets.size()) return id == reg.full_id();
        for (Elem x : cosets[i]) {
            pick.push_back(x);
            if (dfs(i + 1, reg.extend(id, x))) return true;
            pick.pop_back();
        }
        return false;
    };
    if (!dfs(0, reg.trivial_id()))
        fail("LiftNotFound", "no lift found (contradicts the theorem; input invalid?)");
    return pick;
}

} // namespace gg
