#pragma once
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "gg/bitset.hpp"
#include "gg/config.hpp"
#include "gg/errors.hpp"
#include "gg/gencontext.hpp"
#include "gg/generation.hpp"
#include "gg/gengraph.hpp"
#include "gg/group.hpp"
#include "gg/lattice.hpp"
#include "gg/morphisms.hpp"

namespace gg {

// ---------------------------------------------------------------------------
// Crown-based powers L_t = {(l_1,...,l_t) in L^t : l_i A = l_j A for all i,j}
// where A is the unique minimal normal subgroup of L.

inline FiniteGroup crown_power(const FiniteGroup& L, const SubgroupLattice& lat, int A_id,
                               int t, const RunConfig& cfg = {}) {
    if (t < 1) fail("ParameterOutOfRange", "crown power exponent must be positive");
    std::vector<int> mins = lat.minimal_normal_ids();
    if (mins.size() != 1 || mins[0] != A_id)
        fail("NotUniqueMinimalNormal",
             "designated subgroup is not the unique minimal normal subgroup");
    const DynBitset& A = lat.node(A_id).members;
    std::size_t asz = lat.node(A_id).order;
    double ord = static_cast<double>(L.order());
    for (int i = 1; i < t; ++i) ord *= static_cast<double>(asz);
    if (ord > static_cast<double>(cfg.max_group_order))
        throw CapExceeded("crown power order exceeds max_group_order");

    std::vector<Elem> amem;
    for (std::size_t g = A.find_first(); g < A.size(); g = A.find_next(g + 1))
        amem.push_back(static_cast<Elem>(g));

    // elements: (l, l a_2, ..., l a_t) over l in L, a_i in A
    std::vector<std::vector<Elem>> elems;
    std::map<std::vector<Elem>, int> index;
    std::vector<Elem> tup(static_cast<std::size_t>(t));
    std::vector<std::size_t> digits(static_cast<std::size_t>(t > 1 ? t - 1 : 0), 0);
    for (std::size_t l = 0; l < L.order(); ++l) {
        std::fill(digits.begin(), digits.end(), 0);
        for (;;) {
            tup[0] = static_cast<Elem>(l);
            for (int i = 1; i < t; ++i)
                tup[static_cast<std::size_t>(i)] =
                    L.mul(static_cast<Elem>(l), amem[digits[static_cast<std::size_t>(i - 1)]]);
            index.emplace(tup, static_cast<int>(elems.size()));
            elems.push_back(tup);
            int k = 0;
            for (; k < t - 1; ++k) {
                if (++digits[static_cast<std::size_t>(k)] < amem.size()) break;
                digits[static_cast<std::size_t>(k)] = 0;
            }
            if (k == t - 1) break;
        }
    }
    std::size_t n = elems.size();
    std::vector<Elem> table(n * n);
    std::vector<Elem> prod(static_cast<std::size_t>(t));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            for (int k = 0; k < t; ++k)
                prod[static_cast<std::size_t>(k)] =
                    L.mul(elems[i][static_cast<std::size_t>(k)],
                          elems[j][static_cast<std::size_t>(k)]);
            auto it = index.find(prod);
            if (it == index.end()) fail("InternalError", "crown power tuple set not closed");
            table[i * n + j] = static_cast<Elem>(it->second);
        }
    return FiniteGroup::trusted(n, std::move(table));
}

// ---------------------------------------------------------------------------
// The equivalences on elements: same maximal subgroups (m) and same
// neighbourhoods of 1-tuples in Gamma_{1,r-1} (m_r), plus their stabilization
// index psi and the isolation-based invariants built on the same data.

struct EquivalenceReport {
    std::string relation;
    int r = 0;
    std::vector<int> cls; // class index per element, numbered by first occurrence
    int num_classes = 0;
};

namespace detail {

inline void number_classes(const std::vector<std::vector<char>>& profiles,
                           EquivalenceReport& rep) {
    std::map<std::vector<char>, int> seen;
    rep.cls.resize(profiles.size());
    for (std::size_t g = 0; g < profiles.size(); ++g) {
        auto it = seen.find(profiles[g]);
        if (it == seen.end())
            it = seen.emplace(profiles[g], static_cast<int>(seen.size())).first;
        rep.cls[g] = it->second;
    }
    rep.num_classes = static_cast<int>(seen.size());
}

// Lattice ids of subgroups generated by at least one tuple of length `len`.
inline std::vector<int> realizable_ids(const GenerationTable& T, long long len) {
    std::vector<int> ids;
    for (int i = 0; i < T.lattice().size(); ++i)
        if (T.phi_exact(i, len) > 0) ids.push_back(i);
    return ids;
}

inline int cyclic_id_of(const FiniteGroup& G, const SubgroupLattice& L, Elem g) {
    return L.id_of(subgroup_closure(G, {g}));
}

// Elements g whose 1-tuple (g) is isolated in Gamma_{1,len}: no length-len
// tuple y has <g, y> = G.  <g, y> = <g> v <y>, and the subgroups realizable
// as <y> are exactly those with phi(len) > 0, so isolation is a lattice scan.
inline DynBitset isolated_one_tuples(const FiniteGroup& G, const GenerationTable& T,
                                     long long len) {
    const SubgroupLattice& L = T.lattice();
    std::vector<int> real = realizable_ids(T, len);
    DynBitset iso(G.order());
    std::vector<char> cache(static_cast<std::size_t>(L.size()), -1);
    for (std::size_t g = 0; g < G.order(); ++g) {
        int cid = cyclic_id_of(G, L, static_cast<Elem>(g));
        char& c = cache[static_cast<std::size_t>(cid)];
        if (c < 0) {
            c = 1;
            for (int k : real)
                if (L.join(cid, k) == L.full()) {
                    c = 0;
                    break;
                }
        }
        if (c == 1) iso.set(g);
    }
    return iso;
}

} // namespace detail

inline EquivalenceReport equiv_m(const FiniteGroup& G, const SubgroupLattice& L) {
    std::vector<int> maxima = L.maximal_ids();
    std::vector<std::vector<char>> prof(G.order(), std::vector<char>(maxima.size(), 0));
    for (std::size_t mi = 0; mi < maxima.size(); ++mi) {
        const DynBitset& mem = L.node(maxima[mi]).members;
        for (std::size_t g = 0; g < G.order(); ++g)
            if (mem.test(g)) prof[g][mi] = 1;
    }
    EquivalenceReport rep;
    rep.relation = "m";
    detail::number_classes(prof, rep);
    return rep;
}

inline EquivalenceReport equiv_m_r(const FiniteGroup& G, const GenerationTable& T, int r) {
    if (r < 1) fail("ParameterOutOfRange", "equiv_m_r needs r >= 1");
    const SubgroupLattice& L = T.lattice();
    std::vector<int> real = detail::realizable_ids(T, r - 1);
    std::unordered_map<int, std::vector<char>> by_cyclic;
    std::vector<std::vector<char>> prof(G.order());
    for (std::size_t g = 0; g < G.order(); ++g) {
        int cid = detail::cyclic_id_of(G, L, static_cast<Elem>(g));
        auto it = by_cyclic.find(cid);
        if (it == by_cyclic.end()) {
            std::vector<char> p(real.size(), 0);
            for (std::size_t k = 0; k < real.size(); ++k)
                if (L.join(cid, real[k]) == L.full()) p[k] = 1;
            it = by_cyclic.emplace(cid, std::move(p)).first;
        }
        prof[g] = it->second;
    }
    EquivalenceReport rep;
    rep.relation = "m_r";
    rep.r = r;
    detail::number_classes(prof, rep);
    return rep;
}

inline EquivalenceReport equiv_m(const FiniteGroup& G, const RunConfig& cfg = {}) {
    SubgroupLattice L = SubgroupLattice::compute(G, cfg);
    return equiv_m(G, L);
}

inline EquivalenceReport equiv_m_r(const FiniteGroup& G, int r, const RunConfig& cfg = {}) {
    SubgroupLattice L = SubgroupLattice::compute(G, cfg);
    GenerationTable T(L);
    return equiv_m_r(G, T, r);
}

// Least r at which the neighbourhood equivalence coincides with the
// maximal-subgroup equivalence.  Bounded search; exceeding d(G)+5 flags a bug.
inline int psi(const FiniteGroup& G, const RunConfig& cfg = {}) {
    if (G.order() == 1) return 0;
    SubgroupLattice L = SubgroupLattice::compute(G, cfg);
    GenerationTable T(L);
    EquivalenceReport m = equiv_m(G, L);
    int d = min_generators(G);
    for (int r = 1; r <= d + 5; ++r)
        if (equiv_m_r(G, T, r).cls == m.cls) return r;
    fail("PsiSearchExceeded", "neighbourhood equivalences did not stabilize by d+5");
}

// G is efficiently generated when the elements unable to extend to a
// generating d-tuple are exactly the Frattini elements.
inline bool is_efficiently_generated(const FiniteGroup& G, const RunConfig& cfg = {}) {
    if (G.order() == 1) return true;
    SubgroupLattice L = SubgroupLattice::compute(G, cfg);
    GenerationTable T(L);
    int d = min_generators(G);
    DynBitset iso = detail::isolated_one_tuples(G, T, d - 1);
    return iso == L.node(L.frattini_id()).members;
}

// Non-zero spread: every non-identity element extends to a generating
// d-tuple, i.e. the identity is the only isolated 1-tuple in Gamma_{1,d-1}.
inline bool has_nonzero_spread(const FiniteGroup& G, const RunConfig& cfg = {}) {
    if (G.order() == 1) return true;
    SubgroupLattice L = SubgroupLattice::compute(G, cfg);
    GenerationTable T(L);
    int d = min_generators(G);
    DynBitset iso = detail::isolated_one_tuples(G, T, d - 1);
    return iso.count() == 1 && iso.test(G.identity());
}

// ---------------------------------------------------------------------------
// The order-9216 two-tuple obstruction group (GL(2,2) x GL(2,2)) |x W with W
// a direct sum of 2u planes over F_2, u = 2(d-1).

namespace detail {

struct GL22 {
    FiniteGroup M;                      // group of the 6 invertible matrices
    std::vector<std::array<int, 4>> mats; // row-major bits m00,m01,m10,m11

    int index_of(const std::array<int, 4>& m) const {
        for (std::size_t i = 0; i < mats.size(); ++i)
            if (mats[i] == m) return static_cast<int>(i);
        fail("InternalError", "matrix not in GL(2,2)");
    }
};

inline std::array<int, 4> mat_mul(const std::array<int, 4>& a, const std::array<int, 4>& b) {
    return {(a[0] * b[0] + a[1] * b[2]) & 1, (a[0] * b[1] + a[1] * b[3]) & 1,
            (a[2] * b[0] + a[3] * b[2]) & 1, (a[2] * b[1] + a[3] * b[3]) & 1};
}

inline std::array<int, 2> vec_mat(const std::array<int, 2>& v, const std::array<int, 4>& m) {
    return {(v[0] * m[0] + v[1] * m[2]) & 1, (v[0] * m[1] + v[1] * m[3]) & 1};
}

inline GL22 make_gl22() {
    std::vector<std::array<int, 4>> mats;
    mats.push_back({1, 0, 0, 1}); // identity first
    for (int c = 0; c < 16; ++c) {
        std::array<int, 4> m = {c & 1, (c >> 1) & 1, (c >> 2) & 1, (c >> 3) & 1};
        if ((m[0] * m[3] + m[1] * m[2]) % 2 == 1 && m != mats[0]) mats.push_back(m);
    }
    std::size_t n = mats.size();
    auto idx = [&](const std::array<int, 4>& m) {
        return static_cast<Elem>(std::find(mats.begin(), mats.end(), m) - mats.begin());
    };
    std::vector<Elem> t(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t[i * n + j] = idx(mat_mul(mats[i], mats[j]));
    return GL22{FiniteGroup::trusted(n, std::move(t)), std::move(mats)};
}

} // namespace detail

struct Section3Result {
    FiniteGroup G;
    std::vector<Elem> tuple1, tuple2; // (d-1)-tuples starting with the two variants
    Elem b1 = 0, b2 = 0;              // completions generating G with tuple1 / tuple2
};

inline Section3Result build_section3_counterexample(int d, const RunConfig& cfg = {}) {
    if (d < 2) fail("ParameterOutOfRange", "construction needs d >= 2");
    int u = 2 * (d - 1);
    double ord = 36.0 * std::pow(2.0, 4 * u);
    if (ord > static_cast<double>(cfg.max_group_order) || ord > 65535.0)
        throw CapExceeded("obstruction group order exceeds caps (use d = 2)");

    detail::GL22 gl = detail::make_gl22();
    FiniteGroup H = direct_product(gl.M, gl.M, cfg);
    FiniteGroup W = make_elemab(2, 4 * u); // 2u planes; plane j occupies bits 2j, 2j+1
    std::size_t wn = W.order();

    // (h1, h2) acts on plane j by h1 for j < u (first block) and h2 otherwise
    std::vector<std::vector<Elem>> action(H.order(), std::vector<Elem>(wn));
    for (std::size_t h = 0; h < H.order(); ++h) {
        const auto& m1 = gl.mats[h / gl.M.order()];
        const auto& m2 = gl.mats[h % gl.M.order()];
        for (std::size_t w = 0; w < wn; ++w) {
            std::size_t img = 0;
            for (int j = 0; j < 2 * u; ++j) {
                std::array<int, 2> v = {static_cast<int>((w >> (2 * j)) & 1),
                                        static_cast<int>((w >> (2 * j + 1)) & 1)};
                v = detail::vec_mat(v, j < u ? m1 : m2);
                img |= static_cast<std::size_t>(v[0]) << (2 * j);
                img |= static_cast<std::size_t>(v[1]) << (2 * j + 1);
            }
            action[h][w] = static_cast<Elem>(img);
        }
    }

    Section3Result res{semidirect_product(W, H, action, cfg), {}, {}, 0, 0};

    auto helem = [&](const std::array<int, 4>& k1, const std::array<int, 4>& k2) {
        return static_cast<std::size_t>(gl.index_of(k1)) * gl.M.order() +
               static_cast<std::size_t>(gl.index_of(k2));
    };
    // vector part from per-block plane assignments: planes[j] in {0, e1, e2}
    auto welem = [&](const std::vector<int>& block1, const std::vector<int>& block2) {
        std::size_t w = 0;
        for (int j = 0; j < u; ++j) {
            if (block1[static_cast<std::size_t>(j)] == 1) w |= std::size_t(1) << (2 * j);
            if (block1[static_cast<std::size_t>(j)] == 2) w |= std::size_t(1) << (2 * j + 1);
            if (block2[static_cast<std::size_t>(j)] == 1) w |= std::size_t(1) << (2 * (u + j));
            if (block2[static_cast<std::size_t>(j)] == 2) w |= std::size_t(1) << (2 * (u + j) + 1);
        }
        return w;
    };
    auto gelem = [&](std::size_t h, std::size_t w) {
        return static_cast<Elem>(h * wn + w);
    };

    const std::array<int, 4> x = {1, 0, 1, 1}, y = {1, 1, 1, 0}, z = {1, 1, 0, 1};
    const std::array<int, 4> one = {1, 0, 0, 1};

    std::vector<int> blk(static_cast<std::size_t>(u), 0);
    blk[1] = 2; // (0, e2, 0, ..., 0)
    Elem a11 = gelem(helem(x, x), welem(blk, blk));
    blk[0] = 1; // (e1, e2, 0, ..., 0)
    Elem a12 = gelem(helem(x, x), welem(blk, blk));
    res.tuple1 = {a11};
    res.tuple2 = {a12};
    for (int k = 2; k <= d - 1; ++k) {
        std::fill(blk.begin(), blk.end(), 0);
        blk[static_cast<std::size_t>(2 * (k - 1))] = 1;
        blk[static_cast<std::size_t>(2 * (k - 1) + 1)] = 2;
        Elem ak = gelem(helem(one, one), welem(blk, blk));
        res.tuple1.push_back(ak);
        res.tuple2.push_back(ak);
    }
    std::fill(blk.begin(), blk.end(), 0);
    std::vector<int> zero = blk;
    blk[0] = 1; // (e1, 0, ..., 0)
    res.b1 = gelem(helem(y, z), welem(blk, blk));
    res.b2 = gelem(helem(y, z), welem(zero, blk));
    return res;
}

// ---------------------------------------------------------------------------
// The order-605 pair: F_11^2 |x C_5 with eigenvalue pairs (3,4) and (3,5),
// plus the explicit element bijection tau between them.

struct Pair605 {
    FiniteGroup G1, G2;
    std::vector<Elem> tau; // element index bijection G1 -> G2
};

namespace detail {

inline FiniteGroup make_g605(int lam1, int lam2, const RunConfig& cfg) {
    FiniteGroup V = make_elemab(11, 2);
    FiniteGroup C = make_cyclic(5);
    std::vector<std::vector<Elem>> action(5, std::vector<Elem>(121));
    long long s1 = 1, s2 = 1;
    for (int g = 0; g < 5; ++g) {
        for (int al = 0; al < 11; ++al)
            for (int be = 0; be < 11; ++be)
                action[static_cast<std::size_t>(g)][static_cast<std::size_t>(al + 11 * be)] =
                    static_cast<Elem>((s1 * al) % 11 + 11 * ((s2 * be) % 11));
        s1 = s1 * lam1 % 11;
        s2 = s2 * lam2 % 11;
    }
    return semidirect_product(V, C, action, cfg);
}

// index of (alpha a + beta b) x^gamma, computed through the group operation
inline Elem g605_elem(const FiniteGroup& G, int alpha, int beta, int gamma) {
    Elem v = static_cast<Elem>(alpha + 11 * beta); // gamma = 0 block holds V
    Elem xg = static_cast<Elem>(static_cast<std::size_t>(gamma) * 121);
    return G.mul(v, xg);
}

} // namespace detail

inline Pair605 build_605_pair(const RunConfig& cfg = {}) {
    Pair605 p{detail::make_g605(3, 4, cfg), detail::make_g605(3, 5, cfg), {}};
    p.tau.assign(605, 0);
    std::vector<char> hit(605, 0);
    for (int gamma = 0; gamma < 5; ++gamma)
        for (int alpha = 0; alpha < 11; ++alpha)
            for (int beta = 0; beta < 11; ++beta) {
                Elem g = detail::g605_elem(p.G1, alpha, beta, gamma);
                Elem img;
                if (gamma <= 1) {
                    img = detail::g605_elem(p.G2, alpha, beta, gamma);
                } else {
                    // unique (a*, b*) with ((a* a1 + b* b1) x1)^gamma = g
                    int as = -1, bs = -1;
                    for (int a2 = 0; a2 < 11 && as < 0; ++a2)
                        for (int b2 = 0; b2 < 11; ++b2)
                            if (p.G1.pow(detail::g605_elem(p.G1, a2, b2, 1), gamma) == g) {
                                as = a2;
                                bs = b2;
                                break;
                            }
                    if (as < 0) fail("InternalError", "no gamma-th root of the required shape");
                    img = p.G2.pow(detail::g605_elem(p.G2, as, bs, 1), gamma);
                }
                p.tau[g] = img;
                if (hit[img]++) fail("InternalError", "tau is not injective");
            }
    return p;
}

// ---------------------------------------------------------------------------
// tau_d(S): number of Aut(S)-orbits on generating d-tuples of a non-abelian
// simple group S.

struct TauReport {
    long long orbit_count = 0;
    std::size_t aut_order = 0;
    cpp_int tuple_count = 0;          // number of generating d-tuples
    std::size_t min_orbit = 0, max_orbit = 0;
};

inline TauReport tau_d(const FiniteGroup& S, int d, const RunConfig& cfg = {}) {
    if (S.order() > 360) throw CapExceeded("tau_d supports |S| <= 360");
    if (d < 1 || d > 3) fail("ParameterOutOfRange", "tau_d supports 1 <= d <= 3");
    if (S.is_abelian() || !oracle_simple(S)) fail("NotSimple", "tau_d needs a non-abelian simple group");
    double nv = std::pow(static_cast<double>(S.order()), d);
    if (nv > static_cast<double>(cfg.max_vertices))
        throw CapExceeded("tuple space exceeds max_vertices");

    std::vector<std::vector<Elem>> auts = automorphism_group(S);
    SubgroupRegistry reg(S);
    std::size_t n = S.order();
    std::uint64_t total = 1;
    for (int i = 0; i < d; ++i) total *= n;
    std::vector<char> gen(total, 0), seen(total, 0);

    std::vector<Elem> tup(static_cast<std::size_t>(d));
    for (std::uint64_t c = 0; c < total; ++c) {
        tup = tuple_decode(c, d, n);
        if (reg.tuple_generates(tup)) gen[c] = 1;
    }

    TauReport rep;
    rep.aut_order = auts.size();
    rep.min_orbit = total;
    for (std::uint64_t c = 0; c < total; ++c) {
        if (!gen[c] || seen[c]) continue;
        tup = tuple_decode(c, d, n);
        std::size_t orbit = 0;
        std::vector<Elem> img(static_cast<std::size_t>(d));
        for (const auto& f : auts) {
            for (int i = 0; i < d; ++i) img[static_cast<std::size_t>(i)] = f[tup[static_cast<std::size_t>(i)]];
            std::uint64_t code = tuple_code(img, n);
            if (!gen[code]) fail("InternalError", "automorphism broke a generating tuple");
            if (!seen[code]) {
                seen[code] = 1;
                ++orbit;
            }
        }
        ++rep.orbit_count;
        rep.tuple_count += orbit;
        rep.min_orbit = std::min(rep.min_orbit, orbit);
        rep.max_orbit = std::max(rep.max_orbit, orbit);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Connectivity of Gamma*_{a,b} for direct products of simple groups.

struct ProductConnectivityReport {
    std::size_t order = 0;
    std::size_t vertices = 0;        // full Gamma vertex count
    std::size_t active_vertices = 0; // after removing isolated ones
    bool connected = false;
};

inline ProductConnectivityReport check_direct_product_connectivity(
    const std::vector<FiniteGroup>& factors, int a, int b, const RunConfig& cfg = {}) {
    if (factors.empty()) fail("ParameterOutOfRange", "need at least one factor");
    for (const auto& S : factors)
        if (S.is_abelian() || !oracle_simple(S))
            fail("NotSimple", "factors must be non-abelian simple groups");
    FiniteGroup G = factors[0];
    for (std::size_t i = 1; i < factors.size(); ++i) G = direct_product(G, factors[i], cfg);

    SubgroupRegistry reg(G);
    GenGraph g = build_gamma(G, a, b, reg, cfg);
    ProductConnectivityReport rep;
    rep.order = G.order();
    rep.vertices = (a == b) ? g.nva() : g.nva() + g.nvb();
    GenGraph pruned = prune_isolated(g);
    rep.active_vertices = (a == b) ? pruned.nva() : pruned.nva() + pruned.nvb();
    rep.connected = is_connected(pruned, cfg);
    return rep;
}

} // namespace gg
