#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>
#include <vector>

#include "gg/catalog.hpp"
#include "gg/constructions.hpp"
#include "gg/morphisms.hpp"
#include "gg/recognition.hpp"

using namespace gg;
using Catch::Matchers::ContainsSubstring;

namespace {

// every class of `fine` sits inside a single class of `coarse`
bool refines(const std::vector<int>& fine, const std::vector<int>& coarse) {
    std::map<int, int> rep;
    for (std::size_t i = 0; i < fine.size(); ++i) {
        auto it = rep.find(fine[i]);
        if (it == rep.end())
            rep.emplace(fine[i], coarse[i]);
        else if (it->second != coarse[i])
            return false;
    }
    return true;
}

std::multiset<int> class_sizes(const EquivalenceReport& r) {
    std::map<int, int> cnt;
    for (int c : r.cls) ++cnt[c];
    std::multiset<int> out;
    for (auto& [c, k] : cnt) out.insert(k);
    return out;
}

} // namespace

TEST_CASE("crown powers of Sym(3) over its socle") {
    auto s3 = build_group("sym:3");
    auto L = SubgroupLattice::compute(s3);
    auto mins = L.minimal_normal_ids();
    REQUIRE(mins.size() == 1);
    int A = mins[0];
    REQUIRE(L.node(A).order == 3);
    REQUIRE(L.socle_id() == A);

    std::vector<FiniteGroup> powers;
    for (int t = 1; t <= 3; ++t) {
        powers.push_back(crown_power(s3, L, A, t));
        std::size_t want = 6;
        for (int i = 1; i < t; ++i) want *= 3;
        REQUIRE(powers.back().order() == want);
    }
    REQUIRE(isomorphic(powers[0], s3));
    REQUIRE(min_generators(powers[0]) == 2);
    REQUIRE(min_generators(powers[1]) == 3);
    REQUIRE(min_generators(powers[2]) == 4);

    SECTION("designated subgroup must be the unique minimal normal one") {
        REQUIRE_THROWS_WITH(crown_power(s3, L, L.full(), 2),
                            ContainsSubstring("NotUniqueMinimalNormal"));
        auto klein = build_group("klein");
        auto Lk = SubgroupLattice::compute(klein);
        REQUIRE(Lk.minimal_normal_ids().size() == 3);
        REQUIRE_THROWS_WITH(crown_power(klein, Lk, Lk.minimal_normal_ids()[0], 2),
                            ContainsSubstring("NotUniqueMinimalNormal"));
    }
    SECTION("order cap") {
        RunConfig tight;
        tight.max_group_order = 10;
        REQUIRE_THROWS_AS(crown_power(s3, L, A, 2, tight), CapExceeded);
    }
    SECTION("non-zero spread of the crown square") {
        // d jumps from 2 to 3 at t=2, the socle is abelian and d(L) = 2 with
        // t = 2, so the spread must be non-zero
        REQUIRE(has_nonzero_spread(powers[1]));
        REQUIRE(is_efficiently_generated(powers[1]));
    }
}

TEST_CASE("element equivalences") {
    SECTION("maximal-membership classes of Sym(3)") {
        auto s3 = build_group("sym:3");
        auto m = equiv_m(s3);
        REQUIRE(m.num_classes == 5);
        REQUIRE(class_sizes(m) == std::multiset<int>{1, 1, 1, 1, 2});
        // the two 3-cycles form the only non-singleton class
        std::map<int, std::vector<Elem>> by_class;
        for (std::size_t g = 0; g < s3.order(); ++g)
            by_class[m.cls[g]].push_back(static_cast<Elem>(g));
        for (auto& [c, gs] : by_class) {
            if (gs.size() == 1) continue;
            for (Elem g : gs) REQUIRE(s3.elem_order(g) == 3);
        }
    }
    SECTION("refinement chains") {
        for (const char* spec : {"sym:3", "cyclic:12", "dihedral:4", "elemab:2:3", "g20:2"}) {
            auto G = build_group(spec);
            auto L = SubgroupLattice::compute(G);
            GenerationTable T(L);
            auto m = equiv_m(G, L);
            int d = min_generators(G);
            EquivalenceReport prev;
            for (int r = 1; r <= d + 2; ++r) {
                auto cur = equiv_m_r(G, T, r);
                REQUIRE(refines(m.cls, cur.cls));
                if (r > 1) REQUIRE(refines(cur.cls, prev.cls));
                prev = cur;
            }
        }
    }
    SECTION("psi values") {
        REQUIRE(psi(build_group("sym:3")) == 2);
        REQUIRE(psi(build_group("cyclic:4")) == 1);
        auto c4 = build_group("cyclic:4");
        REQUIRE(equiv_m_r(c4, 1).cls == equiv_m(c4).cls);
        REQUIRE(psi(build_group("cyclic:1")) == 0);
    }
    SECTION("psi stays within one of d on soluble catalog groups") {
        for (const auto& spec : catalog_all()) {
            auto G = build_group(spec);
            auto L = SubgroupLattice::compute(G);
            if (!structure_oracles(G, L).is_soluble) continue;
            if (G.order() == 1) continue;
            int d = min_generators(G);
            int p = psi(G);
            INFO(spec);
            REQUIRE((p == d || p == d + 1));
        }
    }
}

TEST_CASE("spread iff efficiently generated with trivial Frattini") {
    for (const auto& spec : catalog_all()) {
        auto G = build_group(spec);
        auto L = SubgroupLattice::compute(G);
        bool frat_trivial = L.node(L.frattini_id()).order == 1;
        INFO(spec);
        REQUIRE(has_nonzero_spread(G) == (is_efficiently_generated(G) && frat_trivial));
    }
    REQUIRE(has_nonzero_spread(build_group("sym:3")));
    REQUIRE(is_efficiently_generated(build_group("sym:3")));
    REQUIRE_FALSE(has_nonzero_spread(build_group("cyclic:4")));
}

TEST_CASE("order-9216 two-tuple obstruction group") {
    auto res = build_section3_counterexample(2);
    const FiniteGroup& G = res.G;
    REQUIRE(G.order() == 9216);
    REQUIRE(res.tuple1.size() == 1);
    REQUIRE(res.tuple2.size() == 1);
    Elem a11 = res.tuple1[0], a12 = res.tuple2[0];

    SubgroupRegistry reg(G);
    REQUIRE(reg.tuple_generates({a11, res.b1}));
    REQUIRE(reg.tuple_generates({a12, res.b2}));

    SECTION("no common completion exists") {
        long long common = 0;
        int ca11 = reg.cyclic_id(a11), ca12 = reg.cyclic_id(a12);
        for (std::size_t b = 0; b < G.order(); ++b) {
            Elem e = static_cast<Elem>(b);
            if (reg.extend(ca11, e) == reg.full_id() && reg.extend(ca12, e) == reg.full_id())
                ++common;
        }
        REQUIRE(common == 0);
    }
    SECTION("parameter guards") {
        REQUIRE_THROWS_AS(build_section3_counterexample(3), CapExceeded);
        REQUIRE_THROWS_WITH(build_section3_counterexample(1),
                            ContainsSubstring("ParameterOutOfRange"));
    }
}

TEST_CASE("the order-605 pair and its bijection") {
    auto pair = build_605_pair();
    REQUIRE(pair.G1.order() == 605);
    REQUIRE(pair.G2.order() == 605);
    REQUIRE_FALSE(isomorphic(pair.G1, pair.G2));

    // tau is a bijection fixing the identity
    std::set<Elem> img(pair.tau.begin(), pair.tau.end());
    REQUIRE(img.size() == 605);
    REQUIRE(pair.tau[pair.G1.identity()] == pair.G2.identity());

    // per-group adjacency data: cyclic class per element, pair class per
    // ordered pair, and a dense "join is full" table over those classes
    struct Side {
        std::vector<int> cid, pid;
        std::vector<std::vector<char>> full;
    };
    auto prepare = [](const FiniteGroup& G) {
        SubgroupRegistry reg(G);
        Side s;
        std::size_t n = G.order();
        s.cid.resize(n);
        for (std::size_t g = 0; g < n; ++g) s.cid[g] = reg.cyclic_id(static_cast<Elem>(g));
        s.pid.resize(n * n);
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z)
                s.pid[y * n + z] = reg.extend(s.cid[y], static_cast<Elem>(z));
        int ids = static_cast<int>(reg.size());
        s.full.assign(static_cast<std::size_t>(ids),
                      std::vector<char>(static_cast<std::size_t>(ids), 0));
        for (int a = 0; a < ids; ++a)
            for (int b = 0; b < ids; ++b)
                s.full[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
                    reg.join_is_full(a, b) ? 1 : 0;
        return s;
    };
    Side s1 = prepare(pair.G1), s2 = prepare(pair.G2);
    std::size_t n = 605;

    SECTION("tau preserves generation for (1,1) and (1,2)") {
        long long mismatch11 = 0;
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y) {
                bool e1 = s1.full[static_cast<std::size_t>(s1.cid[x])]
                                 [static_cast<std::size_t>(s1.cid[y])];
                bool e2 = s2.full[static_cast<std::size_t>(s2.cid[pair.tau[x]])]
                                 [static_cast<std::size_t>(s2.cid[pair.tau[y]])];
                if (e1 != e2) ++mismatch11;
            }
        REQUIRE(mismatch11 == 0);

        long long mismatch12 = 0;
        for (std::size_t x = 0; x < n; ++x) {
            std::size_t tx = pair.tau[x];
            for (std::size_t y = 0; y < n; ++y) {
                std::size_t ty = pair.tau[y];
                for (std::size_t z = 0; z < n; ++z) {
                    bool e1 = s1.full[static_cast<std::size_t>(s1.cid[x])]
                                     [static_cast<std::size_t>(s1.pid[y * n + z])];
                    bool e2 = s2.full[static_cast<std::size_t>(s2.cid[tx])]
                                     [static_cast<std::size_t>(s2.pid[ty * n + pair.tau[z]])];
                    if (e1 != e2) ++mismatch12;
                }
            }
        }
        REQUIRE(mismatch12 == 0);
    }
    SECTION("anonymized families agree at truncation 3") {
        REQUIRE(families_equal(lambda_star(pair.G1, 3), lambda_star(pair.G2, 3)));
    }
}

TEST_CASE("automorphism orbits on generating pairs of Alt(5)") {
    auto a5 = build_group("alt:5");
    auto rep = tau_d(a5, 2);
    REQUIRE(rep.aut_order == 120);
    auto L = SubgroupLattice::compute(a5);
    GenerationTable T(L);
    REQUIRE(rep.tuple_count == T.phi_full(2));
    // free action: every orbit is regular
    REQUIRE(rep.min_orbit == 120);
    REQUIRE(rep.max_orbit == 120);
    REQUIRE(cpp_int(rep.orbit_count) * 120 == rep.tuple_count);
    REQUIRE(rep.orbit_count == 19);

    REQUIRE_THROWS_WITH(tau_d(build_group("sym:3"), 2), ContainsSubstring("NotSimple"));
}

TEST_CASE("generating graphs of products of simple groups are connected") {
    auto a5 = build_group("alt:5");
    SECTION("single Alt(5)") {
        auto r = check_direct_product_connectivity({a5}, 1, 1);
        REQUIRE(r.order == 60);
        REQUIRE(r.vertices == 60);
        REQUIRE(r.connected);
        auto r2 = check_direct_product_connectivity({a5}, 1, 2);
        REQUIRE(r2.connected);
    }
    SECTION("Alt(5) x Alt(5)") {
        auto r = check_direct_product_connectivity({a5, a5}, 1, 1);
        REQUIRE(r.order == 3600);
        REQUIRE(r.vertices == 3600);
        REQUIRE(r.connected);
    }
    SECTION("abelian factors are rejected") {
        REQUIRE_THROWS_WITH(check_direct_product_connectivity({build_group("cyclic:5")}, 1, 1),
                            ContainsSubstring("NotSimple"));
    }
}
