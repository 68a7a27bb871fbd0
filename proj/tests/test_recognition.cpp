#include <catch2/catch_amalgamated.hpp>

#include "gg/catalog.hpp"
#include "gg/gengraph.hpp"
#include "gg/recognition.hpp"

using namespace gg;

namespace {

long long frattini_order_oracle(const FiniteGroup& G) {
    auto L = SubgroupLattice::compute(G);
    return static_cast<long long>(L.node(L.frattini_id()).order);
}

int trunc_for(const FiniteGroup& G) {
    int d = min_generators(G);
    int D = static_cast<int>(detail::divisors_of(static_cast<long long>(G.order())).size());
    return d + std::max(D, 2);
}

} // namespace

TEST_CASE("unfat factorization") {
    using V = std::vector<long long>;
    REQUIRE(unfat_factor(cpp_rational(1)) == V{});
    REQUIRE(unfat_factor(cpp_rational(1, 2)) == V{2});
    REQUIRE(unfat_factor(cpp_rational(1, 3)) == V{2, 3});
    REQUIRE(unfat_factor(cpp_rational(4, 9)) == V{3, 3});
    REQUIRE(unfat_factor(cpp_rational(2, 5)) == V{2, 5});
    REQUIRE_FALSE(unfat_factor(cpp_rational(5, 6)).has_value());
    REQUIRE_FALSE(unfat_factor(cpp_rational(0)).has_value());
    REQUIRE_FALSE(unfat_factor(cpp_rational(3, 2)).has_value());

    SECTION("injective on multisets of primes < 30, size <= 4") {
        std::vector<long long> primes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
        std::map<cpp_rational, std::vector<long long>> seen;
        std::function<void(std::size_t, std::vector<long long>&, cpp_rational)> rec =
            [&](std::size_t lo, std::vector<long long>& cur, cpp_rational q) {
                auto got = unfat_factor(q);
                REQUIRE(got.has_value());
                REQUIRE(*got == cur);
                auto [it, fresh] = seen.insert({q, cur});
                REQUIRE(fresh);
                if (cur.size() == 4) return;
                for (std::size_t i = lo; i < primes.size(); ++i) {
                    cur.push_back(primes[i]);
                    rec(i, cur, q * cpp_rational(primes[i] - 1, primes[i]));
                    cur.pop_back();
                }
            };
        std::vector<long long> cur;
        rec(0, cur, cpp_rational(1));
        REQUIRE(seen.size() == 1001); // multisets of size <= 4 from 10 primes
    }
}

TEST_CASE("lambda_star families") {
    SECTION("Sym(3) star ladder = phi values") {
        auto s3 = build_group("sym:3");
        auto F = lambda_star(s3, 4);
        auto u = detail::star_ladder(F);
        REQUIRE(u.size() == 3);
        REQUIRE(u[0] == 18);
        REQUIRE(u[1] == 168);
        REQUIRE(u[2] == 1170);
    }
    SECTION("trivial group: K2s and looped vertices only") {
        auto e = make_cyclic(1);
        auto F = lambda_star(e, 3);
        REQUIRE(!F.components.empty());
        REQUIRE(detail::is_trivial_family(F));
    }
    SECTION("C2 contains the degenerate star K2") {
        auto c2 = make_cyclic(2);
        auto F = lambda_star(c2, 3);
        bool k2 = false;
        for (const auto& c : F.components)
            if (c.is_k2()) k2 = true;
        REQUIRE(k2);
        // and the K2 counts as a star with one leaf
        REQUIRE(detail::star_ladder(F)[0] == 1);
    }
    SECTION("JSON round trip preserves the family") {
        auto k = build_group("klein");
        auto F = lambda_star(k, 4);
        auto F2 = family_from_json(family_to_json(F));
        REQUIRE(F2.truncation_level == F.truncation_level);
        REQUIRE(F2.kind == F.kind);
        REQUIRE(families_equal(F, F2));
        REQUIRE(recover_d(F2) == recover_d(F));
    }
}

TEST_CASE("anonymized components match between lattice and explicit graphs") {
    for (const auto& spec : {"cyclic:2", "cyclic:6", "klein", "sym:3", "dihedral:4", "g20:2"}) {
        auto G = build_group(spec);
        INFO(spec);
        auto L = SubgroupLattice::compute(G);
        GenerationTable T(L);
        SubgroupRegistry reg(G);
        for (auto [a, b] :
             std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}}) {
            if (int_pow(cpp_int(G.order()), b) > 100000) continue;
            INFO("a=" << a << " b=" << b);
            auto from_lattice = anon_components_from_lattice(L, T, a, b);
            auto from_graph = anon_components_from_graph(prune_isolated(build_gamma(G, a, b, reg)));
            std::vector<std::string> x, y;
            for (const auto& c : from_lattice) x.push_back(c.canonical_string());
            for (const auto& c : from_graph) y.push_back(c.canonical_string());
            std::sort(x.begin(), x.end());
            std::sort(y.begin(), y.end());
            REQUIRE(x == y);
        }
    }
}

TEST_CASE("recognize_cyclic") {
    auto check = [](const char* spec, bool cyc, long long order) {
        auto G = build_group(spec);
        INFO(spec);
        auto rep = recognize_cyclic(lambda_star(G, 3));
        REQUIRE(rep.is_cyclic == cyc);
        if (cyc) REQUIRE(rep.order == order);
    };
    check("cyclic:1", true, 1);
    check("cyclic:2", true, 2);
    check("cyclic:6", true, 6);
    check("cyclic:12", true, 12);
    check("klein", false, 0);
    check("sym:3", false, 0);
    check("sym:4", false, 0);
    check("elemab:2:3", false, 0);

    SECTION("truncation guard") {
        auto c6 = make_cyclic(6);
        REQUIRE_THROWS_WITH(recognize_cyclic(lambda_star(c6, 2)),
                            Catch::Matchers::ContainsSubstring("InsufficientTruncation"));
    }
}

TEST_CASE("recognize_klein_or_dihedral") {
    auto check = [](const char* spec, bool matched, long long order) {
        auto G = build_group(spec);
        INFO(spec);
        auto rep = recognize_klein_or_dihedral(lambda_star(G, 4));
        REQUIRE(rep.matched == matched);
        if (matched) REQUIRE(rep.order == order);
    };
    check("klein", true, 4);
    check("sym:3", true, 6);
    check("dihedral:5", true, 10);
    check("dihedral:7", true, 14);
    check("sym:4", false, 0);
    check("alt:4", false, 0);
    check("elemab:3:2", false, 0);
}

TEST_CASE("recover_d") {
    auto check = [](const char* spec, int d) {
        auto G = build_group(spec);
        INFO(spec);
        REQUIRE(recover_d(lambda_star(G, d + 2)) == d);
        REQUIRE(d == min_generators(G));
    };
    check("klein", 2);
    check("elemab:2:3", 3);
    check("sym:4", 2);
    check("g20:2", 2);
    check("cyclic:12", 1);
    check("cyclic:2", 1);
    check("alt:4", 2);
}

TEST_CASE("component levels and (a,b) labels for Sym(3)") {
    auto s3 = build_group("sym:3");
    auto F = lambda_star(s3, 6);
    auto L = SubgroupLattice::compute(s3);
    GenerationTable T(L);

    SECTION("every component gets a unique level") {
        std::map<int, int> per_level;
        for (const auto& c : F.components) per_level[component_level(F, c)]++;
        REQUIRE(per_level.begin()->first == 2); // d = 2 is the minimum level
        for (const auto& [lvl, cnt] : per_level) {
            REQUIRE(lvl >= 2);
            REQUIRE(lvl <= 6);
        }
    }
    SECTION("labels above the minimum level") {
        cpp_int phi3 = phi_hall(L, 3), phi4 = phi_hall(L, 4);
        int seen_star3 = 0, seen_tri4 = 0, seen_12 = 0;
        for (const auto& c : F.components) {
            if (c.is_star() && c.edge_count() == phi3) {
                REQUIRE(recover_ab(F, c) == std::make_pair(0, 3));
                ++seen_star3;
            }
            if (c.has_3cycle() && c.nu() == phi4) {
                REQUIRE(recover_ab(F, c) == std::make_pair(2, 2));
                ++seen_tri4;
            }
            if (!c.is_star() && c.is_bipartite() && c.nu() == phi3) {
                REQUIRE(recover_ab(F, c) == std::make_pair(1, 2));
                REQUIRE(c.parts().first == 6); // |G|
                ++seen_12;
            }
        }
        REQUIRE(seen_star3 == 1);
        REQUIRE(seen_tri4 == 1);
        REQUIRE(seen_12 == 1);
    }
    SECTION("level d components refuse a label") {
        for (const auto& c : F.components)
            if (component_level(F, c) == 2)
                REQUIRE_THROWS_WITH(recover_ab(F, c),
                                    Catch::Matchers::ContainsSubstring("LevelAtMinimum"));
    }
    SECTION("part sizes strictly increase with a at a fixed level") {
        // level 5: (1,4) and (2,3)
        cpp_int phi5 = phi_hall(L, 5);
        std::vector<cpp_int> parts;
        for (const auto& c : F.components)
            if (!c.is_star() && c.is_bipartite() && c.nu() == phi5)
                parts.push_back(c.parts().first);
        std::sort(parts.begin(), parts.end());
        REQUIRE(parts.size() == 2);
        REQUIRE(parts[0] < parts[1]);
        REQUIRE(parts[0] == 6);
    }
}

TEST_CASE("order, P and Frattini recovery against oracles") {
    for (const auto& spec : {"cyclic:4", "cyclic:5", "cyclic:8", "klein", "sym:3", "dihedral:4",
                             "elemab:2:3", "elemab:5:2", "g20:2", "g20:4", "cyclic:6*cyclic:3",
                             "sym:3*cyclic:3"}) {
        auto G = build_group(spec);
        INFO(spec);
        auto F = lambda_star(G, trunc_for(G));
        auto L = SubgroupLattice::compute(G);
        REQUIRE(recover_order(F) == static_cast<long long>(G.order()));
        REQUIRE(recover_P(F) == dirichlet_polynomial(L));
        REQUIRE(recover_frattini_order(F) == frattini_order_oracle(G));
    }
}

TEST_CASE("decide_nilpotent") {
    auto check = [](const char* spec, bool expect) {
        auto G = build_group(spec);
        INFO(spec);
        auto F = lambda_star(G, trunc_for(G));
        REQUIRE(decide_nilpotent(F) == expect);
    };
    check("cyclic:6*cyclic:3", true);  // nilpotent ...
    check("sym:3*cyclic:3", false);    // ... with the same Dirichlet polynomial
    check("sym:3", false);
    check("klein", true);
    check("dihedral:4", true);
    check("elemab:2:3", true);
    check("cyclic:2*cyclic:4", true);
    check("alt:4*cyclic:2", false);
    check("cyclic:12", true);
    check("sym:3*sym:3", false);
}

TEST_CASE("lstt pipeline on Lambda1* families") {
    auto run = [](const char* spec, int max_t) {
        auto G = build_group(spec);
        INFO(spec);
        auto F = lambda1_star(G, max_t);
        auto R = lstt_pipeline(F);
        auto L = SubgroupLattice::compute(G);
        REQUIRE(R.order == static_cast<long long>(G.order()));
        REQUIRE(R.d == min_generators(G));
        REQUIRE(R.P == dirichlet_polynomial(L));
        REQUIRE(R.frattini_order == frattini_order_oracle(G));
        REQUIRE(R.nilpotent == oracle_nilpotent(G));
    };
    run("sym:3", 6);
    run("klein", 6);
    run("cyclic:4", 6);
    run("cyclic:2", 4);
    run("cyclic:12", 7);
    run("dihedral:4", 6);
    run("elemab:2:3", 9);
    run("g20:4", 7);

    SECTION("trivial group") {
        auto R = lstt_pipeline(lambda1_star(make_cyclic(1), 3));
        REQUIRE(R.order == 1);
        REQUIRE(R.d == 0);
        REQUIRE(R.frattini_order == 1);
        REQUIRE(R.nilpotent);
    }
    SECTION("too few tails") {
        auto s3 = build_group("sym:3");
        REQUIRE_THROWS_WITH(lstt_pipeline(lambda1_star(s3, 4)),
                            Catch::Matchers::ContainsSubstring("InsufficientTruncation"));
    }
    SECTION("tampered family is rejected") {
        auto s3 = build_group("sym:3");
        auto j = family_to_json(lambda1_star(s3, 6));
        j["truncation_level"] = 9; // claims tails that are not there
        REQUIRE_THROWS_WITH(lstt_pipeline(family_from_json(j)),
                            Catch::Matchers::ContainsSubstring("InconsistentFamily"));
    }
    SECTION("wrong kind is rejected") {
        auto s3 = build_group("sym:3");
        REQUIRE_THROWS_AS(lstt_pipeline(lambda_star(s3, 4)), Error);
    }
}
