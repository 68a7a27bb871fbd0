#include <catch2/catch_amalgamated.hpp>

#include "gg/catalog.hpp"
#include "gg/group.hpp"
#include "gg/morphisms.hpp"

using namespace gg;

TEST_CASE("table validation") {
    SECTION("trivial group") {
        auto g = FiniteGroup::from_table({{0}});
        REQUIRE(g.order() == 1);
        REQUIRE(g.identity() == 0);
    }
    SECTION("C2") {
        auto g = FiniteGroup::from_table({{0, 1}, {1, 0}});
        REQUIRE(g.order() == 2);
        REQUIRE(g.inv(0) == 0);
        REQUIRE(g.inv(1) == 1);
    }
    SECTION("non-Latin square rejected") {
        REQUIRE_THROWS_WITH(FiniteGroup::from_table({{0, 1}, {0, 1}}),
                            Catch::Matchers::ContainsSubstring("NotAGroup"));
    }
    SECTION("no identity rejected") {
        // Latin square with no two-sided identity (0 is only a left identity)
        REQUIRE_THROWS_WITH(FiniteGroup::from_table({{0, 1, 2}, {2, 0, 1}, {1, 2, 0}}),
                            Catch::Matchers::ContainsSubstring("NotAGroup"));
    }
    SECTION("associativity failure rejected") {
        // 5x5 Latin square with identity but non-associative
        std::vector<std::vector<int>> t = {{0, 1, 2, 3, 4},
                                           {1, 0, 3, 4, 2},
                                           {2, 4, 0, 1, 3},
                                           {3, 2, 4, 0, 1},
                                           {4, 3, 1, 2, 0}};
        REQUIRE_THROWS_WITH(FiniteGroup::from_table(t),
                            Catch::Matchers::ContainsSubstring("associativity"));
    }
}

TEST_CASE("builtin families") {
    REQUIRE(build_group("cyclic:6").order() == 6);
    auto d5 = build_group("dihedral:5");
    REQUIRE(d5.order() == 10);
    REQUIRE_FALSE(d5.is_abelian());
    REQUIRE(build_group("sym:3").order() == 6);
    REQUIRE(build_group("sym:4").order() == 24);
    REQUIRE(build_group("alt:5").order() == 60);
    REQUIRE(build_group("klein").order() == 4);
    REQUIRE(build_group("sl2:2").order() == 6);
    REQUIRE(build_group("sl2:4").order() == 60);
    REQUIRE(build_group("elemab:2:3").order() == 8);
    REQUIRE_THROWS_WITH(build_group("frobnicate:7"),
                        Catch::Matchers::ContainsSubstring("UnknownFamily"));
    REQUIRE_THROWS_WITH(build_group("elemab:4:2"),
                        Catch::Matchers::ContainsSubstring("ParameterOutOfRange"));

    SECTION("klein has exponent 2") {
        auto k = build_group("klein");
        for (std::size_t g = 0; g < 4; ++g)
            REQUIRE(k.mul(static_cast<Elem>(g), static_cast<Elem>(g)) == k.identity());
    }
    SECTION("sl2:2 is isomorphic to sym:3") {
        REQUIRE(isomorphic(build_group("sl2:2"), build_group("sym:3")));
    }
    SECTION("sl2:4 is isomorphic to alt:5") {
        REQUIRE(isomorphic(build_group("sl2:4"), build_group("alt:5")));
    }
}

TEST_CASE("products and quotients") {
    SECTION("direct product C2 x C2 = Klein") {
        auto g = direct_product(make_cyclic(2), make_cyclic(2));
        REQUIRE(g.order() == 4);
        REQUIRE(isomorphic(g, build_group("klein")));
    }
    SECTION("semidirect C3 x| C2 (inversion) = Sym(3)") {
        std::vector<std::vector<Elem>> inversion = {{0, 1, 2}, {0, 2, 1}};
        auto g = semidirect_product(make_cyclic(3), make_cyclic(2), inversion);
        REQUIRE(g.order() == 6);
        REQUIRE(isomorphic(g, build_group("sym:3")));
    }
    SECTION("bad action rejected") {
        std::vector<std::vector<Elem>> bad = {{0, 1, 2}, {1, 2, 0}}; // not fixing identity
        REQUIRE_THROWS_WITH(semidirect_product(make_cyclic(3), make_cyclic(2), bad),
                            Catch::Matchers::ContainsSubstring("ActionNotHomomorphism"));
    }
    SECTION("quotient C4 / C2") {
        auto c4 = make_cyclic(4);
        auto n = subgroup_closure(c4, {2});
        auto q = quotient(c4, n);
        REQUIRE(q.order() == 2);
    }
    SECTION("non-normal rejected") {
        auto s3 = build_group("sym:3");
        // a 2-element subgroup of Sym(3) is not normal
        Elem t = 0;
        for (std::size_t g = 1; g < 6; ++g)
            if (s3.elem_order(static_cast<Elem>(g)) == 2) {
                t = static_cast<Elem>(g);
                break;
            }
        REQUIRE_THROWS_WITH(quotient(s3, subgroup_closure(s3, {t})),
                            Catch::Matchers::ContainsSubstring("NotNormal"));
    }
    SECTION("quotient order law on catalog samples") {
        auto g = build_group("cyclic:6*cyclic:3");
        auto n = subgroup_closure(g, {g.mul(3, 0)}); // some element
        if (is_normal(g, n)) REQUIRE(quotient(g, n).order() * n.count() == g.order());
    }
}

TEST_CASE("group axioms hold exhaustively for builtins") {
    for (const auto& spec : {"cyclic:12", "dihedral:6", "sym:4", "alt:4", "elemab:3:2", "g20:2",
                             "g20:4", "sl2:2"}) {
        auto g = build_group(spec);
        INFO(spec);
        std::size_t n = g.order();
        for (std::size_t x = 0; x < n; ++x) {
            REQUIRE(g.mul(g.identity(), static_cast<Elem>(x)) == x);
            REQUIRE(g.mul(static_cast<Elem>(x), g.inv(static_cast<Elem>(x))) == g.identity());
            for (std::size_t y = 0; y < n; ++y)
                for (std::size_t z = 0; z < n; ++z)
                    REQUIRE(g.mul(g.mul(static_cast<Elem>(x), static_cast<Elem>(y)),
                                  static_cast<Elem>(z)) ==
                            g.mul(static_cast<Elem>(x),
                                  g.mul(static_cast<Elem>(y), static_cast<Elem>(z))));
        }
    }
}

TEST_CASE("json round trip") {
    auto g = build_group("dihedral:4");
    auto j = g.to_json();
    auto h = FiniteGroup::from_json(j);
    REQUIRE(h.order() == g.order());
    for (std::size_t a = 0; a < 8; ++a)
        for (std::size_t b = 0; b < 8; ++b)
            REQUIRE(h.mul(static_cast<Elem>(a), static_cast<Elem>(b)) ==
                    g.mul(static_cast<Elem>(a), static_cast<Elem>(b)));
}

TEST_CASE("isomorphism search sanity") {
    REQUIRE_FALSE(isomorphic(build_group("cyclic:6"), build_group("sym:3")));
    REQUIRE(isomorphic(build_group("cyclic:6"), build_group("cyclic:2*cyclic:3")));
    REQUIRE_FALSE(isomorphic(build_group("g20:2"), build_group("g20:4")));
    SECTION("automorphism group sizes") {
        REQUIRE(automorphism_group(build_group("klein")).size() == 6);   // GL(2,2)
        REQUIRE(automorphism_group(build_group("cyclic:6")).size() == 2);
        REQUIRE(automorphism_group(build_group("sym:3")).size() == 6);
    }
}
