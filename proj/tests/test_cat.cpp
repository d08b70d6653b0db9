#include <doctest.h>

#include "simpcat/cat.hpp"
#include "simpcat/corpus.hpp"

using namespace simpcat;

TEST_CASE("corpus categories validate")
{
    for (const auto& [name, c] : test_corpus()) {
        CAPTURE(name);
        CHECK_NOTHROW(c.validate());
    }
    CHECK(test_corpus().size() >= 20);
}

TEST_CASE("builder rejects broken tables")
{
    CatBuilder b;
    b.object("a");
    b.object("b");
    b.object("c");
    b.arrow("f", "a", "b");
    b.arrow("g", "b", "c");
    CHECK_THROWS_AS(b.build(), std::invalid_argument);  // missing g.f
    b.arrow("h", "a", "c");
    b.set("g", "f", "h");
    CHECK_NOTHROW(b.build());

    auto m = monoid({"1", "x"}, {{0, 1}, {1, 0}});
    m.comp[1][0] = 0;  // x.1 = 1 breaks the unit law
    CHECK_THROWS(m.validate());
}

TEST_CASE("nerve shape")
{
    auto n1 = nerve(ordinal(1), 3);
    auto d1 = standard_simplex(1, 3);
    CHECK(is_isomorphic(n1, d1));
    auto z2 = nerve(cyclic_group(2), 5);
    z2.check_identities();
    for (int k = 0; k <= 5; ++k)
        CHECK(z2.count(k) == (1u << k));
    auto n3 = nerve(ordinal(3), 4);
    CHECK(is_isomorphic(n3, standard_simplex(3, 4)));
}

TEST_CASE("nerve chain references")
{
    auto c = ordinal(2);
    auto nd = nerve_data(c, 3);
    int f = c.arrow_index("01"), g = c.arrow_index("12"), id1 = c.arrow_index("11");
    auto x = nd.ref(c, {f, id1, g});
    CHECK(nd.set.dim(x) == 3);
    CHECK(x.degens == Word{1});
    CHECK(nd.arrows_of(c, x) == std::vector<int>{f, id1, g});
    CHECK(nd.set.face(x, 0) == nd.ref(c, {id1, g}));
    CHECK(nd.set.face(x, 1) == nd.ref(c, {f, g}));
    CHECK(nd.set.face(x, 2) == nd.ref(c, {f, g}));
    CHECK(nd.set.face(x, 3) == nd.ref(c, {f, id1}));
}

TEST_CASE("segal maps")
{
    auto s = segal_map(nerve(ordinal(2), 2), 2);
    CHECK(s.domain.size() == s.codomain.size());
    auto h = horn(2, 1, 2);
    auto v = is_strict_segal(h, 2);
    CHECK(!v.ok);
    REQUIRE(v.witness);
    CHECK(v.witness->kind == SegalWitness::NotSurjective);
    CHECK(h.ref_name(v.witness->tuple[0]) == "01");
    CHECK(h.ref_name(v.witness->tuple[1]) == "12");
    CHECK(!is_strict_segal(boundary(2, 2), 2).ok);
    auto t = segal_map(standard_simplex(0, 4), 4);
    CHECK(t.domain.size() == 1);
    CHECK(t.codomain.size() == 1);
}

TEST_CASE("every corpus nerve is strict Segal and reconstructs")
{
    for (const auto& [name, c] : test_corpus()) {
        CAPTURE(name);
        auto n = nerve(c, 4);
        CHECK(is_strict_segal(n, 4).ok);
        auto back = category_from_segal(nerve(c, 3));
        CHECK(find_isomorphism(back, c));
    }
    auto t = category_from_segal(standard_simplex(0, 3));
    CHECK(t.num_objects() == 1);
    CHECK(t.num_arrows() == 1);
    CHECK_THROWS_AS(category_from_segal(horn(2, 1, 3)), std::invalid_argument);
}

TEST_CASE("reconstruction of Z/2 recovers the group table")
{
    auto c = category_from_segal(nerve(cyclic_group(2), 3));
    REQUIRE(c.num_arrows() == 2);
    int g = c.is_identity(0) ? 1 : 0;
    CHECK(c.compose(g, g) == c.identity[0]);
}

TEST_CASE("segal maps are natural along functors")
{
    // [1] -> Z/2 sending the arrow to the generator, and [2] -> [1] collapsing
    auto a = ordinal(2), b = ordinal(1);
    CatFunctor f;
    f.obj = {0, 1, 1};
    f.arr.resize(a.num_arrows());
    for (int x = 0; x < a.num_arrows(); ++x) {
        auto ar = a.arrows[x];
        int d = f.obj[ar.dom], e = f.obj[ar.cod];
        f.arr[x] = b.hom(d, e)[0];
    }
    REQUIRE(is_valid_functor(a, b, f));
    auto na = nerve_data(a, 3), nb = nerve_data(b, 3);
    auto m = nerve_map(a, na, b, nb, f);
    REQUIRE(is_valid_map(na.set, nb.set, m));
    for (int p = 2; p <= 3; ++p)
        for (const auto& x : na.set.simplices(p)) {
            auto sp = spine(na.set, x);
            auto image_sp = spine(nb.set, apply(m, x));
            for (size_t i = 0; i < sp.size(); ++i)
                CHECK(apply(m, sp[i]) == image_sp[i]);
        }
}

TEST_CASE("groupoids")
{
    CHECK(!is_groupoid(ordinal(1)));
    CHECK(!is_groupoid(ordinal(2)));
    CHECK(is_groupoid(free_iso()));
    CHECK(is_groupoid(symmetric3()));
    CHECK(is_groupoid(indiscrete(3)));
    CHECK(!is_groupoid(retraction()));
}

TEST_CASE("isomorphism search on categories")
{
    CHECK(find_isomorphism(cyclic_group(4), cyclic_group(4)));
    CHECK(!find_isomorphism(cyclic_group(4), klein_four()));
    CHECK(find_isomorphism(opposite(ordinal(3)), ordinal(3)));
    CHECK(!find_isomorphism(commuting_square(), noncommuting_square()));
    CHECK(find_isomorphism(product(ordinal(1), ordinal(1)), commuting_square()));
}
