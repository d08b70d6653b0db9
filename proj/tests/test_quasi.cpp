#include <doctest.h>

#include "simpcat/corpus.hpp"
#include "simpcat/quasi.hpp"

using namespace simpcat;

namespace {

HornInstance horn_into(const SSet& x, int n, int i, const std::map<std::string, SimplexRef>& edges)
{
    const SSet& hc = horn_complex(n, i);
    Constraints fixed;
    for (const auto& [name, r] : edges)
        fixed[hc.index(name)] = r;
    auto maps = enumerate_maps(hc, x, fixed);
    REQUIRE(maps.size() == 1);
    return HornInstance{n, i, maps[0]};
}

}  // namespace

TEST_CASE("fillers")
{
    auto pt = standard_simplex(0, 3);
    for (int n = 1; n <= 3; ++n)
        for (int i = 0; i <= n; ++i) {
            auto maps = enumerate_maps(horn_complex(n, i), pt);
            REQUIRE(maps.size() == 1);
            auto f = find_filler(pt, HornInstance{n, i, maps[0]});
            REQUIRE(f);
            CHECK(f->degens.size() == static_cast<size_t>(n));
        }

    auto c1 = ordinal(1);
    auto n1 = nerve_data(c1, 2);
    auto e = n1.ref(c1, {c1.arrow_index("01")});
    auto id0 = n1.ref(c1, {c1.arrow_index("00")});
    auto h = horn_into(n1.set, 2, 0, {{"01", e}, {"02", id0}});
    CHECK(!find_filler(n1.set, h));

    auto c = ordinal(2);
    auto nd = nerve_data(c, 2);
    auto f = nd.ref(c, {c.arrow_index("01")}), g = nd.ref(c, {c.arrow_index("12")});
    auto fill = find_filler(nd.set, horn_into(nd.set, 2, 1, {{"01", f}, {"12", g}}));
    REQUIRE(fill);
    CHECK(nd.set.face(*fill, 1) == nd.ref(c, {c.arrow_index("02")}));
}

TEST_CASE("kan and quasi verdicts")
{
    CHECK(is_kan(standard_simplex(0, 3), 3).ok);
    auto v = is_kan(nerve(ordinal(1), 2), 2);
    CHECK(!v.ok);
    REQUIRE(v.witness);
    CHECK(v.witness->n == 2);
    CHECK((v.witness->i == 0 || v.witness->i == 2));
    CHECK(is_kan(nerve(cyclic_group(2), 3), 3).ok);
    CHECK(is_kan(nerve(free_iso(), 3), 3).ok);
    CHECK(is_quasicategory(horn(2, 1, 2), 2).ok == false);
    auto b = is_quasicategory(boundary(2, 2), 2);
    CHECK(!b.ok);
    CHECK(b.witness->n == 2);
    CHECK(b.witness->i == 1);
    for (const auto& [name, c] : test_corpus()) {
        if (c.num_arrows() > 8)
            continue;
        CAPTURE(name);
        auto n = nerve(c, 3);
        CHECK(is_quasicategory(n, 3).ok);
        CHECK(is_kan(n, 3).ok == is_groupoid(c));
    }
}

TEST_CASE("kan implies quasi")
{
    for (const auto& x : {standard_simplex(1, 3), horn(2, 0, 3), boundary(2, 3),
                          product(standard_simplex(1, 3), standard_simplex(1, 3))}) {
        auto k = is_kan(x, 3), q = is_quasicategory(x, 3);
        CHECK((!k.ok || q.ok));
    }
}

TEST_CASE("special outer horns")
{
    auto c = free_iso();
    auto nd = nerve_data(c, 3);
    auto i = nd.ref(c, {c.arrow_index("i")});
    int count = 0;
    for (const auto& m : enumerate_maps(horn_complex(2, 0), nd.set, {{horn_complex(2, 0).index("01"), i}})) {
        auto r = special_outer_horn_filler(c, nd, HornInstance{2, 0, m});
        CHECK(r.lemma_applies);
        CHECK(r.filler);
        ++count;
    }
    CHECK(count == 2);

    auto c1 = ordinal(1);
    auto n1 = nerve_data(c1, 3);
    auto cert = non_invertibility_certificate(c1, n1, c1.arrow_index("01"), 3);
    REQUIRE(cert);
    CHECK(!find_filler(n1.set, *cert));
    CHECK(!non_invertibility_certificate(c1, n1, c1.arrow_index("00"), 3));
    for (const auto& m : enumerate_maps(horn_complex(2, 0), n1.set, {{horn_complex(2, 0).index("01"), n1.ref(c1, {c1.arrow_index("00")})}})) {
        auto r = special_outer_horn_filler(c1, n1, HornInstance{2, 0, m});
        CHECK(r.lemma_applies);
        CHECK(r.filler);
    }
}

TEST_CASE("commuting spheres")
{
    auto c = ordinal(2);
    auto nd = nerve_data(c, 2);
    auto f = nd.ref(c, {c.arrow_index("01")}), g = nd.ref(c, {c.arrow_index("12")}),
         h = nd.ref(c, {c.arrow_index("02")});
    auto b = is_commuting_sphere(nd.set, make_sphere(nd.set, g, h, f));
    REQUIRE(b);
    CHECK(!b->degenerate());
    auto id0 = nd.ref(c, {c.arrow_index("00")});
    auto id1 = nd.ref(c, {c.arrow_index("11")});
    auto d = is_commuting_sphere(nd.set, make_sphere(nd.set, id1, f, f));
    REQUIRE(d);
    CHECK(d->degens == Word{1});
    (void)id0;
    auto pp = parallel_pair();
    auto np = nerve_data(pp, 2);
    auto pf = np.ref(pp, {pp.arrow_index("f")}), pg = np.ref(pp, {pp.arrow_index("g")});
    auto idb = np.ref(pp, {pp.arrow_index("id_b")});
    CHECK(!is_commuting_sphere(np.set, make_sphere(np.set, idb, pg, pf)));
}

TEST_CASE("homotopy of edges")
{
    auto z2 = cyclic_group(2);
    auto nz = nerve_data(z2, 3);
    auto e = nz.ref(z2, {0}), g = nz.ref(z2, {1});
    CHECK(!homotopic_edges(nz.set, e, g));
    CHECK(homotopic_edges(nz.set, g, g));
    CHECK_THROWS_AS(homotopic_edges(boundary(2, 3), SimplexRef{3, {}}, SimplexRef{3, {}}),
                    std::invalid_argument);
    auto pp = parallel_pair();
    auto np = nerve_data(pp, 3);
    CHECK_THROWS_AS(homotopic_edges(np.set, np.ref(pp, {pp.arrow_index("f")}), np.vertex(0)),
                    std::invalid_argument);
}

TEST_CASE("fundamental category")
{
    for (const auto& [name, c] : test_corpus()) {
        if (c.num_arrows() > 10)
            continue;
        CAPTURE(name);
        HoStats st;
        auto h = ho_category(nerve(c, 3), &st);
        CHECK(find_isomorphism(h, c));
        CHECK(st.fillers_checked > 0);
    }
    auto t = ho_category(standard_simplex(0, 3));
    CHECK(t.num_arrows() == 1);
    CHECK(is_groupoid(ho_category(nerve(cyclic_group(2), 3))));
}
