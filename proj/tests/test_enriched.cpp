#include <doctest.h>

#include "simpcat/corpus.hpp"
#include "simpcat/enriched.hpp"

#include <set>

using namespace simpcat;

namespace {

SSet cube(int d, int max_dim)
{
    SSet c = standard_simplex(0, max_dim);
    for (int t = 0; t < d; ++t)
        c = product(c, standard_simplex(1, max_dim));
    return c;
}

std::set<std::string> names(const SSet& s, int k)
{
    std::set<std::string> out;
    for (int g : s.nd(k))
        out.insert(s.name(g));
    return out;
}

}  // namespace

TEST_CASE("S[2] and S[3] homs")
{
    auto s2 = s_ordinal(2, 2);
    const SSet& h = s2.hom_or_throw(0, 2);
    CHECK(is_isomorphic(h, standard_simplex(1, 2)));
    CHECK(names(h, 0) == std::set<std::string>{"(02)", "(01)(12)"});
    CHECK(names(h, 1) == std::set<std::string>{"((01)(12))"});

    auto s3 = s_ordinal(3, 2);
    const SSet& sq = s3.hom_or_throw(0, 3);
    CHECK(is_isomorphic(sq, cube(2, 2)));
    CHECK(names(sq, 0) == std::set<std::string>{"(03)", "(02)(23)", "(01)(13)", "(01)(12)(23)"});
    CHECK(names(sq, 1) == std::set<std::string>{"((02)(23))", "((01)(13))", "((01)(12))((23))",
                                                "((01))((12)(23))", "((01)(12)(23))"});
    CHECK(names(sq, 2) == std::set<std::string>{"(((01)(12))((23)))", "(((01))((12)(23)))"});
    for (int i = 0; i <= 3; ++i) {
        CHECK(is_isomorphic(s3.hom_or_throw(i, i), standard_simplex(0, 2)));
        if (i < 3)
            CHECK(is_isomorphic(s3.hom_or_throw(i, i + 1), standard_simplex(0, 2)));
        for (int j = 0; j < i; ++j)
            CHECK(s3.hom(i, j) == nullptr);
    }
    // direction: the diagonal runs from the longest path to (03)
    int diag = sq.index("((01)(12)(23))");
    CHECK(sq.name(sq.faces(diag)[1].base) == "(01)(12)(23)");
    CHECK(sq.name(sq.faces(diag)[0].base) == "(03)");
}

TEST_CASE("resolution agrees with the cubes")
{
    for (int n = 0; n <= 4; ++n) {
        CAPTURE(n);
        int md = std::max(1, n - 1);
        auto r = s_resolution(ordinal(n), md);
        auto s = s_ordinal(n, md);
        CHECK(validate_scat(r, std::min(md, 2)).ok);
        CHECK(validate_scat(s, std::min(md, 2)).ok);
        for (int i = 0; i <= n; ++i)
            for (int j = i; j <= n; ++j) {
                CAPTURE(i);
                CAPTURE(j);
                const SSet& a = r.hom_or_throw(i, j);
                a.check_identities();
                CHECK(is_isomorphic(a, s.hom_or_throw(i, j)));
                CHECK(is_isomorphic(a, cube(std::max(0, j - i - 1), md)));
                CHECK(names(a, 0) == names(s.hom_or_throw(i, j), 0));
                CHECK(names(a, 1) == names(s.hom_or_throw(i, j), 1));
            }
    }
}

TEST_CASE("bracket calculus identities")
{
    auto a = commuting_square();
    auto compose_group = [&a](const std::vector<int>& g) {
        int c = g[0];
        for (size_t t = 1; t < g.size(); ++t)
            c = a.compose(g[t], c);
        return a.is_identity(c) ? -1 : c;
    };
    ResSimplex x{{a.arrow_index("f"), a.arrow_index("h")}, {{1}, {}, {}}};
    CHECK(res_parse(res_key(x)) == x);
    for (int i = 0; i <= 3; ++i)
        for (int j = 0; j <= 3; ++j) {
            auto sj = res_degen(x, j);
            if (i == j || i == j + 1)
                CHECK(res_face(sj, i, compose_group) == x);
            if (i < j)
                CHECK(res_face(sj, i, compose_group) == res_degen(res_face(x, i, compose_group), j - 1));
            if (i > j + 1)
                CHECK(res_face(sj, i, compose_group) == res_degen(res_face(x, i - 1, compose_group), j));
            if (i < j)
                CHECK(res_face(res_face(x, j, compose_group), i, compose_group) ==
                      res_face(res_face(x, i, compose_group), j - 1, compose_group));
            if (i <= j)
                CHECK(res_degen(res_degen(x, j), i) == res_degen(res_degen(x, i), j + 1));
        }
    auto r = s_resolution(a, 3);
    for (const auto& [xy, h] : r.homs)
        h.check_identities();
    CHECK(validate_scat(r, 2).ok);
    // hom(a,d) vertices: the composable strings hf, (f)(h), (g)(k)
    const SSet& ad = r.hom_or_throw(a.object_index("a"), a.object_index("d"));
    CHECK(names(ad, 0) == std::set<std::string>{"(hf)", "(f)(h)", "(g)(k)"});
    CHECK_THROWS_AS(s_resolution(cyclic_group(2), 2), std::invalid_argument);
}

TEST_CASE("discrete resolutions")
{
    auto r = s_resolution(discrete(3), 3);
    for (const auto& [xy, h] : r.homs) {
        CHECK(xy.first == xy.second);
        CHECK(is_isomorphic(h, standard_simplex(0, 3)));
    }
}

TEST_CASE("interchange square")
{
    auto sq = interchange_square();
    CHECK(sq.facets.size() == 6);
    int hit = 0;
    for (const auto& f : sq.facets)
        hit += f.source >= 0;
    CHECK(hit == 5);
    CHECK(sq.square.corners ==
          std::vector<std::string>{"(02)(24)", "(01)(12)(24)", "(02)(23)(34)", "(01)(12)(23)(34)"});
    CHECK(sq.edges.size() == 4);
    auto five = cube_facets(5);
    CHECK(five.size() == 8);
    int hit5 = 0;
    std::set<int> sources;
    for (const auto& f : five)
        if (f.source >= 0) {
            ++hit5;
            sources.insert(f.source);
        }
    CHECK(hit5 == 6);
    CHECK(sources.size() == 6);
}

TEST_CASE("cosimplicial operators on S[-]")
{
    auto s2 = s_ordinal(2, 2), s3 = s_ordinal(3, 2), s1 = s_ordinal(1, 2);
    for (int skip = 0; skip <= 3; ++skip) {
        std::vector<int> d;
        for (int t = 0; t <= 3; ++t)
            if (t != skip)
                d.push_back(t);
        std::string why;
        CHECK_MESSAGE(is_valid_sfunctor(s2, s3, s_ordinal_map(d, s2, s3), &why), why);
    }
    for (int rep = 0; rep <= 1; ++rep) {
        std::vector<int> s{0, 1, 2};
        s.insert(s.begin() + rep + 1, rep + 0);
        // s = codegeneracy hitting rep twice: [3] -> [2]
        std::vector<int> f;
        for (int t = 0; t <= 3; ++t)
            f.push_back(t <= rep ? t : t - 1);
        CHECK(is_valid_sfunctor(s3, s2, s_ordinal_map(f, s3, s2)));
    }
    CHECK(is_valid_sfunctor(s1, s2, s_ordinal_map({0, 2}, s1, s2)));
}

TEST_CASE("pi0")
{
    auto p3 = pi0_category(s_ordinal(3, 2));
    CHECK(find_isomorphism(p3, ordinal(3)));
    for (const auto& [name, c] : test_corpus()) {
        if (!is_acyclic(c))
            continue;
        CAPTURE(name);
        CHECK(find_isomorphism(pi0_category(s_resolution(c, 2)), c));
        CHECK(find_isomorphism(pi0_category(scat_from_fincat(c, 2)), c));
    }
    auto g = scat_from_cat2(groupoid_enriched_fixture(), 3);
    auto pg = pi0_category(g);
    CHECK(pg.num_objects() == 2);
    CHECK(pg.num_arrows() == 4);
}

TEST_CASE("homotopy in a hom")
{
    auto s2 = s_ordinal(2, 2);
    const SSet& h = s2.hom_or_throw(0, 2);
    SimplexRef longp{h.index("(01)(12)"), {}}, shortp{h.index("(02)"), {}};
    CHECK(homotopic_in_hom(s2, 0, 2, longp, shortp));
    CHECK(!homotopic_in_hom(s2, 0, 2, shortp, longp));
    CHECK(homotopic_in_hom(s2, 0, 2, shortp, shortp));
}

TEST_CASE("local Kan")
{
    auto g = scat_from_cat2(groupoid_enriched_fixture(), 3);
    CHECK(validate_scat(g, 2).ok);
    CHECK(is_locally_kan(g, 3).ok);
    auto v = is_locally_kan(s_ordinal(3, 2), 2);
    CHECK(!v.ok);
    CHECK(v.x == 0);
    CHECK(v.y == 2);
    CHECK(is_locally_kan(scat_from_fincat(discrete(2), 3), 3).ok);
}

TEST_CASE("diagonal resolution")
{
    for (const auto& c : {ordinal(2), commuting_square(), span(), discrete(2)}) {
        auto d = diag_resolution(scat_from_fincat(c, 3), 3);
        auto r = s_resolution(c, 3);
        CHECK(d.objects == r.objects);
        for (const auto& [xy, h] : r.homs) {
            const SSet* dh = d.hom(xy.first, xy.second);
            REQUIRE(dh);
            dh->check_identities();
            CHECK(is_isomorphic(*dh, h));
        }
        CHECK(validate_scat(d, 2).ok);
    }
    // a genuinely simplicial input: S[2] itself
    auto d2 = diag_resolution(s_ordinal(2, 2), 2);
    for (const auto& [xy, h] : d2.homs)
        h.check_identities();
    CHECK(validate_scat(d2, 2).ok);
}
