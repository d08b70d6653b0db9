#include <doctest.h>

#include "simpcat/corpus.hpp"
#include "simpcat/segal.hpp"

#include <functional>
#include <set>

using namespace simpcat;

namespace {

std::vector<std::vector<int>> monotone_maps(int m, int n)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void()> rec = [&]() {
        if (static_cast<int>(cur.size()) == m + 1) {
            out.push_back(cur);
            return;
        }
        for (int v = cur.empty() ? 0 : cur.back(); v <= n; ++v) {
            cur.push_back(v);
            rec();
            cur.pop_back();
        }
    };
    rec();
    return out;
}

// every Gamma map S -> T: each element of T goes to one source or nowhere
std::vector<GammaMap> gamma_maps(int s, int t)
{
    std::vector<GammaMap> out;
    int total = 1;
    for (int u = 0; u < t; ++u)
        total *= s + 1;
    for (int code = 0; code < total; ++code) {
        GammaMap g{s, t, std::vector<std::vector<int>>(s)};
        int c = code;
        for (int u = 1; u <= t; ++u, c /= s + 1)
            if (c % (s + 1) < s)
                g.theta[c % (s + 1)].push_back(u);
        out.push_back(g);
    }
    return out;
}

std::vector<CatFunctor> all_functors(const FinCat& a, const FinCat& b)
{
    std::vector<CatFunctor> out;
    CatFunctor f;
    f.obj.assign(a.num_objects(), 0);
    f.arr.assign(a.num_arrows(), 0);
    std::function<void(int)> objs, arrs;
    arrs = [&](int x) {
        if (x == a.num_arrows()) {
            if (is_valid_functor(a, b, f))
                out.push_back(f);
            return;
        }
        for (int y : b.hom(f.obj[a.arrows[x].dom], f.obj[a.arrows[x].cod])) {
            f.arr[x] = y;
            arrs(x + 1);
        }
    };
    objs = [&](int x) {
        if (x == a.num_objects()) {
            arrs(0);
            return;
        }
        for (int y = 0; y < b.num_objects(); ++y) {
            f.obj[x] = y;
            objs(x + 1);
        }
    };
    objs(0);
    return out;
}

std::vector<SCat> scat_corpus()
{
    std::vector<SCat> out;
    for (const auto& [name, c] : test_corpus())
        if (c.num_arrows() <= 12)
            out.push_back(scat_from_fincat(c, 1));
    out.push_back(scat_from_cat2(groupoid_enriched_fixture(), 2));
    out.push_back(scat_from_cat2(truncation_fixture(), 2));
    out.push_back(s_ordinal(3, 2));
    out.push_back(s_resolution(ordinal(2), 2));
    return out;
}

int cell(const NSSet& a, const std::vector<int>& m, const std::string& name)
{
    const auto& v = a.at(m);
    for (size_t t = 0; t < v.size(); ++t)
        if (v[t] == name)
            return static_cast<int>(t);
    FAIL("no cell " << name);
    return -1;
}

int face_at(const NSSet& a, const std::vector<int>& m, int d, int i, int x)
{
    return a.maps.at({m, d, 0, i})[x];
}

}  // namespace

TEST_CASE("Gamma maps")
{
    GammaMap th{1, 2, {{1, 2}}};
    GammaMap ph{2, 2, {{1}, {2}}};
    CHECK(gamma_compose(th, ph).theta == std::vector<std::vector<int>>{{1, 2}});
    CHECK_THROWS_AS(validate_gamma(GammaMap{2, 2, {{1}, {1}}}), std::invalid_argument);
    CHECK_THROWS_AS(gamma_compose(th, gamma_identity(3)), std::invalid_argument);

    for (int s = 0; s <= 3; ++s)
        for (int t = 0; t <= 3; ++t)
            for (const auto& f : gamma_maps(s, t)) {
                validate_gamma(f);
                CHECK(gamma_compose(gamma_identity(s), f) == f);
                CHECK(gamma_compose(f, gamma_identity(t)) == f);
            }
    int triples = 0;
    for (int s = 0; s <= 2; ++s)
        for (int t = 0; t <= 2; ++t)
            for (int u = 0; u <= 3; ++u)
                for (const auto& f : gamma_maps(s, t))
                    for (const auto& g : gamma_maps(t, u))
                        for (const auto& h : gamma_maps(u, 2)) {
                            ++triples;
                            REQUIRE(gamma_compose(gamma_compose(f, g), h) == gamma_compose(f, gamma_compose(g, h)));
                        }
    CHECK(triples > 1000);
}

TEST_CASE("Delta to Gamma")
{
    CHECK(delta_to_gamma({0, 1, 2, 3}, 3) == gamma_identity(3));
    auto c = delta_to_gamma({0, 0, 0}, 2);
    CHECK(c.theta == std::vector<std::vector<int>>{{}, {}});
    CHECK(delta_to_gamma({0, 2}, 3).theta == std::vector<std::vector<int>>{{1, 2}});
    CHECK_THROWS_AS(delta_to_gamma({1, 0}, 2), std::invalid_argument);

    for (int m = 0; m <= 5; ++m)
        for (int n = 0; n <= 5; ++n) {
            auto fs = monotone_maps(m, n);
            for (int k = 0; k <= 5; ++k) {
                auto gs = monotone_maps(n, k);
                for (const auto& f : fs)
                    for (const auto& g : gs) {
                        std::vector<int> gf;
                        for (int v : f)
                            gf.push_back(g[v]);
                        if (delta_to_gamma(gf, k) != gamma_compose(delta_to_gamma(f, n), delta_to_gamma(g, k)))
                            FAIL("functoriality fails at m=" << m << " n=" << n << " k=" << k);
                    }
            }
        }
}

TEST_CASE("Segal precategory row 0")
{
    SegalPrecat pt = constant_precat(standard_simplex(0, 3), 0, 2);
    CHECK(is_segal_precat(pt.a).ok);
    CHECK(pt.objects == std::vector<std::string>{"0"});

    BiSSet bad;
    bad.rows.push_back(standard_simplex(1, 2));
    bad.face.resize(1);
    bad.degen.resize(1);
    CHECK(validate_bisset(bad).ok);
    auto v = is_segal_precat(bad);
    CHECK_FALSE(v.ok);
    CHECK(v.offending == "01");
    CHECK(v.dim == 1);
    CHECK_THROWS_AS(as_segal_precat(bad), std::invalid_argument);
}

TEST_CASE("row maps")
{
    SegalPrecat a = scat_nerve(scat_from_fincat(ordinal(2), 1), 3);
    CHECK(validate_bisset(a.a).ok);
    // every monotone map agrees with the composite of its factors
    for (int m = 0; m <= 3; ++m)
        for (int p = 0; p <= 3; ++p)
            for (const auto& f : monotone_maps(m, p))
                for (int k = 0; k <= 3; ++k)
                    for (const auto& g : monotone_maps(k, m)) {
                        std::vector<int> fg;
                        for (int v : g)
                            fg.push_back(f[v]);
                        CHECK(maps_equal(row_map(a.a, fg, p), compose(row_map(a.a, g, m), row_map(a.a, f, p))));
                    }
    // a broken face is noticed
    BiSSet broken = a.a;
    std::swap(broken.face[2][0], broken.face[2][2]);
    CHECK_FALSE(validate_bisset(broken).ok);
}

TEST_CASE("nerve of an SCat is strict and recovers pi0")
{
    for (const SCat& b : scat_corpus()) {
        CAPTURE(b.objects.size());
        SegalPrecat a = scat_nerve(b, 3);
        CHECK(a.objects == b.objects);
        for (const auto& lv : bisimplicial_segal_check(a, 3))
            CHECK(lv.kind == SegalKind::Strict);
        FinCat h = ho_of_segal(a);
        CHECK(find_isomorphism(h, pi0_category(b)).has_value());
    }
    // discrete homs give the nerve of the category in every row
    FinCat c = commuting_square();
    SegalPrecat a = scat_nerve(scat_from_fincat(c, 1), 3);
    SSet n = nerve(c, 3);
    for (int p = 0; p <= 3; ++p) {
        CHECK(a.a.rows[p].nd(0).size() == n.count(p));
        CHECK(a.a.rows[p].nd(1).empty());
    }
}

TEST_CASE("constant precategories")
{
    for (const auto& [name, c] : test_corpus()) {
        if (c.num_arrows() > 12)
            continue;
        CAPTURE(name);
        SegalPrecat a = constant_precat(nerve(c, 3), 3, 1);
        for (const auto& lv : bisimplicial_segal_check(a, 3))
            CHECK(lv.kind == SegalKind::Strict);
        CHECK(find_isomorphism(ho_of_segal(a), c).has_value());
    }
    FinCat t = ho_of_segal(constant_precat(standard_simplex(0, 3), 3, 1));
    CHECK(t.num_objects() == 1);
    CHECK(t.num_arrows() == 1);

    SegalPrecat h = constant_precat(horn(2, 1, 3), 3, 1);
    auto levels = bisimplicial_segal_check(h, 2);
    CHECK(levels[0].kind == SegalKind::Strict);
    CHECK(levels[1].kind == SegalKind::Unknown);
    CHECK(levels[1].q == 0);
    CHECK(levels[1].witness == "no simplex over (01, 12)");
    CHECK_THROWS_AS(ho_of_segal(h), std::invalid_argument);
}

TEST_CASE("fat precategory needs certificates")
{
    FinCat c = ordinal(2);
    FatPrecat f = fat_precategory(c, 3, 2);
    CHECK(f.certificates.size() == 2);
    auto bare = bisimplicial_segal_check(f.a, 3);
    CHECK(bare[0].kind == SegalKind::Strict);
    CHECK(bare[1].kind == SegalKind::Unknown);
    CHECK(bare[1].witness.find("no simplex over") == 0);
    CHECK_THROWS_AS(ho_of_segal(f.a), std::invalid_argument);

    auto levels = bisimplicial_segal_check(f.a, 3, f.certificates);
    CHECK(levels[1].kind == SegalKind::Certified);
    CHECK(levels[2].kind == SegalKind::Certified);
    CHECK(find_isomorphism(ho_of_segal(f.a, f.certificates), c).has_value());

    // a constant homotopy on the fibered power does not start at delta.g
    auto certs = f.certificates;
    FiberedPower fp = fibered_power(f.a, 2);
    Product pq = product_with_projections(fp.set.set, standard_simplex(1, 2));
    certs[0].homotopy_p = pq.p1;
    auto rej = bisimplicial_segal_check(f.a, 2, certs);
    CHECK(rej[1].kind == SegalKind::Unknown);
    CHECK(rej[1].rejected == "H_P(-,0) = delta.g");

    // on a category without composable non-identities the thickening is strict
    FatPrecat g = fat_precategory(ordinal(1), 2, 2);
    for (const auto& lv : bisimplicial_segal_check(g.a, 2))
        CHECK(lv.kind == SegalKind::Strict);
}

TEST_CASE("truncation of a strict 2-category")
{
    NSSet a = nsset_of_cat2(truncation_fixture());
    validate_nsset(a);
    Truncation t = truncate(a);
    validate_nsset(t.t);
    CHECK(t.t.arity == 1);
    CHECK(t.t.at({0}) == std::vector<std::string>{"x", "y"});
    CHECK(t.t.at({1}) == std::vector<std::string>{"x>x:1x", "x>y:f", "x>y:h", "y>y:1y"});
    const auto& tau = t.tau.at({1});
    CHECK(tau[cell(a, {1, 0}, "x>y:f")] == tau[cell(a, {1, 0}, "x>y:g")]);
    CHECK(tau[cell(a, {1, 0}, "x>y:f")] != tau[cell(a, {1, 0}, "x>y:h")]);
    // the truncated category: id_x, id_y and two arrows x -> y
    FinCat c = nsset_slice_category(t.t, {});
    CHECK(c.num_objects() == 2);
    CHECK(c.num_arrows() == 4);

    Truncation t2 = truncate(t.t);
    CHECK(t2.t.arity == 0);
    CHECK(t2.t.at({}) == std::vector<std::string>{"x", "y"});

    NSSet s = nsset_from_sset(nerve(discrete(3), 3));
    Truncation ts = truncate(s);
    CHECK(ts.t.at({}) == s.at({0}));
    CHECK_THROWS_AS(truncate(nsset_from_sset(horn(2, 1, 3))), std::invalid_argument);
}

TEST_CASE("truncation is functorial")
{
    std::vector<FinCat> cats{discrete(1), discrete(2), ordinal(1), free_iso(), cyclic_group(2), span()};
    std::vector<NSSet> ns;
    std::vector<NerveSet> nd;
    std::vector<Truncation> tr;
    for (const auto& c : cats) {
        nd.push_back(nerve_data(c, 3));
        ns.push_back(nsset_from_sset(nd.back().set));
        tr.push_back(truncate(ns.back()));
    }
    int checked = 0;
    for (size_t x = 0; x < cats.size(); ++x)
        for (size_t y = 0; y < cats.size(); ++y)
            for (size_t z = 0; z < cats.size(); ++z) {
                auto fs = all_functors(cats[x], cats[y]);
                auto gs = all_functors(cats[y], cats[z]);
                for (size_t u = 0; u < fs.size() && u < 3; ++u)
                    for (size_t v = 0; v < gs.size() && v < 3; ++v) {
                        NSMap f = nsmap_from_smap(nd[x].set, nd[y].set, nerve_map(cats[x], nd[x], cats[y], nd[y], fs[u]));
                        NSMap g = nsmap_from_smap(nd[y].set, nd[z].set, nerve_map(cats[y], nd[y], cats[z], nd[z], gs[v]));
                        REQUIRE(is_natural(ns[x], ns[y], f));
                        NSMap tf = truncate_map(ns[x], tr[x], ns[y], tr[y], f);
                        NSMap tg = truncate_map(ns[y], tr[y], ns[z], tr[z], g);
                        NSMap tgf = truncate_map(ns[x], tr[x], ns[z], tr[z], compose_nsmap(g, f));
                        CHECK(tgf.at == compose_nsmap(tg, tf).at);
                        ++checked;
                    }
            }
    CHECK(checked > 50);
    NSSet a = nsset_of_cat2(truncation_fixture());
    Truncation t = truncate(a);
    CHECK(truncate_map(a, t, a, t, identity_nsmap(a)).at == identity_nsmap(t.t).at);
}

TEST_CASE("n-equivalences")
{
    auto ns = [](const FinCat& c) { return nsset_from_sset(nerve(c, 3)); };
    auto fmap = [](const FinCat& a, const FinCat& b, const CatFunctor& f) {
        NerveSet na = nerve_data(a, 3), nb = nerve_data(b, 3);
        return nsmap_from_smap(na.set, nb.set, nerve_map(a, na, b, nb, f));
    };
    NSSet iso = ns(free_iso());
    CHECK(n_equivalence_check(iso, iso, identity_nsmap(iso), 1));

    FinCat pt = discrete(1);
    CHECK(n_equivalence_check(ns(pt), iso, fmap(pt, free_iso(), CatFunctor{{0}, {0}}), 1));

    std::string why;
    CHECK_FALSE(n_equivalence_check(ns(pt), ns(discrete(2)), fmap(pt, discrete(2), CatFunctor{{0}, {0}}), 1, &why));
    CHECK(why.find("T^1(f) misses") == 0);

    FinCat o1 = ordinal(1);
    auto inc = all_functors(o1, free_iso());
    CatFunctor bij;
    for (const auto& f : inc)
        if (f.obj == std::vector<int>{0, 1})
            bij = f;
    CHECK_FALSE(n_equivalence_check(ns(o1), iso, fmap(o1, free_iso(), bij), 1, &why));
    CHECK(why.find("on the hom from") == 0);

    NSSet a = nsset_of_cat2(truncation_fixture());
    CHECK(n_equivalence_check(a, a, identity_nsmap(a), 2));
    CHECK_THROWS_AS(n_equivalence_check(a, a, identity_nsmap(a), 1), std::invalid_argument);

    std::map<std::vector<int>, std::vector<int>> emb;
    NSSet h = hom_slice(a, 0, 1, &emb);
    CHECK(h.arity == 1);
    CHECK(h.at({0}) == std::vector<std::string>{"x>y:f", "x>y:g", "x>y:h"});
    CHECK(find_isomorphism(nsset_slice_category(h, {}), truncation_fixture().homs.at({0, 1})).has_value());
}

TEST_CASE("horizontal composition, strict groupoid fixture")
{
    NSSet a = nsset_of_cat2(groupoid_enriched_fixture());
    Gamma2 g = strict_gamma2(a);
    Alpha2 al = identity_alpha2(a, g);
    int e1 = static_cast<int>(a.at({1, 1}).size());
    auto dom = [&](int c) { return face_at(a, {1, 1}, 1, 1, c); };
    auto cod = [&](int c) { return face_at(a, {1, 1}, 1, 0, c); };
    auto ident = [&](int c) { return a.maps.at({{1, 0}, 1, 1, 0})[dom(c)] == c; };
    auto ends = [&](int obj1) {  // a 1-cell's source and target objects
        return std::make_pair(face_at(a, {1, 0}, 0, 1, obj1), face_at(a, {1, 0}, 0, 0, obj1));
    };
    int pairs = 0;
    for (int x = 0; x < e1; ++x)
        for (int y = 0; y < e1; ++y) {
            if (ends(dom(x)).second != ends(dom(y)).first)
                continue;
            ++pairs;
            HorizontalResult r = horizontal_compose_2cells(a, g, al, x, y);
            CHECK(r.conjugated == std::make_pair(x, y));
            CHECK(ends(r.composite).first == ends(dom(x)).first);
            CHECK(ends(r.composite).second == ends(dom(y)).second);
            // addition in Z/2
            CHECK(ident(r.composite_cell) == (ident(x) == ident(y)));
            CHECK(dom(r.composite_cell) == r.composite);
        }
    CHECK(pairs == 32);
}

TEST_CASE("horizontal composition, indiscrete monoidal fixture")
{
    NSSet a = nsset_of_cat2(indiscrete_monoidal_fixture());
    validate_nsset(a);
    Gamma2 g = strict_gamma2(a);
    Alpha2 al = identity_alpha2(a, g);
    int n1 = static_cast<int>(a.at({1, 0}).size()), e1 = static_cast<int>(a.at({1, 1}).size());
    REQUIRE(n1 == 2);
    REQUIRE(e1 == 4);
    auto dom = [&](int c) { return face_at(a, {1, 1}, 1, 1, c); };
    auto cod = [&](int c) { return face_at(a, {1, 1}, 1, 0, c); };
    auto obj = [&](int c) { return a.at({1, 0})[c] == "*>*:x0" ? 0 : 1; };
    auto id1 = [&](int f) { return a.maps.at({{1, 0}, 1, 1, 0})[f]; };
    auto between = [&](int f, int f2) {
        for (int c = 0; c < e1; ++c)
            if (dom(c) == f && cod(c) == f2)
                return c;
        return -1;
    };

    // the swap certificate: gamma'(f, g) = gamma(tf, tg), alpha' made of the unique isos
    auto t1 = [&](int f) { return 1 - f; };  // cells at (1,0) are x0, x1 in order
    auto t2 = [&](int c) { return between(t1(dom(c)), t1(cod(c))); };
    Gamma2 gs;
    Alpha2 as;
    for (int f = 0; f < n1; ++f)
        for (int h = 0; h < n1; ++h) {
            gs.obj[{f, h}] = g.obj.at({t1(f), t1(h)});
            as.at[{f, h}] = {between(t1(f), f), between(t1(h), h)};
        }
    for (int x = 0; x < e1; ++x)
        for (int y = 0; y < e1; ++y)
            gs.arr[{x, y}] = g.arr.at({t2(x), t2(y)});

    Truncation tr = truncate(a);
    for (int x = 0; x < e1; ++x)
        for (int y = 0; y < e1; ++y) {
            HorizontalResult r = horizontal_compose_2cells(a, g, al, x, y);
            CHECK(obj(r.composite) == (obj(dom(x)) + obj(dom(y))) % 2);
            CHECK(dom(r.composite_cell) == r.composite);
            CHECK(obj(cod(r.composite_cell)) == (obj(cod(x)) + obj(cod(y))) % 2);
            if (x == id1(dom(x)) && y == id1(dom(y)))
                CHECK(r.composite_cell == id1(r.composite));

            HorizontalResult s = horizontal_compose_2cells(a, gs, as, x, y);
            CHECK(s.sigma != r.sigma);
            CHECK(tr.tau.at({1})[s.composite] == tr.tau.at({1})[r.composite]);
            CHECK(between(r.composite, s.composite) >= 0);
        }

    // a certificate whose alpha is not natural is rejected
    Alpha2 bad = as;
    bad.at[{0, 0}] = {id1(0), id1(0)};
    CHECK_THROWS_WITH_AS(horizontal_compose_2cells(a, gs, bad, 0, 0), doctest::Contains("certificate rejected"),
                         std::invalid_argument);
}
