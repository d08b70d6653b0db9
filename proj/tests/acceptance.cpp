// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "simpcat/cli.hpp"
#include "simpcat/corpus.hpp"
#include "simpcat/dk.hpp"
#include "simpcat/hc_nerve.hpp"
#include "simpcat/io.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace simpcat;
namespace fs = std::filesystem;

namespace {

struct Fail : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void need(bool ok, const std::string& what)
{
    if (!ok)
        throw Fail(what);
}

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

// ---- criteria ----

std::string resolution_cubes()
{
    int homs = 0;
    for (int n = 0; n <= 5; ++n) {
        int md = std::max(1, n - 1);
        SCat r = s_resolution(ordinal(n), md);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                need(is_isomorphic(r.hom_or_throw(i, j), cube(j - i - 1, md)).has_value(),
                     "S[" + std::to_string(n) + "](" + std::to_string(i) + "," + std::to_string(j) + ") is not a cube");
                ++homs;
            }
    }
    return std::to_string(homs) + " homs";
}

std::string golden_square()
{
    SCat s3 = s_ordinal(3, 2);
    const SSet& sq = s3.hom_or_throw(0, 3);
    need(names(sq, 0) == std::set<std::string>{"(03)", "(02)(23)", "(01)(13)", "(01)(12)(23)"}, "vertex set");
    need(names(sq, 1) == std::set<std::string>{"((02)(23))", "((01)(13))", "((01)(12))((23))", "((01))((12)(23))",
                                               "((01)(12)(23))"},
         "edge labels");
    int diag = sq.index("((01)(12)(23))");
    need(sq.name(sq.faces(diag)[1].base) == "(01)(12)(23)" && sq.name(sq.faces(diag)[0].base) == "(03)",
         "diagonal endpoints");
    need(names(sq, 2).size() == 2, "two triangles");
    return "4 vertices, 5 edges, 2 triangles";
}

std::string interchange()
{
    SCat s4 = s_ordinal(4, 3);
    need(is_isomorphic(s4.hom_or_throw(0, 4), cube(3, 3)).has_value(), "S[4](0,4) is not a 3-cube");
    InterchangeSquare sq = interchange_square();
    int hit = 0;
    for (const auto& f : sq.facets)
        hit += f.source >= 0;
    need(sq.facets.size() == 6 && hit == 5, "facet count");
    need(sq.square.source < 0, "remaining face is an image");
    need(sq.square.corners ==
             std::vector<std::string>{"(02)(24)", "(01)(12)(24)", "(02)(23)(34)", "(01)(12)(23)(34)"},
         "remaining face corners");
    return "5 of 6 facets are coface images";
}

std::string nerve_lemmas()
{
    int cats = 0, groupoids = 0;
    for (const auto& [name, c] : test_corpus()) {
        need(c.num_objects() <= 5 && c.num_arrows() <= 20, name + " is outside the corpus bounds");
        SSet n = nerve(c, 4);
        need(is_quasicategory(n, 4).ok, "nerve of " + name + " is not quasi");
        need(is_kan(n, 3).ok == is_groupoid(c), "Kan verdict on " + name);
        ++cats;
        groupoids += is_groupoid(c);
    }
    need(cats >= 20 && groupoids >= 5, "corpus too small");
    return std::to_string(cats) + " categories, " + std::to_string(groupoids) + " groupoids";
}

std::string segal_round_trip()
{
    int cats = 0;
    for (const auto& [name, c] : test_corpus()) {
        need(find_isomorphism(category_from_segal(nerve(c, 3)), c).has_value(), "round trip on " + name);
        ++cats;
    }
    for (const SSet& x : {horn(2, 1, 3), boundary(2, 3)}) {
        SegalVerdict v = is_strict_segal(x, 2);
        need(!v.ok && v.witness && !v.witness->tuple.empty(), "no witness");
        need(v.witness->tuple.size() == 2, "witness spine length");
    }
    return std::to_string(cats) + " categories; horn and boundary rejected with spines";
}

std::string fundamental_category()
{
    long long fillers = 0;
    int cats = 0;
    for (const auto& [name, c] : test_corpus()) {
        HoStats st;
        FinCat h = ho_category(nerve(c, 3), &st);
        need(find_isomorphism(h, c).has_value(), "ho of " + name);
        fillers += st.fillers_checked;
        ++cats;
    }
    need(is_groupoid(ho_category(nerve(cyclic_group(2), 3))), "ho of Z/2 is not a groupoid");
    return std::to_string(cats) + " categories, " + std::to_string(fillers) + " fillers compared";
}

std::string dwyer_kan()
{
    auto gens = [](const SimpGrpd& g, int n) {
        std::set<std::string> out;
        for (const auto& x : g.levels[n].gens)
            out.insert(x.name);
        return out;
    };
    SimpGrpd g = dk_groupoid(standard_simplex(2, 3), 1);
    need(gens(g, 0) == std::set<std::string>{"01", "02", "12"}, "G_0 generators");
    need(gens(g, 1) == std::set<std::string>{"011", "012", "022", "122"}, "G_1 generators");
    bool found = false;
    for (size_t t = 0; t < g.levels[1].gens.size(); ++t)
        if (g.levels[1].gens[t].name == "012") {
            need(word_string(g, 0, g.levels[1].face[t][0]) == "(02).(12)^-1", "d0(012)");
            found = true;
        }
    need(found, "no 012");
    std::vector<SSet> ks;
    for (int n = 0; n <= 3; ++n)
        ks.push_back(standard_simplex(n, 4));
    ks.push_back(horn(2, 1, 4));
    ks.push_back(boundary(2, 4));
    int checks = 0;
    for (const auto& k : ks) {
        GrpdReport r = verify_simplicial_groupoid(dk_groupoid(k, 3), 3);
        need(r.ok, "identity " + (r.failures.empty() ? std::string() : r.failures.front().identity));
        checks += r.checks;
    }
    GrpdReport bad = verify_simplicial_groupoid(dk_untwisted(standard_simplex(2, 3), 2), 2);
    need(!bad.ok, "untwisted face passes");
    return std::to_string(checks) + " identity checks; untwisted face fails on " + bad.failures.front().identity;
}

std::string hammocks()
{
    std::vector<LocPair> pairs{loc_pair(ordinal(2), {"01"}),        loc_pair(commuting_square(), {"f", "k"}),
                               loc_pair(noncommuting_square(), {"f"}), loc_isos(free_iso()),
                               loc_pair(retraction(), {"r"}),        loc_isos(cyclic_group(2)),
                               loc_identities(span())};
    std::function<void(const LocPair&, const Hammock&, std::set<Hammock>&)> forms =
        [&](const LocPair& p, const Hammock& h, std::set<Hammock>& out) {
            auto rs = rewrites(p, h);
            if (rs.empty())
                out.insert(h);
            for (const auto& r : rs) {
                Hammock next = apply_rewrite(p, h, r);
                need(next.length() < h.length(), "a rewrite does not shorten");
                forms(p, next, out);
            }
        };
    int seen = 0, triples = 0;
    std::mt19937 rng(7);
    for (const auto& p : pairs) {
        int n = p.c.num_objects();
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int k = 0; k <= 2; ++k)
                    for (const auto& h : enumerate_hammocks(p, x, y, k, 4, nullptr, false)) {
                        std::set<Hammock> out;
                        forms(p, h, out);
                        need(out.size() == 1 && *out.begin() == reduce_hammock(p, h), "not confluent");
                        ++seen;
                    }
        std::map<std::pair<int, int>, std::vector<Hammock>> homs;
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                homs[{x, y}] = enumerate_hammocks(p, x, y, 1, 3);
        for (int trial = 0; trial < 200; ++trial) {
            int x = rng() % n, y = rng() % n, z = rng() % n, w = rng() % n;
            const auto &a = homs[{x, y}], &b = homs[{y, z}], &c = homs[{z, w}];
            if (a.empty() || b.empty() || c.empty())
                continue;
            const Hammock& f = a[rng() % a.size()];
            const Hammock& g = b[rng() % b.size()];
            const Hammock& h = c[rng() % c.size()];
            need(compose_hammocks(p, compose_hammocks(p, f, g), h) == compose_hammocks(p, f, compose_hammocks(p, g, h)),
                 "composition is not associative");
            need(compose_hammocks(p, identity_hammock(p, x, 1), f) == f &&
                     compose_hammocks(p, f, identity_hammock(p, y, 1)) == f,
                 "composition is not unital");
            ++triples;
        }
    }
    need(triples >= 100, "too few triples");
    int homs = 0;
    for (const auto& [name, c] : test_corpus()) {
        LocPair p = loc_identities(c);
        for (int x = 0; x < c.num_objects(); ++x)
            for (int y = 0; y < c.num_objects(); ++y) {
                auto hs = enumerate_hammocks(p, x, y, 0, 3);
                std::set<int> arrows;
                for (const auto& h : hs)
                    if (h.length() == 1)
                        arrows.insert(h.arr[0][0]);
                    else if (h.length() == 0)
                        arrows.insert(c.identity[x]);
                auto hom = c.hom(x, y);
                need(hs.size() == hom.size() && arrows == std::set<int>(hom.begin(), hom.end()), "bijection on " + name);
                ++homs;
            }
    }
    return std::to_string(seen) + " hammocks confluent, " + std::to_string(triples) + " triples, " +
           std::to_string(homs) + " homs";
}

std::string hc_nerve_check()
{
    HcQuasiVerdict v = hc_nerve_is_quasi(scat_from_cat2(groupoid_enriched_fixture(), 2), 3);
    need(v.locally_kan && v.verdict.ok, "groupoid fixture");
    int cats = 0;
    for (const char* name : {"ord2", "z2", "square", "parallel", "retraction", "iso", "span", "disc2"}) {
        FinCat c = corpus_cat(name);
        HcNerve h = hc_nerve(scat_from_fincat(c, 2), 3);
        need(is_isomorphic(h.nerve.set, nerve(c, 3)).has_value(), std::string("discrete homs on ") + name);
        ++cats;
    }
    return std::to_string(v.verdict.horns_checked) + " inner horns filled; " + std::to_string(cats) +
           " discrete-hom nerves match";
}

std::string gamma_algebra()
{
    long long assoc = 0, unit = 0, func = 0;
    for (int s = 0; s <= 5; ++s)
        for (int t = 0; t <= 5; ++t)
            for (const auto& g : gamma_maps(s, t)) {
                need(gamma_compose(gamma_identity(s), g) == g && gamma_compose(g, gamma_identity(t)) == g, "unit");
                ++unit;
            }
    std::vector<std::vector<std::vector<GammaMap>>> maps(4, std::vector<std::vector<GammaMap>>(4));
    for (int s = 0; s <= 3; ++s)
        for (int t = 0; t <= 3; ++t)
            maps[s][t] = gamma_maps(s, t);
    for (int s = 0; s <= 3; ++s)
        for (int t = 0; t <= 3; ++t)
            for (int u = 0; u <= 3; ++u)
                for (int v = 0; v <= 3; ++v)
                    for (const auto& f : maps[s][t])
                        for (const auto& g : maps[t][u]) {
                            GammaMap fg = gamma_compose(f, g);
                            for (const auto& h : maps[u][v]) {
                                need(gamma_compose(fg, h) == gamma_compose(f, gamma_compose(g, h)), "associativity");
                                ++assoc;
                            }
                        }
    for (int m = 0; m <= 5; ++m)
        for (int n = 0; n <= 5; ++n) {
            auto fs = monotone_maps(m, n);
            for (int k = 0; k <= 5; ++k)
                for (const auto& g : monotone_maps(n, k)) {
                    GammaMap gg = delta_to_gamma(g, k);
                    for (const auto& f : fs) {
                        std::vector<int> gf;
                        for (int x : f)
                            gf.push_back(g[x]);
                        need(delta_to_gamma(gf, k) == gamma_compose(delta_to_gamma(f, n), gg), "functoriality");
                        ++func;
                    }
                }
        }
    return std::to_string(unit) + " unit, " + std::to_string(assoc) + " associativity (sizes <= 3), " +
           std::to_string(func) + " functoriality (m, n, k <= 5)";
}

std::string segal_precategories()
{
    std::vector<SCat> corpus;
    for (const auto& [name, c] : test_corpus())
        if (c.num_arrows() <= 12)
            corpus.push_back(scat_from_fincat(c, 1));
    corpus.push_back(scat_from_cat2(groupoid_enriched_fixture(), 2));
    corpus.push_back(scat_from_cat2(truncation_fixture(), 2));
    corpus.push_back(s_ordinal(3, 2));
    corpus.push_back(s_resolution(ordinal(2), 2));
    for (const SCat& b : corpus) {
        SegalPrecat a = scat_nerve(b, 3);
        for (const auto& lv : bisimplicial_segal_check(a, 3))
            need(lv.kind == SegalKind::Strict, "level " + std::to_string(lv.p) + " is not strict");
        need(find_isomorphism(ho_of_segal(a), pi0_category(b)).has_value(), "ho differs from pi0");
    }

    NSSet t = nsset_of_cat2(truncation_fixture());
    Truncation t1 = truncate(t);
    need(t1.t.at({0}) == std::vector<std::string>{"x", "y"}, "T objects");
    need(t1.t.at({1}) == std::vector<std::string>{"x>x:1x", "x>y:f", "x>y:h", "y>y:1y"}, "T arrows");
    Truncation t2 = truncate(t1.t);
    need(t2.t.arity == 0 && t2.t.at({}) == std::vector<std::string>{"x", "y"}, "T^2");

    NSSet a = nsset_of_cat2(groupoid_enriched_fixture());
    Gamma2 g = strict_gamma2(a);
    Alpha2 al = identity_alpha2(a, g);
    auto face = [&](const std::vector<int>& m, int d, int i, int x) { return a.maps.at({m, d, 0, i})[x]; };
    auto dom = [&](int c) { return face({1, 1}, 1, 1, c); };
    auto ident = [&](int c) { return a.maps.at({{1, 0}, 1, 1, 0})[dom(c)] == c; };
    auto ends = [&](int f) { return std::make_pair(face({1, 0}, 0, 1, f), face({1, 0}, 0, 0, f)); };
    int e1 = static_cast<int>(a.at({1, 1}).size()), pairs = 0;
    for (int x = 0; x < e1; ++x)
        for (int y = 0; y < e1; ++y) {
            if (ends(dom(x)).second != ends(dom(y)).first)
                continue;
            HorizontalResult r = horizontal_compose_2cells(a, g, al, x, y);
            // the strict composite: sum in Z/2 over the composite 1-cell
            need(dom(r.composite_cell) == r.composite, "composite cell lies over another 1-cell");
            need(ends(r.composite) == std::make_pair(ends(dom(x)).first, ends(dom(y)).second), "composite endpoints");
            need(ident(r.composite_cell) == (ident(x) == ident(y)), "composite is not the strict sum");
            ++pairs;
        }
    return std::to_string(corpus.size()) + " SCats strict, truncation tables match, " + std::to_string(pairs) +
           " horizontal composites";
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string cli_round_trip()
{
    fs::path dir = FIXTURE_DIR;
    int docs = 0;
    for (const auto& e : fs::directory_iterator(dir)) {
        std::ostringstream out, err;
        int rc = run_command({"show", e.path().string()}, out, err);
        need(rc == 0, "show " + e.path().filename().string() + ": " + err.str());
        need(out.str() == slurp(e.path()), e.path().filename().string() + " does not round-trip");
        ++docs;
    }
    need(docs >= 10, "too few fixtures");

    fs::path tmp = fs::temp_directory_path() / "simpcat-acceptance-witness.json";
    auto f = [&](const char* name) { return (dir / name).string(); };
    std::vector<std::vector<std::string>> failing{
        {"kan", f("nerve-of-[1].sset"), "--max-dim", "2"},
        {"quasi", f("horn21.sset")},
        {"segalmap", f("horn21.sset"), "--max-p", "2"},
        {"segalmap", f("boundary2.sset"), "--max-p", "2"},
        {"leftfrac", f("square_nc.locpair")},
        {"leftfrac", f("span.locpair")},
        {"segal", "check", f("horn21.bisset"), "--max-p", "2"},
    };
    for (auto args : failing) {
        std::string shown = args[0];
        std::ostringstream out, err;
        need(run_command(args, out, err) == 1, shown + " does not fail");
        std::ofstream(tmp, std::ios::binary) << out.str();
        Json first = Json::parse(out.str());
        std::vector<std::string> replay{args[0]};
        if (args[0] == "segal")
            replay.push_back("check");
        replay.push_back(args[replay.size()]);
        replay.insert(replay.end(), {"--witness", tmp.string()});
        std::ostringstream out2, err2;
        need(run_command(replay, out2, err2) == 1, shown + " witness does not replay: " + err2.str());
        Json second = Json::parse(out2.str());
        need(first["verdict"] == second["verdict"] && first["witness"] == second["witness"], shown + " replay differs");
    }
    fs::remove(tmp);
    return std::to_string(docs) + " fixtures round-trip, " + std::to_string(failing.size()) + " witnesses replay";
}

}  // namespace

int main()
{
    struct Criterion {
        const char* name;
        std::function<std::string()> run;
    };
    std::vector<Criterion> all{
        {"resolution cubes", resolution_cubes},
        {"S[3](0,3) golden square", golden_square},
        {"interchange", interchange},
        {"nerve lemmas", nerve_lemmas},
        {"Segal round trip", segal_round_trip},
        {"fundamental category", fundamental_category},
        {"Dwyer-Kan", dwyer_kan},
        {"hammocks", hammocks},
        {"homotopy coherent nerve", hc_nerve_check},
        {"Gamma algebra", gamma_algebra},
        {"Segal precategories", segal_precategories},
        {"CLI", cli_round_trip},
    };
    int failed = 0;
    for (size_t i = 0; i < all.size(); ++i) {
        auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = true;
        try {
            detail = all[i].run();
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s %2zu %s: %s (%.2fs)\n", ok ? "PASS" : "FAIL", i + 1, all[i].name, detail.c_str(), secs);
        std::fflush(stdout);
        failed += !ok;
    }
    return failed ? 1 : 0;
}
