#include "simpcat/cli.hpp"

#include "simpcat/corpus.hpp"
#include "simpcat/dk.hpp"
#include "simpcat/hc_nerve.hpp"
#include "simpcat/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

namespace simpcat {

namespace {

struct Context {
    std::ostream& out;
    std::string out_path;
    long long budget = kDefaultBudget;
    Budget b;

    void write(const std::string& text)
    {
        if (out_path.empty()) {
            out << text;
            return;
        }
        std::ofstream f(out_path, std::ios::binary);
        if (!f)
            throw DocumentError("cannot write " + out_path);
        f << text;
    }
    void emit(const std::string& kind, const Json& payload) { write(emit_document(Document{kind, 1, payload})); }
    int report(const std::string& command, const std::string& verdict, const Json& bounds, const Json& result,
               const Json* witness = nullptr)
    {
        Json r = {{"command", command}, {"verdict", verdict}, {"bounds", bounds}};
        if (!result.is_null())
            r["result"] = result;
        if (witness)
            r["witness"] = *witness;
        write(r.dump(2) + "\n");
        return verdict == "fails" ? 1 : 0;
    }
};

Document load(const std::string& path, const std::vector<std::string>& kinds)
{
    Document d = read_document(path);
    if (std::find(kinds.begin(), kinds.end(), d.kind) == kinds.end()) {
        std::string want;
        for (const auto& k : kinds)
            want += (want.empty() ? "" : " or ") + k;
        throw DocumentError("expected a " + want + " document, got " + d.kind);
    }
    return d;
}

Json read_json(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DocumentError("cannot read " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw DocumentError("syntax error in " + path + " at byte " + std::to_string(e.byte));
    }
}

// A witness file is either a bare witness or a report carrying one.
Json witness_of(const std::string& path)
{
    Json j = read_json(path);
    if (j.is_object() && j.contains("witness"))
        return j["witness"];
    return j;
}

Json horn_witness(const SSet& x, const HornInstance& h)
{
    Json faces = Json::array();
    auto fs = horn_faces(h);
    for (int j = 0; j <= h.n; ++j)
        faces.push_back(j == h.i ? Json(nullptr) : Json(x.ref_name(fs[j])));
    return {{"n", h.n}, {"i", h.i}, {"faces", faces}};
}

// Rebuilds the horn map from its n faces.
HornInstance horn_from_witness(const SSet& x, const Json& w)
{
    int n = w.at("n").get<int>(), i = w.at("i").get<int>();
    if (n < 1 || i < 0 || i > n || n > x.max_dim())
        throw DocumentError("witness horn out of range");
    const Json& fj = w.at("faces");
    if (!fj.is_array() || fj.size() != static_cast<size_t>(n + 1))
        throw DocumentError("witness needs n+1 face entries");
    std::vector<SimplexRef> faces(n + 1);
    for (int j = 0; j <= n; ++j) {
        if (j == i)
            continue;
        faces[j] = x.parse_ref(fj[j].get<std::string>());
        if (x.dim(faces[j]) != n - 1)
            throw DocumentError("witness face " + std::to_string(j) + " has the wrong dimension");
    }
    const SSet& hc = horn_complex(n, i);
    HornInstance h{n, i, {}};
    for (int g = 0; g < hc.size(); ++g) {
        std::vector<int> verts;
        for (int v : hc.vertices(SimplexRef{g, {}}))
            verts.push_back(std::stoi(hc.name(v)));
        int j = 0;
        while (j == i || std::find(verts.begin(), verts.end(), j) != verts.end())
            ++j;
        std::vector<int> rest;
        for (int v = 0; v <= n; ++v)
            if (v != j)
                rest.push_back(v);
        SimplexRef y = faces[j];
        for (int pos = static_cast<int>(rest.size()) - 1; pos >= 0; --pos)
            if (std::find(verts.begin(), verts.end(), rest[pos]) == verts.end())
                y = x.face(y, pos);
        h.map.image.push_back(y);
    }
    std::string why;
    if (!is_valid_map(hc, x, h.map, &why))
        throw DocumentError("witness faces do not form a horn: " + why);
    return h;
}

int horn_command(Context& ctx, const std::string& name, const std::string& file, int max_dim,
                 const std::string& witness, bool inner)
{
    SSet x = sset_from_payload(load(file, {"sset"}).payload);
    Json bounds = {{"max_dim", max_dim}};
    if (!witness.empty()) {
        HornInstance h = horn_from_witness(x, witness_of(witness));
        if (inner && (h.i == 0 || h.i == h.n))
            throw DocumentError("witness horn is not inner");
        bounds = {{"max_dim", h.n}};
        if (auto f = find_filler(x, h))
            return ctx.report(name, "holds", bounds, {{"filler", x.ref_name(*f)}});
        Json w = horn_witness(x, h);
        return ctx.report(name, "fails", bounds, nullptr, &w);
    }
    HornVerdict v = inner ? is_quasicategory(x, max_dim, &ctx.b) : is_kan(x, max_dim, &ctx.b);
    Json result = {{"horns_checked", v.horns_checked}};
    if (v.ok)
        return ctx.report(name, "holds", bounds, result);
    Json w = horn_witness(x, *v.witness);
    return ctx.report(name, "fails", bounds, result, &w);
}

LocPair load_locpair(const std::string& file, const std::vector<std::string>& weq)
{
    Document d = load(file, {"locpair", "fincat"});
    if (d.kind == "locpair")
        return locpair_from_payload(d.payload);
    FinCat c = fincat_from_payload(d.payload);
    for (const auto& n : weq)
        if (!std::count_if(c.arrows.begin(), c.arrows.end(), [&](const Arrow& a) { return a.name == n; }))
            throw DocumentError("--weq names an unknown arrow '" + n + "'");
    return loc_pair(std::move(c), weq);
}

// one instance of the fraction conditions
bool fraction_instance_fails(const LocPair& p, const FractionWitness& w)
{
    const FinCat& c = p.c;
    int na = c.num_arrows();
    if (w.condition == 1) {
        if (!p.in_w(w.u) || c.arrows[w.f].dom != c.arrows[w.u].dom)
            throw DocumentError("witness is not an instance of condition (i)");
        for (int v = 0; v < na; ++v)
            for (int g = 0; g < na; ++g)
                if (p.in_w(v) && c.arrows[v].dom == c.arrows[w.f].cod && c.arrows[g].dom == c.arrows[w.u].cod &&
                    c.arrows[g].cod == c.arrows[v].cod && c.compose(v, w.f) == c.compose(g, w.u))
                    return false;
        return true;
    }
    if (!p.in_w(w.u) || c.arrows[w.f].dom != c.arrows[w.u].cod || c.arrows[w.g].dom != c.arrows[w.f].dom ||
        c.arrows[w.g].cod != c.arrows[w.f].cod || c.compose(w.f, w.u) != c.compose(w.g, w.u))
        throw DocumentError("witness is not an instance of condition (ii)");
    for (int v = 0; v < na; ++v)
        if (p.in_w(v) && c.arrows[v].dom == c.arrows[w.f].cod && c.compose(v, w.f) == c.compose(v, w.g))
            return false;
    return true;
}

GammaMap gamma_from_json(const std::string& text)
{
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw DocumentError("syntax error in Gamma map at byte " + std::to_string(e.byte));
    }
    GammaMap g{j.at("s").get<int>(), j.at("t").get<int>(), j.at("theta").get<std::vector<std::vector<int>>>()};
    validate_gamma(g);
    return g;
}

Json gamma_json(const GammaMap& g)
{
    return {{"s", g.s}, {"t", g.t}, {"theta", g.theta}};
}

std::vector<int> int_csv(const std::string& s)
{
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        out.push_back(std::stoi(tok));
    return out;
}

SegalPrecat load_precat(const std::string& file, int max_p)
{
    Document d = load(file, {"bisset", "scat"});
    if (d.kind == "scat")
        return scat_nerve(scat_from_payload(d.payload), max_p);
    return as_segal_precat(bisset_from_payload(d.payload));
}

NSSet load_nsset(const std::string& file)
{
    Document d = load(file, {"nsset", "sset", "bisset"});
    if (d.kind == "sset")
        return nsset_from_sset(sset_from_payload(d.payload));
    if (d.kind == "bisset")
        return nsset_from_bisset(bisset_from_payload(d.payload));
    return nsset_from_payload(d.payload);
}

std::map<std::string, std::function<Document()>> examples()
{
    auto doc = [](const std::string& kind, Json p) { return Document{kind, 1, std::move(p)}; };
    std::map<std::string, std::function<Document()>> m;
    m["delta0.sset"] = [=] { return doc("sset", sset_payload(standard_simplex(0, 3))); };
    m["delta2.sset"] = [=] { return doc("sset", sset_payload(standard_simplex(2, 3))); };
    m["horn21.sset"] = [=] { return doc("sset", sset_payload(horn(2, 1, 3))); };
    m["boundary2.sset"] = [=] { return doc("sset", sset_payload(boundary(2, 3))); };
    m["nerve-of-[1].sset"] = [=] { return doc("sset", sset_payload(nerve(ordinal(1), 3))); };
    m["z2-nerve.sset"] = [=] { return doc("sset", sset_payload(nerve(cyclic_group(2), 3))); };
    m["ord2.fincat"] = [=] { return doc("fincat", fincat_payload(ordinal(2))); };
    m["z2.fincat"] = [=] { return doc("fincat", fincat_payload(cyclic_group(2))); };
    m["iso.fincat"] = [=] { return doc("fincat", fincat_payload(free_iso())); };
    m["square_nc.locpair"] = [=] { return doc("locpair", locpair_payload(loc_pair(noncommuting_square(), {"f"}))); };
    m["span.locpair"] = [=] { return doc("locpair", locpair_payload(loc_pair(span(), {"f"}))); };
    m["zigzag.hammock"] = [=] {
        LocPair p = loc_pair(span(), {"f"});
        Hammock h = zigzag(p, p.c.object_index("b"),
                           {{Dir::Backward, p.c.arrow_index("f")}, {Dir::Forward, p.c.arrow_index("g")}});
        return doc("hammock", hammock_payload(p, h));
    };
    m["groupoid.scat"] = [=] { return doc("scat", scat_payload(scat_from_cat2(groupoid_enriched_fixture(), 2))); };
    m["ord2.scat"] = [=] { return doc("scat", scat_payload(scat_from_fincat(ordinal(2), 2))); };
    m["sord3.scat"] = [=] { return doc("scat", scat_payload(s_ordinal(3, 2))); };
    m["ord1.bisset"] = [=] { return doc("bisset", bisset_payload(scat_nerve(scat_from_fincat(ordinal(1), 1), 3).a)); };
    m["horn21.bisset"] = [=] { return doc("bisset", bisset_payload(constant_precat(horn(2, 1, 3), 2, 1).a)); };
    m["truncation.nsset"] = [=] { return doc("nsset", nsset_payload(nsset_of_cat2(truncation_fixture()))); };
    m["iso.nsset"] = [=] { return doc("nsset", nsset_payload(nsset_from_sset(nerve(free_iso(), 3)))); };
    m["point.nsset"] = [=] { return doc("nsset", nsset_payload(nsset_from_sset(nerve(discrete(1), 3)))); };
    m["point-iso.nsmap"] = [=] {
        SSet pt = nerve(discrete(1), 3), iso = nerve(free_iso(), 3);
        SMap f{{SimplexRef{iso.nd(0)[0], {}}}};
        return doc("nsmap", nsmap_payload(nsmap_from_smap(pt, iso, f)));
    };
    m["point-disc2.nsmap"] = [=] {
        SSet pt = nerve(discrete(1), 3), d2 = nerve(discrete(2), 3);
        SMap f{{SimplexRef{d2.nd(0)[0], {}}}};
        return doc("nsmap", nsmap_payload(nsmap_from_smap(pt, d2, f)));
    };
    m["disc2.nsset"] = [=] { return doc("nsset", nsset_payload(nsset_from_sset(nerve(discrete(2), 3)))); };
    return m;
}

}  // namespace

std::vector<std::string> example_names()
{
    std::vector<std::string> out;
    for (const auto& [k, v] : examples())
        out.push_back(k);
    return out;
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Finite simplicial sets, categories and their higher structures", "simpcat"};
    app.require_subcommand(1);
    Context ctx{out, "", kDefaultBudget, {}};
    app.add_option("--out", ctx.out_path, "write the output here instead of stdout");
    app.add_option("--budget", ctx.budget, "search node budget")->check(CLI::PositiveNumber);
    std::function<int()> action;

    std::string file, file2, witness, map_file, from, to, weq_csv, delta;
    int max_dim = 3, max_p = 3, max_len = 3, width = 0, n = 3, dim = 2, hom_i = 0, hom_j = 0;
    bool check_quasi = false;
    std::vector<std::string> weq;
    auto weq_list = [&]() {
        std::vector<std::string> w;
        std::stringstream ss(weq_csv);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty())
                w.push_back(tok);
        return w;
    };

    auto* sset = app.add_subcommand("sset", "simplicial set documents")->require_subcommand(1);
    auto* sset_check = sset->add_subcommand("check", "check the simplicial identities");
    sset_check->add_option("file", file)->required();
    sset_check->callback([&] {
        action = [&] {
            Document d = load(file, {"sset"});
            SSet x = sset_from_payload(d.payload);
            Json counts = Json::array();
            for (int k = 0; k <= x.max_dim(); ++k)
                counts.push_back(x.nd(k).size());
            return ctx.report("sset check", "holds", {{"max_dim", x.max_dim()}}, {{"nondegenerate", counts}});
        };
    });
    auto* sset_show = sset->add_subcommand("show", "emit the canonical document");
    sset_show->add_option("file", file)->required();
    sset_show->callback([&] {
        action = [&] {
            ctx.write(emit_document(canonical(load(file, {"sset"}))));
            return 0;
        };
    });

    auto* show = app.add_subcommand("show", "emit any document in canonical form");
    show->add_option("file", file)->required();
    show->callback([&] {
        action = [&] {
            ctx.write(emit_document(canonical(read_document(file))));
            return 0;
        };
    });

    auto* example = app.add_subcommand("example", "emit a built-in example document");
    example->add_option("name", file)->required();
    example->callback([&] {
        action = [&] {
            auto m = examples();
            auto it = m.find(file);
            if (it == m.end())
                throw DocumentError("no example named '" + file + "'");
            ctx.write(emit_document(it->second()));
            return 0;
        };
    });

    auto* nerve_cmd = app.add_subcommand("nerve", "nerve of a finite category");
    nerve_cmd->add_option("file", file)->required();
    nerve_cmd->add_option("--max-dim", max_dim)->check(CLI::NonNegativeNumber);
    nerve_cmd->callback([&] {
        action = [&] {
            ctx.emit("sset", sset_payload(nerve(fincat_from_payload(load(file, {"fincat"}).payload), max_dim)));
            return 0;
        };
    });

    for (const char* name : {"kan", "quasi"}) {
        bool inner = std::string(name) == "quasi";
        auto* c = app.add_subcommand(name, inner ? "inner horn filling" : "horn filling");
        c->add_option("file", file)->required();
        c->add_option("--max-dim", max_dim)->check(CLI::NonNegativeNumber);
        c->add_option("--witness", witness, "replay a horn witness");
        c->callback([&, name, inner] { action = [&, name, inner] { return horn_command(ctx, name, file, max_dim, witness, inner); }; });
    }

    auto* ho = app.add_subcommand("ho", "homotopy category of a quasi-category");
    ho->add_option("file", file)->required();
    ho->callback([&] {
        action = [&] {
            ctx.emit("fincat", fincat_payload(ho_category(sset_from_payload(load(file, {"sset"}).payload), nullptr, &ctx.b)));
            return 0;
        };
    });

    auto* segalmap = app.add_subcommand("segalmap", "strict Segal condition");
    segalmap->add_option("file", file)->required();
    segalmap->add_option("--max-p", max_p)->check(CLI::PositiveNumber);
    segalmap->add_option("--witness", witness);
    segalmap->callback([&] {
        action = [&] {
            SSet x = sset_from_payload(load(file, {"sset"}).payload);
            auto wit = [&](const SegalWitness& s) {
                Json t = Json::array(), sx = Json::array();
                for (const auto& e : s.tuple)
                    t.push_back(x.ref_name(e));
                for (const auto& e : s.simplices)
                    sx.push_back(x.ref_name(e));
                return Json{{"p", s.p}, {"kind", s.kind == SegalWitness::NotSurjective ? "not-surjective" : "not-injective"},
                            {"tuple", t}, {"simplices", sx}};
            };
            if (!witness.empty()) {
                Json w = witness_of(witness);
                int p = w.at("p").get<int>();
                if (p < 2 || p > x.max_dim())
                    throw DocumentError("witness level out of range");
                SegalMap s = segal_map(x, p);
                bool fails = false;
                if (w.at("kind") == "not-surjective") {
                    std::vector<SimplexRef> t;
                    for (const auto& e : w.at("tuple"))
                        t.push_back(x.parse_ref(e.get<std::string>()));
                    auto it = std::find(s.codomain.begin(), s.codomain.end(), t);
                    if (it == s.codomain.end())
                        throw DocumentError("witness tuple is not a composable spine");
                    int idx = static_cast<int>(it - s.codomain.begin());
                    fails = std::find(s.image.begin(), s.image.end(), idx) == s.image.end();
                } else {
                    SimplexRef a = x.parse_ref(w.at("simplices")[0].get<std::string>());
                    SimplexRef b = x.parse_ref(w.at("simplices")[1].get<std::string>());
                    fails = a != b && x.dim(a) == p && x.dim(b) == p && spine(x, a) == spine(x, b);
                }
                Json bounds = {{"max_p", p}};
                return fails ? ctx.report("segalmap", "fails", bounds, nullptr, &w)
                             : ctx.report("segalmap", "holds", bounds, nullptr);
            }
            SegalVerdict v = is_strict_segal(x, max_p);
            if (v.ok)
                return ctx.report("segalmap", "holds", {{"max_p", max_p}}, nullptr);
            Json w = wit(*v.witness);
            return ctx.report("segalmap", "fails", {{"max_p", max_p}}, nullptr, &w);
        };
    });

    auto* fromsegal = app.add_subcommand("fromsegal", "category of a strict Segal simplicial set");
    fromsegal->add_option("file", file)->required();
    fromsegal->callback([&] {
        action = [&] {
            ctx.emit("fincat", fincat_payload(category_from_segal(sset_from_payload(load(file, {"sset"}).payload))));
            return 0;
        };
    });

    auto* sres = app.add_subcommand("sres", "hom of the resolution of [n]");
    sres->add_option("n", n)->required()->check(CLI::PositiveNumber);
    std::vector<int> hom;
    sres->add_option("--hom", hom, "source and target vertex")->expected(2)->required();
    sres->add_option("--max-dim", max_dim);
    sres->callback([&] {
        action = [&] {
            int top = sres->count("--max-dim") ? max_dim : std::max(0, n - 1);
            if (hom[0] < 0 || hom[1] > n || hom[0] >= hom[1])
                throw std::invalid_argument("need 0 <= i < j <= n");
            const SCat& s = s_ordinal_cached(n, top);
            ctx.emit("sset", sset_payload(s.hom_or_throw(hom[0], hom[1])));
            return 0;
        };
    });

    auto* inter = app.add_subcommand("interchange", "the square of S[4](0,4) not hit by a coface");
    inter->callback([&] {
        action = [&] {
            InterchangeSquare sq = interchange_square();
            Json facets = Json::array();
            for (const auto& f : sq.facets)
                facets.push_back({{"coordinate", f.coordinate}, {"value", f.value}, {"source", f.source}, {"corners", f.corners}});
            Json result = {{"facets", facets},
                           {"square", {{"coordinate", sq.square.coordinate}, {"value", sq.square.value}, {"corners", sq.square.corners}}},
                           {"edges", sq.edges},
                           {"cell", sq.cell}};
            return ctx.report("interchange", "output", {{"n", 4}}, result);
        };
    });

    auto* pi0 = app.add_subcommand("pi0", "category of components of an SCat");
    pi0->add_option("file", file)->required();
    pi0->callback([&] {
        action = [&] {
            ctx.emit("fincat", fincat_payload(pi0_category(scat_from_payload(load(file, {"scat"}).payload))));
            return 0;
        };
    });

    auto* hc = app.add_subcommand("hcnerve", "homotopy coherent nerve");
    hc->add_option("file", file)->required();
    hc->add_option("--dim", dim)->check(CLI::NonNegativeNumber);
    hc->add_flag("--check-quasi", check_quasi);
    hc->add_option("--witness", witness);
    hc->callback([&] {
        action = [&] {
            SCat b = scat_from_payload(load(file, {"scat"}).payload);
            Json bounds = {{"dim", dim}};
            if (!check_quasi && witness.empty()) {
                HcNerve h = hc_nerve(b, dim, &ctx.b);
                Json counts = Json::array(), nd = Json::array();
                for (int k = 0; k <= dim; ++k) {
                    counts.push_back(h.simplices[k].size());
                    nd.push_back(h.nerve.set.nd(k).size());
                }
                return ctx.report("hcnerve", "output", bounds, {{"simplices", counts}, {"nondegenerate", nd}});
            }
            HcQuasiVerdict v = hc_nerve_is_quasi(b, dim, &ctx.b);
            const SSet& x = v.nerve.nerve.set;
            Json result = {{"locally_kan", v.locally_kan}, {"horns_checked", v.verdict.horns_checked}};
            if (!witness.empty()) {
                HornInstance h = horn_from_witness(x, witness_of(witness));
                if (h.i == 0 || h.i == h.n)
                    throw DocumentError("witness horn is not inner");
                if (find_filler(x, h))
                    return ctx.report("hcnerve", "holds", bounds, result);
                Json w = horn_witness(x, h);
                return ctx.report("hcnerve", "fails", bounds, result, &w);
            }
            if (v.verdict.ok)
                return ctx.report("hcnerve", "holds", bounds, result);
            Json w = horn_witness(x, *v.verdict.witness);
            return ctx.report("hcnerve", "fails", bounds, result, &w);
        };
    });

    auto* gk = app.add_subcommand("gk", "Dwyer-Kan loop groupoid");
    gk->add_option("file", file)->required();
    gk->add_option("--dim", dim)->check(CLI::NonNegativeNumber);
    gk->callback([&] {
        action = [&] {
            SSet k = sset_from_payload(load(file, {"sset"}).payload);
            if (dim + 1 > k.max_dim())
                throw std::invalid_argument("--dim needs simplices of the input through dimension dim+1");
            SimpGrpd g = dk_groupoid(k, dim);
            Json levels = Json::array();
            for (int d = 0; d <= g.max_dim(); ++d) {
                Json gens = Json::array();
                const auto& lv = g.levels[d];
                for (size_t t = 0; t < lv.gens.size(); ++t) {
                    Json faces = Json::array();
                    for (const auto& w : lv.face[t])
                        faces.push_back(word_string(g, d - 1, w));
                    gens.push_back({{"name", lv.gens[t].name}, {"dom", g.objects[lv.gens[t].dom]},
                                    {"cod", g.objects[lv.gens[t].cod]}, {"faces", faces}});
                }
                levels.push_back({{"dim", d}, {"generators", gens}});
            }
            GrpdReport r = verify_simplicial_groupoid(g, dim);
            Json result = {{"objects", g.objects}, {"levels", levels}, {"checks", r.checks}};
            if (r.ok)
                return ctx.report("gk", "holds", {{"dim", dim}}, result);
            const auto& f = r.failures.front();
            Json w = {{"identity", f.identity}, {"dim", f.dim}, {"generator", f.generator}, {"lhs", f.lhs}, {"rhs", f.rhs}};
            return ctx.report("gk", "fails", {{"dim", dim}}, result, &w);
        };
    });

    auto* ham = app.add_subcommand("hammock", "enumerate reduced hammocks, or reduce a hammock document");
    ham->add_option("file", file)->required();
    ham->add_option("--from", from);
    ham->add_option("--to", to);
    ham->add_option("--width", width)->check(CLI::NonNegativeNumber);
    ham->add_option("--max-len", max_len)->check(CLI::NonNegativeNumber);
    ham->add_option("--weq", weq_csv, "comma separated weak equivalences");
    ham->callback([&] {
        action = [&] {
            Document d = load(file, {"hammock", "locpair", "fincat"});
            if (d.kind == "hammock") {
                LocPair p;
                Hammock h = hammock_from_payload(d.payload, &p);
                Hammock r = reduce_hammock(p, h);
                return ctx.report("hammock", "output", {{"length", h.length()}, {"width", h.width}},
                                  {{"input", hammock_string(p, h)}, {"reduced", hammock_string(p, r)},
                                   {"hammock", hammock_payload(p, r)}});
            }
            LocPair p = load_locpair(file, weq_list());
            if (from.empty() || to.empty())
                throw std::invalid_argument("--from and --to are required for enumeration");
            auto hs = enumerate_hammocks(p, p.c.object_index(from), p.c.object_index(to), width, max_len, &ctx.b);
            Json list = Json::array();
            for (const auto& h : hs)
                list.push_back(hammock_string(p, h));
            return ctx.report("hammock", "output", {{"width", width}, {"max_len", max_len}},
                              {{"count", hs.size()}, {"hammocks", list}});
        };
    });

    auto* lf = app.add_subcommand("leftfrac", "calculus of left fractions");
    lf->add_option("file", file)->required();
    lf->add_option("--weq", weq_csv);
    lf->add_option("--witness", witness);
    lf->callback([&] {
        action = [&] {
            LocPair p = load_locpair(file, weq_list());
            const FinCat& c = p.c;
            auto wj = [&](const FractionWitness& w) {
                Json j = {{"condition", w.condition}, {"u", c.arrows[w.u].name}, {"f", c.arrows[w.f].name}};
                if (w.g >= 0)
                    j["g"] = c.arrows[w.g].name;
                return j;
            };
            if (!witness.empty()) {
                Json j = witness_of(witness);
                FractionWitness w{j.at("condition").get<int>(), c.arrow_index(j.at("u").get<std::string>()),
                                  c.arrow_index(j.at("f").get<std::string>()),
                                  j.contains("g") ? c.arrow_index(j.at("g").get<std::string>()) : -1};
                if (w.condition == 2 && w.g < 0)
                    throw DocumentError("condition (ii) witness needs g");
                if (fraction_instance_fails(p, w)) {
                    Json out = wj(w);
                    return ctx.report("leftfrac", "fails", Json::object(), nullptr, &out);
                }
                return ctx.report("leftfrac", "holds", Json::object(), nullptr);
            }
            FractionVerdict v = check_left_fractions(p, &ctx.b);
            if (v.ok)
                return ctx.report("leftfrac", "holds", Json::object(), nullptr);
            Json out = wj(*v.witness);
            return ctx.report("leftfrac", "fails", Json::object(), nullptr, &out);
        };
    });

    auto* segal = app.add_subcommand("segal", "Segal precategories")->require_subcommand(1);
    auto* segal_check = segal->add_subcommand("check", "three-valued Segal condition per level");
    segal_check->add_option("file", file)->required();
    segal_check->add_option("--max-p", max_p)->check(CLI::PositiveNumber);
    segal_check->add_option("--witness", witness);
    segal_check->callback([&] {
        action = [&] {
            int top = max_p;
            if (!witness.empty())
                top = witness_of(witness).at("p").get<int>();
            SegalPrecat a = load_precat(file, top);
            auto levels = bisimplicial_segal_check(a, top);
            Json lj = Json::array();
            const SegalLevel* bad = nullptr;
            for (const auto& lv : levels) {
                lj.push_back({{"p", lv.p}, {"verdict", to_string(lv.kind)}});
                if (lv.kind == SegalKind::Unknown && !bad && (witness.empty() || lv.p == top))
                    bad = &lv;
            }
            Json result = {{"objects", a.objects}, {"levels", lj}};
            if (!bad)
                return ctx.report("segal check", "holds", {{"max_p", top}}, result);
            Json w = {{"p", bad->p}, {"q", bad->q}, {"witness", bad->witness}};
            return ctx.report("segal check", "fails", {{"max_p", top}}, result, &w);
        };
    });

    auto* gamma = app.add_subcommand("gamma", "Gamma maps")->require_subcommand(1);
    auto* gcomp = gamma->add_subcommand("compose", "compose two Gamma maps given as JSON");
    gcomp->add_option("first", file)->required();
    gcomp->add_option("second", file2)->required();
    gcomp->callback([&] {
        action = [&] {
            GammaMap r = gamma_compose(gamma_from_json(file), gamma_from_json(file2));
            return ctx.report("gamma compose", "output", Json::object(), gamma_json(r));
        };
    });
    auto* gdelta = gamma->add_subcommand("fromdelta", "Gamma map of a monotone map");
    gdelta->add_option("--map", delta, "values f(0),...,f(m)")->required();
    gdelta->add_option("--n", n, "target [n]")->required();
    gdelta->callback([&] {
        action = [&] {
            GammaMap r = delta_to_gamma(int_csv(delta), n);
            return ctx.report("gamma fromdelta", "output", {{"n", n}}, gamma_json(r));
        };
    });

    auto* trunc = app.add_subcommand("truncate", "replace each slice category by its isomorphism classes");
    trunc->add_option("file", file)->required();
    trunc->callback([&] {
        action = [&] {
            Truncation t = truncate(load_nsset(file));
            ctx.emit("nsset", nsset_payload(t.t));
            return 0;
        };
    });

    auto* nequiv = app.add_subcommand("nequiv", "n-equivalence of a map of multisimplicial sets");
    nequiv->add_option("source", file)->required();
    nequiv->add_option("target", file2)->required();
    nequiv->add_option("--map", map_file, "nsmap document")->required();
    nequiv->add_option("--n", n)->required();
    nequiv->add_option("--witness", witness);
    nequiv->callback([&] {
        action = [&] {
            NSSet a = load_nsset(file), b = load_nsset(file2);
            NSMap f = nsmap_from_payload(load(map_file, {"nsmap"}).payload);
            std::string why;
            if (!is_natural(a, b, f, &why))
                throw DocumentError("not a map: " + why);
            bool ok = n_equivalence_check(a, b, f, n, &why);
            if (ok)
                return ctx.report("nequiv", "holds", {{"n", n}}, nullptr);
            Json w = {{"why", why}};
            return ctx.report("nequiv", "fails", {{"n", n}}, nullptr, &w);
        };
    });

    // --out and --budget may follow the subcommand
    std::function<void(CLI::App*)> fall = [&](CLI::App* a) {
        for (auto* sub : a->get_subcommands({})) {
            sub->fallthrough();
            fall(sub);
        }
    };
    fall(&app);
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        std::stringstream o, er;
        int code = app.exit(e, o, er);
        out << o.str();
        err << er.str();
        return code == 0 ? 0 : 2;
    }
    ctx.b.limit = ctx.budget;
    try {
        return action();
    } catch (const BudgetExceeded& e) {
        err << Json{{"error", e.what()}, {"exit", 3}}.dump() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << Json{{"error", e.what()}, {"exit", 2}}.dump() << "\n";
        return 2;
    }
}

}  // namespace simpcat
