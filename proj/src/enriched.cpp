#include "simpcat/enriched.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

namespace simpcat {

const SSet* SCat::hom(int x, int y) const
{
    auto it = homs.find({x, y});
    return it == homs.end() ? nullptr : &it->second;
}

const SSet& SCat::hom_or_throw(int x, int y) const
{
    const SSet* h = hom(x, y);
    if (!h)
        throw std::invalid_argument("hom(" + objects[x] + "," + objects[y] + ") is empty");
    return *h;
}

SimplexRef SCat::compose(int x, int y, int z, const SimplexRef& f, const SimplexRef& g) const
{
    const auto& c = comps.at({x, y, z});
    SimplexRef p = product_ref(c.prod, hom_or_throw(x, y), hom_or_throw(y, z), f, g);
    return apply(c.map, p);
}

SimplexRef SCat::identity(int x, int k) const
{
    SimplexRef r = ids[x];
    for (int t = k - 1; t >= 0; --t)
        r.degens.push_back(t);
    return r;
}

int SCat::object_index(const std::string& name) const
{
    for (int i = 0; i < num_objects(); ++i)
        if (objects[i] == name)
            return i;
    throw std::invalid_argument("unknown object '" + name + "'");
}

KeyedHom keyed(Realized r)
{
    KeyedHom h{std::move(r), {}};
    for (const auto& [k, ref] : h.r.ref)
        h.key_of.emplace(ref, k);
    return h;
}

SCat build_scat(std::vector<std::string> objects, int max_dim,
                const std::map<std::pair<int, int>, KeyedHom>& homs,
                const std::function<std::string(int, int, int, const std::string&, const std::string&)>& compose,
                const std::vector<std::string>& id_keys)
{
    SCat b;
    b.max_dim = max_dim;
    b.objects = std::move(objects);
    for (const auto& [xy, h] : homs)
        b.homs.emplace(xy, h.r.set);
    int n = b.num_objects();
    for (int x = 0; x < n; ++x)
        b.ids.push_back(homs.at({x, x}).r.ref.at(id_keys[x]));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                auto ixy = homs.find({x, y}), iyz = homs.find({y, z}), ixz = homs.find({x, z});
                if (ixy == homs.end() || iyz == homs.end())
                    continue;
                if (ixz == homs.end())
                    throw std::logic_error("composite lands in an empty hom");
                Composition c{product_with_projections(ixy->second.r.set, iyz->second.r.set), {}};
                for (int q = 0; q < c.prod.set.size(); ++q) {
                    const std::string& kf = ixy->second.key_of.at(c.prod.p1.image[q]);
                    const std::string& kg = iyz->second.key_of.at(c.prod.p2.image[q]);
                    std::string kh = compose(x, y, z, kf, kg);
                    auto it = ixz->second.r.ref.find(kh);
                    if (it == ixz->second.r.ref.end())
                        throw std::logic_error("composite key '" + kh + "' is not a simplex");
                    c.map.image.push_back(it->second);
                }
                b.comps.emplace(std::make_tuple(x, y, z), std::move(c));
            }
    return b;
}

namespace {

bool share_degeneracy(const std::vector<const Word*>& ws)
{
    for (int d : *ws[0]) {
        bool all = true;
        for (size_t t = 1; t < ws.size() && all; ++t)
            all = std::find(ws[t]->begin(), ws[t]->end(), d) != ws[t]->end();
        if (all)
            return true;
    }
    return false;
}

}  // namespace

SCatCheck validate_scat(const SCat& b, int check_dim)
{
    SCatCheck r;
    auto fail = [&](std::string m) {
        r.ok = false;
        r.failure = std::move(m);
        return r;
    };
    int n = b.num_objects();
    if (static_cast<int>(b.ids.size()) != n)
        return fail("identity table has wrong size");
    for (const auto& [xyz, c] : b.comps) {
        auto [x, y, z] = xyz;
        std::string why;
        if (!is_valid_map(c.prod.set, b.hom_or_throw(x, z), c.map, &why))
            return fail("composition " + b.objects[x] + "," + b.objects[y] + "," + b.objects[z] +
                        " is not simplicial: " + why);
    }
    check_dim = std::min(check_dim, b.max_dim);
    for (const auto& [xy, h] : b.homs) {
        auto [x, y] = xy;
        for (int k = 0; k <= check_dim; ++k)
            for (int g : h.nd(k)) {
                SimplexRef f{g, {}};
                if (b.compose(x, y, y, f, b.identity(y, k)) != f ||
                    b.compose(x, x, y, b.identity(x, k), f) != f)
                    return fail("unit law fails at " + h.name(g));
            }
    }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                for (int w = 0; w < n; ++w) {
                    const SSet *a = b.hom(x, y), *bb = b.hom(y, z), *c = b.hom(z, w);
                    if (!a || !bb || !c)
                        continue;
                    for (int k = 0; k <= check_dim; ++k) {
                        auto fs = a->simplices(k), gs = bb->simplices(k), hs = c->simplices(k);
                        for (const auto& f : fs)
                            for (const auto& g : gs)
                                for (const auto& h : hs) {
                                    if (k > 0 && share_degeneracy({&f.degens, &g.degens, &h.degens}))
                                        continue;
                                    auto left = b.compose(x, z, w, b.compose(x, y, z, f, g), h);
                                    auto right = b.compose(x, y, w, f, b.compose(y, z, w, g, h));
                                    if (left != right)
                                        return fail("associativity fails at (" + a->ref_name(f) + "," +
                                                    bb->ref_name(g) + "," + c->ref_name(h) + ")");
                                }
                    }
                }
    return r;
}

bool is_valid_sfunctor(const SCat& a, const SCat& b, const SFunctor& f, std::string* why)
{
    auto fail = [&](const std::string& m) {
        if (why)
            *why = m;
        return false;
    };
    if (static_cast<int>(f.obj.size()) != a.num_objects())
        return fail("object map has wrong size");
    for (const auto& [xy, h] : a.homs) {
        auto it = f.hom.find(xy);
        if (it == f.hom.end())
            return fail("missing hom map");
        const SSet* t = b.hom(f.obj[xy.first], f.obj[xy.second]);
        if (!t)
            return fail("hom lands in an empty hom");
        std::string w;
        if (!is_valid_map(h, *t, it->second, &w))
            return fail("hom map is not simplicial: " + w);
    }
    for (int x = 0; x < a.num_objects(); ++x)
        if (apply(f.hom.at({x, x}), a.ids[x]) != b.ids[f.obj[x]])
            return fail("identity of " + a.objects[x] + " not preserved");
    for (const auto& [xyz, c] : a.comps) {
        auto [x, y, z] = xyz;
        const auto &fxy = f.hom.at({x, y}), &fyz = f.hom.at({y, z}), &fxz = f.hom.at({x, z});
        for (int q = 0; q < c.prod.set.size(); ++q) {
            SimplexRef lhs = apply(fxz, c.map.image[q]);
            SimplexRef rhs = b.compose(f.obj[x], f.obj[y], f.obj[z], apply(fxy, c.prod.p1.image[q]),
                                       apply(fyz, c.prod.p2.image[q]));
            if (lhs != rhs)
                return fail("composition not preserved at " + c.prod.set.name(q));
        }
    }
    return true;
}

namespace {

std::string dim_key(int k, const std::string& rest)
{
    return std::to_string(k) + "#" + rest;
}

int key_dim(const std::string& key)
{
    return std::stoi(key.substr(0, key.find('#')));
}

std::string key_body(const std::string& key)
{
    return key.substr(key.find('#') + 1);
}

}  // namespace

SCat scat_from_fincat(const FinCat& c, int max_dim)
{
    std::map<std::pair<int, int>, KeyedHom> homs;
    int n = c.num_objects();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            auto arrows = c.hom(x, y);
            if (arrows.empty())
                continue;
            SimplicialData d;
            d.max_dim = max_dim;
            d.simplices.resize(max_dim + 1);
            for (int k = 0; k <= max_dim; ++k)
                for (int f : arrows)
                    d.simplices[k].push_back(dim_key(k, std::to_string(f)));
            d.face = [](const std::string& s, int k, int) { return dim_key(k - 1, key_body(s)); };
            d.degen = [](const std::string& s, int k, int) { return dim_key(k + 1, key_body(s)); };
            d.label = [&c](const std::string& s) { return c.arrows[std::stoi(key_body(s))].name; };
            homs.emplace(std::make_pair(x, y), keyed(realize(d)));
        }
    std::vector<std::string> ids;
    for (int x = 0; x < n; ++x)
        ids.push_back(dim_key(0, std::to_string(c.identity[x])));
    return build_scat(c.objects, max_dim, homs,
                      [&c](int, int, int, const std::string& f, const std::string& g) {
                          return dim_key(key_dim(f),
                                         std::to_string(c.compose(std::stoi(key_body(g)),
                                                                  std::stoi(key_body(f)))));
                      },
                      ids);
}

void validate_cat2(const Cat2& c)
{
    int n = static_cast<int>(c.objects.size());
    if (static_cast<int>(c.ids.size()) != n)
        throw std::invalid_argument("identity table has wrong size");
    for (const auto& [xy, h] : c.homs)
        h.validate();
    for (const auto& [xyz, f] : c.comps) {
        auto [x, y, z] = xyz;
        FinCat p = product(c.homs.at({x, y}), c.homs.at({y, z}));
        std::string why;
        if (!is_valid_functor(p, c.homs.at({x, z}), f, &why))
            throw std::invalid_argument("composition functor invalid: " + why);
    }
}

SCat scat_from_cat2(const Cat2& c, int max_dim)
{
    validate_cat2(c);
    std::map<std::pair<int, int>, KeyedHom> homs;
    auto chain_key = [](int k, const std::vector<int>& arrows, int obj) {
        if (k == 0)
            return dim_key(0, "o" + std::to_string(obj));
        std::string s;
        for (size_t t = 0; t < arrows.size(); ++t)
            s += (t ? "," : "") + std::to_string(arrows[t]);
        return dim_key(k, s);
    };
    auto parse_chain = [](const std::string& key, int* obj) {
        std::string body = key_body(key);
        std::vector<int> out;
        if (!body.empty() && body[0] == 'o') {
            *obj = std::stoi(body.substr(1));
            return out;
        }
        std::stringstream ss(body);
        std::string tok;
        while (std::getline(ss, tok, ','))
            out.push_back(std::stoi(tok));
        return out;
    };
    for (const auto& [xy, cat] : c.homs) {
        const FinCat* h = &cat;
        SimplicialData d;
        d.max_dim = max_dim;
        d.simplices.resize(max_dim + 1);
        for (int o = 0; o < h->num_objects(); ++o)
            d.simplices[0].push_back(chain_key(0, {}, o));
        std::vector<std::vector<int>> layer{{}};
        for (int k = 1; k <= max_dim; ++k) {
            std::vector<std::vector<int>> next;
            for (const auto& ch : layer)
                for (int f = 0; f < h->num_arrows(); ++f)
                    if (ch.empty() || h->arrows[f].dom == h->arrows[ch.back()].cod) {
                        auto e = ch;
                        e.push_back(f);
                        d.simplices[k].push_back(chain_key(k, e, 0));
                        next.push_back(std::move(e));
                    }
            layer = std::move(next);
        }
        d.face = [=](const std::string& s, int k, int i) {
            int obj = 0;
            auto ch = parse_chain(s, &obj);
            if (k == 1)
                return chain_key(0, {}, i == 0 ? h->arrows[ch[0]].cod : h->arrows[ch[0]].dom);
            std::vector<int> e;
            if (i == 0)
                e.assign(ch.begin() + 1, ch.end());
            else if (i == k)
                e.assign(ch.begin(), ch.end() - 1);
            else {
                e.assign(ch.begin(), ch.begin() + i - 1);
                e.push_back(h->compose(ch[i], ch[i - 1]));
                e.insert(e.end(), ch.begin() + i + 1, ch.end());
            }
            return chain_key(k - 1, e, 0);
        };
        d.degen = [=](const std::string& s, int k, int i) {
            int obj = 0;
            auto ch = parse_chain(s, &obj);
            if (k == 0)
                return chain_key(1, {h->identity[obj]}, 0);
            int at = i == 0 ? h->arrows[ch[0]].dom : h->arrows[ch[i - 1]].cod;
            ch.insert(ch.begin() + i, h->identity[at]);
            return chain_key(k + 1, ch, 0);
        };
        d.label = [=](const std::string& s) {
            int obj = 0;
            auto ch = parse_chain(s, &obj);
            if (key_dim(s) == 0)
                return h->objects[obj];
            std::string out;
            for (size_t t = 0; t < ch.size(); ++t)
                out += (t ? "|" : "") + h->arrows[ch[t]].name;
            return out;
        };
        homs.emplace(xy, keyed(realize(d)));
    }
    std::vector<std::string> ids;
    for (size_t x = 0; x < c.objects.size(); ++x)
        ids.push_back(chain_key(0, {}, c.ids[x]));
    return build_scat(
        c.objects, max_dim, homs,
        [&](int x, int y, int z, const std::string& f, const std::string& g) {
            const FinCat &a = c.homs.at({x, y}), &b = c.homs.at({y, z});
            const CatFunctor& F = c.comps.at({x, y, z});
            int k = key_dim(f);
            int of = 0, og = 0;
            auto cf = parse_chain(f, &of), cg = parse_chain(g, &og);
            if (k == 0)
                return chain_key(0, {}, F.obj[of * b.num_objects() + og]);
            std::vector<int> out;
            for (int t = 0; t < k; ++t)
                out.push_back(F.arr[cf[t] * b.num_arrows() + cg[t]]);
            (void)a;
            return chain_key(k, out, 0);
        },
        ids);
}

Cat2 groupoid_enriched_fixture()
{
    Cat2 c;
    c.objects = {"p", "q"};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            c.homs.emplace(std::make_pair(x, y), cyclic_group(2));
    CatFunctor add;
    add.obj = {0};
    add.arr = {0, 1, 1, 0};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z)
                c.comps.emplace(std::make_tuple(x, y, z), add);
    c.ids = {0, 0};
    return c;
}

// ---- bracketed strings ----

std::string res_key(const ResSimplex& s)
{
    std::string k = std::to_string(s.dim()) + "#";
    for (size_t t = 0; t < s.leaves.size(); ++t)
        k += (t ? "," : "") + std::to_string(s.leaves[t]);
    k += ";";
    for (size_t t = 0; t < s.cuts.size(); ++t) {
        if (t)
            k += "|";
        for (size_t u = 0; u < s.cuts[t].size(); ++u)
            k += (u ? "." : "") + std::to_string(s.cuts[t][u]);
    }
    return k;
}

ResSimplex res_parse(const std::string& key)
{
    ResSimplex s;
    int dim = key_dim(key);
    std::string body = key_body(key);
    auto semi = body.find(';');
    if (semi == std::string::npos)
        throw std::invalid_argument("bad bracket key '" + key + "'");
    auto ints = [](const std::string& text, char sep) {
        std::vector<int> out;
        std::stringstream ss(text);
        std::string tok;
        while (std::getline(ss, tok, sep))
            if (!tok.empty())
                out.push_back(std::stoi(tok));
        return out;
    };
    s.leaves = ints(body.substr(0, semi), ',');
    std::string rest = body.substr(semi + 1);
    s.cuts.assign(dim, {});
    size_t start = 0;
    for (int t = 0; t < dim; ++t) {
        size_t bar = rest.find('|', start);
        std::string part = rest.substr(start, bar == std::string::npos ? std::string::npos : bar - start);
        s.cuts[t] = ints(part, '.');
        start = bar == std::string::npos ? rest.size() : bar + 1;
    }
    return s;
}

namespace {

// Splits [a, b) at the cut positions strictly inside it.
std::vector<std::pair<int, int>> split(int a, int b, const std::vector<int>& cuts)
{
    std::vector<std::pair<int, int>> out;
    int cur = a;
    for (int p : cuts)
        if (p > a && p < b) {
            out.emplace_back(cur, p);
            cur = p;
        }
    out.emplace_back(cur, b);
    return out;
}

std::vector<int> all_positions(int len)
{
    std::vector<int> v;
    for (int p = 1; p < len; ++p)
        v.push_back(p);
    return v;
}

}  // namespace

std::string res_label(const ResSimplex& s, const std::function<std::string(int)>& leaf_name)
{
    if (s.leaves.empty())
        return "id";
    int len = static_cast<int>(s.leaves.size());
    std::function<std::string(int, int, int)> wrap = [&](int level, int a, int b) -> std::string {
        if (level == 0)
            return "(" + leaf_name(s.leaves[a]) + ")";
        std::string out = "(";
        for (auto [u, v] : split(a, b, level == 1 ? all_positions(len) : s.cuts[level - 2]))
            out += wrap(level - 1, u, v);
        return out + ")";
    };
    int n = s.dim();
    std::string out;
    const std::vector<int> top = n == 0 ? all_positions(len) : s.cuts[n - 1];
    for (auto [u, v] : split(0, len, top))
        out += wrap(n, u, v);
    return out;
}

ResSimplex res_face(const ResSimplex& s, int i,
                    const std::function<int(const std::vector<int>&)>& compose_group)
{
    int n = s.dim();
    if (n < 1 || i < 0 || i > n)
        throw std::out_of_range("bracket face index out of range");
    ResSimplex r;
    if (i > 0) {
        r.leaves = s.leaves;
        r.cuts = s.cuts;
        r.cuts.erase(r.cuts.begin() + (i - 1));
        return r;
    }
    int len = static_cast<int>(s.leaves.size());
    auto groups = split(0, len, s.cuts[0]);
    if (len == 0)
        groups.clear();
    std::vector<int> start_to_new(len + 1, 0);
    int kept = 0;
    for (auto [a, b] : groups) {
        start_to_new[a] = kept;
        int c = compose_group(std::vector<int>(s.leaves.begin() + a, s.leaves.begin() + b));
        if (c >= 0) {
            r.leaves.push_back(c);
            ++kept;
        }
    }
    start_to_new[len] = kept;
    for (int t = 1; t < n; ++t) {
        std::set<int> nc;
        for (int p : s.cuts[t]) {
            int q = start_to_new[p];
            if (q > 0 && q < kept)
                nc.insert(q);
        }
        r.cuts.emplace_back(nc.begin(), nc.end());
    }
    return r;
}

ResSimplex res_degen(const ResSimplex& s, int i)
{
    int n = s.dim();
    if (i < 0 || i > n)
        throw std::out_of_range("bracket degeneracy index out of range");
    ResSimplex r = s;
    if (i == 0)
        r.cuts.insert(r.cuts.begin(), all_positions(static_cast<int>(s.leaves.size())));
    else
        r.cuts.insert(r.cuts.begin() + i, s.cuts[i - 1]);
    return r;
}

ResSimplex res_concat(const ResSimplex& f, const ResSimplex& g)
{
    if (f.dim() != g.dim())
        throw std::invalid_argument("concatenating bracketings of different depth");
    ResSimplex r;
    int lf = static_cast<int>(f.leaves.size());
    r.leaves = f.leaves;
    r.leaves.insert(r.leaves.end(), g.leaves.begin(), g.leaves.end());
    for (int t = 0; t < f.dim(); ++t) {
        std::vector<int> c = f.cuts[t];
        if (lf > 0 && !g.leaves.empty())
            c.push_back(lf);
        for (int p : g.cuts[t])
            c.push_back(p + lf);
        r.cuts.push_back(std::move(c));
    }
    return r;
}

bool is_acyclic(const FinCat& c)
{
    int n = c.num_objects();
    std::vector<std::vector<int>> succ(n);
    for (int f = 0; f < c.num_arrows(); ++f) {
        if (c.is_identity(f))
            continue;
        if (c.arrows[f].dom == c.arrows[f].cod)
            return false;
        succ[c.arrows[f].dom].push_back(c.arrows[f].cod);
    }
    std::vector<int> state(n, 0);
    std::function<bool(int)> dfs = [&](int u) {
        state[u] = 1;
        for (int v : succ[u]) {
            if (state[v] == 1)
                return false;
            if (state[v] == 0 && !dfs(v))
                return false;
        }
        state[u] = 2;
        return true;
    };
    for (int u = 0; u < n; ++u)
        if (state[u] == 0 && !dfs(u))
            return false;
    return true;
}

namespace {

// All weakly decreasing chains C_1 >= ... >= C_k inside C_0 = {1..len-1}.
void for_each_cut_chain(int len, int k, const std::function<void(const std::vector<std::vector<int>>&)>& visit)
{
    int m = std::max(0, len - 1);
    std::vector<int> depth(m, 0);
    while (true) {
        std::vector<std::vector<int>> cuts(k);
        for (int p = 0; p < m; ++p)
            for (int t = 0; t < depth[p]; ++t)
                cuts[t].push_back(p + 1);
        visit(cuts);
        int p = 0;
        while (p < m && depth[p] == k) {
            depth[p] = 0;
            ++p;
        }
        if (p == m)
            return;
        ++depth[p];
    }
}

// Strings of leaves x -> y in an acyclic graph given by out-edges (leaf id, target).
void for_each_path(int x, int y, const std::vector<std::vector<std::pair<int, int>>>& out,
                   std::vector<int>& cur, const std::function<void(const std::vector<int>&)>& visit)
{
    if (x == y) {
        visit(cur);
        return;
    }
    for (auto [leaf, z] : out[x]) {
        cur.push_back(leaf);
        for_each_path(z, y, out, cur, visit);
        cur.pop_back();
    }
}

struct ResLevel {
    std::vector<std::vector<std::pair<int, int>>> out;  // per object
};

Realized realize_res(int x, int y, int max_dim, const std::function<ResLevel(int)>& level,
                     const std::function<std::string(const std::string&, int, int)>& face,
                     const std::function<std::string(const std::string&, int, int)>& degen,
                     const std::function<std::string(const std::string&)>& label)
{
    SimplicialData d;
    d.max_dim = max_dim;
    d.simplices.resize(max_dim + 1);
    for (int k = 0; k <= max_dim; ++k) {
        ResLevel lv = level(k);
        std::vector<int> cur;
        for_each_path(x, y, lv.out, cur, [&](const std::vector<int>& leaves) {
            for_each_cut_chain(static_cast<int>(leaves.size()), k,
                               [&](const std::vector<std::vector<int>>& cuts) {
                                   d.simplices[k].push_back(res_key(ResSimplex{leaves, cuts}));
                               });
        });
    }
    d.face = face;
    d.degen = degen;
    d.label = label;
    return realize(d);
}

}  // namespace

SCat s_resolution(const FinCat& a, int max_dim)
{
    if (!is_acyclic(a))
        throw std::invalid_argument(
            "resolution homs are infinite for categories with non-identity cycles");
    int n = a.num_objects();
    ResLevel lv;
    lv.out.resize(n);
    for (int f = 0; f < a.num_arrows(); ++f)
        if (!a.is_identity(f))
            lv.out[a.arrows[f].dom].emplace_back(f, a.arrows[f].cod);
    auto compose_group = [&a](const std::vector<int>& g) {
        int c = g[0];
        for (size_t t = 1; t < g.size(); ++t)
            c = a.compose(g[t], c);
        return a.is_identity(c) ? -1 : c;
    };
    auto face = [&](const std::string& s, int, int i) {
        return res_key(res_face(res_parse(s), i, compose_group));
    };
    auto degen = [](const std::string& s, int, int i) { return res_key(res_degen(res_parse(s), i)); };
    auto label = [&a](const std::string& s) {
        return res_label(res_parse(s), [&a](int f) { return a.arrows[f].name; });
    };
    std::map<std::pair<int, int>, KeyedHom> homs;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            Realized r = realize_res(x, y, max_dim, [&](int) { return lv; }, face, degen, label);
            if (r.set.size() > 0)
                homs.emplace(std::make_pair(x, y), keyed(std::move(r)));
        }
    std::vector<std::string> ids(n, res_key(ResSimplex{}));
    return build_scat(
        a.objects, max_dim, homs,
        [](int, int, int, const std::string& f, const std::string& g) {
            return res_key(res_concat(res_parse(f), res_parse(g)));
        },
        ids);
}

// ---- S[n] as cubes ----

namespace {

std::string path_label(int i, int j, unsigned mask)
{
    std::string s;
    int cur = i;
    for (int k = i + 1; k <= j; ++k)
        if (k == j || (mask >> k & 1u)) {
            s += "(" + std::to_string(cur) + std::to_string(k) + ")";
            cur = k;
        }
    return s;
}

std::string mask_key(int k, const std::vector<unsigned>& chain)
{
    std::string s;
    for (size_t t = 0; t < chain.size(); ++t)
        s += (t ? "," : "") + std::to_string(chain[t]);
    return dim_key(k, s);
}

std::vector<unsigned> parse_masks(const std::string& key)
{
    std::vector<unsigned> out;
    std::stringstream ss(key_body(key));
    std::string tok;
    while (std::getline(ss, tok, ','))
        out.push_back(static_cast<unsigned>(std::stoul(tok)));
    return out;
}

// Bracket label of a chain S_0 >= S_1 >= ... of interior subsets.
std::string chain_label(int i, int j, const std::vector<unsigned>& chain)
{
    ResSimplex r;
    std::vector<int> pos_of(j + 1, -1);
    int cur = i, p = 0;
    for (int k = i + 1; k <= j; ++k)
        if (k == j || (chain[0] >> k & 1u)) {
            r.leaves.push_back(cur * 100 + k);
            cur = k;
            ++p;
            pos_of[k] = p;
        }
    for (size_t t = 1; t < chain.size(); ++t) {
        std::vector<int> c;
        for (int k = i + 1; k < j; ++k)
            if (chain[t] >> k & 1u)
                c.push_back(pos_of[k]);
        r.cuts.push_back(c);
    }
    return res_label(r, [](int code) { return std::to_string(code / 100) + std::to_string(code % 100); });
}

}  // namespace

SCat s_ordinal(int n, int max_dim)
{
    if (n > 9)
        throw std::invalid_argument("S[n] labels assume n <= 9");
    std::map<std::pair<int, int>, KeyedHom> homs;
    for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
            SimplicialData d;
            d.max_dim = max_dim;
            d.simplices.resize(max_dim + 1);
            unsigned interior = 0;
            for (int k = i + 1; k < j; ++k)
                interior |= 1u << k;
            for (int k = 0; k <= max_dim; ++k) {
                if (i == j) {
                    d.simplices[k].push_back(dim_key(k, "id"));
                    continue;
                }
                // weakly decreasing chains of subsets of the interior, k + 1 long
                std::vector<unsigned> chain;
                std::function<void(unsigned)> rec = [&](unsigned sup) {
                    if (static_cast<int>(chain.size()) == k + 1) {
                        d.simplices[k].push_back(mask_key(k, chain));
                        return;
                    }
                    for (unsigned s = sup;; s = (s - 1) & sup) {
                        chain.push_back(s);
                        rec(s);
                        chain.pop_back();
                        if (s == 0)
                            break;
                    }
                };
                rec(interior);
            }
            if (i == j) {
                d.face = [](const std::string& s, int k, int) { return dim_key(k - 1, key_body(s)); };
                d.degen = [](const std::string& s, int k, int) { return dim_key(k + 1, key_body(s)); };
                d.label = [](const std::string&) { return std::string("id"); };
            } else {
                d.face = [](const std::string& s, int k, int t) {
                    auto c = parse_masks(s);
                    c.erase(c.begin() + t);
                    return mask_key(k - 1, c);
                };
                d.degen = [](const std::string& s, int k, int t) {
                    auto c = parse_masks(s);
                    c.insert(c.begin() + t, c[t]);
                    return mask_key(k + 1, c);
                };
                d.label = [i, j](const std::string& s) {
                    auto c = parse_masks(s);
                    return c.size() == 1 ? path_label(i, j, c[0]) : chain_label(i, j, c);
                };
            }
            homs.emplace(std::make_pair(i, j), keyed(realize(d)));
        }
    std::vector<std::string> objects, ids;
    for (int i = 0; i <= n; ++i) {
        objects.push_back(std::to_string(i));
        ids.push_back(dim_key(0, "id"));
    }
    return build_scat(
        objects, max_dim, homs,
        [](int x, int y, int z, const std::string& f, const std::string& g) {
            int k = key_dim(f);
            if (x == y)
                return g;
            if (y == z)
                return f;
            auto a = parse_masks(f), b = parse_masks(g);
            std::vector<unsigned> c;
            for (int t = 0; t <= k; ++t)
                c.push_back(a[t] | b[t] | (1u << y));
            return mask_key(k, c);
        },
        ids);
}

SimplexRef s_ordinal_vertex(const SCat& sn, int i, int j, const std::vector<int>& interior)
{
    if (i == j)
        return sn.ids[i];
    unsigned m = 0;
    for (int k : interior)
        m |= 1u << k;
    return SimplexRef{sn.hom_or_throw(i, j).index(path_label(i, j, m)), {}};
}

namespace {

unsigned vertex_mask(int, int, const std::string& label)
{
    return path_mask(label);
}

}  // namespace

VertexTupleIndex::VertexTupleIndex(const SSet& s)
{
    for (int g = 0; g < s.size(); ++g)
        by_.emplace(s.vertices(SimplexRef{g, {}}), g);
}

SimplexRef VertexTupleIndex::ref(const std::vector<int>& weak) const
{
    std::vector<int> strict;
    Word w;
    for (size_t t = 0; t < weak.size(); ++t) {
        if (t > 0 && weak[t] == weak[t - 1])
            w.push_back(static_cast<int>(t) - 1);
        else
            strict.push_back(weak[t]);
    }
    std::reverse(w.begin(), w.end());
    auto it = by_.find(strict);
    if (it == by_.end())
        throw std::logic_error("vertex sequence is not a simplex");
    return SimplexRef{it->second, w};
}

unsigned path_mask(const std::string& label)
{
    // "(ab)(bc)...": interior points are the right ends except the last
    unsigned m = 0;
    for (size_t p = 0; p + 3 < label.size(); p += 4)
        if (p + 4 < label.size())
            m |= 1u << (label[p + 2] - '0');
    return m;
}

const SCat& s_ordinal_cached(int n, int max_dim)
{
    static std::map<std::pair<int, int>, SCat> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({n, max_dim});
    if (it == cache.end())
        it = cache.emplace(std::make_pair(n, max_dim), s_ordinal(n, max_dim)).first;
    return it->second;
}

SFunctor s_ordinal_map(const std::vector<int>& f, const SCat& sm, const SCat& sn)
{
    int m = sm.num_objects() - 1;
    if (static_cast<int>(f.size()) != m + 1)
        throw std::invalid_argument("operator has the wrong source");
    for (size_t t = 1; t < f.size(); ++t)
        if (f[t] < f[t - 1])
            throw std::invalid_argument("operator is not monotone");
    SFunctor F;
    F.obj = f;
    for (const auto& [ij, h] : sm.homs) {
        auto [i, j] = ij;
        int a = f[i], b = f[j];
        const SSet& target = sn.hom_or_throw(a, b);
        SMap mp;
        if (a == b) {
            for (int g = 0; g < h.size(); ++g)
                mp.image.push_back(sn.identity(a, h.dim(g)));
            F.hom.emplace(ij, std::move(mp));
            continue;
        }
        VertexTupleIndex tidx(target);
        std::vector<int> vimg(h.size(), -1);
        for (int v : h.nd(0)) {
            unsigned src = i == j ? 0u : vertex_mask(i, j, h.name(v));
            std::vector<int> img;
            for (int k = i + 1; k < j; ++k)
                if (src >> k & 1u) {
                    int fk = f[k];
                    if (fk > a && fk < b)
                        img.push_back(fk);
                }
            vimg[v] = s_ordinal_vertex(sn, a, b, img).base;
        }
        for (int g = 0; g < h.size(); ++g) {
            std::vector<int> weak;
            for (int v : h.vertices(SimplexRef{g, {}}))
                weak.push_back(vimg[v]);
            mp.image.push_back(tidx.ref(weak));
        }
        F.hom.emplace(ij, std::move(mp));
    }
    return F;
}

std::vector<CubeFacet> cube_facets(int n)
{
    if (n < 2)
        throw std::invalid_argument("S[n](0,n) is a point for n < 2");
    SCat sn = s_ordinal(n, n - 1), sm = s_ordinal(n - 1, n - 2);
    const SSet& cube = sn.hom_or_throw(0, n);
    std::vector<unsigned> vmask(cube.size(), 0);
    for (int v : cube.nd(0))
        vmask[v] = vertex_mask(0, n, cube.name(v));

    // vertex sets hit by each coface, as masks
    std::vector<std::set<unsigned>> hit(n + 1);
    for (int i = 0; i <= n; ++i) {
        std::vector<int> delta;
        for (int t = 0; t <= n; ++t)
            if (t != i)
                delta.push_back(t);
        SFunctor F = s_ordinal_map(delta, sm, sn);
        const SSet& src = sm.hom_or_throw(0, n - 1);
        const SMap& fm = F.hom.at({0, n - 1});
        int a = delta[0], b = delta[n - 1];
        for (int v : src.nd(0)) {
            SimplexRef img = apply(fm, SimplexRef{v, {}});
            if (a == 1)
                img = sn.compose(0, 1, n, sn.hom_or_throw(0, 1).vertex_ref(0), img);
            if (b == n - 1)
                img = sn.compose(0, n - 1, n, img, sn.hom_or_throw(n - 1, n).vertex_ref(0));
            hit[i].insert(vmask[img.base]);
        }
    }
    std::vector<CubeFacet> out;
    for (int k = 1; k < n; ++k)
        for (int value = 0; value <= 1; ++value) {
            CubeFacet fc;
            fc.coordinate = k;
            fc.value = value;
            std::set<unsigned> verts;
            std::vector<std::pair<unsigned, std::string>> corners;
            for (int v : cube.nd(0))
                if (((vmask[v] >> k & 1u) == 0) == (value == 1)) {
                    verts.insert(vmask[v]);
                    corners.emplace_back(vmask[v], cube.name(v));
                }
            std::sort(corners.begin(), corners.end());
            for (auto& c : corners)
                fc.corners.push_back(c.second);
            for (int i = 0; i <= n; ++i)
                if (hit[i] == verts) {
                    if (fc.source >= 0)
                        throw std::logic_error("facet hit by two cofaces");
                    fc.source = i;
                }
            out.push_back(std::move(fc));
        }
    return out;
}

InterchangeSquare interchange_square()
{
    InterchangeSquare r;
    r.facets = cube_facets(4);
    int missing = 0;
    for (const auto& f : r.facets)
        if (f.source < 0) {
            r.square = f;
            ++missing;
        }
    if (missing != 1)
        throw std::logic_error("expected exactly one facet outside the coface images");
    SCat s4 = s_ordinal(4, 3);
    const SSet& cube = s4.hom_or_throw(0, 4);
    std::set<int> corner_ids;
    for (const auto& c : r.square.corners)
        corner_ids.insert(cube.index(c));
    std::vector<std::string> tris;
    for (int k = 1; k <= 2; ++k)
        for (int g : cube.nd(k)) {
            auto vs = cube.vertices(SimplexRef{g, {}});
            bool inside = std::all_of(vs.begin(), vs.end(), [&](int v) { return corner_ids.count(v) > 0; });
            if (!inside)
                continue;
            if (k == 2) {
                tris.push_back(cube.name(g));
                continue;
            }
            unsigned a = vertex_mask(0, 4, cube.name(vs[0])), b = vertex_mask(0, 4, cube.name(vs[1]));
            if (__builtin_popcount(a ^ b) == 1)
                r.edges.push_back(cube.name(g));
        }
    std::sort(r.edges.begin(), r.edges.end());
    std::sort(tris.begin(), tris.end());
    for (size_t t = 0; t < tris.size(); ++t)
        r.cell += (t ? " " : "") + tris[t];
    return r;
}

// ---- pi0, homotopy, local Kan ----

FinCat pi0_category(const SCat& b)
{
    FinCat c;
    c.objects = b.objects;
    int n = b.num_objects();
    std::map<std::pair<int, int>, std::vector<int>> comp_of;  // per hom: vertex -> arrow
    std::set<std::string> used;
    for (const auto& [xy, h] : b.homs) {
        std::vector<int> parent(h.size());
        std::iota(parent.begin(), parent.end(), 0);
        std::function<int(int)> find = [&](int u) { return parent[u] == u ? u : parent[u] = find(parent[u]); };
        for (int e : h.nd(1))
            parent[find(h.faces(e)[0].base)] = find(h.faces(e)[1].base);
        std::vector<int> arrow(h.size(), -1);
        std::map<int, int> root_arrow;
        for (int v : h.nd(0)) {
            int r = find(v);
            auto it = root_arrow.find(r);
            if (it == root_arrow.end()) {
                std::string name = h.name(v);
                while (used.count(name))
                    name += "'";
                used.insert(name);
                it = root_arrow.emplace(r, c.num_arrows()).first;
                c.arrows.push_back(Arrow{name, xy.first, xy.second});
            }
            arrow[v] = it->second;
        }
        comp_of.emplace(xy, std::move(arrow));
    }
    for (int x = 0; x < n; ++x)
        c.identity.push_back(comp_of.at({x, x})[b.ids[x].base]);
    int m = c.num_arrows();
    c.comp.assign(m, std::vector<int>(m, -1));
    for (const auto& [xyz, cm] : b.comps) {
        auto [x, y, z] = xyz;
        const SSet &hxy = b.hom_or_throw(x, y), &hyz = b.hom_or_throw(y, z);
        for (int f : hxy.nd(0))
            for (int g : hyz.nd(0)) {
                SimplexRef h = b.compose(x, y, z, SimplexRef{f, {}}, SimplexRef{g, {}});
                int af = comp_of.at({x, y})[f], ag = comp_of.at({y, z})[g];
                int ah = comp_of.at({x, z})[h.base];
                if (c.comp[ag][af] >= 0 && c.comp[ag][af] != ah)
                    throw std::logic_error("composition is not well defined on components");
                c.comp[ag][af] = ah;
            }
    }
    c.validate();
    return c;
}

bool homotopic_in_hom(const SCat& b, int x, int y, const SimplexRef& f, const SimplexRef& g)
{
    const SSet& h = b.hom_or_throw(x, y);
    if (h.dim(f) != 0 || h.dim(g) != 0)
        throw std::invalid_argument("homotopy is between vertices of a hom");
    for (const auto& e : h.simplices(1))
        if (h.face(e, 1) == f && h.face(e, 0) == g)
            return true;
    return false;
}

LocalKanVerdict is_locally_kan(const SCat& b, int max_n, Budget* budget)
{
    LocalKanVerdict v;
    v.max_n = max_n;
    for (const auto& [xy, h] : b.homs) {
        auto r = is_kan(h, max_n, budget);
        if (!r.ok) {
            v.ok = false;
            v.x = xy.first;
            v.y = xy.second;
            v.witness = r.witness;
            return v;
        }
    }
    return v;
}

// ---- diagonal of the levelwise resolution ----

SCat diag_resolution(const SCat& b, int max_dim)
{
    int n = b.num_objects();
    max_dim = std::min(max_dim, b.max_dim);
    for (int x = 0; x < n; ++x) {
        const SSet& h = b.hom_or_throw(x, x);
        if (h.size() != 1)
            throw std::invalid_argument("diagonal resolution needs point endomorphism homs");
    }
    {
        CatBuilder cb;
        for (const auto& o : b.objects)
            cb.object(o);
        int t = 0;
        for (const auto& [xy, h] : b.homs)
            if (xy.first != xy.second)
                cb.arrow("e" + std::to_string(t++), xy.first, xy.second);
        // acyclicity only depends on the object graph
        if (!is_acyclic(cb.peek()))
            throw std::invalid_argument("diagonal resolution needs an acyclic object graph");
    }
    // leaves: (x, y, simplex) interned
    struct Leaf {
        int x, y;
        SimplexRef r;
        bool operator<(const Leaf& o) const { return std::tie(x, y, r) < std::tie(o.x, o.y, o.r); }
    };
    auto leaves = std::make_shared<std::vector<Leaf>>();
    auto index = std::make_shared<std::map<Leaf, int>>();
    auto intern = [leaves, index](int x, int y, const SimplexRef& r) {
        Leaf l{x, y, r};
        auto it = index->find(l);
        if (it != index->end())
            return it->second;
        int id = static_cast<int>(leaves->size());
        leaves->push_back(l);
        index->emplace(l, id);
        return id;
    };
    std::vector<ResLevel> levels(max_dim + 1);
    for (int k = 0; k <= max_dim; ++k) {
        levels[k].out.resize(n);
        for (const auto& [xy, h] : b.homs) {
            if (xy.first == xy.second)
                continue;
            for (const auto& r : h.simplices(k))
                levels[k].out[xy.first].emplace_back(intern(xy.first, xy.second, r), xy.second);
        }
    }
    auto face = [&b, leaves, intern](const std::string& s, int k, int i) {
        ResSimplex r = res_parse(s);
        for (int& l : r.leaves) {
            const Leaf& lf = (*leaves)[l];
            l = intern(lf.x, lf.y, b.hom_or_throw(lf.x, lf.y).face(lf.r, i));
        }
        (void)k;
        return res_key(res_face(r, i, [&](const std::vector<int>& g) {
            Leaf cur = (*leaves)[g[0]];
            for (size_t t = 1; t < g.size(); ++t) {
                const Leaf& nx = (*leaves)[g[t]];
                cur = Leaf{cur.x, nx.y, b.compose(cur.x, cur.y, nx.y, cur.r, nx.r)};
            }
            return cur.x == cur.y ? -1 : intern(cur.x, cur.y, cur.r);
        }));
    };
    auto degen = [&b, leaves, intern](const std::string& s, int, int i) {
        ResSimplex r = res_parse(s);
        for (int& l : r.leaves) {
            const Leaf& lf = (*leaves)[l];
            l = intern(lf.x, lf.y, b.hom_or_throw(lf.x, lf.y).degen(lf.r, i));
        }
        return res_key(res_degen(r, i));
    };
    auto label = [&b, leaves](const std::string& s) {
        return res_label(res_parse(s), [&](int l) {
            const Leaf& lf = (*leaves)[l];
            return b.hom_or_throw(lf.x, lf.y).ref_name(lf.r);
        });
    };
    std::map<std::pair<int, int>, KeyedHom> homs;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            Realized r = realize_res(x, y, max_dim, [&](int k) { return levels[k]; }, face, degen, label);
            if (r.set.size() > 0)
                homs.emplace(std::make_pair(x, y), keyed(std::move(r)));
        }
    std::vector<std::string> ids(n, res_key(ResSimplex{}));
    return build_scat(
        b.objects, max_dim, homs,
        [](int, int, int, const std::string& f, const std::string& g) {
            return res_key(res_concat(res_parse(f), res_parse(g)));
        },
        ids);
}

}  // namespace simpcat
