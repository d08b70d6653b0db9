#include "simpcat/cat.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace simpcat {

int FinCat::compose(int g, int f) const
{
    int h = comp[g][f];
    if (h < 0)
        throw std::invalid_argument("arrows '" + arrows[g].name + "' and '" + arrows[f].name +
                                    "' are not composable");
    return h;
}

int FinCat::object_index(const std::string& name) const
{
    for (int i = 0; i < num_objects(); ++i)
        if (objects[i] == name)
            return i;
    throw std::invalid_argument("unknown object '" + name + "'");
}

int FinCat::arrow_index(const std::string& name) const
{
    for (int i = 0; i < num_arrows(); ++i)
        if (arrows[i].name == name)
            return i;
    throw std::invalid_argument("unknown arrow '" + name + "'");
}

std::vector<int> FinCat::hom(int x, int y) const
{
    std::vector<int> out;
    for (int f = 0; f < num_arrows(); ++f)
        if (arrows[f].dom == x && arrows[f].cod == y)
            out.push_back(f);
    return out;
}

void FinCat::validate() const
{
    int n = num_arrows();
    if (static_cast<int>(identity.size()) != num_objects())
        throw std::invalid_argument("identity table has wrong size");
    if (static_cast<int>(comp.size()) != n)
        throw std::invalid_argument("composition table has wrong size");
    std::set<std::string> names;
    for (const auto& a : arrows) {
        if (a.dom < 0 || a.dom >= num_objects() || a.cod < 0 || a.cod >= num_objects())
            throw std::invalid_argument("arrow '" + a.name + "' has an unknown endpoint");
        if (!names.insert(a.name).second)
            throw std::invalid_argument("duplicate arrow '" + a.name + "'");
    }
    for (int x = 0; x < num_objects(); ++x) {
        int i = identity[x];
        if (i < 0 || i >= n || arrows[i].dom != x || arrows[i].cod != x)
            throw std::invalid_argument("bad identity at object '" + objects[x] + "'");
    }
    for (int g = 0; g < n; ++g) {
        if (static_cast<int>(comp[g].size()) != n)
            throw std::invalid_argument("composition table has wrong size");
        for (int f = 0; f < n; ++f) {
            bool composable = arrows[f].cod == arrows[g].dom;
            int h = comp[g][f];
            if (!composable) {
                if (h >= 0)
                    throw std::invalid_argument("composite given for non-composable pair");
                continue;
            }
            if (h < 0 || h >= n)
                throw std::invalid_argument("missing composite " + arrows[g].name + "∘" +
                                            arrows[f].name);
            if (arrows[h].dom != arrows[f].dom || arrows[h].cod != arrows[g].cod)
                throw std::invalid_argument("composite " + arrows[g].name + "∘" + arrows[f].name +
                                            " has wrong endpoints");
        }
    }
    for (int f = 0; f < n; ++f) {
        if (comp[identity[arrows[f].cod]][f] != f || comp[f][identity[arrows[f].dom]] != f)
            throw std::invalid_argument("unit law fails at '" + arrows[f].name + "'");
    }
    for (int f = 0; f < n; ++f)
        for (int g = 0; g < n; ++g) {
            if (comp[g][f] < 0)
                continue;
            for (int h = 0; h < n; ++h) {
                if (comp[h][g] < 0)
                    continue;
                if (comp[h][comp[g][f]] != comp[comp[h][g]][f])
                    throw std::invalid_argument("associativity fails at (" + arrows[h].name + "," +
                                                arrows[g].name + "," + arrows[f].name + ")");
            }
        }
}

int CatBuilder::object(const std::string& name, const std::string& id_name)
{
    int x = c_.num_objects();
    c_.objects.push_back(name);
    int i = c_.num_arrows();
    c_.arrows.push_back(Arrow{id_name.empty() ? "id_" + name : id_name, x, x});
    c_.identity.push_back(i);
    for (auto& row : c_.comp)
        row.push_back(-1);
    c_.comp.push_back(std::vector<int>(c_.num_arrows(), -1));
    return x;
}

int CatBuilder::arrow(const std::string& name, int dom, int cod)
{
    int f = c_.num_arrows();
    c_.arrows.push_back(Arrow{name, dom, cod});
    for (auto& row : c_.comp)
        row.push_back(-1);
    c_.comp.push_back(std::vector<int>(c_.num_arrows(), -1));
    return f;
}

int CatBuilder::arrow(const std::string& name, const std::string& dom, const std::string& cod)
{
    return arrow(name, c_.object_index(dom), c_.object_index(cod));
}

void CatBuilder::set(int g, int f, int gf)
{
    c_.comp[g][f] = gf;
}

void CatBuilder::set(const std::string& g, const std::string& f, const std::string& gf)
{
    set(c_.arrow_index(g), c_.arrow_index(f), c_.arrow_index(gf));
}

FinCat CatBuilder::build() const
{
    FinCat c = c_;
    int n = c.num_arrows();
    for (int g = 0; g < n; ++g)
        for (int f = 0; f < n; ++f) {
            if (c.arrows[f].cod != c.arrows[g].dom)
                continue;
            if (c.is_identity(g))
                c.comp[g][f] = f;
            else if (c.is_identity(f))
                c.comp[g][f] = g;
        }
    c.validate();
    return c;
}

FinCat ordinal(int n)
{
    CatBuilder b;
    for (int i = 0; i <= n; ++i)
        b.object(std::to_string(i), std::to_string(i) + std::to_string(i));
    auto name = [](int i, int j) { return std::to_string(i) + std::to_string(j); };
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            b.arrow(name(i, j), i, j);
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k)
                b.set(name(j, k), name(i, j), name(i, k));
    return b.build();
}

FinCat discrete(int n)
{
    CatBuilder b;
    for (int i = 0; i < n; ++i)
        b.object("x" + std::to_string(i));
    return b.build();
}

FinCat monoid(const std::vector<std::string>& elements, const std::vector<std::vector<int>>& table)
{
    CatBuilder b;
    b.object("*", elements[0]);
    for (size_t e = 1; e < elements.size(); ++e)
        b.arrow(elements[e], 0, 0);
    for (size_t g = 1; g < elements.size(); ++g)
        for (size_t f = 1; f < elements.size(); ++f)
            b.set(static_cast<int>(g), static_cast<int>(f), table[g][f]);
    return b.build();
}

FinCat cyclic_group(int n)
{
    std::vector<std::string> el;
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i) {
        el.push_back(i == 0 ? "e" : "g" + std::to_string(i));
        for (int j = 0; j < n; ++j)
            t[i][j] = (i + j) % n;
    }
    return monoid(el, t);
}

FinCat free_iso()
{
    CatBuilder b;
    b.object("a");
    b.object("b");
    b.arrow("i", "a", "b");
    b.arrow("j", "b", "a");
    b.set("j", "i", "id_a");
    b.set("i", "j", "id_b");
    return b.build();
}

FinCat indiscrete(int n)
{
    CatBuilder b;
    for (int i = 0; i < n; ++i)
        b.object("x" + std::to_string(i), "u" + std::to_string(i) + std::to_string(i));
    std::vector<std::vector<int>> a(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a[i][j] = i == j ? b.peek().identity[i]
                             : b.arrow("u" + std::to_string(i) + std::to_string(j), i, j);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (i != j && j != k)
                    b.set(a[j][k], a[i][j], a[i][k]);
    return b.build();
}

FinCat poset(const std::vector<std::string>& elements, const std::vector<std::pair<int, int>>& less)
{
    int n = static_cast<int>(elements.size());
    std::vector<std::vector<char>> le(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i)
        le[i][i] = 1;
    for (auto [i, j] : less)
        le[i][j] = 1;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (le[i][k] && le[k][j])
                    le[i][j] = 1;
    CatBuilder b;
    for (const auto& e : elements)
        b.object(e, e + e);
    std::vector<std::vector<int>> a(n, std::vector<int>(n, -1));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!le[i][j])
                continue;
            if (i != j && le[j][i])
                throw std::invalid_argument("relation is not antisymmetric");
            a[i][j] = i == j ? b.peek().identity[i] : b.arrow(elements[i] + elements[j], i, j);
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (i != j && j != k && a[i][j] >= 0 && a[j][k] >= 0)
                    b.set(a[j][k], a[i][j], a[i][k]);
    return b.build();
}

FinCat product(const FinCat& a, const FinCat& b)
{
    FinCat c;
    int na = a.num_objects(), nb = b.num_objects();
    for (int x = 0; x < na; ++x)
        for (int y = 0; y < nb; ++y)
            c.objects.push_back("(" + a.objects[x] + "," + b.objects[y] + ")");
    int ma = a.num_arrows(), mb = b.num_arrows();
    for (int f = 0; f < ma; ++f)
        for (int g = 0; g < mb; ++g)
            c.arrows.push_back(Arrow{"(" + a.arrows[f].name + "," + b.arrows[g].name + ")",
                                     a.arrows[f].dom * nb + b.arrows[g].dom,
                                     a.arrows[f].cod * nb + b.arrows[g].cod});
    for (int x = 0; x < na; ++x)
        for (int y = 0; y < nb; ++y)
            c.identity.push_back(a.identity[x] * mb + b.identity[y]);
    int n = ma * mb;
    c.comp.assign(n, std::vector<int>(n, -1));
    for (int g = 0; g < n; ++g)
        for (int f = 0; f < n; ++f) {
            int ga = g / mb, gb = g % mb, fa = f / mb, fb = f % mb;
            if (a.comp[ga][fa] >= 0 && b.comp[gb][fb] >= 0)
                c.comp[g][f] = a.comp[ga][fa] * mb + b.comp[gb][fb];
        }
    c.validate();
    return c;
}

FinCat coproduct(const FinCat& a, const FinCat& b)
{
    FinCat c = a;
    int no = a.num_objects(), na = a.num_arrows();
    // clashing names from the second summand get primed
    auto fresh = [](std::string n, auto taken) {
        while (taken(n))
            n += "'";
        return n;
    };
    for (const auto& o : b.objects)
        c.objects.push_back(fresh(o, [&](const std::string& n) {
            return std::find(c.objects.begin(), c.objects.end(), n) != c.objects.end();
        }));
    for (const auto& f : b.arrows)
        c.arrows.push_back(Arrow{fresh(f.name,
                                       [&](const std::string& n) {
                                           for (const auto& a : c.arrows)
                                               if (a.name == n)
                                                   return true;
                                           return false;
                                       }),
                                 f.dom + no, f.cod + no});
    for (int i : b.identity)
        c.identity.push_back(i + na);
    int n = c.num_arrows();
    c.comp.assign(n, std::vector<int>(n, -1));
    for (int g = 0; g < na; ++g)
        for (int f = 0; f < na; ++f)
            c.comp[g][f] = a.comp[g][f];
    for (int g = 0; g < b.num_arrows(); ++g)
        for (int f = 0; f < b.num_arrows(); ++f)
            c.comp[g + na][f + na] = b.comp[g][f] < 0 ? -1 : b.comp[g][f] + na;
    c.validate();
    return c;
}

FinCat opposite(const FinCat& a)
{
    FinCat c = a;
    for (auto& f : c.arrows)
        std::swap(f.dom, f.cod);
    for (int g = 0; g < a.num_arrows(); ++g)
        for (int f = 0; f < a.num_arrows(); ++f)
            c.comp[g][f] = a.comp[f][g];
    c.validate();
    return c;
}

bool is_valid_functor(const FinCat& a, const FinCat& b, const CatFunctor& f, std::string* why)
{
    auto fail = [&](const std::string& m) {
        if (why)
            *why = m;
        return false;
    };
    if (static_cast<int>(f.obj.size()) != a.num_objects() ||
        static_cast<int>(f.arr.size()) != a.num_arrows())
        return fail("functor tables have wrong size");
    for (int x = 0; x < a.num_objects(); ++x)
        if (f.arr[a.identity[x]] != b.identity[f.obj[x]])
            return fail("identity not preserved at '" + a.objects[x] + "'");
    for (int g = 0; g < a.num_arrows(); ++g) {
        const auto& ag = a.arrows[g];
        const auto& bg = b.arrows[f.arr[g]];
        if (bg.dom != f.obj[ag.dom] || bg.cod != f.obj[ag.cod])
            return fail("endpoints not preserved at '" + ag.name + "'");
    }
    for (int g = 0; g < a.num_arrows(); ++g)
        for (int h = 0; h < a.num_arrows(); ++h)
            if (a.comp[g][h] >= 0 && b.comp[f.arr[g]][f.arr[h]] != f.arr[a.comp[g][h]])
                return fail("composition not preserved at " + a.arrows[g].name + "∘" +
                            a.arrows[h].name);
    return true;
}

std::optional<CatFunctor> find_isomorphism(const FinCat& a, const FinCat& b, Budget* budget)
{
    int no = a.num_objects(), na = a.num_arrows();
    if (no != b.num_objects() || na != b.num_arrows())
        return std::nullopt;
    auto profile = [](const FinCat& c, int x) {
        std::vector<int> in, out;
        for (int y = 0; y < c.num_objects(); ++y) {
            out.push_back(static_cast<int>(c.hom(x, y).size()));
            in.push_back(static_cast<int>(c.hom(y, x).size()));
        }
        std::sort(in.begin(), in.end());
        std::sort(out.begin(), out.end());
        out.insert(out.end(), in.begin(), in.end());
        out.push_back(static_cast<int>(c.hom(x, x).size()));
        return out;
    };
    std::vector<std::vector<int>> pa(no), pb(no);
    for (int x = 0; x < no; ++x) {
        pa[x] = profile(a, x);
        pb[x] = profile(b, x);
    }
    CatFunctor f;
    f.obj.assign(no, -1);
    f.arr.assign(na, -1);
    std::vector<char> used_o(no, 0), used_a(na, 0);
    std::vector<int> arrows_order;
    for (int g = 0; g < na; ++g)
        if (!a.is_identity(g))
            arrows_order.push_back(g);
    std::optional<CatFunctor> found;

    std::function<bool(size_t)> arrows_rec = [&](size_t t) -> bool {
        tick(budget);
        if (t == arrows_order.size()) {
            if (is_valid_functor(a, b, f)) {
                found = f;
                return true;
            }
            return false;
        }
        int g = arrows_order[t];
        int x = f.obj[a.arrows[g].dom], y = f.obj[a.arrows[g].cod];
        for (int h : b.hom(x, y)) {
            if (used_a[h] || b.is_identity(h))
                continue;
            f.arr[g] = h;
            bool ok = true;
            for (size_t s = 0; s <= t && ok; ++s) {
                int k = arrows_order[s];
                int kg = a.comp[k][g], gk = a.comp[g][k];
                if (kg >= 0 && f.arr[kg] >= 0 && b.comp[f.arr[k]][h] != f.arr[kg])
                    ok = false;
                if (gk >= 0 && f.arr[gk] >= 0 && b.comp[h][f.arr[k]] != f.arr[gk])
                    ok = false;
            }
            if (ok) {
                used_a[h] = 1;
                if (arrows_rec(t + 1))
                    return true;
                used_a[h] = 0;
            }
            f.arr[g] = -1;
        }
        return false;
    };
    std::function<bool(int)> objects_rec = [&](int x) -> bool {
        tick(budget);
        if (x == no) {
            for (int y = 0; y < no; ++y)
                for (int z = 0; z < no; ++z)
                    if (a.hom(y, z).size() != b.hom(f.obj[y], f.obj[z]).size())
                        return false;
            for (int y = 0; y < no; ++y) {
                f.arr[a.identity[y]] = b.identity[f.obj[y]];
                used_a[b.identity[f.obj[y]]] = 1;
            }
            if (arrows_rec(0))
                return true;
            for (int y = 0; y < no; ++y) {
                used_a[b.identity[f.obj[y]]] = 0;
                f.arr[a.identity[y]] = -1;
            }
            return false;
        }
        for (int y = 0; y < no; ++y) {
            if (used_o[y] || pa[x] != pb[y])
                continue;
            bool ok = true;
            for (int z = 0; z < x && ok; ++z)
                if (a.hom(x, z).size() != b.hom(y, f.obj[z]).size() ||
                    a.hom(z, x).size() != b.hom(f.obj[z], y).size())
                    ok = false;
            if (!ok)
                continue;
            used_o[y] = 1;
            f.obj[x] = y;
            if (objects_rec(x + 1))
                return true;
            used_o[y] = 0;
            f.obj[x] = -1;
        }
        return false;
    };
    objects_rec(0);
    return found;
}

std::optional<int> inverse(const FinCat& c, int f)
{
    const auto& a = c.arrows[f];
    for (int g : c.hom(a.cod, a.dom))
        if (c.comp[g][f] == c.identity[a.dom] && c.comp[f][g] == c.identity[a.cod])
            return g;
    return std::nullopt;
}

bool is_groupoid(const FinCat& c)
{
    for (int f = 0; f < c.num_arrows(); ++f)
        if (!inverse(c, f))
            return false;
    return true;
}

namespace {

std::string chain_label(const FinCat& c, const std::vector<int>& ch, bool prefix)
{
    std::string s;
    for (size_t t = 0; t < ch.size(); ++t) {
        if (t)
            s += "|";
        s += (prefix ? "a:" : "") + c.arrows[ch[t]].name;
    }
    return s;
}

}  // namespace

NerveSet nerve_data(const FinCat& c, int max_dim)
{
    NerveSet n{SSet(max_dim), {}, {}, {}, false};
    bool prefix = false;
    for (const auto& o : c.objects)
        for (const auto& a : c.arrows)
            if (o == a.name)
                prefix = true;
    n.prefixed = prefix;
    for (int x = 0; x < c.num_objects(); ++x) {
        int g = n.set.add(c.objects[x], 0, {});
        n.object.push_back(x);
        n.chain.push_back({});
        n.vertex_of_object.push_back(g);
    }
    std::vector<std::vector<int>> layer;
    if (max_dim >= 1)
        for (int f = 0; f < c.num_arrows(); ++f) {
            if (c.is_identity(f))
                continue;
            std::vector<SimplexRef> faces{n.vertex(c.arrows[f].cod), n.vertex(c.arrows[f].dom)};
            n.set.add(chain_label(c, {f}, prefix), 1, faces);
            n.object.push_back(-1);
            n.chain.push_back({f});
            layer.push_back({f});
        }
    for (int k = 2; k <= max_dim && !layer.empty(); ++k) {
        std::vector<std::vector<int>> next;
        for (const auto& ch : layer)
            for (int f = 0; f < c.num_arrows(); ++f) {
                if (c.is_identity(f) || c.arrows[f].dom != c.arrows[ch.back()].cod)
                    continue;
                auto d = ch;
                d.push_back(f);
                std::vector<SimplexRef> faces;
                for (int i = 0; i <= k; ++i) {
                    std::vector<int> e;
                    if (i == 0)
                        e.assign(d.begin() + 1, d.end());
                    else if (i == k)
                        e.assign(d.begin(), d.end() - 1);
                    else {
                        e.assign(d.begin(), d.begin() + i - 1);
                        e.push_back(c.compose(d[i], d[i - 1]));
                        e.insert(e.end(), d.begin() + i + 1, d.end());
                    }
                    faces.push_back(n.ref(c, e));
                }
                n.set.add(chain_label(c, d, prefix), k, std::move(faces));
                n.object.push_back(-1);
                n.chain.push_back(d);
                next.push_back(std::move(d));
            }
        layer = std::move(next);
    }
    return n;
}

SimplexRef NerveSet::ref(const FinCat& c, const std::vector<int>& arrows) const
{
    if (arrows.empty())
        throw std::invalid_argument("empty chain has no reference; use vertex()");
    std::vector<int> kept;
    Word w;
    for (size_t t = 0; t < arrows.size(); ++t) {
        if (c.is_identity(arrows[t]))
            w.push_back(static_cast<int>(t));
        else
            kept.push_back(arrows[t]);
        if (t > 0 && c.arrows[arrows[t]].dom != c.arrows[arrows[t - 1]].cod)
            throw std::invalid_argument("chain is not composable");
    }
    std::reverse(w.begin(), w.end());
    if (kept.empty())
        return SimplexRef{vertex_of_object[c.arrows[arrows[0]].dom], w};
    return SimplexRef{set.index(chain_label(c, kept, prefixed)), w};
}

std::vector<int> NerveSet::arrows_of(const FinCat& c, const SimplexRef& x, int* obj) const
{
    std::vector<int> ch = chain[x.base];
    int o = object[x.base];
    if (o < 0)
        o = c.arrows[ch[0]].dom;
    // apply degeneracies innermost first: s_j inserts an identity at position j
    for (auto it = x.degens.rbegin(); it != x.degens.rend(); ++it) {
        int j = *it;
        int at = j == 0 ? (ch.empty() ? o : c.arrows[ch[0]].dom) : c.arrows[ch[j - 1]].cod;
        ch.insert(ch.begin() + j, c.identity[at]);
    }
    if (obj)
        *obj = o;
    return ch;
}

int NerveSet::arrow_of_edge(const FinCat& c, const SimplexRef& e) const
{
    auto ch = arrows_of(c, e);
    if (ch.size() != 1)
        throw std::invalid_argument("not an edge");
    return ch[0];
}

SSet nerve(const FinCat& c, int max_dim)
{
    return nerve_data(c, max_dim).set;
}

SMap nerve_map(const FinCat&, const NerveSet& na, const FinCat& b, const NerveSet& nb,
               const CatFunctor& f)
{
    SMap m;
    for (int g = 0; g < na.set.size(); ++g) {
        if (na.set.dim(g) == 0) {
            m.image.push_back(nb.vertex(f.obj[na.object[g]]));
            continue;
        }
        std::vector<int> ch;
        for (int x : na.chain[g])
            ch.push_back(f.arr[x]);
        m.image.push_back(nb.ref(b, ch));
    }
    return m;
}

std::vector<SimplexRef> spine(const SSet& a, const SimplexRef& x)
{
    int p = a.dim(x);
    std::vector<SimplexRef> out;
    for (int k = 1; k <= p; ++k) {
        SimplexRef y = x;
        for (int i = p; i >= 0; --i)
            if (i != k && i != k - 1)
                y = a.face(y, i);
        out.push_back(y);
    }
    return out;
}

SegalMap segal_map(const SSet& a, int p)
{
    if (p < 1)
        throw std::invalid_argument("Segal maps need p >= 1");
    SegalMap s;
    s.p = p;
    s.domain = a.simplices(p);
    auto edges = a.simplices(1);
    // composable tuples, built left to right
    std::vector<std::vector<SimplexRef>> tuples;
    for (const auto& e : edges)
        tuples.push_back({e});
    for (int k = 2; k <= p; ++k) {
        std::vector<std::vector<SimplexRef>> next;
        for (const auto& t : tuples)
            for (const auto& e : edges)
                if (a.face(t.back(), 0) == a.face(e, 1)) {
                    auto u = t;
                    u.push_back(e);
                    next.push_back(std::move(u));
                }
        tuples = std::move(next);
    }
    s.codomain = std::move(tuples);
    std::unordered_map<std::vector<SimplexRef>, int, RefVecHash> idx;
    for (size_t i = 0; i < s.codomain.size(); ++i)
        idx.emplace(s.codomain[i], static_cast<int>(i));
    for (const auto& x : s.domain)
        s.image.push_back(idx.at(spine(a, x)));
    return s;
}

SegalVerdict is_strict_segal(const SSet& a, int max_p)
{
    SegalVerdict v;
    v.max_p = max_p;
    if (max_p > a.max_dim())
        throw std::invalid_argument("Segal check above the truncation level");
    for (int p = 2; p <= max_p; ++p) {
        SegalMap s = segal_map(a, p);
        std::vector<int> pre(s.codomain.size(), -1);
        for (size_t i = 0; i < s.domain.size(); ++i) {
            int t = s.image[i];
            if (pre[t] >= 0) {
                v.ok = false;
                v.witness = SegalWitness{p, SegalWitness::NotInjective, s.codomain[t],
                                         {s.domain[pre[t]], s.domain[i]}};
                return v;
            }
            pre[t] = static_cast<int>(i);
        }
        for (size_t t = 0; t < pre.size(); ++t)
            if (pre[t] < 0) {
                v.ok = false;
                v.witness = SegalWitness{p, SegalWitness::NotSurjective, s.codomain[t], {}};
                return v;
            }
    }
    return v;
}

FinCat category_from_segal(const SSet& a)
{
    if (a.max_dim() < 3)
        throw std::invalid_argument("reconstruction needs simplices through dimension 3");
    auto v = is_strict_segal(a, 3);
    if (!v.ok)
        throw std::invalid_argument("input is not strict Segal through p = 3");
    FinCat c;
    for (int g : a.nd(0))
        c.objects.push_back(a.name(g));
    std::vector<int> obj_of(a.size(), -1);
    for (size_t i = 0; i < a.nd(0).size(); ++i)
        obj_of[a.nd(0)[i]] = static_cast<int>(i);
    auto edges = a.simplices(1);
    std::unordered_map<SimplexRef, int, RefHash> arrow_of;
    c.identity.assign(c.objects.size(), -1);
    for (const auto& e : edges) {
        int id = c.num_arrows();
        c.arrows.push_back(Arrow{a.ref_name(e), obj_of[a.face(e, 1).base], obj_of[a.face(e, 0).base]});
        arrow_of[e] = id;
        if (e.degenerate())
            c.identity[obj_of[e.base]] = id;
    }
    int n = c.num_arrows();
    c.comp.assign(n, std::vector<int>(n, -1));
    SegalMap s = segal_map(a, 2);
    for (size_t i = 0; i < s.domain.size(); ++i) {
        const auto& pair = s.codomain[s.image[i]];
        int f = arrow_of.at(pair[0]), g = arrow_of.at(pair[1]);
        c.comp[g][f] = arrow_of.at(a.face(s.domain[i], 1));
    }
    c.validate();
    return c;
}

}  // namespace simpcat
