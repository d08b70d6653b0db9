#include "simpcat/quasi.hpp"

#include <map>
#include <mutex>

namespace simpcat {

const SSet& horn_complex(int n, int i)
{
    static std::map<std::pair<int, int>, SSet> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({n, i});
    if (it == cache.end())
        it = cache.emplace(std::make_pair(n, i), horn(n, i, n)).first;
    return it->second;
}

std::vector<SimplexRef> horn_faces(const HornInstance& h)
{
    const SSet& hc = horn_complex(h.n, h.i);
    std::vector<SimplexRef> out(h.n + 1);
    for (int j = 0; j <= h.n; ++j) {
        if (j == h.i)
            continue;
        std::vector<int> verts;
        for (int v = 0; v <= h.n; ++v)
            if (v != j)
                verts.push_back(v);
        out[j] = h.map.image[hc.index(subset_name(verts, h.n))];
    }
    return out;
}

namespace {

// n-simplices of x keyed by all faces except the i-th.
class HornIndex {
public:
    HornIndex(const SSet& x, int n, int i)
    {
        for (const auto& s : x.simplices(n)) {
            std::vector<SimplexRef> key;
            for (int j = 0; j <= n; ++j)
                if (j != i)
                    key.push_back(x.face(s, j));
            by_.emplace(std::move(key), s);
        }
    }

    std::optional<SimplexRef> find(const std::vector<SimplexRef>& faces, int i) const
    {
        std::vector<SimplexRef> key;
        for (size_t j = 0; j < faces.size(); ++j)
            if (static_cast<int>(j) != i)
                key.push_back(faces[j]);
        auto it = by_.find(key);
        if (it == by_.end())
            return std::nullopt;
        return it->second;
    }

private:
    std::unordered_multimap<std::vector<SimplexRef>, SimplexRef, RefVecHash> by_;
};

HornVerdict horn_check(const SSet& x, int max_n, bool inner_only, Budget* budget)
{
    if (max_n > x.max_dim())
        throw std::invalid_argument("horn check above the truncation level of the input");
    HornVerdict v;
    v.max_n = max_n;
    for (int n = 1; n <= max_n; ++n)
        for (int i = 0; i <= n; ++i) {
            if (inner_only && (i == 0 || i == n))
                continue;
            HornIndex idx(x, n, i);
            for_each_map(
                horn_complex(n, i), x, {},
                [&](const SMap& m) {
                    ++v.horns_checked;
                    HornInstance h{n, i, m};
                    if (!idx.find(horn_faces(h), i)) {
                        v.ok = false;
                        v.witness = std::move(h);
                        return false;
                    }
                    return true;
                },
                budget);
            if (!v.ok)
                return v;
        }
    return v;
}

}  // namespace

std::optional<SimplexRef> find_filler(const SSet& x, const HornInstance& h)
{
    if (h.n > x.max_dim())
        throw std::invalid_argument("filler dimension above the truncation level");
    auto want = horn_faces(h);
    for (const auto& s : x.simplices(h.n)) {
        bool ok = true;
        for (int j = 0; j <= h.n && ok; ++j)
            if (j != h.i && x.face(s, j) != want[j])
                ok = false;
        if (ok)
            return s;
    }
    return std::nullopt;
}

HornVerdict is_kan(const SSet& x, int max_n, Budget* budget)
{
    return horn_check(x, max_n, false, budget);
}

HornVerdict is_quasicategory(const SSet& x, int max_n, Budget* budget)
{
    return horn_check(x, max_n, true, budget);
}

namespace {

SimplexRef horn_edge(const HornInstance& h, int a, int b)
{
    const SSet& hc = horn_complex(h.n, h.i);
    return h.map.image[hc.index(subset_name({a, b}, h.n))];
}

}  // namespace

OuterHornResult special_outer_horn_filler(const FinCat& c, const NerveSet& nerve,
                                          const HornInstance& h)
{
    if (h.i != 0 && h.i != h.n)
        throw std::invalid_argument("not an outer horn");
    if (h.n < 2)
        throw std::invalid_argument("outer horn lemma needs n >= 2");
    OuterHornResult r;
    SimplexRef e = h.i == 0 ? horn_edge(h, 0, 1) : horn_edge(h, h.n - 1, h.n);
    r.lemma_applies = inverse(c, nerve.arrow_of_edge(c, e)).has_value();
    r.filler = find_filler(nerve.set, h);
    if (r.lemma_applies && !r.filler)
        throw std::logic_error("outer horn over an invertible edge has no filler");
    return r;
}

std::optional<HornInstance> non_invertibility_certificate(const FinCat& c, const NerveSet& nerve,
                                                          int f, int max_n, Budget* budget)
{
    SimplexRef e = nerve.ref(c, {f});
    for (int n = 2; n <= max_n; ++n) {
        const SSet& hc = horn_complex(n, 0);
        Constraints fixed{{hc.index(subset_name({0, 1}, n)), e}};
        std::optional<HornInstance> found;
        HornIndex idx(nerve.set, n, 0);
        for_each_map(
            hc, nerve.set, fixed,
            [&](const SMap& m) {
                HornInstance h{n, 0, m};
                if (!idx.find(horn_faces(h), 0)) {
                    found = std::move(h);
                    return false;
                }
                return true;
            },
            budget);
        if (found)
            return found;
    }
    return std::nullopt;
}

SMap make_sphere(const SSet& a, const SimplexRef& d0, const SimplexRef& d1, const SimplexRef& d2)
{
    static const SSet bd = boundary(2, 2);
    SMap m;
    m.image.resize(bd.size());
    m.image[bd.index("0")] = a.face(d2, 1);
    m.image[bd.index("1")] = a.face(d0, 1);
    m.image[bd.index("2")] = a.face(d0, 0);
    m.image[bd.index("12")] = d0;
    m.image[bd.index("02")] = d1;
    m.image[bd.index("01")] = d2;
    if (!is_valid_map(bd, a, m))
        throw std::invalid_argument("the three edges do not form a 1-sphere");
    return m;
}

std::optional<SimplexRef> is_commuting_sphere(const SSet& a, const SMap& sphere)
{
    static const SSet bd = boundary(2, 2);
    if (a.max_dim() < 2)
        throw std::invalid_argument("need 2-simplices");
    SimplexRef d0 = sphere.image[bd.index("12")], d1 = sphere.image[bd.index("02")],
               d2 = sphere.image[bd.index("01")];
    for (const auto& s : a.simplices(2))
        if (a.face(s, 0) == d0 && a.face(s, 1) == d1 && a.face(s, 2) == d2)
            return s;
    return std::nullopt;
}

namespace {

bool has_triangle(const SSet& a, const SimplexRef& d0, const SimplexRef& d1, const SimplexRef& d2)
{
    for (const auto& s : a.simplices(2))
        if (a.face(s, 0) == d0 && a.face(s, 1) == d1 && a.face(s, 2) == d2)
            return true;
    return false;
}

// f.1_x ~ g: a triangle with spine (1_x, f) and long edge g.
bool right_unit_rel(const SSet& a, const SimplexRef& f, const SimplexRef& g)
{
    return has_triangle(a, f, g, a.degen(a.face(f, 1), 0));
}

bool left_unit_rel(const SSet& a, const SimplexRef& f, const SimplexRef& g)
{
    return has_triangle(a, a.degen(a.face(f, 0), 0), g, f);
}

bool homotopic_unchecked(const SSet& a, const SimplexRef& f, const SimplexRef& g)
{
    bool r1 = right_unit_rel(a, f, g), r2 = right_unit_rel(a, g, f);
    bool r3 = left_unit_rel(a, f, g), r4 = left_unit_rel(a, g, f);
    if (r1 != r2 || r1 != r3 || r1 != r4)
        throw std::logic_error("the four homotopy relations disagree on " + a.ref_name(f) + ", " +
                               a.ref_name(g));
    return r1;
}

void require_quasi(const SSet& a, Budget* budget)
{
    if (a.max_dim() < 3)
        throw std::invalid_argument("need simplices through dimension 3");
    if (!is_quasicategory(a, 3, budget).ok)
        throw std::invalid_argument("input is not a quasi-category through dimension 3");
}

}  // namespace

bool homotopic_edges(const SSet& a, const SimplexRef& f, const SimplexRef& g, Budget* budget)
{
    if (a.dim(f) != 1 || a.dim(g) != 1)
        throw std::invalid_argument("homotopy is defined on edges");
    if (a.face(f, 0) != a.face(g, 0) || a.face(f, 1) != a.face(g, 1))
        throw std::invalid_argument("edges are not parallel");
    require_quasi(a, budget);
    return homotopic_unchecked(a, f, g);
}

FinCat ho_category(const SSet& a, HoStats* stats, Budget* budget)
{
    require_quasi(a, budget);
    auto edges = a.simplices(1);
    int ne = static_cast<int>(edges.size());
    std::unordered_map<SimplexRef, int, RefHash> eidx;
    for (int e = 0; e < ne; ++e)
        eidx[edges[e]] = e;

    // classes, with the relation checked to be an equivalence as we go
    std::vector<int> cls(ne, -1);
    std::vector<std::vector<int>> members;
    for (int e = 0; e < ne; ++e) {
        if (cls[e] >= 0)
            continue;
        int k = static_cast<int>(members.size());
        members.push_back({});
        for (int f = e; f < ne; ++f) {
            if (a.face(edges[f], 0) != a.face(edges[e], 0) || a.face(edges[f], 1) != a.face(edges[e], 1))
                continue;
            tick(budget);
            if (homotopic_unchecked(a, edges[e], edges[f])) {
                if (cls[f] >= 0)
                    throw std::logic_error("homotopy relation is not transitive");
                cls[f] = k;
                members[k].push_back(f);
            }
        }
    }
    for (const auto& m : members)
        for (int x : m)
            for (int y : m)
                if (!homotopic_unchecked(a, edges[x], edges[y]))
                    throw std::logic_error("homotopy relation is not an equivalence");

    FinCat c;
    std::vector<int> obj_of(a.size(), -1);
    for (int g : a.nd(0)) {
        obj_of[g] = c.num_objects();
        c.objects.push_back(a.name(g));
    }
    for (size_t k = 0; k < members.size(); ++k) {
        const auto& r = edges[members[k][0]];
        c.arrows.push_back(Arrow{a.ref_name(r), obj_of[a.face(r, 1).base], obj_of[a.face(r, 0).base]});
    }
    c.identity.assign(c.num_objects(), -1);
    for (int g : a.nd(0))
        c.identity[obj_of[g]] = cls[eidx.at(a.degen(SimplexRef{g, {}}, 0))];
    int n = c.num_arrows();
    c.comp.assign(n, std::vector<int>(n, -1));
    long long checked = 0;
    for (const auto& s : a.simplices(2)) {
        tick(budget);
        int f = cls[eidx.at(a.face(s, 2))], g = cls[eidx.at(a.face(s, 0))];
        int h = cls[eidx.at(a.face(s, 1))];
        ++checked;
        if (c.comp[g][f] >= 0 && c.comp[g][f] != h)
            throw std::logic_error("composite depends on the choice of filler");
        c.comp[g][f] = h;
    }
    c.validate();
    if (stats) {
        stats->fillers_checked = checked;
        stats->classes.clear();
        for (const auto& m : members) {
            std::vector<SimplexRef> v;
            for (int x : m)
                v.push_back(edges[x]);
            stats->classes.push_back(std::move(v));
        }
    }
    return c;
}

}  // namespace simpcat
