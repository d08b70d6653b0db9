#include "simpcat/segal.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace simpcat {

namespace {

std::string qkey(int q, const std::string& body)
{
    return std::to_string(q) + "#" + body;
}

int qdim(const std::string& key)
{
    return std::stoi(key.substr(0, key.find('#')));
}

std::string qbody(const std::string& key)
{
    return key.substr(key.find('#') + 1);
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    if (s.empty())
        return out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, sep))
        out.push_back(tok);
    if (s.back() == sep)
        out.push_back("");
    return out;
}

template <class T, class F>
std::string join(const std::vector<T>& v, const std::string& sep, F&& show)
{
    std::string s;
    for (size_t t = 0; t < v.size(); ++t)
        s += (t ? sep : "") + show(v[t]);
    return s;
}

std::string ints(const std::vector<int>& v)
{
    return join(v, ",", [](int x) { return std::to_string(x); });
}

std::string ref_key(const SimplexRef& r)
{
    std::string s = std::to_string(r.base);
    for (int d : r.degens)
        s += "." + std::to_string(d);
    return s;
}

SimplexRef parse_ref_key(const std::string& s)
{
    auto parts = split(s, '.');
    SimplexRef r{std::stoi(parts[0]), {}};
    for (size_t t = 1; t < parts.size(); ++t)
        r.degens.push_back(std::stoi(parts[t]));
    return r;
}

SimplexRef degenerate_vertex(int v, int q)
{
    SimplexRef r{v, {}};
    for (int d = q - 1; d >= 0; --d)
        r.degens.push_back(d);
    return r;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b)
    {
        a = find(a), b = find(b);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
};

// Monotone f: [m] -> [p] as the vertices it misses, highest first, then the repeated
// positions of f in increasing order.
struct Decomp {
    std::vector<int> faces;
    std::vector<int> degens;
};

Decomp decompose(const std::vector<int>& f, int p)
{
    if (f.empty())
        throw std::invalid_argument("monotone map needs a nonempty source");
    std::vector<bool> hit(p + 1, false);
    for (size_t t = 0; t < f.size(); ++t) {
        if (f[t] < 0 || f[t] > p)
            throw std::invalid_argument("monotone map leaves [" + std::to_string(p) + "]");
        if (t > 0 && f[t] < f[t - 1])
            throw std::invalid_argument("map is not monotone");
        hit[f[t]] = true;
    }
    Decomp d;
    for (int j = p; j >= 0; --j)
        if (!hit[j])
            d.faces.push_back(j);
    for (size_t t = 0; t + 1 < f.size(); ++t)
        if (f[t] == f[t + 1])
            d.degens.push_back(static_cast<int>(t));
    return d;
}

SimplexRef act(const SSet& x, SimplexRef s, const std::vector<int>& f, int p)
{
    Decomp d = decompose(f, p);
    for (int j : d.faces)
        s = x.face(s, j);
    for (int t : d.degens)
        s = x.degen(s, t);
    return s;
}

std::vector<int> coface(int p, int i)  // [p-1] -> [p] missing i
{
    std::vector<int> f;
    for (int j = 0; j <= p; ++j)
        if (j != i)
            f.push_back(j);
    return f;
}

std::vector<int> codegen(int p, int i)  // [p+1] -> [p] hitting i twice
{
    std::vector<int> f;
    for (int j = 0; j <= p; ++j) {
        f.push_back(j);
        if (j == i)
            f.push_back(j);
    }
    return f;
}

// A realized row together with the key of every nondegenerate simplex.
struct KeyedRow {
    Realized r;
    std::vector<std::string> key;
};

KeyedRow keyed_row(Realized r)
{
    KeyedRow k{std::move(r), {}};
    k.key.resize(k.r.set.size());
    for (const auto& [name, ref] : k.r.ref)
        if (!ref.degenerate())
            k.key[ref.base] = name;
    return k;
}

using RowKeyMap = std::function<std::string(const std::vector<int>&, int, const std::string&)>;

SMap map_by_keys(const KeyedRow& src, const KeyedRow& dst, const std::function<std::string(const std::string&)>& fn)
{
    SMap m;
    for (int g = 0; g < src.r.set.size(); ++g) {
        std::string k = fn(src.key[g]);
        auto it = dst.r.ref.find(k);
        if (it == dst.r.ref.end())
            throw std::logic_error("row map lands outside the target row: " + k);
        m.image.push_back(it->second);
    }
    return m;
}

BiSSet assemble(std::vector<KeyedRow>& rows, const RowKeyMap& fn)
{
    BiSSet a;
    int max_p = static_cast<int>(rows.size()) - 1;
    a.face.resize(max_p + 1);
    a.degen.resize(max_p + 1);
    for (int p = 0; p <= max_p; ++p) {
        for (int i = 0; p > 0 && i <= p; ++i) {
            auto f = coface(p, i);
            a.face[p].push_back(map_by_keys(rows[p], rows[p - 1], [&](const std::string& k) { return fn(f, p, k); }));
        }
        for (int i = 0; p < max_p && i <= p; ++i) {
            auto f = codegen(p, i);
            a.degen[p].push_back(map_by_keys(rows[p], rows[p + 1], [&](const std::string& k) { return fn(f, p, k); }));
        }
    }
    for (auto& r : rows)
        a.rows.push_back(std::move(r.r.set));
    return a;
}

// Simplices of each level with an index back from references.
struct LevelIndex {
    std::vector<std::vector<SimplexRef>> at;
    std::vector<std::unordered_map<SimplexRef, int, RefHash>> pos;

    explicit LevelIndex(const SSet& s)
    {
        for (int q = 0; q <= s.max_dim(); ++q) {
            at.push_back(s.simplices(q));
            pos.emplace_back();
            for (size_t t = 0; t < at.back().size(); ++t)
                pos.back()[at.back()[t]] = static_cast<int>(t);
        }
    }
    int index(int q, const SimplexRef& x) const
    {
        auto it = pos[q].find(x);
        if (it == pos[q].end())
            throw std::logic_error("simplex missing from level index");
        return it->second;
    }
};

std::string p_name(int p)
{
    return "p = " + std::to_string(p);
}

SMap map_by_vertices(const SSet& src, const VertexTupleIndex& idx,
                     const std::function<int(int)>& vertex)
{
    SMap m;
    for (int g = 0; g < src.size(); ++g) {
        std::vector<int> vs;
        for (int v : src.vertices(SimplexRef{g, {}}))
            vs.push_back(vertex(v));
        m.image.push_back(idx.ref(vs));
    }
    return m;
}

// Inclusion of X as the end e of X x Delta[1].
SMap end_inclusion(const Product& prod, const SSet& x, const SSet& d1, int e)
{
    int v = d1.index(std::to_string(e));
    SMap m;
    for (int g = 0; g < x.size(); ++g)
        m.image.push_back(product_ref(prod, x, d1, SimplexRef{g, {}}, degenerate_vertex(v, x.dim(g))));
    return m;
}

}  // namespace

// ---- bisimplicial sets ----

SMap row_map(const BiSSet& a, const std::vector<int>& f, int p)
{
    if (p < 0 || p > a.max_p())
        throw std::invalid_argument("row " + std::to_string(p) + " outside the truncation");
    Decomp d = decompose(f, p);
    SMap cur = identity_map(a.rows[p]);
    int r = p;
    for (int j : d.faces) {
        cur = compose(a.face[r][j], cur);
        --r;
    }
    for (int t : d.degens) {
        if (r >= a.max_p())
            throw std::invalid_argument("row map needs rows above the truncation");
        cur = compose(a.degen[r][t], cur);
        ++r;
    }
    return cur;
}

BiSSetCheck validate_bisset(const BiSSet& a)
{
    BiSSetCheck out;
    auto fail = [&](const std::string& why) {
        out.ok = false;
        out.failure = why;
        return out;
    };
    int max_p = a.max_p();
    if (max_p < 0)
        return fail("no rows");
    if (static_cast<int>(a.face.size()) != max_p + 1 || static_cast<int>(a.degen.size()) != max_p + 1)
        return fail("row structure maps missing");
    for (int p = 0; p <= max_p; ++p) {
        if (a.rows[p].max_dim() != a.rows[0].max_dim())
            return fail("rows truncated at different levels");
        try {
            a.rows[p].check_identities();
        } catch (const std::logic_error& e) {
            return fail("row " + std::to_string(p) + ": " + e.what());
        }
        if (static_cast<int>(a.face[p].size()) != (p > 0 ? p + 1 : 0) ||
            static_cast<int>(a.degen[p].size()) != (p < max_p ? p + 1 : 0))
            return fail("row " + std::to_string(p) + " has the wrong number of structure maps");
        std::string why;
        for (int i = 0; i < static_cast<int>(a.face[p].size()); ++i)
            if (!is_valid_map(a.rows[p], a.rows[p - 1], a.face[p][i], &why))
                return fail("d" + std::to_string(i) + " on row " + std::to_string(p) + ": " + why);
        for (int i = 0; i < static_cast<int>(a.degen[p].size()); ++i)
            if (!is_valid_map(a.rows[p], a.rows[p + 1], a.degen[p][i], &why))
                return fail("s" + std::to_string(i) + " on row " + std::to_string(p) + ": " + why);
    }
    auto eq = [&](const std::string& name, int p, const SMap& l, const SMap& r) {
        if (!maps_equal(l, r)) {
            out.ok = false;
            out.failure = name + " fails on row " + std::to_string(p);
            return false;
        }
        return true;
    };
    auto I = [&](int p) { return identity_map(a.rows[p]); };
    auto s = [&](int i) { return std::to_string(i); };
    for (int p = 0; p <= max_p; ++p) {
        // d_i d_j = d_{j-1} d_i, i < j
        for (int j = 1; p >= 2 && j <= p; ++j)
            for (int i = 0; i < j; ++i)
                if (!eq("d" + s(i) + "d" + s(j) + " = d" + s(j - 1) + "d" + s(i), p,
                        compose(a.face[p - 1][i], a.face[p][j]), compose(a.face[p - 1][j - 1], a.face[p][i])))
                    return out;
        if (p == max_p)
            continue;
        for (int j = 0; j <= p; ++j)
            for (int i = 0; i <= p + 1; ++i) {
                SMap lhs = compose(a.face[p + 1][i], a.degen[p][j]);
                SMap rhs;
                if (i < j)
                    rhs = compose(a.degen[p - 1][j - 1], a.face[p][i]);
                else if (i == j || i == j + 1)
                    rhs = I(p);
                else
                    rhs = compose(a.degen[p - 1][j], a.face[p][i - 1]);
                if (!eq("d" + s(i) + "s" + s(j), p, lhs, rhs))
                    return out;
            }
        for (int j = 0; p + 1 < max_p && j <= p; ++j)
            for (int i = 0; i <= j; ++i)
                if (!eq("s" + s(i) + "s" + s(j) + " = s" + s(j + 1) + "s" + s(i), p,
                        compose(a.degen[p + 1][i], a.degen[p][j]), compose(a.degen[p + 1][j + 1], a.degen[p][i])))
                    return out;
    }
    return out;
}

PrecatVerdict is_segal_precat(const BiSSet& a)
{
    PrecatVerdict v;
    if (a.rows.empty())
        return v;
    const SSet& r0 = a.rows[0];
    for (int q = 1; q <= r0.max_dim(); ++q)
        if (!r0.nd(q).empty()) {
            v.ok = false;
            v.offending = r0.name(r0.nd(q).front());
            v.dim = q;
            return v;
        }
    return v;
}

SegalPrecat as_segal_precat(BiSSet a)
{
    auto c = validate_bisset(a);
    if (!c.ok)
        throw std::invalid_argument("not a bisimplicial set: " + c.failure);
    auto v = is_segal_precat(a);
    if (!v.ok)
        throw std::invalid_argument("row 0 is not constant: '" + v.offending + "' is nondegenerate in dimension " +
                                    std::to_string(v.dim));
    SegalPrecat s{std::move(a), {}};
    for (int g : s.a.rows[0].nd(0))
        s.objects.push_back(s.a.rows[0].name(g));
    return s;
}

int object_of(const SegalPrecat& a, const SimplexRef& x)
{
    const auto& nd0 = a.a.rows[0].nd(0);
    auto it = std::find(nd0.begin(), nd0.end(), x.base);
    if (it == nd0.end())
        throw std::logic_error("simplex of row 0 is not over a vertex");
    return static_cast<int>(it - nd0.begin());
}

FiberedPower fibered_power(const SegalPrecat& a, int p)
{
    if (p < 1 || p > a.a.max_p())
        throw std::invalid_argument("fibered power for " + p_name(p) + " outside the truncation");
    const SSet& a1 = a.a.rows[1];
    int max_q = a1.max_dim();
    SMap src = row_map(a.a, {0}, 1), tgt = row_map(a.a, {1}, 1);
    LevelIndex lv(a1);
    std::vector<std::vector<int>> s_obj(max_q + 1), t_obj(max_q + 1);
    for (int q = 0; q <= max_q; ++q)
        for (const auto& x : lv.at[q]) {
            s_obj[q].push_back(object_of(a, apply(src, x)));
            t_obj[q].push_back(object_of(a, apply(tgt, x)));
        }

    SimplicialData d;
    d.max_dim = max_q;
    d.simplices.resize(max_q + 1);
    for (int q = 0; q <= max_q; ++q) {
        int n = static_cast<int>(lv.at[q].size());
        std::vector<int> cur;
        std::function<void()> rec = [&]() {
            if (static_cast<int>(cur.size()) == p) {
                d.simplices[q].push_back(qkey(q, ints(cur)));
                return;
            }
            for (int x = 0; x < n; ++x)
                if (cur.empty() || s_obj[q][x] == t_obj[q][cur.back()]) {
                    cur.push_back(x);
                    rec();
                    cur.pop_back();
                }
        };
        rec();
    }
    auto parse = [](const std::string& k) {
        std::vector<int> v;
        for (const auto& t : split(qbody(k), ','))
            v.push_back(std::stoi(t));
        return v;
    };
    auto move = [&, parse](const std::string& k, int q, int i, bool face) {
        std::vector<int> v = parse(k);
        int to = face ? q - 1 : q + 1;
        for (int& x : v)
            x = lv.index(to, face ? a1.face(lv.at[q][x], i) : a1.degen(lv.at[q][x], i));
        return qkey(to, ints(v));
    };
    d.face = [move](const std::string& k, int q, int i) { return move(k, q, i, true); };
    d.degen = [move](const std::string& k, int q, int i) { return move(k, q, i, false); };
    d.label = [&, parse](const std::string& k) {
        int q = qdim(k);
        auto v = parse(k);
        return "(" + join(v, ", ", [&](int x) { return a1.ref_name(lv.at[q][x]); }) + ")";
    };

    FiberedPower fp;
    fp.p = p;
    fp.set = realize(d);
    KeyedRow kr = keyed_row(fp.set);
    for (int t = 0; t < p; ++t) {
        SMap m;
        for (int g = 0; g < fp.set.set.size(); ++g)
            m.image.push_back(lv.at[qdim(kr.key[g])][parse(kr.key[g])[t]]);
        fp.proj.push_back(std::move(m));
    }
    std::vector<SMap> edge;
    for (int t = 1; t <= p; ++t)
        edge.push_back(row_map(a.a, {t - 1, t}, p));
    const SSet& ap = a.a.rows[p];
    for (int g = 0; g < ap.size(); ++g) {
        int q = ap.dim(g);
        std::vector<int> v;
        for (const auto& e : edge)
            v.push_back(lv.index(q, apply(e, SimplexRef{g, {}})));
        fp.segal.image.push_back(fp.set.ref.at(qkey(q, ints(v))));
    }
    return fp;
}

std::string to_string(SegalKind k)
{
    switch (k) {
    case SegalKind::Strict:
        return "strict";
    case SegalKind::Certified:
        return "certified-equivalent";
    default:
        return "unknown";
    }
}

namespace {

std::string check_certificate(const SegalPrecat& a, const FiberedPower& fp, const SegalCertificate& c)
{
    const SSet& ap = a.a.rows[fp.p];
    const SSet& pp = fp.set.set;
    std::string why;
    if (!is_valid_map(pp, ap, c.inverse, &why))
        return "inverse is not a simplicial map: " + why;
    SSet d1 = standard_simplex(1, ap.max_dim());
    Product pa = product_with_projections(ap, d1);
    Product pq = product_with_projections(pp, d1);
    if (!is_valid_map(pa.set, ap, c.homotopy_a, &why))
        return "homotopy on A is not a simplicial map: " + why;
    if (!is_valid_map(pq.set, pp, c.homotopy_p, &why))
        return "homotopy on P is not a simplicial map: " + why;
    if (!maps_equal(compose(c.homotopy_a, end_inclusion(pa, ap, d1, 0)), compose(c.inverse, fp.segal)))
        return "H_A(-,0) = g.delta";
    if (!maps_equal(compose(c.homotopy_a, end_inclusion(pa, ap, d1, 1)), identity_map(ap)))
        return "H_A(-,1) = id";
    if (!maps_equal(compose(c.homotopy_p, end_inclusion(pq, pp, d1, 0)), compose(fp.segal, c.inverse)))
        return "H_P(-,0) = delta.g";
    if (!maps_equal(compose(c.homotopy_p, end_inclusion(pq, pp, d1, 1)), identity_map(pp)))
        return "H_P(-,1) = id";
    return "";
}

}  // namespace

std::vector<SegalLevel> bisimplicial_segal_check(const SegalPrecat& a, int max_p,
                                                 const std::vector<SegalCertificate>& certificates)
{
    if (max_p > a.a.max_p())
        throw std::invalid_argument("Segal check above the horizontal truncation");
    std::vector<SegalLevel> out;
    for (int p = 1; p <= max_p; ++p) {
        SegalLevel lv;
        lv.p = p;
        FiberedPower fp = fibered_power(a, p);
        const SSet& ap = a.a.rows[p];
        const SSet& pp = fp.set.set;
        for (int q = 0; q <= ap.max_dim() && lv.q < 0; ++q) {
            std::unordered_map<SimplexRef, SimplexRef, RefHash> pre;
            for (const auto& x : ap.simplices(q)) {
                SimplexRef y = apply(fp.segal, x);
                auto [it, fresh] = pre.emplace(y, x);
                if (!fresh) {
                    lv.q = q;
                    lv.witness = ap.ref_name(it->second) + " and " + ap.ref_name(x) + " both map to " + pp.ref_name(y);
                    break;
                }
            }
            if (lv.q >= 0)
                break;
            for (const auto& y : pp.simplices(q))
                if (!pre.count(y)) {
                    lv.q = q;
                    lv.witness = "no simplex over " + pp.ref_name(y);
                    break;
                }
        }
        if (lv.q < 0) {
            lv.kind = SegalKind::Strict;
        } else {
            for (const auto& c : certificates)
                if (c.p == p) {
                    std::string bad = check_certificate(a, fp, c);
                    if (bad.empty()) {
                        lv.kind = SegalKind::Certified;
                        lv.rejected.clear();
                        break;
                    }
                    lv.rejected = bad;
                }
        }
        out.push_back(std::move(lv));
    }
    return out;
}

FinCat ho_of_segal(const SegalPrecat& a, const std::vector<SegalCertificate>& certificates)
{
    if (a.a.max_p() < 3)
        throw std::invalid_argument("homotopy category needs rows through p = 3");
    auto levels = bisimplicial_segal_check(a, 3, certificates);
    for (const auto& lv : levels)
        if (lv.p >= 2 && lv.kind == SegalKind::Unknown)
            throw std::invalid_argument("Segal condition not established at " + p_name(lv.p) +
                                        (lv.rejected.empty() ? "" : " (certificate rejected: " + lv.rejected + ")"));
    const SSet& a1 = a.a.rows[1];
    UnionFind uf(a1.size());
    for (int g : a1.nd(1))
        uf.unite(a1.faces(g)[0].base, a1.faces(g)[1].base);
    std::vector<int> comp_of(a1.size(), -1);
    std::vector<int> rep;
    for (int v : a1.nd(0)) {
        int r = uf.find(v);
        if (comp_of[r] < 0) {
            comp_of[r] = static_cast<int>(rep.size());
            rep.push_back(v);
        }
        comp_of[v] = comp_of[r];
    }
    SMap src = row_map(a.a, {0}, 1), tgt = row_map(a.a, {1}, 1);
    FinCat c;
    c.objects = a.objects;
    for (int v : rep)
        c.arrows.push_back(Arrow{a1.name(v), object_of(a, apply(src, SimplexRef{v, {}})),
                                 object_of(a, apply(tgt, SimplexRef{v, {}}))});
    const auto& nd0 = a.a.rows[0].nd(0);
    for (int g : nd0)
        c.identity.push_back(comp_of[apply(a.a.degen[0][0], SimplexRef{g, {}}).base]);

    FiberedPower fp = fibered_power(a, 2);
    std::function<SimplexRef(const SimplexRef&)> section;
    std::unordered_map<SimplexRef, SimplexRef, RefHash> inv;
    if (levels[1].kind == SegalKind::Strict) {
        for (int g : a.a.rows[2].nd(0))
            inv[apply(fp.segal, SimplexRef{g, {}})] = SimplexRef{g, {}};
        section = [&](const SimplexRef& w) { return inv.at(w); };
    } else {
        const SegalCertificate* cert = nullptr;
        for (const auto& ct : certificates)
            if (ct.p == 2 && check_certificate(a, fp, ct).empty())
                cert = &ct;
        section = [cert](const SimplexRef& w) { return apply(cert->inverse, w); };
    }
    int n = c.num_arrows();
    c.comp.assign(n, std::vector<int>(n, -1));
    for (int w : fp.set.set.nd(0)) {
        SimplexRef wr{w, {}};
        int f = comp_of[apply(fp.proj[0], wr).base], g = comp_of[apply(fp.proj[1], wr).base];
        int h = comp_of[apply(a.a.face[2][1], section(wr)).base];
        if (c.comp[g][f] >= 0 && c.comp[g][f] != h)
            throw std::logic_error("composite of " + c.arrows[g].name + " and " + c.arrows[f].name +
                                   " depends on the chosen representatives");
        c.comp[g][f] = h;
    }
    c.validate();
    return c;
}

// ---- constructions ----

SegalPrecat scat_nerve(const SCat& b, int max_p)
{
    int max_q = b.max_dim;
    struct Key {
        std::vector<int> objs;
        std::vector<SimplexRef> refs;
    };
    auto parse = [](const std::string& k) {
        Key out;
        std::string body = qbody(k);
        auto bar = body.find('|');
        for (const auto& t : split(body.substr(0, bar), ','))
            out.objs.push_back(std::stoi(t));
        for (const auto& t : split(body.substr(bar + 1), ';'))
            out.refs.push_back(parse_ref_key(t));
        return out;
    };
    auto make = [](int q, const Key& k) {
        return qkey(q, ints(k.objs) + "|" + join(k.refs, ";", ref_key));
    };

    std::vector<KeyedRow> rows;
    for (int p = 0; p <= max_p; ++p) {
        SimplicialData d;
        d.max_dim = max_q;
        d.simplices.resize(max_q + 1);
        std::vector<int> chain;
        std::function<void()> chains = [&]() {
            if (static_cast<int>(chain.size()) == p + 1) {
                for (int q = 0; q <= max_q; ++q) {
                    std::vector<std::vector<SimplexRef>> choices;
                    for (int t = 0; t < p; ++t)
                        choices.push_back(b.hom(chain[t], chain[t + 1])->simplices(q));
                    Key k{chain, {}};
                    std::function<void()> tuples = [&]() {
                        if (static_cast<int>(k.refs.size()) == p) {
                            d.simplices[q].push_back(make(q, k));
                            return;
                        }
                        for (const auto& r : choices[k.refs.size()]) {
                            k.refs.push_back(r);
                            tuples();
                            k.refs.pop_back();
                        }
                    };
                    tuples();
                }
                return;
            }
            for (int x = 0; x < b.num_objects(); ++x)
                if (chain.empty() || b.hom(chain.back(), x)) {
                    chain.push_back(x);
                    chains();
                    chain.pop_back();
                }
        };
        chains();
        auto vertical = [&b, parse, make](const std::string& s, int q, int i, bool face) {
            Key k = parse(s);
            for (size_t t = 0; t < k.refs.size(); ++t) {
                const SSet* h = b.hom(k.objs[t], k.objs[t + 1]);
                k.refs[t] = face ? h->face(k.refs[t], i) : h->degen(k.refs[t], i);
            }
            return make(face ? q - 1 : q + 1, k);
        };
        d.face = [vertical](const std::string& s, int q, int i) { return vertical(s, q, i, true); };
        d.degen = [vertical](const std::string& s, int q, int i) { return vertical(s, q, i, false); };
        d.label = [&b, parse](const std::string& s) {
            Key k = parse(s);
            if (k.refs.empty())
                return b.objects[k.objs[0]];
            std::string out = join(k.objs, ">", [&](int x) { return b.objects[x]; }) + ":";
            for (size_t t = 0; t < k.refs.size(); ++t)
                out += (t ? "," : "") + b.hom(k.objs[t], k.objs[t + 1])->ref_name(k.refs[t]);
            return out;
        };
        rows.push_back(keyed_row(realize(d)));
    }
    BiSSet a = assemble(rows, [&b, parse, make](const std::vector<int>& f, int, const std::string& s) {
        Key k = parse(s);
        int q = qdim(s);
        Key out;
        for (int v : f)
            out.objs.push_back(k.objs[v]);
        for (size_t t = 1; t < f.size(); ++t) {
            int lo = f[t - 1], hi = f[t];
            if (lo == hi) {
                out.refs.push_back(b.identity(k.objs[hi], q));
                continue;
            }
            SimplexRef acc = k.refs[lo];
            for (int u = lo + 1; u < hi; ++u)
                acc = b.compose(k.objs[lo], k.objs[u], k.objs[u + 1], acc, k.refs[u]);
            out.refs.push_back(acc);
        }
        return make(q, out);
    });
    return as_segal_precat(std::move(a));
}

SegalPrecat constant_precat(const SSet& x, int max_p, int max_q)
{
    if (max_p > x.max_dim())
        throw std::invalid_argument("constant precategory needs simplices through dimension " + std::to_string(max_p));
    LevelIndex lv(x);
    std::vector<KeyedRow> rows;
    for (int p = 0; p <= max_p; ++p) {
        SimplicialData d;
        d.max_dim = max_q;
        d.simplices.resize(max_q + 1);
        for (int q = 0; q <= max_q; ++q)
            for (size_t t = 0; t < lv.at[p].size(); ++t)
                d.simplices[q].push_back(qkey(q, std::to_string(t)));
        d.face = [](const std::string& s, int q, int) { return qkey(q - 1, qbody(s)); };
        d.degen = [](const std::string& s, int q, int) { return qkey(q + 1, qbody(s)); };
        d.label = [&x, &lv, p](const std::string& s) { return x.ref_name(lv.at[p][std::stoi(qbody(s))]); };
        rows.push_back(keyed_row(realize(d)));
    }
    BiSSet a = assemble(rows, [&x, &lv](const std::vector<int>& f, int p, const std::string& s) {
        SimplexRef y = act(x, lv.at[p][std::stoi(qbody(s))], f, p);
        return qkey(qdim(s), std::to_string(lv.index(static_cast<int>(f.size()) - 1, y)));
    });
    return as_segal_precat(std::move(a));
}

FatPrecat fat_precategory(const FinCat& c, int max_p, int max_q)
{
    if (max_p < 1)
        throw std::invalid_argument("fat precategory needs max_p >= 1");
    NerveSet ns = nerve_data(c, max_p);
    const SSet& nc = ns.set;
    LevelIndex lv(nc);
    auto thin = [&](int p, int s) {
        auto vs = nc.vertices(lv.at[p][s]);
        return std::all_of(vs.begin(), vs.end(), [&](int v) { return v == vs[0]; });
    };
    // body "T|s" or "F|s|j" with j the vertex string in the indiscrete groupoid on {0,1}
    struct Key {
        bool fat = false;
        int s = 0;
        std::string j;
    };
    auto parse = [](const std::string& k) {
        auto parts = split(qbody(k), '|');
        Key out{parts[0] == "F", std::stoi(parts[1]), parts.size() > 2 ? parts[2] : ""};
        return out;
    };
    auto make = [](int q, const Key& k) {
        return qkey(q, k.fat ? "F|" + std::to_string(k.s) + "|" + k.j : "T|" + std::to_string(k.s));
    };
    std::vector<KeyedRow> rows;
    for (int p = 0; p <= max_p; ++p) {
        SimplicialData d;
        d.max_dim = max_q;
        d.simplices.resize(max_q + 1);
        for (int q = 0; q <= max_q; ++q)
            for (int s = 0; s < static_cast<int>(lv.at[p].size()); ++s) {
                if (thin(p, s)) {
                    d.simplices[q].push_back(make(q, Key{false, s, ""}));
                    continue;
                }
                for (int bits = 0; bits < (1 << (q + 1)); ++bits) {
                    std::string j;
                    for (int t = 0; t <= q; ++t)
                        j += (bits >> (q - t)) & 1 ? '1' : '0';
                    d.simplices[q].push_back(make(q, Key{true, s, j}));
                }
            }
        d.face = [parse, make](const std::string& s, int q, int i) {
            Key k = parse(s);
            if (k.fat)
                k.j.erase(k.j.begin() + i);
            return make(q - 1, k);
        };
        d.degen = [parse, make](const std::string& s, int q, int i) {
            Key k = parse(s);
            if (k.fat)
                k.j.insert(k.j.begin() + i, k.j[i]);
            return make(q + 1, k);
        };
        d.label = [&, p, parse](const std::string& s) {
            Key k = parse(s);
            std::string base = nc.ref_name(lv.at[p][k.s]);
            return k.fat ? base + "@" + k.j : base;
        };
        rows.push_back(keyed_row(realize(d)));
    }
    std::vector<KeyedRow> keep;  // keys survive assembly for the certificates
    for (const auto& r : rows)
        keep.push_back(KeyedRow{Realized{SSet(0), r.r.ref}, r.key});
    BiSSet b = assemble(rows, [&, parse, make](const std::vector<int>& f, int p, const std::string& s) {
        Key k = parse(s);
        int m = static_cast<int>(f.size()) - 1;
        k.s = lv.index(m, act(nc, lv.at[p][k.s], f, p));
        if (thin(m, k.s)) {
            k.fat = false;
            k.j.clear();
        }
        return make(qdim(s), k);
    });
    FatPrecat out{as_segal_precat(std::move(b)), {}};
    const SegalPrecat& a = out.a;

    for (int p = 2; p <= max_p; ++p) {
        FiberedPower fp = fibered_power(a, p);
        const SSet& ap = a.a.rows[p];
        const SSet& pp = fp.set.set;
        VertexTupleIndex ia(ap), ip(pp);
        auto a_vertex = [&](const Key& k) { return keep[p].r.ref.at(make(0, k)).base; };
        // g on vertices: the chain of the spine, thickened by the first fat factor
        auto g_vertex = [&](int w) {
            std::vector<int> arrows;
            std::string j;
            for (int t = 0; t < p; ++t) {
                SimplexRef e = apply(fp.proj[t], SimplexRef{w, {}});
                Key k = parse(keep[1].key[e.base]);
                arrows.push_back(ns.arrows_of(c, lv.at[1][k.s])[0]);
                if (k.fat && j.empty())
                    j = k.j;
            }
            int s = lv.index(p, ns.ref(c, arrows));
            return a_vertex(j.empty() ? Key{false, s, ""} : Key{true, s, j});
        };
        SegalCertificate cert;
        cert.p = p;
        cert.inverse = map_by_vertices(pp, ia, g_vertex);
        SSet d1 = standard_simplex(1, ap.max_dim());
        Product pa = product_with_projections(ap, d1);
        cert.homotopy_a = map_by_vertices(pa.set, ia, [&](int v) { return apply(pa.p1, SimplexRef{v, {}}).base; });
        Product pq = product_with_projections(pp, d1);
        int zero = d1.index("0");
        cert.homotopy_p = map_by_vertices(pq.set, ip, [&](int v) {
            int w = apply(pq.p1, SimplexRef{v, {}}).base;
            if (apply(pq.p2, SimplexRef{v, {}}).base != zero)
                return w;
            return apply(fp.segal, SimplexRef{g_vertex(w), {}}).base;
        });
        out.certificates.push_back(std::move(cert));
    }
    return out;
}

// ---- Gamma ----

void validate_gamma(const GammaMap& g)
{
    if (g.s < 0 || g.t < 0 || static_cast<int>(g.theta.size()) != g.s)
        throw std::invalid_argument("theta must list one subset per source element");
    std::set<int> seen;
    for (int a = 0; a < g.s; ++a) {
        const auto& th = g.theta[a];
        for (size_t u = 0; u < th.size(); ++u) {
            if (th[u] < 1 || th[u] > g.t)
                throw std::invalid_argument("theta(" + std::to_string(a + 1) + ") leaves {1.." + std::to_string(g.t) + "}");
            if (u > 0 && th[u] <= th[u - 1])
                throw std::invalid_argument("theta(" + std::to_string(a + 1) + ") is not sorted");
            if (!seen.insert(th[u]).second)
                throw std::invalid_argument("images overlap at " + std::to_string(th[u]));
        }
    }
}

GammaMap gamma_identity(int n)
{
    GammaMap g{n, n, {}};
    for (int a = 1; a <= n; ++a)
        g.theta.push_back({a});
    return g;
}

GammaMap gamma_compose(const GammaMap& first, const GammaMap& second)
{
    if (first.t != second.s)
        throw std::invalid_argument("Gamma maps do not compose: middle sets differ");
    GammaMap out{first.s, second.t, {}};
    for (const auto& th : first.theta) {
        std::vector<int> u;
        for (int b : th)
            u.insert(u.end(), second.theta[b - 1].begin(), second.theta[b - 1].end());
        std::sort(u.begin(), u.end());
        out.theta.push_back(std::move(u));
    }
    validate_gamma(out);
    return out;
}

GammaMap delta_to_gamma(const std::vector<int>& f, int n)
{
    decompose(f, n);
    int m = static_cast<int>(f.size()) - 1;
    GammaMap g{m, n, {}};
    for (int i = 1; i <= m; ++i) {
        std::vector<int> th;
        for (int j = f[i - 1] + 1; j <= f[i]; ++j)
            th.push_back(j);
        g.theta.push_back(std::move(th));
    }
    return g;
}

// ---- multisimplicial sets ----

namespace {

void for_each_index(const std::vector<int>& bound, const std::function<void(const std::vector<int>&)>& fn)
{
    std::vector<int> m(bound.size(), 0);
    while (true) {
        fn(m);
        int d = static_cast<int>(m.size()) - 1;
        while (d >= 0 && m[d] == bound[d])
            m[d--] = 0;
        if (d < 0)
            return;
        ++m[d];
    }
}

std::string show_index(const std::vector<int>& m)
{
    return "(" + ints(m) + ")";
}

std::vector<int> shift(std::vector<int> m, int d, int by)
{
    m[d] += by;
    return m;
}

std::vector<int> with(std::vector<int> m, int v)
{
    m.push_back(v);
    return m;
}

const std::vector<int>& op(const NSSet& a, const std::vector<int>& m, int d, int kind, int i)
{
    auto it = a.maps.find({m, d, kind, i});
    if (it == a.maps.end())
        throw std::invalid_argument(std::string(kind ? "degeneracy s" : "face d") + std::to_string(i) +
                                    " in direction " + std::to_string(d) + " missing at " + show_index(m));
    return it->second;
}

std::vector<int> then(const std::vector<int>& first, const std::vector<int>& second)
{
    std::vector<int> out;
    for (int x : first)
        out.push_back(second[x]);
    return out;
}

struct Step {
    int d, kind, i;
};

// Apply an operator to the index
std::vector<int> target(const std::vector<int>& m, const Step& s)
{
    return shift(m, s.d, s.kind == 0 ? -1 : 1);
}

bool defined(const NSSet& a, const std::vector<int>& m, const Step& s)
{
    if (s.kind == 0)
        return m[s.d] >= 1 && s.i <= m[s.d];
    return m[s.d] < a.bound[s.d] && s.i <= m[s.d];
}

}  // namespace

void validate_nsset(const NSSet& a)
{
    if (static_cast<int>(a.bound.size()) != a.arity)
        throw std::invalid_argument("bounds do not match the arity");
    auto fail = [](const std::string& why) { throw std::invalid_argument(why); };
    for_each_index(a.bound, [&](const std::vector<int>& m) {
        if (!a.cells.count(m))
            fail("no cells at " + show_index(m));
    });
    for_each_index(a.bound, [&](const std::vector<int>& m) {
        size_t n = a.at(m).size();
        for (int d = 0; d < a.arity; ++d)
            for (int kind = 0; kind < 2; ++kind)
                for (int i = 0; i <= m[d]; ++i) {
                    Step s{d, kind, i};
                    if (!defined(a, m, s))
                        continue;
                    const auto& v = op(a, m, d, kind, i);
                    size_t tn = a.at(target(m, s)).size();
                    if (v.size() != n)
                        fail("map table has the wrong length at " + show_index(m));
                    for (int x : v)
                        if (x < 0 || static_cast<size_t>(x) >= tn)
                            fail("map value out of range at " + show_index(m));
                }
    });
    // simplicial identities within each direction, commutation across directions
    for_each_index(a.bound, [&](const std::vector<int>& m) {
        for (int d = 0; d < a.arity; ++d) {
            int p = m[d];
            auto D = [&](const std::vector<int>& at, int i) { return op(a, at, d, 0, i); };
            auto S = [&](const std::vector<int>& at, int i) { return op(a, at, d, 1, i); };
            std::string where = " in direction " + std::to_string(d) + " at " + show_index(m);
            for (int j = 1; p >= 2 && j <= p; ++j)
                for (int i = 0; i < j; ++i)
                    if (then(D(m, j), D(shift(m, d, -1), i)) != then(D(m, i), D(shift(m, d, -1), j - 1)))
                        fail("d" + std::to_string(i) + "d" + std::to_string(j) + " identity fails" + where);
            if (p < a.bound[d]) {
                auto up = shift(m, d, 1);
                for (int j = 0; j <= p; ++j)
                    for (int i = 0; i <= p + 1; ++i) {
                        auto lhs = then(S(m, j), D(up, i));
                        std::vector<int> rhs;
                        if (i < j)
                            rhs = then(D(m, i), S(shift(m, d, -1), j - 1));
                        else if (i == j || i == j + 1) {
                            rhs.resize(lhs.size());
                            std::iota(rhs.begin(), rhs.end(), 0);
                        } else
                            rhs = then(D(m, i - 1), S(shift(m, d, -1), j));
                        if (lhs != rhs)
                            fail("d" + std::to_string(i) + "s" + std::to_string(j) + " identity fails" + where);
                    }
                for (int j = 0; p + 1 < a.bound[d] && j <= p; ++j)
                    for (int i = 0; i <= j; ++i)
                        if (then(S(m, j), S(up, i)) != then(S(m, i), S(up, j + 1)))
                            fail("s" + std::to_string(i) + "s" + std::to_string(j) + " identity fails" + where);
            }
            for (int e = d + 1; e < a.arity; ++e)
                for (int k1 = 0; k1 < 2; ++k1)
                    for (int k2 = 0; k2 < 2; ++k2)
                        for (int i = 0; i <= m[d]; ++i)
                            for (int j = 0; j <= m[e]; ++j) {
                                Step s{d, k1, i}, t{e, k2, j};
                                if (!defined(a, m, s) || !defined(a, m, t))
                                    continue;
                                auto ms = target(m, s), mt = target(m, t);
                                auto l = then(op(a, m, d, k1, i), op(a, ms, e, k2, j));
                                auto r = then(op(a, m, e, k2, j), op(a, mt, d, k1, i));
                                if (l != r)
                                    fail("directions " + std::to_string(d) + " and " + std::to_string(e) +
                                         " do not commute at " + show_index(m));
                            }
            // constancy: a zero entry before d freezes direction d
            bool frozen = false;
            for (int u = 0; u < d; ++u)
                frozen = frozen || m[u] == 0;
            if (frozen)
                for (int kind = 0; kind < 2; ++kind)
                    for (int i = 0; i <= m[d]; ++i) {
                        Step s{d, kind, i};
                        if (!defined(a, m, s))
                            continue;
                        const auto& v = op(a, m, d, kind, i);
                        bool ident = a.at(target(m, s)).size() == v.size();
                        for (size_t x = 0; ident && x < v.size(); ++x)
                            ident = v[x] == static_cast<int>(x);
                        if (!ident)
                            fail("not constant in direction " + std::to_string(d) + " at " + show_index(m));
                    }
        }
    });
}

bool is_natural(const NSSet& a, const NSSet& b, const NSMap& f, std::string* why)
{
    auto fail = [&](const std::string& w) {
        if (why)
            *why = w;
        return false;
    };
    if (a.arity != b.arity || a.bound != b.bound)
        return fail("arity or bounds differ");
    bool ok = true;
    std::string w;
    for_each_index(a.bound, [&](const std::vector<int>& m) {
        if (!ok)
            return;
        auto it = f.at.find(m);
        if (it == f.at.end() || it->second.size() != a.at(m).size()) {
            ok = false;
            w = "map undefined at " + show_index(m);
            return;
        }
        for (int x : it->second)
            if (x < 0 || static_cast<size_t>(x) >= b.at(m).size()) {
                ok = false;
                w = "map value out of range at " + show_index(m);
                return;
            }
    });
    if (!ok)
        return fail(w);
    for (const auto& [key, v] : a.maps) {
        const auto& [m, d, kind, i] = key;
        auto to = target(m, Step{d, kind, i});
        auto l = then(v, f.at.at(to));
        auto r = then(f.at.at(m), op(b, m, d, kind, i));
        if (l != r)
            return fail(std::string(kind ? "s" : "d") + std::to_string(i) + " in direction " + std::to_string(d) +
                        " not preserved at " + show_index(m));
    }
    return true;
}

NSSet nsset_from_set(const std::vector<std::string>& elements)
{
    NSSet a;
    a.cells[{}] = elements;
    return a;
}

NSSet nsset_from_sset(const SSet& x)
{
    NSSet a;
    a.arity = 1;
    a.bound = {x.max_dim()};
    LevelIndex lv(x);
    for (int q = 0; q <= x.max_dim(); ++q) {
        auto& names = a.cells[{q}];
        for (const auto& s : lv.at[q])
            names.push_back(x.ref_name(s));
        for (int i = 0; i <= q; ++i) {
            if (q > 0) {
                auto& v = a.maps[{{q}, 0, 0, i}];
                for (const auto& s : lv.at[q])
                    v.push_back(lv.index(q - 1, x.face(s, i)));
            }
            if (q < x.max_dim()) {
                auto& v = a.maps[{{q}, 0, 1, i}];
                for (const auto& s : lv.at[q])
                    v.push_back(lv.index(q + 1, x.degen(s, i)));
            }
        }
    }
    return a;
}

NSSet nsset_from_bisset(const BiSSet& a)
{
    NSSet n;
    n.arity = 2;
    int max_p = a.max_p(), max_q = a.rows[0].max_dim();
    n.bound = {max_p, max_q};
    std::vector<LevelIndex> lv;
    for (const auto& r : a.rows)
        lv.emplace_back(r);
    for (int p = 0; p <= max_p; ++p) {
        const SSet& r = a.rows[p];
        for (int q = 0; q <= max_q; ++q) {
            auto& names = n.cells[{p, q}];
            for (const auto& s : lv[p].at[q])
                names.push_back(r.ref_name(s));
            for (int i = 0; i <= q; ++i) {
                if (q > 0) {
                    auto& v = n.maps[{{p, q}, 1, 0, i}];
                    for (const auto& s : lv[p].at[q])
                        v.push_back(lv[p].index(q - 1, r.face(s, i)));
                }
                if (q < max_q) {
                    auto& v = n.maps[{{p, q}, 1, 1, i}];
                    for (const auto& s : lv[p].at[q])
                        v.push_back(lv[p].index(q + 1, r.degen(s, i)));
                }
            }
            for (int i = 0; i <= p; ++i) {
                if (p > 0) {
                    auto& v = n.maps[{{p, q}, 0, 0, i}];
                    for (const auto& s : lv[p].at[q])
                        v.push_back(lv[p - 1].index(q, apply(a.face[p][i], s)));
                }
                if (p < max_p) {
                    auto& v = n.maps[{{p, q}, 0, 1, i}];
                    for (const auto& s : lv[p].at[q])
                        v.push_back(lv[p + 1].index(q, apply(a.degen[p][i], s)));
                }
            }
        }
    }
    return n;
}

NSMap nsmap_from_smap(const SSet& a, const SSet& b, const SMap& f)
{
    if (a.max_dim() != b.max_dim())
        throw std::invalid_argument("simplicial sets truncated at different levels");
    LevelIndex la(a), lb(b);
    NSMap m;
    for (int q = 0; q <= a.max_dim(); ++q) {
        auto& v = m.at[{q}];
        for (const auto& s : la.at[q])
            v.push_back(lb.index(q, apply(f, s)));
    }
    return m;
}

NSMap identity_nsmap(const NSSet& a)
{
    NSMap m;
    for (const auto& [idx, cells] : a.cells) {
        auto& v = m.at[idx];
        v.resize(cells.size());
        std::iota(v.begin(), v.end(), 0);
    }
    return m;
}

NSMap compose_nsmap(const NSMap& g, const NSMap& f)
{
    NSMap m;
    for (const auto& [idx, v] : f.at)
        m.at[idx] = then(v, g.at.at(idx));
    return m;
}

namespace {

struct Slice {
    Realized r;
    FinCat c;
    std::vector<int> arrow_of_cell;  // cells at (M,1)
    std::vector<int> cell_of_arrow;
};

Realized slice_realized(const NSSet& a, const std::vector<int>& m)
{
    if (static_cast<int>(m.size()) + 1 != a.arity)
        throw std::invalid_argument("slice index has the wrong length");
    int last = a.arity - 1, top = a.bound[last];
    SimplicialData d;
    d.max_dim = top;
    d.simplices.resize(top + 1);
    for (int q = 0; q <= top; ++q)
        for (size_t x = 0; x < a.at(with(m, q)).size(); ++x)
            d.simplices[q].push_back(qkey(q, std::to_string(x)));
    d.face = [&a, m, last](const std::string& s, int q, int i) {
        return qkey(q - 1, std::to_string(op(a, with(m, q), last, 0, i)[std::stoi(qbody(s))]));
    };
    d.degen = [&a, m, last](const std::string& s, int q, int i) {
        return qkey(q + 1, std::to_string(op(a, with(m, q), last, 1, i)[std::stoi(qbody(s))]));
    };
    d.label = [&a, m](const std::string& s) { return a.at(with(m, qdim(s)))[std::stoi(qbody(s))]; };
    return realize(d);
}

Slice slice_category(const NSSet& a, const std::vector<int>& m)
{
    Slice s{slice_realized(a, m), {}, {}, {}};
    s.c = category_from_segal(s.r.set);
    auto edges = s.r.set.simplices(1);
    std::unordered_map<SimplexRef, int, RefHash> pos;
    for (size_t t = 0; t < edges.size(); ++t)
        pos[edges[t]] = static_cast<int>(t);
    size_t n = a.at(with(m, 1)).size();
    s.cell_of_arrow.assign(edges.size(), -1);
    for (size_t x = 0; x < n; ++x) {
        int arr = pos.at(s.r.ref.at(qkey(1, std::to_string(x))));
        s.arrow_of_cell.push_back(arr);
        s.cell_of_arrow[arr] = static_cast<int>(x);
    }
    return s;
}

}  // namespace

SSet nsset_slice(const NSSet& a, const std::vector<int>& m)
{
    return slice_realized(a, m).set;
}

FinCat nsset_slice_category(const NSSet& a, const std::vector<int>& m)
{
    return slice_category(a, m).c;
}

Truncation truncate(const NSSet& a)
{
    if (a.arity < 1)
        throw std::invalid_argument("a set cannot be truncated further");
    int n = a.arity;
    Truncation out;
    out.t.arity = n - 1;
    out.t.bound.assign(a.bound.begin(), a.bound.end() - 1);
    std::vector<int> head(a.bound.begin(), a.bound.end() - 1);
    std::map<std::vector<int>, std::vector<int>> reps;
    for_each_index(head, [&](const std::vector<int>& m) {
        Slice s;
        try {
            s = slice_category(a, m);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("not 1-truncatable at " + show_index(m) + ": " + e.what());
        }
        UnionFind uf(s.c.num_objects());
        for (int f = 0; f < s.c.num_arrows(); ++f)
            if (inverse(s.c, f))
                uf.unite(s.c.arrows[f].dom, s.c.arrows[f].cod);
        auto& tau = out.tau[m];
        auto& names = out.t.cells[m];
        std::vector<int> cls(s.c.num_objects(), -1);
        for (int x = 0; x < s.c.num_objects(); ++x) {
            int r = uf.find(x);
            if (cls[r] < 0) {
                cls[r] = static_cast<int>(names.size());
                names.push_back(a.at(with(m, 0))[x]);
                reps[m].push_back(x);
            }
            tau.push_back(cls[r]);
        }
    });
    for_each_index(head, [&](const std::vector<int>& m) {
        for (int d = 0; d < n - 1; ++d)
            for (int kind = 0; kind < 2; ++kind)
                for (int i = 0; i <= m[d]; ++i) {
                    Step s{d, kind, i};
                    if (!defined(out.t, m, s))
                        continue;
                    const auto& v = op(a, with(m, 0), d, kind, i);
                    const auto& tt = out.tau.at(target(m, s));
                    auto& img = out.t.maps[{m, d, kind, i}];
                    for (int r : reps[m])
                        img.push_back(tt[v[r]]);
                }
    });
    return out;
}

NSMap truncate_map(const NSSet& a, const Truncation& ta, const NSSet&, const Truncation& tb, const NSMap& f)
{
    NSMap out;
    for (const auto& [m, tau] : ta.tau) {
        const auto& fm = f.at.at(with(m, 0));
        const auto& tbm = tb.tau.at(m);
        auto& v = out.at[m];
        v.assign(ta.t.at(m).size(), -1);
        for (size_t x = 0; x < tau.size(); ++x) {
            int img = tbm[fm[x]];
            if (v[tau[x]] >= 0 && v[tau[x]] != img)
                throw std::logic_error("map does not respect isomorphism classes at " + show_index(m));
            v[tau[x]] = img;
        }
    }
    (void)a;
    return out;
}

namespace {

// object (cell at the zero index) under a cell at M
int collapse(const NSSet& a, std::vector<int> m, int x)
{
    for (int d = 0; d < a.arity; ++d)
        while (m[d] > 0) {
            x = op(a, m, d, 0, 0)[x];
            --m[d];
        }
    return x;
}

int endpoint(const NSSet& a, const std::vector<int>& rest, int x, int i)
{
    std::vector<int> m = rest;
    m.insert(m.begin(), 1);
    int y = op(a, m, 0, 0, i)[x];
    m[0] = 0;
    return collapse(a, m, y);
}

}  // namespace

NSSet hom_slice(const NSSet& a, int x, int y, std::map<std::vector<int>, std::vector<int>>* embed)
{
    if (a.arity < 1 || a.bound[0] < 1)
        throw std::invalid_argument("hom slices need a first direction reaching 1");
    NSSet h;
    h.arity = a.arity - 1;
    h.bound.assign(a.bound.begin() + 1, a.bound.end());
    std::map<std::vector<int>, std::vector<int>> emb;
    std::map<std::vector<int>, std::vector<int>> pos;
    for_each_index(h.bound, [&](const std::vector<int>& m) {
        std::vector<int> full = m;
        full.insert(full.begin(), 1);
        auto& names = h.cells[m];
        auto& e = emb[m];
        auto& p = pos[m];
        p.assign(a.at(full).size(), -1);
        for (size_t c = 0; c < a.at(full).size(); ++c)
            if (endpoint(a, m, static_cast<int>(c), 1) == x && endpoint(a, m, static_cast<int>(c), 0) == y) {
                p[c] = static_cast<int>(e.size());
                e.push_back(static_cast<int>(c));
                names.push_back(a.at(full)[c]);
            }
    });
    for_each_index(h.bound, [&](const std::vector<int>& m) {
        std::vector<int> full = m;
        full.insert(full.begin(), 1);
        for (int d = 0; d < h.arity; ++d)
            for (int kind = 0; kind < 2; ++kind)
                for (int i = 0; i <= m[d]; ++i) {
                    Step s{d, kind, i};
                    if (!defined(h, m, s))
                        continue;
                    const auto& v = op(a, full, d + 1, kind, i);
                    const auto& tp = pos.at(target(m, s));
                    auto& img = h.maps[{m, d, kind, i}];
                    for (int c : emb[m]) {
                        if (tp[v[c]] < 0)
                            throw std::logic_error("structure map leaves the hom slice");
                        img.push_back(tp[v[c]]);
                    }
                }
    });
    if (embed)
        *embed = std::move(emb);
    return h;
}

bool n_equivalence_check(const NSSet& a, const NSSet& b, const NSMap& f, int n, std::string* why)
{
    auto fail = [&](const std::string& w) {
        if (why)
            *why = w;
        return false;
    };
    if (a.arity != n || b.arity != n)
        throw std::invalid_argument("n-equivalence needs arity n on both sides");
    if (n > 2)
        throw std::invalid_argument("n-equivalence is only decided for n <= 2");
    std::string w;
    if (!is_natural(a, b, f, &w))
        return fail("not a map: " + w);
    if (n == 0) {
        const auto& v = f.at.at({});
        std::vector<bool> hit(b.at({}).size(), false);
        for (size_t x = 0; x < v.size(); ++x) {
            if (hit[v[x]])
                return fail("two elements map to " + b.at({})[v[x]]);
            hit[v[x]] = true;
        }
        for (size_t y = 0; y < hit.size(); ++y)
            if (!hit[y])
                return fail("nothing maps to " + b.at({})[y]);
        return true;
    }
    std::vector<int> zero(n, 0);
    const auto& objs = a.at(zero);
    const auto& fo = f.at.at(zero);
    for (size_t x = 0; x < objs.size(); ++x)
        for (size_t y = 0; y < objs.size(); ++y) {
            std::map<std::vector<int>, std::vector<int>> ea, eb;
            NSSet ha = hom_slice(a, static_cast<int>(x), static_cast<int>(y), &ea);
            NSSet hb = hom_slice(b, fo[x], fo[y], &eb);
            NSMap hf;
            for (const auto& [m, cells] : ea) {
                std::vector<int> full = m;
                full.insert(full.begin(), 1);
                const auto& fm = f.at.at(full);
                const auto& target_cells = eb.at(m);
                auto& v = hf.at[m];
                for (int c : cells) {
                    auto it = std::find(target_cells.begin(), target_cells.end(), fm[c]);
                    if (it == target_cells.end())
                        throw std::logic_error("map does not preserve endpoints");
                    v.push_back(static_cast<int>(it - target_cells.begin()));
                }
            }
            std::string inner;
            if (!n_equivalence_check(ha, hb, hf, n - 1, &inner))
                return fail("on the hom from " + objs[x] + " to " + objs[y] + ": " + inner);
        }
    NSSet ca = a, cb = b;
    NSMap cf = f;
    for (int k = 0; k < n; ++k) {
        Truncation ta = truncate(ca), tb = truncate(cb);
        cf = truncate_map(ca, ta, cb, tb, cf);
        ca = std::move(ta.t);
        cb = std::move(tb.t);
    }
    std::vector<bool> hit(cb.at({}).size(), false);
    for (int v : cf.at.at({}))
        hit[v] = true;
    for (size_t y = 0; y < hit.size(); ++y)
        if (!hit[y])
            return fail("T^" + std::to_string(n) + "(f) misses " + cb.at({})[y]);
    return true;
}

// ---- horizontal composition ----

namespace {

struct TwoLevel {
    const NSSet& a;
    Slice c1, c2;

    explicit TwoLevel(const NSSet& n) : a(n), c1(slice_category(n, {1})), c2(slice_category(n, {2})) {}

    int src(int cell1) const { return endpoint(a, {0}, cell1, 1); }    // 1-cell at (1,0)
    int tgt(int cell1) const { return endpoint(a, {0}, cell1, 0); }
    int dom(int cell) const { return op(a, {1, 1}, 1, 0, 1)[cell]; }   // 2-cell at (1,1)
    int cod(int cell) const { return op(a, {1, 1}, 1, 0, 0)[cell]; }
    int dom2(int cell) const { return op(a, {2, 1}, 1, 0, 1)[cell]; }  // cell at (2,1)
    int cod2(int cell) const { return op(a, {2, 1}, 1, 0, 0)[cell]; }
    int id1(int obj) const { return op(a, {1, 0}, 1, 1, 0)[obj]; }
    int id2(int obj) const { return op(a, {2, 0}, 1, 1, 0)[obj]; }
    int comp1(int g, int f) const
    {
        int h = c1.c.compose(c1.arrow_of_cell[g], c1.arrow_of_cell[f]);
        return h < 0 ? -1 : c1.cell_of_arrow[h];
    }
    int comp2(int g, int f) const
    {
        int h = c2.c.compose(c2.arrow_of_cell[g], c2.arrow_of_cell[f]);
        return h < 0 ? -1 : c2.cell_of_arrow[h];
    }
    std::optional<int> inv1(int f) const
    {
        auto i = inverse(c1.c, c1.arrow_of_cell[f]);
        if (!i)
            return std::nullopt;
        return c1.cell_of_arrow[*i];
    }
    // spine of a row-2 cell
    std::pair<int, int> delta(int cell, int q) const
    {
        return {op(a, {2, q}, 0, 0, 2)[cell], op(a, {2, q}, 0, 0, 0)[cell]};
    }
    size_t count(int p, int q) const { return a.at({p, q}).size(); }
};

void need_two(const NSSet& a)
{
    if (a.arity != 2 || a.bound[0] < 2 || a.bound[1] < 3)
        throw std::invalid_argument("horizontal composition needs an arity 2 set through (2,3)");
}

void check_certificates(const TwoLevel& t, const Gamma2& g, const Alpha2& al)
{
    auto reject = [](const std::string& w) { throw std::invalid_argument("certificate rejected: " + w); };
    auto name1 = [&](int c) { return t.a.at({1, 0})[c]; };
    int n1 = static_cast<int>(t.count(1, 0)), e1 = static_cast<int>(t.count(1, 1));
    for (int f = 0; f < n1; ++f)
        for (int h = 0; h < n1; ++h) {
            if (t.tgt(f) != t.src(h))
                continue;
            auto it = g.obj.find({f, h});
            if (it == g.obj.end())
                reject("gamma2 undefined on (" + name1(f) + ", " + name1(h) + ")");
            auto at = al.at.find({f, h});
            if (at == al.at.end())
                reject("alpha2 undefined on (" + name1(f) + ", " + name1(h) + ")");
            auto [d2, d0] = t.delta(it->second, 0);
            auto [u, v] = at->second;
            if (t.dom(u) != d2 || t.cod(u) != f || t.dom(v) != d0 || t.cod(v) != h)
                reject("alpha2(" + name1(f) + ", " + name1(h) + ") has the wrong endpoints");
            if (!t.inv1(u) || !t.inv1(v))
                reject("alpha2(" + name1(f) + ", " + name1(h) + ") is not an isomorphism");
            auto ia = g.arr.find({t.id1(f), t.id1(h)});
            if (ia == g.arr.end() || ia->second != t.id2(it->second))
                reject("gamma2 does not preserve the identity of (" + name1(f) + ", " + name1(h) + ")");
        }
    std::vector<std::pair<int, int>> arrows;
    for (int x = 0; x < e1; ++x)
        for (int y = 0; y < e1; ++y)
            if (t.tgt(t.dom(x)) == t.src(t.dom(y)))
                arrows.emplace_back(x, y);
    for (auto [x, y] : arrows) {
        auto it = g.arr.find({x, y});
        if (it == g.arr.end())
            reject("gamma2 undefined on a pair of 2-cells");
        int e = it->second;
        if (t.dom2(e) != g.obj.at({t.dom(x), t.dom(y)}) || t.cod2(e) != g.obj.at({t.cod(x), t.cod(y)}))
            reject("gamma2 does not respect endpoints");
        // naturality of alpha2
        auto [d2, d0] = t.delta(e, 1);
        auto [u, v] = al.at.at({t.dom(x), t.dom(y)});
        auto [u2, v2] = al.at.at({t.cod(x), t.cod(y)});
        if (t.comp1(u2, d2) != t.comp1(x, u) || t.comp1(v2, d0) != t.comp1(y, v))
            reject("alpha2 is not natural at (" + t.a.at({1, 1})[x] + ", " + t.a.at({1, 1})[y] + ")");
    }
    for (auto [x, y] : arrows)
        for (auto [x2, y2] : arrows) {
            if (t.dom(x2) != t.cod(x) || t.dom(y2) != t.cod(y))
                continue;
            int l = g.arr.at({t.comp1(x2, x), t.comp1(y2, y)});
            int r = t.comp2(g.arr.at({x2, y2}), g.arr.at({x, y}));
            if (l != r)
                reject("gamma2 does not preserve composition");
        }
}

}  // namespace

Gamma2 strict_gamma2(const NSSet& a)
{
    need_two(a);
    Gamma2 g;
    for (int q = 0; q < 2; ++q) {
        auto& table = q == 0 ? g.obj : g.arr;
        for (size_t c = 0; c < a.at({2, q}).size(); ++c) {
            std::pair<int, int> s{op(a, {2, q}, 0, 0, 2)[c], op(a, {2, q}, 0, 0, 0)[c]};
            if (!table.emplace(s, static_cast<int>(c)).second)
                throw std::invalid_argument("Segal map at p = 2 is not injective");
        }
    }
    // surjectivity onto composable pairs
    auto ends = [&](int q, int c, int i) { return endpoint(a, {q}, c, i); };
    for (int q = 0; q < 2; ++q) {
        auto& table = q == 0 ? g.obj : g.arr;
        int n = static_cast<int>(a.at({1, q}).size());
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                if (ends(q, x, 0) == ends(q, y, 1) && !table.count({x, y}))
                    throw std::invalid_argument("Segal map at p = 2 is not surjective");
    }
    return g;
}

Alpha2 identity_alpha2(const NSSet& a, const Gamma2& g)
{
    Alpha2 al;
    for (const auto& [fg, s] : g.obj)
        al.at[fg] = {op(a, {1, 0}, 1, 1, 0)[fg.first], op(a, {1, 0}, 1, 1, 0)[fg.second]};
    return al;
}

HorizontalResult horizontal_compose_2cells(const NSSet& a, const Gamma2& gamma2, const Alpha2& alpha2, int cell_a,
                                           int cell_b)
{
    need_two(a);
    TwoLevel t(a);
    if (cell_a < 0 || cell_b < 0 || cell_a >= static_cast<int>(t.count(1, 1)) ||
        cell_b >= static_cast<int>(t.count(1, 1)))
        throw std::invalid_argument("2-cell index out of range");
    if (t.tgt(t.dom(cell_a)) != t.src(t.dom(cell_b)))
        throw std::invalid_argument("2-cells are not horizontally composable");
    check_certificates(t, gamma2, alpha2);
    int f = t.dom(cell_a), f2 = t.cod(cell_a), g = t.dom(cell_b), g2 = t.cod(cell_b);
    HorizontalResult r;
    r.sigma = gamma2.obj.at({f, g});
    r.sigma2 = gamma2.obj.at({f2, g2});
    auto [u, v] = alpha2.at.at({f, g});
    auto [u2, v2] = alpha2.at.at({f2, g2});
    r.conjugated = {t.comp1(*t.inv1(u2), t.comp1(cell_a, u)), t.comp1(*t.inv1(v2), t.comp1(cell_b, v))};
    std::vector<int> lifts;
    for (int e = 0; e < static_cast<int>(t.count(2, 1)); ++e)
        if (t.dom2(e) == r.sigma && t.cod2(e) == r.sigma2 && t.delta(e, 1) == r.conjugated)
            lifts.push_back(e);
    if (lifts.empty())
        throw std::invalid_argument("certificate rejected: no lift of the conjugated pair");
    if (lifts.size() > 1)
        throw std::invalid_argument("certificate rejected: lift of the conjugated pair is not unique");
    r.epsilon = lifts[0];
    r.composite = op(a, {2, 0}, 0, 0, 1)[r.sigma];
    r.composite_cell = op(a, {2, 1}, 0, 0, 1)[r.epsilon];
    return r;
}

// ---- fixtures ----

Cat2 truncation_fixture()
{
    Cat2 c;
    c.objects = {"x", "y"};
    CatBuilder ex, ey;
    ex.object("1x", "i1x");
    ey.object("1y", "i1y");
    CatBuilder h;
    h.object("f", "id_f");
    h.object("g", "id_g");
    h.object("h", "id_h");
    h.arrow("a", "f", "g");
    h.arrow("a'", "g", "f");
    h.arrow("b", "g", "h");
    h.arrow("ba", "f", "h");
    h.set("a", "a'", "id_g");
    h.set("a'", "a", "id_f");
    h.set("b", "a", "ba");
    h.set("ba", "a'", "b");
    c.homs.emplace(std::make_pair(0, 0), ex.build());
    c.homs.emplace(std::make_pair(1, 1), ey.build());
    c.homs.emplace(std::make_pair(0, 1), h.build());
    auto unit_left = [](const FinCat& m) {  // product(point, m) -> m
        CatFunctor F;
        for (int o = 0; o < m.num_objects(); ++o)
            F.obj.push_back(o);
        for (int f = 0; f < m.num_arrows(); ++f)
            F.arr.push_back(f);
        return F;
    };
    const FinCat& hxy = c.homs.at({0, 1});
    c.comps.emplace(std::make_tuple(0, 0, 0), CatFunctor{{0}, {0}});
    c.comps.emplace(std::make_tuple(1, 1, 1), CatFunctor{{0}, {0}});
    c.comps.emplace(std::make_tuple(0, 0, 1), unit_left(hxy));
    c.comps.emplace(std::make_tuple(0, 1, 1), unit_left(hxy));
    c.ids = {0, 0};
    validate_cat2(c);
    return c;
}

Cat2 indiscrete_monoidal_fixture()
{
    Cat2 c;
    c.objects = {"*"};
    FinCat h = indiscrete(2);
    auto arrow = [&](int d, int e) {
        for (int f = 0; f < h.num_arrows(); ++f)
            if (h.arrows[f].dom == d && h.arrows[f].cod == e)
                return f;
        return -1;
    };
    CatFunctor add;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            add.obj.push_back((i + j) % 2);
    int m = h.num_arrows();
    add.arr.resize(m * m);
    for (int f = 0; f < m; ++f)
        for (int g = 0; g < m; ++g)
            add.arr[f * m + g] = arrow((h.arrows[f].dom + h.arrows[g].dom) % 2, (h.arrows[f].cod + h.arrows[g].cod) % 2);
    c.homs.emplace(std::make_pair(0, 0), h);
    c.comps.emplace(std::make_tuple(0, 0, 0), add);
    c.ids = {0};
    validate_cat2(c);
    return c;
}

NSSet nsset_of_cat2(const Cat2& c)
{
    return nsset_from_bisset(scat_nerve(scat_from_cat2(c, 3), 3).a);
}

}  // namespace simpcat
