#include "simpcat/hc_nerve.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace simpcat {

namespace {

int hom_dim_for(int n) { return n > 0 ? n - 1 : 0; }

const SFunctor& cached_operator(const std::vector<int>& f, int n, int d)
{
    static std::map<std::tuple<std::vector<int>, int, int>, SFunctor> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({f, n, d});
        if (it != cache.end())
            return it->second;
    }
    const SCat& sm = s_ordinal_cached(static_cast<int>(f.size()) - 1, d);
    const SCat& sn = s_ordinal_cached(n, d);
    SFunctor g = s_ordinal_map(f, sm, sn);
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(std::make_tuple(f, n, d), std::move(g)).first->second;
}

std::string ref_key(const SimplexRef& r)
{
    std::string s = std::to_string(r.base);
    for (size_t t = 0; t < r.degens.size(); ++t)
        s += (t == 0 ? ':' : '.') + std::to_string(r.degens[t]);
    return s;
}

// The cube S[L](0,L) with its vertices addressed by interior masks.
struct Cube {
    const SSet* set = nullptr;
    std::map<unsigned, int> vertex;
    std::unique_ptr<VertexTupleIndex> index;
    std::vector<std::vector<unsigned>> chain;  // nd simplex -> vertex masks

    Cube(int L, int d)
    {
        set = &s_ordinal_cached(L, d).hom_or_throw(0, L);
        index = std::make_unique<VertexTupleIndex>(*set);
        std::map<int, unsigned> mask_of;
        for (int v : set->nd(0)) {
            unsigned m = path_mask(set->name(v));
            vertex[m] = v;
            mask_of[v] = m;
        }
        for (int g = 0; g < set->size(); ++g) {
            std::vector<unsigned> c;
            for (int v : set->vertices(SimplexRef{g, {}}))
                c.push_back(mask_of.at(v));
            chain.push_back(std::move(c));
        }
    }

    SimplexRef ref(const std::vector<unsigned>& masks) const
    {
        std::vector<int> ids;
        for (unsigned m : masks)
            ids.push_back(vertex.at(m));
        return index->ref(ids);
    }
};

}  // namespace

std::vector<HcSimplex> hc_nerve_simplices(const SCat& b, int n, Budget* budget, int hom_dim)
{
    int d = hom_dim < 0 ? hom_dim_for(n) : hom_dim;
    if (b.max_dim < d)
        throw std::invalid_argument("hom dimension of the target is below n-1");
    const SCat& sn = s_ordinal_cached(n, d);
    std::vector<std::pair<int, int>> pairs;
    for (int len = 1; len <= n; ++len)
        for (int i = 0; i + len <= n; ++i)
            pairs.emplace_back(i, i + len);

    std::vector<HcSimplex> out;
    HcSimplex cur;
    cur.n = n;
    cur.hom_dim = d;
    cur.F.obj.assign(n + 1, -1);

    std::function<void(size_t)> homs = [&](size_t p) {
        if (p == pairs.size()) {
            out.push_back(cur);
            return;
        }
        auto [i, j] = pairs[p];
        int oi = cur.F.obj[i], oj = cur.F.obj[j];
        const SSet& cube = sn.hom_or_throw(i, j);
        const SSet& target = b.hom_or_throw(oi, oj);
        Constraints fixed;
        for (int k = i + 1; k < j; ++k) {
            const Composition& c = sn.comps.at({i, k, j});
            const SMap& fik = cur.F.hom.at({i, k});
            const SMap& fkj = cur.F.hom.at({k, j});
            for (int q = 0; q < c.prod.set.size(); ++q) {
                SimplexRef at = c.map.image[q];
                if (at.degenerate())
                    throw std::logic_error("composition in S[n] is not injective");
                SimplexRef v = b.compose(oi, cur.F.obj[k], oj, apply(fik, c.prod.p1.image[q]),
                                         apply(fkj, c.prod.p2.image[q]));
                auto [it, fresh] = fixed.emplace(at.base, v);
                if (!fresh && it->second != v)
                    return;
            }
        }
        for_each_map(
            cube, target, fixed,
            [&](const SMap& m) {
                cur.F.hom[{i, j}] = m;
                homs(p + 1);
                return true;
            },
            budget);
        cur.F.hom.erase({i, j});
    };

    std::function<void(int)> objects = [&](int t) {
        if (t > n) {
            for (int i = 0; i <= n; ++i) {
                SMap id;
                for (int g = 0; g < sn.hom_or_throw(i, i).size(); ++g)
                    id.image.push_back(b.identity(cur.F.obj[i], sn.hom_or_throw(i, i).dim(g)));
                cur.F.hom[{i, i}] = std::move(id);
            }
            homs(0);
            return;
        }
        for (int x = 0; x < b.num_objects(); ++x) {
            tick(budget);
            bool ok = true;
            for (int s = 0; s < t && ok; ++s)
                ok = b.hom(cur.F.obj[s], x) != nullptr && b.hom(cur.F.obj[s], x)->size() > 0;
            if (!ok)
                continue;
            cur.F.obj[t] = x;
            objects(t + 1);
        }
        cur.F.obj[t] = -1;
    };
    objects(0);
    return out;
}

HcSimplex hc_precompose(const HcSimplex& h, const std::vector<int>& f)
{
    const SFunctor& g = cached_operator(f, h.n, h.hom_dim);
    HcSimplex r;
    r.n = static_cast<int>(f.size()) - 1;
    r.hom_dim = h.hom_dim;
    for (int x : g.obj)
        r.F.obj.push_back(h.F.obj[x]);
    for (const auto& [ij, m] : g.hom)
        r.F.hom.emplace(ij, compose(h.F.hom.at({f[ij.first], f[ij.second]}), m));
    return r;
}

HcSimplex hc_face(const HcSimplex& h, int i)
{
    std::vector<int> f;
    for (int k = 0; k <= h.n; ++k)
        if (k != i)
            f.push_back(k);
    return hc_precompose(h, f);
}

HcSimplex hc_degen(const HcSimplex& h, int i)
{
    std::vector<int> f;
    for (int k = 0; k <= h.n + 1; ++k)
        f.push_back(k <= i ? k : k - 1);
    return hc_precompose(h, f);
}

std::string hc_key(const HcSimplex& h)
{
    std::ostringstream os;
    os << h.n << '#';
    for (size_t t = 0; t < h.F.obj.size(); ++t)
        os << (t ? "," : "") << h.F.obj[t];
    for (const auto& [ij, m] : h.F.hom) {
        if (ij.first == ij.second)
            continue;
        os << '|';
        for (size_t t = 0; t < m.image.size(); ++t)
            os << (t ? "," : "") << ref_key(m.image[t]);
    }
    return os.str();
}

std::string hc_label(const SCat& b, const HcSimplex& h)
{
    std::string s;
    for (size_t t = 0; t < h.F.obj.size(); ++t)
        s += (t ? "," : "") + b.objects[h.F.obj[t]];
    if (h.n == 0)
        return s;
    s = "<" + s + ">";
    for (const auto& [ij, m] : h.F.hom) {
        if (ij.first == ij.second)
            continue;
        const SSet& t = b.hom_or_throw(h.F.obj[ij.first], h.F.obj[ij.second]);
        s += "{";
        for (size_t q = 0; q < m.image.size(); ++q)
            s += (q ? "," : "") + t.ref_name(m.image[q]);
        s += "}";
    }
    return s;
}

HcNerve hc_nerve(const SCat& b, int max_n, Budget* budget)
{
    int d = hom_dim_for(max_n);
    if (b.max_dim < d)
        throw std::invalid_argument("hom dimension of the target is below max_n-1");
    HcNerve out;
    std::map<std::string, const HcSimplex*> by_key;
    SimplicialData data;
    data.max_dim = max_n;
    for (int k = 0; k <= max_n; ++k) {
        auto simp = hc_nerve_simplices(b, k, budget, d);
        out.simplices.push_back(std::move(simp));
    }
    for (int k = 0; k <= max_n; ++k) {
        std::vector<std::string> keys;
        for (const auto& h : out.simplices[k]) {
            keys.push_back(hc_key(h));
            by_key.emplace(keys.back(), &h);
        }
        data.simplices.push_back(std::move(keys));
    }
    data.face = [&](const std::string& x, int, int i) { return hc_key(hc_face(*by_key.at(x), i)); };
    data.degen = [&](const std::string& x, int, int i) { return hc_key(hc_degen(*by_key.at(x), i)); };
    data.label = [&](const std::string& x) { return hc_label(b, *by_key.at(x)); };
    out.nerve = realize(data);
    return out;
}

HcQuasiVerdict hc_nerve_is_quasi(const SCat& b, int max_n, Budget* budget)
{
    HcQuasiVerdict v;
    v.locally_kan = is_locally_kan(b, std::min(max_n, b.max_dim), budget).ok;
    v.nerve = hc_nerve(b, max_n, budget);
    v.verdict = is_quasicategory(v.nerve.nerve.set, max_n, budget);
    return v;
}

CoherenceReport expand_coherence_data(const SCat& b, const HcSimplex& h, int max_len)
{
    if (max_len < 0)
        max_len = h.n + 1;
    CoherenceReport rep;
    std::map<int, std::unique_ptr<Cube>> cubes;
    auto cube = [&](int L) -> const Cube& {
        auto& c = cubes[L];
        if (!c)
            c = std::make_unique<Cube>(L, h.hom_dim);
        return *c;
    };
    std::map<std::vector<int>, HcSimplex> pulled;
    auto pull = [&](const std::vector<int>& sigma) -> const HcSimplex& {
        auto it = pulled.find(sigma);
        if (it == pulled.end())
            it = pulled.emplace(sigma, hc_precompose(h, sigma)).first;
        return it->second;
    };
    auto cube_map = [&](const std::vector<int>& sigma) -> const SMap& {
        int L = static_cast<int>(sigma.size()) - 1;
        return pull(sigma).F.hom.at({0, L});
    };
    auto fail = [&](const std::vector<int>& sigma, const std::string& what) {
        std::string s = "sigma=";
        for (int v : sigma)
            s += std::to_string(v);
        rep.failures.push_back(s + ": " + what);
    };
    auto mapped = [](const std::vector<unsigned>& chain, const std::function<unsigned(unsigned)>& phi) {
        std::vector<unsigned> out;
        for (unsigned m : chain)
            out.push_back(phi(m));
        return out;
    };
    // F(sigma) against F(tau) after a cube map, on the simplices selected by keep
    auto compare = [&](const std::vector<int>& sigma, const std::vector<int>& tau,
                       const std::function<unsigned(unsigned)>& phi,
                       const std::function<bool(const std::vector<unsigned>&)>& keep, const std::string& what) {
        int L = static_cast<int>(sigma.size()) - 1, M = static_cast<int>(tau.size()) - 1;
        const Cube &cs = cube(L), &ct = cube(M);
        const SMap &fs = cube_map(sigma), &ft = cube_map(tau);
        for (int g = 0; g < cs.set->size(); ++g) {
            if (!keep(cs.chain[g]))
                continue;
            ++rep.checks;
            if (apply(fs, SimplexRef{g, {}}) != apply(ft, ct.ref(mapped(cs.chain[g], phi)))) {
                fail(sigma, what);
                return;
            }
        }
    };
    auto all = [](const std::vector<unsigned>&) { return true; };

    std::vector<int> sigma;
    std::function<void(int)> strings = [&](int L) {
        if (static_cast<int>(sigma.size()) == L + 1) {
            rep.cubes.push_back(CubeMap{sigma, cube_map(sigma)});
            auto without = [&](int pos) {
                std::vector<int> t = sigma;
                t.erase(t.begin() + pos);
                return t;
            };
            if (L == 1 && sigma[0] == sigma[1]) {
                ++rep.checks;
                if (apply(cube_map(sigma), SimplexRef{0, {}}) != b.ids[h.F.obj[sigma[0]]])
                    fail(sigma, "(i) identity");
            }
            if (L >= 2 && sigma[0] == sigma[1])
                compare(sigma, without(0), [](unsigned m) { return (m >> 1) & ~1u; }, all, "(i)");
            for (int i = 1; i + 1 < L; ++i)
                if (sigma[i] == sigma[i + 1])
                    compare(
                        sigma, without(i + 1),
                        [i](unsigned m) {
                            unsigned low = m & ((1u << i) - 1);
                            unsigned merged = (m >> i & 3u) ? 1u << i : 0u;
                            unsigned high = (m >> (i + 2)) << (i + 1);
                            return low | merged | high;
                        },
                        all, "(ii) min");
            if (L >= 2 && sigma[L - 1] == sigma[L])
                compare(sigma, without(L), [L](unsigned m) { return m & ~(1u << (L - 1)); }, all, "(iii)");
            for (int k = 1; k < L; ++k) {
                compare(
                    sigma, without(k),
                    [k](unsigned m) { return (m & ((1u << k) - 1)) | ((m >> (k + 1)) << k); },
                    [k](const std::vector<unsigned>& c) {
                        for (unsigned m : c)
                            if (m >> k & 1u)
                                return false;
                        return true;
                    },
                    "(iv) face " + std::to_string(k));
                // (v)_k: the facet through vertex k is the composite of the two halves
                std::vector<int> left(sigma.begin(), sigma.begin() + k + 1);
                std::vector<int> right(sigma.begin() + k, sigma.end());
                const Cube &cs = cube(L), &cl = cube(k), &cr = cube(L - k);
                const SMap &fs = cube_map(sigma), &fl = cube_map(left), &fr = cube_map(right);
                int x = h.F.obj[sigma[0]], y = h.F.obj[sigma[k]], z = h.F.obj[sigma[L]];
                for (int g = 0; g < cs.set->size(); ++g) {
                    const auto& c = cs.chain[g];
                    bool through = true;
                    for (unsigned m : c)
                        through = through && (m >> k & 1u);
                    if (!through)
                        continue;
                    ++rep.checks;
                    std::vector<unsigned> lc, rc;
                    for (unsigned m : c) {
                        lc.push_back(m & ((1u << k) - 1));
                        rc.push_back((m >> k) & ~1u);
                    }
                    SimplexRef rhs = b.compose(x, y, z, apply(fl, cl.ref(lc)), apply(fr, cr.ref(rc)));
                    if (apply(fs, SimplexRef{g, {}}) != rhs) {
                        fail(sigma, "(v) facet " + std::to_string(k));
                        break;
                    }
                }
            }
            return;
        }
        int from = sigma.empty() ? 0 : sigma.back();
        for (int v = from; v <= h.n; ++v) {
            sigma.push_back(v);
            strings(L);
            sigma.pop_back();
        }
    };
    for (int L = 1; L <= max_len; ++L)
        strings(L);
    return rep;
}

}  // namespace simpcat
