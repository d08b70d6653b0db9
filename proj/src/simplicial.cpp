#include "simpcat/simplicial.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>
#include <sstream>

namespace simpcat {

Word normalize_word(Word w)
{
    // s_a s_b = s_{b+1} s_a whenever a <= b
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t t = 0; t + 1 < w.size(); ++t) {
            if (w[t] <= w[t + 1]) {
                int a = w[t], b = w[t + 1];
                w[t] = b + 1;
                w[t + 1] = a;
                changed = true;
            }
        }
    }
    return w;
}

size_t RefHash::operator()(const SimplexRef& r) const noexcept
{
    size_t h = std::hash<int>()(r.base) * 1000003u;
    for (int d : r.degens)
        h = h * 31u + static_cast<size_t>(d + 7);
    return h;
}

size_t RefVecHash::operator()(const std::vector<SimplexRef>& v) const noexcept
{
    size_t h = v.size();
    RefHash rh;
    for (const auto& r : v)
        h = h * 1000033u ^ rh(r);
    return h;
}

int SSet::add(std::string name, int dim, std::vector<SimplexRef> faces)
{
    if (dim < 0 || dim > max_dim_)
        throw std::invalid_argument("simplex '" + name + "' has dimension outside 0.." +
                                    std::to_string(max_dim_));
    if (index_.count(name))
        throw std::invalid_argument("duplicate simplex id '" + name + "'");
    size_t expect = dim == 0 ? 0 : static_cast<size_t>(dim + 1);
    if (faces.size() != expect)
        throw std::invalid_argument("simplex '" + name + "' needs " + std::to_string(expect) +
                                    " faces");
    for (auto& f : faces) {
        if (f.base < 0 || f.base >= size())
            throw std::invalid_argument("face of '" + name + "' refers to an unknown simplex");
        f.degens = normalize_word(f.degens);
        if (this->dim(f) != dim - 1)
            throw std::invalid_argument("face of '" + name + "' has wrong dimension");
        for (size_t t = 0; t < f.degens.size(); ++t)
            if (f.degens[t] > dims_[f.base] + static_cast<int>(f.degens.size() - t) - 1 ||
                f.degens[t] < 0)
                throw std::invalid_argument("face of '" + name + "' has an invalid degeneracy");
    }
    int g = size();
    names_.push_back(name);
    dims_.push_back(dim);
    faces_.push_back(std::move(faces));
    if (static_cast<int>(nd_.size()) <= dim)
        nd_.resize(dim + 1);
    nd_[dim].push_back(g);
    index_.emplace(std::move(name), g);
    return g;
}

const std::vector<int>& SSet::nd(int k) const
{
    static const std::vector<int> none;
    if (k < 0 || k >= static_cast<int>(nd_.size()))
        return none;
    return nd_[k];
}

std::optional<int> SSet::find(const std::string& name) const
{
    auto it = index_.find(name);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

int SSet::index(const std::string& name) const
{
    auto g = find(name);
    if (!g)
        throw std::invalid_argument("unknown simplex id '" + name + "'");
    return *g;
}

SimplexRef SSet::face(const SimplexRef& x, int i) const
{
    int k = dim(x);
    if (k < 1 || i < 0 || i > k)
        throw std::out_of_range("face index out of range");
    Word prefix;
    int cur = i;
    for (size_t t = 0; t < x.degens.size(); ++t) {
        int j = x.degens[t];
        if (cur < j) {
            prefix.push_back(j - 1);
        } else if (cur == j || cur == j + 1) {
            Word w = prefix;
            w.insert(w.end(), x.degens.begin() + static_cast<long>(t) + 1, x.degens.end());
            return SimplexRef{x.base, normalize_word(std::move(w))};
        } else {
            prefix.push_back(j);
            --cur;
        }
    }
    const SimplexRef& f = faces_[x.base][cur];
    Word w = prefix;
    w.insert(w.end(), f.degens.begin(), f.degens.end());
    return SimplexRef{f.base, normalize_word(std::move(w))};
}

SimplexRef SSet::degen(const SimplexRef& x, int i) const
{
    if (i < 0 || i > dim(x))
        throw std::out_of_range("degeneracy index out of range");
    Word w{i};
    w.insert(w.end(), x.degens.begin(), x.degens.end());
    return SimplexRef{x.base, normalize_word(std::move(w))};
}

namespace {

// r-element subsets of {0..k-1}, each listed in decreasing order.
void decreasing_subsets(int k, int r, std::vector<Word>& out)
{
    Word cur;
    std::function<void(int, int)> rec = [&](int hi, int left) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (int v = hi; v >= left - 1; --v) {
            cur.push_back(v);
            rec(v - 1, left - 1);
            cur.pop_back();
        }
    };
    rec(k - 1, r);
}

}  // namespace

std::vector<SimplexRef> SSet::simplices(int k) const
{
    std::vector<SimplexRef> out;
    for (int m = 0; m <= std::min(k, max_dim_); ++m) {
        std::vector<Word> words;
        decreasing_subsets(k, k - m, words);
        for (int g : nd(m))
            for (const auto& w : words)
                out.push_back(SimplexRef{g, w});
    }
    return out;
}

size_t SSet::count(int k) const
{
    // C(k, k-m) degeneracy words over each nondegenerate m-simplex
    size_t total = 0;
    for (int m = 0; m <= std::min(k, max_dim_); ++m) {
        size_t c = 1;
        for (int t = 1; t <= k - m; ++t)
            c = c * static_cast<size_t>(k - t + 1) / static_cast<size_t>(t);
        total += c * nd(m).size();
    }
    return total;
}

std::string SSet::ref_name(const SimplexRef& x) const
{
    if (x.degens.empty())
        return names_[x.base];
    std::string s;
    for (int d : x.degens)
        s += "s" + std::to_string(d);
    return s + "(" + names_[x.base] + ")";
}

SimplexRef SSet::parse_ref(const std::string& text) const
{
    if (auto g = find(text))
        return SimplexRef{*g, {}};
    Word w;
    size_t p = 0;
    while (p < text.size() && text[p] == 's') {
        size_t q = p + 1;
        while (q < text.size() && std::isdigit(static_cast<unsigned char>(text[q])))
            ++q;
        if (q == p + 1)
            break;
        w.push_back(std::stoi(text.substr(p + 1, q - p - 1)));
        p = q;
    }
    if (w.empty() || p >= text.size() || text[p] != '(' || text.back() != ')')
        throw std::invalid_argument("cannot parse simplex reference '" + text + "'");
    int g = index(text.substr(p + 1, text.size() - p - 2));
    Word n = normalize_word(w);
    if (n != w)
        throw std::invalid_argument("degeneracy word not in normal form in '" + text + "'");
    return SimplexRef{g, n};
}

std::vector<int> SSet::vertices(const SimplexRef& x) const
{
    int k = dim(x);
    std::vector<int> out;
    for (int j = 0; j <= k; ++j) {
        SimplexRef y = x;
        for (int i = k; i >= 0; --i)
            if (i != j)
                y = face(y, i);
        out.push_back(y.base);
    }
    return out;
}

void SSet::check_identities() const
{
    for (int g = 0; g < size(); ++g) {
        int k = dims_[g];
        SimplexRef x{g, {}};
        for (int j = 1; j <= k && k >= 2; ++j)
            for (int i = 0; i < j; ++i) {
                if (face(face(x, j), i) != face(face(x, i), j - 1))
                    throw std::logic_error("d" + std::to_string(i) + "d" + std::to_string(j) +
                                           " != d" + std::to_string(j - 1) + "d" +
                                           std::to_string(i) + " on '" + names_[g] + "'");
            }
    }
}

SimplexRef apply(const SMap& f, const SimplexRef& x)
{
    const SimplexRef& y = f.image.at(x.base);
    if (x.degens.empty())
        return y;
    Word w = x.degens;
    w.insert(w.end(), y.degens.begin(), y.degens.end());
    return SimplexRef{y.base, normalize_word(std::move(w))};
}

SMap compose(const SMap& g, const SMap& f)
{
    SMap out;
    out.image.reserve(f.image.size());
    for (const auto& y : f.image)
        out.image.push_back(apply(g, y));
    return out;
}

SMap identity_map(const SSet& a)
{
    SMap f;
    for (int g = 0; g < a.size(); ++g)
        f.image.push_back(SimplexRef{g, {}});
    return f;
}

bool is_valid_map(const SSet& a, const SSet& b, const SMap& f, std::string* why)
{
    auto fail = [&](const std::string& msg) {
        if (why)
            *why = msg;
        return false;
    };
    if (static_cast<int>(f.image.size()) != a.size())
        return fail("map table has wrong size");
    for (int g = 0; g < a.size(); ++g) {
        const auto& y = f.image[g];
        if (y.base < 0 || y.base >= b.size())
            return fail("image of '" + a.name(g) + "' is not a simplex of the target");
        if (b.dim(y) != a.dim(g))
            return fail("image of '" + a.name(g) + "' has wrong dimension");
        for (int i = 0; a.dim(g) > 0 && i <= a.dim(g); ++i)
            if (b.face(y, i) != apply(f, a.faces(g)[i]))
                return fail("map does not commute with d" + std::to_string(i) + " on '" +
                            a.name(g) + "'");
    }
    return true;
}

bool maps_equal(const SMap& f, const SMap& g)
{
    return f.image == g.image;
}

std::vector<SimplexRef> all_faces(const SSet& s, const SimplexRef& x)
{
    std::vector<SimplexRef> out;
    int k = s.dim(x);
    for (int i = 0; k > 0 && i <= k; ++i)
        out.push_back(s.face(x, i));
    return out;
}

Realized realize(const SimplicialData& data)
{
    Realized r{SSet(data.max_dim), {}};
    for (int k = 0; k <= data.max_dim && k < static_cast<int>(data.simplices.size()); ++k) {
        for (const auto& x : data.simplices[k]) {
            if (r.ref.count(x))
                throw std::logic_error("simplex key listed twice: " + x);
            bool degenerate = false;
            for (int j = 0; j < k && !degenerate; ++j) {
                std::string y = data.face(x, k, j);
                if (data.degen(y, k - 1, j) == x) {
                    auto it = r.ref.find(y);
                    if (it == r.ref.end())
                        throw std::logic_error("face of " + x + " missing from dimension " +
                                               std::to_string(k - 1));
                    r.ref[x] = r.set.degen(it->second, j);
                    degenerate = true;
                }
            }
            if (degenerate)
                continue;
            std::vector<SimplexRef> faces;
            for (int i = 0; k > 0 && i <= k; ++i) {
                std::string y = data.face(x, k, i);
                auto it = r.ref.find(y);
                if (it == r.ref.end())
                    throw std::logic_error("face d" + std::to_string(i) + " of " + x +
                                           " missing from dimension " + std::to_string(k - 1));
                faces.push_back(it->second);
            }
            int g = r.set.add(data.label ? data.label(x) : x, k, std::move(faces));
            r.ref[x] = SimplexRef{g, {}};
        }
    }
    return r;
}

std::string subset_name(const std::vector<int>& verts, int n)
{
    std::string s;
    for (size_t t = 0; t < verts.size(); ++t) {
        if (n >= 10 && t > 0)
            s += ",";
        s += std::to_string(verts[t]);
    }
    return s;
}

namespace {

SSet simplex_subcomplex(int n, int max_dim, const std::function<bool(const std::vector<int>&)>& keep)
{
    SSet s(max_dim);
    for (int k = 0; k <= std::min(n, max_dim); ++k) {
        // k+1 element subsets of [n], lexicographic
        std::vector<int> cur(k + 1);
        for (int t = 0; t <= k; ++t)
            cur[t] = t;
        while (true) {
            if (keep(cur)) {
                std::vector<SimplexRef> faces;
                for (int i = 0; k > 0 && i <= k; ++i) {
                    std::vector<int> f = cur;
                    f.erase(f.begin() + i);
                    faces.push_back(SimplexRef{s.index(subset_name(f, n)), {}});
                }
                s.add(subset_name(cur, n), k, std::move(faces));
            }
            int t = k;
            while (t >= 0 && cur[t] == n - k + t)
                --t;
            if (t < 0)
                break;
            ++cur[t];
            for (int u = t + 1; u <= k; ++u)
                cur[u] = cur[u - 1] + 1;
        }
    }
    return s;
}

}  // namespace

SSet standard_simplex(int n, int max_dim)
{
    if (n < 0)
        throw std::invalid_argument("negative simplex dimension");
    return simplex_subcomplex(n, max_dim, [](const std::vector<int>&) { return true; });
}

SSet horn(int n, int i, int max_dim)
{
    if (n < 1)
        throw std::invalid_argument("horns need n >= 1");
    if (i < 0 || i > n)
        throw std::invalid_argument("horn index " + std::to_string(i) + " out of range 0.." +
                                    std::to_string(n));
    return simplex_subcomplex(n, max_dim, [n, i](const std::vector<int>& v) {
        if (static_cast<int>(v.size()) == n + 1)
            return false;
        if (static_cast<int>(v.size()) == n && std::find(v.begin(), v.end(), i) == v.end())
            return false;
        return true;
    });
}

SSet boundary(int n, int max_dim)
{
    if (n < 1)
        throw std::invalid_argument("boundaries need n >= 1");
    return simplex_subcomplex(n, max_dim,
                              [n](const std::vector<int>& v) { return static_cast<int>(v.size()) <= n; });
}

SMap subcomplex_inclusion(const SSet& sub, const SSet& ambient)
{
    SMap f;
    for (int g = 0; g < sub.size(); ++g)
        f.image.push_back(SimplexRef{ambient.index(sub.name(g)), {}});
    std::string why;
    if (!is_valid_map(sub, ambient, f, &why))
        throw std::logic_error("not a subcomplex: " + why);
    return f;
}

namespace {

bool disjoint(const Word& a, const Word& b)
{
    for (int x : a)
        if (std::find(b.begin(), b.end(), x) != b.end())
            return false;
    return true;
}

int common_max(const Word& a, const Word& b)
{
    int best = -1;
    for (int x : a)
        if (std::find(b.begin(), b.end(), x) != b.end())
            best = std::max(best, x);
    return best;
}

}  // namespace

SimplexRef product_ref(const Product& p, const SSet& a, const SSet& b, const SimplexRef& x,
                       const SimplexRef& y)
{
    int j = common_max(x.degens, y.degens);
    if (j < 0) {
        auto it = p.index.find({x, y});
        if (it == p.index.end())
            throw std::out_of_range("pair outside the truncated product");
        return SimplexRef{it->second, {}};
    }
    SimplexRef inner = product_ref(p, a, b, a.face(x, j), b.face(y, j));
    return p.set.degen(inner, j);
}

Product product_with_projections(const SSet& a, const SSet& b)
{
    int top = std::min(a.max_dim(), b.max_dim());
    Product p{SSet(top), {}, {}, {}};
    for (int k = 0; k <= top; ++k) {
        auto xs = a.simplices(k);
        auto ys = b.simplices(k);
        for (const auto& x : xs)
            for (const auto& y : ys) {
                if (!disjoint(x.degens, y.degens))
                    continue;
                std::vector<SimplexRef> faces;
                for (int i = 0; k > 0 && i <= k; ++i)
                    faces.push_back(product_ref(p, a, b, a.face(x, i), b.face(y, i)));
                int g = p.set.add("(" + a.ref_name(x) + "," + b.ref_name(y) + ")", k, std::move(faces));
                p.index.emplace(std::vector<SimplexRef>{x, y}, g);
                p.p1.image.push_back(x);
                p.p2.image.push_back(y);
            }
    }
    return p;
}

SSet product(const SSet& a, const SSet& b)
{
    return product_with_projections(a, b).set;
}

std::string chain_name(const std::vector<std::string>& elements, const std::vector<int>& chain)
{
    if (chain.size() == 1)
        return elements[chain[0]];
    std::string s = "[";
    for (size_t t = 0; t < chain.size(); ++t) {
        if (t)
            s += "<";
        s += elements[chain[t]];
    }
    return s + "]";
}

SSet poset_nerve(const std::vector<std::string>& elements,
                 const std::function<bool(int, int)>& less_eq, int max_dim)
{
    SSet s(max_dim);
    int n = static_cast<int>(elements.size());
    std::vector<std::vector<int>> layer;
    for (int e = 0; e < n; ++e) {
        s.add(elements[e], 0, {});
        layer.push_back({e});
    }
    for (int k = 1; k <= max_dim && !layer.empty(); ++k) {
        std::vector<std::vector<int>> next;
        for (const auto& c : layer)
            for (int e = 0; e < n; ++e)
                if (e != c.back() && less_eq(c.back(), e)) {
                    auto d = c;
                    d.push_back(e);
                    std::vector<SimplexRef> faces;
                    for (int i = 0; i <= k; ++i) {
                        auto f = d;
                        f.erase(f.begin() + i);
                        faces.push_back(SimplexRef{s.index(chain_name(elements, f)), {}});
                    }
                    s.add(chain_name(elements, d), k, std::move(faces));
                    next.push_back(std::move(d));
                }
        layer = std::move(next);
    }
    return s;
}

SimplexRef poset_chain_ref(const SSet& nerve, const std::vector<std::string>& elements,
                           const std::vector<int>& weak_chain)
{
    std::vector<int> strict;
    Word w;
    for (size_t t = 0; t < weak_chain.size(); ++t) {
        if (t > 0 && weak_chain[t] == weak_chain[t - 1])
            w.push_back(static_cast<int>(t) - 1);
        else
            strict.push_back(weak_chain[t]);
    }
    std::reverse(w.begin(), w.end());
    return SimplexRef{nerve.index(chain_name(elements, strict)), w};
}

void FaceIndex::build(int k)
{
    if (all_.count(k))
        return;
    auto xs = s_.simplices(k);
    auto& idx = by_faces_[k];
    for (const auto& x : xs)
        idx[all_faces(s_, x)].push_back(x);
    all_[k] = std::move(xs);
}

const std::vector<SimplexRef>& FaceIndex::all(int k)
{
    build(k);
    return all_[k];
}

const std::vector<SimplexRef>& FaceIndex::with_faces(int k, const std::vector<SimplexRef>& faces)
{
    build(k);
    auto& idx = by_faces_[k];
    auto it = idx.find(faces);
    return it == idx.end() ? empty_ : it->second;
}

void for_each_map(const SSet& a, const SSet& b, const Constraints& fixed, const MapVisitor& visit,
                  Budget* budget)
{
    std::vector<int> order;
    for (int k = 0; k <= a.max_dim(); ++k)
        for (int g : a.nd(k))
            order.push_back(g);
    FaceIndex index(b);
    SMap cur;
    cur.image.assign(a.size(), SimplexRef{});
    bool stop = false;
    std::function<void(size_t)> rec = [&](size_t t) {
        if (stop)
            return;
        tick(budget);
        if (t == order.size()) {
            if (!visit(cur))
                stop = true;
            return;
        }
        int g = order[t];
        int k = a.dim(g);
        std::vector<SimplexRef> want;
        for (const auto& f : a.faces(g))
            want.push_back(apply(cur, f));
        const std::vector<SimplexRef>& cands = k == 0 ? index.all(0) : index.with_faces(k, want);
        auto it = fixed.find(g);
        for (const auto& y : cands) {
            if (it != fixed.end() && !(it->second == y))
                continue;
            cur.image[g] = y;
            rec(t + 1);
            if (stop)
                return;
        }
    };
    rec(0);
}

std::vector<SMap> enumerate_maps(const SSet& a, const SSet& b, const Constraints& fixed, Budget* budget)
{
    std::vector<SMap> out;
    for_each_map(
        a, b, fixed,
        [&](const SMap& f) {
            out.push_back(f);
            return true;
        },
        budget);
    return out;
}

namespace {

// Counts of nondegenerate cofaces by (dimension, face position).
std::vector<std::vector<int>> profiles(const SSet& s)
{
    int top = s.max_dim();
    std::vector<std::vector<int>> prof(s.size(), std::vector<int>((top + 2) * (top + 2), 0));
    for (int g = 0; g < s.size(); ++g) {
        int k = s.dim(g);
        for (int i = 0; k > 0 && i <= k; ++i) {
            const auto& f = s.faces(g)[i];
            if (!f.degenerate())
                ++prof[f.base][k * (top + 2) + i];
        }
    }
    return prof;
}

std::vector<std::vector<int>> edge_counts(const SSet& s)
{
    // [u][v] = number of nondegenerate edges u -> v
    int nv = s.size();
    std::vector<std::vector<int>> m(nv, std::vector<int>(nv, 0));
    for (int e : s.nd(1)) {
        int u = s.faces(e)[1].base, v = s.faces(e)[0].base;
        ++m[u][v];
    }
    return m;
}

}  // namespace

std::optional<SMap> is_isomorphic(const SSet& a, const SSet& b, Budget* budget)
{
    if (a.max_dim() != b.max_dim())
        return std::nullopt;
    for (int k = 0; k <= a.max_dim(); ++k)
        if (a.nd(k).size() != b.nd(k).size())
            return std::nullopt;
    auto pa = profiles(a), pb = profiles(b);
    {
        std::multiset<std::vector<int>> sa(pa.begin(), pa.end()), sb(pb.begin(), pb.end());
        if (sa != sb)
            return std::nullopt;
    }
    auto ea = edge_counts(a), eb = edge_counts(b);

    // vertices in breadth-first order so each new vertex meets assigned neighbours
    std::vector<int> order;
    {
        std::vector<char> seen(a.size(), 0);
        for (int s0 : a.nd(0)) {
            if (seen[s0])
                continue;
            std::deque<int> q{s0};
            seen[s0] = 1;
            while (!q.empty()) {
                int u = q.front();
                q.pop_front();
                order.push_back(u);
                for (int v : a.nd(0))
                    if (!seen[v] && (ea[u][v] || ea[v][u])) {
                        seen[v] = 1;
                        q.push_back(v);
                    }
            }
        }
        for (int k = 1; k <= a.max_dim(); ++k)
            for (int g : a.nd(k))
                order.push_back(g);
    }
    std::unordered_map<std::vector<SimplexRef>, std::vector<int>, RefVecHash> b_by_faces;
    for (int g = 0; g < b.size(); ++g)
        if (b.dim(g) > 0)
            b_by_faces[b.faces(g)].push_back(g);

    SMap cur;
    cur.image.assign(a.size(), SimplexRef{});
    std::vector<char> used(b.size(), 0);
    std::vector<int> assigned_vertices;
    std::optional<SMap> found;
    std::function<bool(size_t)> rec = [&](size_t t) -> bool {
        tick(budget);
        if (t == order.size()) {
            found = cur;
            return true;
        }
        int g = order[t];
        if (a.dim(g) == 0) {
            for (int h : b.nd(0)) {
                if (used[h] || pa[g] != pb[h])
                    continue;
                bool ok = true;
                for (int u : assigned_vertices) {
                    int fu = cur.image[u].base;
                    if (ea[u][g] != eb[fu][h] || ea[g][u] != eb[h][fu]) {
                        ok = false;
                        break;
                    }
                }
                if (!ok)
                    continue;
                used[h] = 1;
                cur.image[g] = SimplexRef{h, {}};
                assigned_vertices.push_back(g);
                if (rec(t + 1))
                    return true;
                assigned_vertices.pop_back();
                used[h] = 0;
            }
            return false;
        }
        std::vector<SimplexRef> want;
        for (const auto& f : a.faces(g))
            want.push_back(apply(cur, f));
        auto it = b_by_faces.find(want);
        if (it == b_by_faces.end())
            return false;
        for (int h : it->second) {
            if (used[h] || pa[g] != pb[h])
                continue;
            used[h] = 1;
            cur.image[g] = SimplexRef{h, {}};
            if (rec(t + 1))
                return true;
            used[h] = 0;
        }
        return false;
    };
    rec(0);
    return found;
}

}  // namespace simpcat
