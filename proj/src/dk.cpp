#include "simpcat/dk.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace simpcat {

namespace {

bool killed(const SSet& k, const SimplexRef& y)
{
    return k.degen(k.face(y, 1), 0) == y;
}

SimpGrpd build(const SSet& k, int max_dim, bool twisted)
{
    if (max_dim + 1 > k.max_dim())
        throw std::invalid_argument("groupoid dimension needs simplices one level higher");
    SimpGrpd g;
    std::map<int, int> obj_of_vertex;
    for (int v : k.nd(0)) {
        obj_of_vertex[v] = static_cast<int>(g.objects.size());
        g.objects.push_back(k.name(v));
    }
    auto vertex_obj = [&](const SimplexRef& y, int which) {
        return obj_of_vertex.at(k.vertices(y)[which]);
    };

    // generator index per level, keyed by simplex
    std::vector<std::map<SimplexRef, int>> index(max_dim + 1);
    bool short_names = true;
    for (int v : k.nd(0))
        short_names = short_names && k.name(v).size() == 1;
    for (int n = 0; n <= max_dim; ++n) {
        GrpdLevel lev;
        std::set<std::string> seen;
        bool unique = short_names;
        std::vector<std::string> vnames;
        for (const auto& y : k.simplices(n + 1)) {
            if (killed(k, y))
                continue;
            std::string s;
            for (int v : k.vertices(y))
                s += k.name(v);
            unique = unique && seen.insert(s).second;
            vnames.push_back(s);
            index[n].emplace(y, static_cast<int>(lev.gens.size()));
            lev.gens.push_back(Generator{y, "", vertex_obj(y, 0), vertex_obj(y, 1)});
        }
        for (size_t t = 0; t < lev.gens.size(); ++t)
            lev.gens[t].name = unique ? vnames[t] : k.ref_name(lev.gens[t].simplex);
        g.levels.push_back(std::move(lev));
    }

    // bar of a simplex of K_{n+1}: its generator or an identity
    auto bar = [&](int n, const SimplexRef& y) {
        if (killed(k, y))
            return word_identity(vertex_obj(y, 0));
        GrpdWord w;
        w.dom = vertex_obj(y, 0);
        w.cod = vertex_obj(y, 1);
        w.letters.push_back(Letter{index[n].at(y), 1});
        return w;
    };

    for (int n = 0; n <= max_dim; ++n) {
        auto& lev = g.levels[n];
        for (const auto& gen : lev.gens) {
            const SimplexRef& y = gen.simplex;
            std::vector<GrpdWord> faces;
            if (n > 0) {
                for (int i = 0; i <= n; ++i) {
                    if (i > 0) {
                        faces.push_back(bar(n - 1, k.face(y, i + 1)));
                    } else if (twisted) {
                        GrpdWord w = word_concat(bar(n - 1, k.face(y, 1)), word_inverse(bar(n - 1, k.face(y, 0))));
                        faces.push_back(word_reduce(g, n - 1, w));
                    } else {
                        faces.push_back(bar(n - 1, k.face(y, 1)));
                    }
                }
            }
            lev.face.push_back(std::move(faces));
            std::vector<GrpdWord> degens;
            if (n < max_dim)
                for (int i = 0; i <= n; ++i)
                    degens.push_back(bar(n + 1, k.degen(y, i + 1)));
            lev.degen.push_back(std::move(degens));
        }
    }
    return g;
}

void apply_letterwise(const SimpGrpd& g, const GrpdWord& w, int target_dim,
                      const std::vector<std::vector<GrpdWord>>& table, int i, GrpdWord& out)
{
    out.letters.clear();
    out.dom = w.dom;
    out.cod = w.dom;
    for (const auto& l : w.letters) {
        const GrpdWord& img = table[l.gen][i];
        out = word_concat(out, l.exp > 0 ? img : word_inverse(img));
    }
    out = word_reduce(g, target_dim, out);
}

}  // namespace

SimpGrpd dk_groupoid(const SSet& k, int max_dim) { return build(k, max_dim, true); }
SimpGrpd dk_untwisted(const SSet& k, int max_dim) { return build(k, max_dim, false); }

GrpdWord word_identity(int obj) { return GrpdWord{obj, obj, {}}; }

GrpdWord word_letter(const SimpGrpd& g, int dim, int gen, int exp)
{
    const auto& x = g.levels.at(dim).gens.at(gen);
    return exp > 0 ? GrpdWord{x.dom, x.cod, {Letter{gen, 1}}} : GrpdWord{x.cod, x.dom, {Letter{gen, -1}}};
}

GrpdWord word_inverse(GrpdWord w)
{
    std::swap(w.dom, w.cod);
    std::reverse(w.letters.begin(), w.letters.end());
    for (auto& l : w.letters)
        l.exp = -l.exp;
    return w;
}

GrpdWord word_concat(const GrpdWord& a, const GrpdWord& b)
{
    GrpdWord w = a;
    w.cod = b.cod;
    w.letters.insert(w.letters.end(), b.letters.begin(), b.letters.end());
    return w;
}

GrpdWord word_reduce(const SimpGrpd& g, int dim, GrpdWord w)
{
    const auto& gens = g.levels.at(dim).gens;
    int at = w.dom;
    for (const auto& l : w.letters) {
        if (l.gen < 0 || l.gen >= static_cast<int>(gens.size()) || (l.exp != 1 && l.exp != -1))
            throw std::invalid_argument("word has an unknown letter");
        const auto& x = gens[l.gen];
        int from = l.exp > 0 ? x.dom : x.cod;
        if (from != at)
            throw std::invalid_argument("word endpoints are inconsistent");
        at = l.exp > 0 ? x.cod : x.dom;
    }
    if (at != w.cod)
        throw std::invalid_argument("word endpoints are inconsistent");
    std::vector<Letter> st;
    for (const auto& l : w.letters) {
        if (!st.empty() && st.back().gen == l.gen && st.back().exp == -l.exp)
            st.pop_back();
        else
            st.push_back(l);
    }
    w.letters = std::move(st);
    return w;
}

std::string word_string(const SimpGrpd& g, int dim, const GrpdWord& w)
{
    if (w.letters.empty())
        return "id_" + g.objects[w.dom];
    std::string s;
    for (size_t t = 0; t < w.letters.size(); ++t) {
        if (t)
            s += ".";
        s += "(" + g.levels[dim].gens[w.letters[t].gen].name + ")";
        if (w.letters[t].exp < 0)
            s += "^-1";
    }
    return s;
}

GrpdWord word_face(const SimpGrpd& g, int dim, const GrpdWord& w, int i)
{
    if (dim == 0 || i < 0 || i > dim)
        throw std::invalid_argument("face index out of range");
    GrpdWord out;
    apply_letterwise(g, w, dim - 1, g.levels[dim].face, i, out);
    return out;
}

GrpdWord word_degen(const SimpGrpd& g, int dim, const GrpdWord& w, int i)
{
    if (dim >= g.max_dim() || i < 0 || i > dim)
        throw std::invalid_argument("degeneracy index out of range");
    GrpdWord out;
    apply_letterwise(g, w, dim + 1, g.levels[dim].degen, i, out);
    return out;
}

GrpdReport verify_simplicial_groupoid(const SimpGrpd& g, int max_dim)
{
    GrpdReport r;
    max_dim = std::min(max_dim, g.max_dim());
    auto check = [&](const std::string& id, int n, int gen, const GrpdWord& lhs, const GrpdWord& rhs, int dl,
                     int dr) {
        ++r.checks;
        if (lhs == rhs)
            return;
        r.ok = false;
        r.failures.push_back(GrpdFailure{id, n, g.levels[n].gens[gen].name, word_string(g, dl, lhs),
                                         word_string(g, dr, rhs)});
    };
    auto safe = [&](const std::string& id, int n, int gen, auto f) {
        try {
            f();
        } catch (const std::invalid_argument& e) {
            r.ok = false;
            r.failures.push_back(GrpdFailure{id, n, g.levels[n].gens[gen].name, e.what(), ""});
        }
    };
    for (int n = 0; n <= max_dim; ++n) {
        const auto& lev = g.levels[n];
        for (int x = 0; x < static_cast<int>(lev.gens.size()); ++x) {
            GrpdWord w = word_letter(g, n, x);
            const auto& gen = lev.gens[x];
            if (gen.dom < 0 || gen.dom >= static_cast<int>(g.objects.size()) || gen.cod < 0 ||
                gen.cod >= static_cast<int>(g.objects.size())) {
                r.ok = false;
                r.failures.push_back(GrpdFailure{"objects", n, gen.name, "", ""});
            }
            // structure maps keep the endpoints
            bool broken = false;
            for (int i = 0; i < static_cast<int>(lev.face[x].size()); ++i) {
                const GrpdWord& f = lev.face[x][i];
                ++r.checks;
                if (f.dom != gen.dom || f.cod != gen.cod) {
                    r.ok = false;
                    broken = true;
                    r.failures.push_back(GrpdFailure{"endpoints of d" + std::to_string(i), n, gen.name,
                                                     word_string(g, n - 1, f), g.objects[gen.dom] + "->" +
                                                                                   g.objects[gen.cod]});
                }
                safe("d" + std::to_string(i), n, x, [&] { word_reduce(g, n - 1, f); });
            }
            for (int i = 0; i < static_cast<int>(lev.degen[x].size()); ++i) {
                const GrpdWord& s = lev.degen[x][i];
                ++r.checks;
                if (s.dom != gen.dom || s.cod != gen.cod) {
                    r.ok = false;
                    broken = true;
                    r.failures.push_back(GrpdFailure{"endpoints of s" + std::to_string(i), n, gen.name,
                                                     word_string(g, n + 1, s), g.objects[gen.dom] + "->" +
                                                                                   g.objects[gen.cod]});
                }
            }
            if (broken)
                continue;
            safe("identities", n, x, [&] {
                // d_i d_j = d_{j-1} d_i, i < j
                if (n >= 2)
                    for (int j = 1; j <= n; ++j)
                        for (int i = 0; i < j; ++i)
                            check("d" + std::to_string(i) + "d" + std::to_string(j), n, x,
                                  word_face(g, n - 1, word_face(g, n, w, j), i),
                                  word_face(g, n - 1, word_face(g, n, w, i), j - 1), n - 2, n - 2);
                if (n < g.max_dim())
                    for (int j = 0; j <= n; ++j) {
                        GrpdWord s = word_degen(g, n, w, j);
                        for (int i = 0; i <= n + 1; ++i) {
                            GrpdWord lhs = word_face(g, n + 1, s, i);
                            GrpdWord rhs;
                            if (i < j)
                                rhs = word_degen(g, n - 1, word_face(g, n, w, i), j - 1);
                            else if (i == j || i == j + 1)
                                rhs = w;
                            else
                                rhs = word_degen(g, n - 1, word_face(g, n, w, i - 1), j);
                            check("d" + std::to_string(i) + "s" + std::to_string(j), n, x, lhs, rhs, n, n);
                        }
                    }
                if (n + 1 < g.max_dim())
                    for (int j = 0; j <= n; ++j)
                        for (int i = 0; i <= j; ++i)
                            check("s" + std::to_string(i) + "s" + std::to_string(j), n, x,
                                  word_degen(g, n + 1, word_degen(g, n, w, j), i),
                                  word_degen(g, n + 1, word_degen(g, n, w, i), j + 1), n + 2, n + 2);
            });
        }
    }
    return r;
}

}  // namespace simpcat
