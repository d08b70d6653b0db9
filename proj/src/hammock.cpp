#include "simpcat/hammock.hpp"

#include <functional>
#include <stdexcept>

namespace simpcat {

void LocPair::validate() const
{
    c.validate();
    if (static_cast<int>(w.size()) != c.num_arrows())
        throw std::invalid_argument("weak equivalence mask has the wrong size");
    for (int x = 0; x < c.num_objects(); ++x)
        if (!w[c.identity[x]])
            throw std::invalid_argument("identity of " + c.objects[x] + " is not a weak equivalence");
    for (int g = 0; g < c.num_arrows(); ++g)
        for (int f = 0; f < c.num_arrows(); ++f)
            if (w[g] && w[f] && c.comp[g][f] >= 0 && !w[c.comp[g][f]])
                throw std::invalid_argument("weak equivalences are not closed under composition: " +
                                            c.arrows[g].name + "." + c.arrows[f].name);
}

LocPair loc_pair(FinCat c, const std::vector<std::string>& weq)
{
    LocPair p{std::move(c), {}};
    p.w.assign(p.c.num_arrows(), false);
    for (int x = 0; x < p.c.num_objects(); ++x)
        p.w[p.c.identity[x]] = true;
    for (const auto& n : weq)
        p.w[p.c.arrow_index(n)] = true;
    p.validate();
    return p;
}

LocPair loc_identities(FinCat c) { return loc_pair(std::move(c), {}); }

LocPair loc_isos(FinCat c)
{
    std::vector<std::string> isos;
    for (int f = 0; f < c.num_arrows(); ++f)
        if (inverse(c, f))
            isos.push_back(c.arrows[f].name);
    return loc_pair(std::move(c), isos);
}

namespace {

int src(const FinCat& c, Dir d, int f) { return d == Dir::Forward ? c.arrows[f].dom : c.arrows[f].cod; }
int dst(const FinCat& c, Dir d, int f) { return d == Dir::Forward ? c.arrows[f].cod : c.arrows[f].dom; }

// square of column j between rows i and i+1
bool commutes(const FinCat& c, const Hammock& h, int i, int j)
{
    int top = h.arr[i][j], bot = h.arr[i + 1][j];
    int vl = h.vert[i][j], vr = h.vert[i][j + 1];
    if (h.dir[j] == Dir::Forward)
        return c.compose(bot, vl) == c.compose(vr, top);
    return c.compose(vl, top) == c.compose(bot, vr);
}

bool identity_column(const FinCat& c, const Hammock& h, int j)
{
    for (int i = 0; i <= h.width; ++i)
        if (!c.is_identity(h.arr[i][j]))
            return false;
    return true;
}

void erase_node(Hammock& h, int node)
{
    for (auto& row : h.obj)
        row.erase(row.begin() + node);
    for (auto& row : h.vert)
        row.erase(row.begin() + node);
}

}  // namespace

bool hammock_valid(const LocPair& p, const Hammock& h, std::string* why)
{
    auto fail = [&](const std::string& m) {
        if (why)
            *why = m;
        return false;
    };
    const FinCat& c = p.c;
    int n = h.length(), k = h.width;
    if (k < 0 || static_cast<int>(h.obj.size()) != k + 1 || static_cast<int>(h.arr.size()) != k + 1 ||
        static_cast<int>(h.vert.size()) != k)
        return fail("row count does not match the width");
    for (int i = 0; i <= k; ++i) {
        if (static_cast<int>(h.obj[i].size()) != n + 1 || static_cast<int>(h.arr[i].size()) != n)
            return fail("row " + std::to_string(i) + " has the wrong length");
        if (h.obj[i][0] != h.X || h.obj[i][n] != h.Y)
            return fail("row " + std::to_string(i) + " does not run from X to Y");
        for (int j = 0; j < n; ++j) {
            int f = h.arr[i][j];
            if (f < 0 || f >= c.num_arrows())
                return fail("unknown arrow");
            if (src(c, h.dir[j], f) != h.obj[i][j] || dst(c, h.dir[j], f) != h.obj[i][j + 1])
                return fail("arrow " + c.arrows[f].name + " does not fit its column");
            if (h.dir[j] == Dir::Backward && !p.in_w(f))
                return fail("backward arrow " + c.arrows[f].name + " is not a weak equivalence");
        }
    }
    for (int i = 0; i < k; ++i) {
        if (static_cast<int>(h.vert[i].size()) != n + 1)
            return fail("vertical row has the wrong length");
        for (int j = 0; j <= n; ++j) {
            int v = h.vert[i][j];
            if (v < 0 || v >= c.num_arrows() || c.arrows[v].dom != h.obj[i][j] || c.arrows[v].cod != h.obj[i + 1][j])
                return fail("vertical arrow does not fit");
            if (!p.in_w(v))
                return fail("vertical arrow " + c.arrows[v].name + " is not a weak equivalence");
            if ((j == 0 || j == n) && !c.is_identity(v))
                return fail("vertical at an endpoint is not an identity");
        }
        for (int j = 0; j < n; ++j)
            if (!commutes(c, h, i, j))
                return fail("square " + std::to_string(i) + "," + std::to_string(j) + " does not commute");
    }
    return true;
}

bool is_reduced(const LocPair& p, const Hammock& h)
{
    return rewrites(p, h).empty();
}

Hammock identity_hammock(const LocPair& p, int x, int width)
{
    Hammock h;
    h.X = h.Y = x;
    h.width = width;
    h.obj.assign(width + 1, {x});
    h.arr.assign(width + 1, {});
    h.vert.assign(width, {p.c.identity[x]});
    return h;
}

Hammock zigzag(const LocPair& p, int x, const std::vector<std::pair<Dir, int>>& cols)
{
    Hammock h;
    h.X = x;
    h.obj.push_back({x});
    h.arr.push_back({});
    for (auto [d, f] : cols) {
        if (src(p.c, d, f) != h.obj[0].back())
            throw std::invalid_argument("zigzag arrow " + p.c.arrows[f].name + " does not continue the path");
        h.dir.push_back(d);
        h.arr[0].push_back(f);
        h.obj[0].push_back(dst(p.c, d, f));
    }
    h.Y = h.obj[0].back();
    std::string why;
    if (!hammock_valid(p, h, &why))
        throw std::invalid_argument(why);
    return h;
}

std::vector<Rewrite> rewrites(const LocPair& p, const Hammock& h)
{
    std::vector<Rewrite> out;
    for (int j = 0; j < h.length(); ++j) {
        if (identity_column(p.c, h, j))
            out.push_back(Rewrite{Rewrite::DropIdentityColumn, j});
        if (j + 1 < h.length() && h.dir[j] == h.dir[j + 1])
            out.push_back(Rewrite{Rewrite::MergeColumns, j});
    }
    return out;
}

Hammock apply_rewrite(const LocPair& p, const Hammock& h, const Rewrite& r)
{
    const FinCat& c = p.c;
    Hammock out = h;
    int j = r.column;
    if (r.kind == Rewrite::DropIdentityColumn) {
        for (auto& row : out.arr)
            row.erase(row.begin() + j);
        out.dir.erase(out.dir.begin() + j);
        // the two nodes agree; keep the outer one when the column touches Y
        erase_node(out, j + 1 == h.length() ? j : j + 1);
        if (j + 1 == h.length())
            for (int i = 0; i <= out.width; ++i)
                out.obj[i].back() = h.Y;
        return out;
    }
    for (int i = 0; i <= out.width; ++i) {
        int a = h.arr[i][j], b = h.arr[i][j + 1];
        int composite = h.dir[j] == Dir::Forward ? c.compose(b, a) : c.compose(a, b);
        if (h.dir[j] == Dir::Backward && !p.in_w(composite))
            throw std::logic_error("composite of weak equivalences left W");
        out.arr[i][j] = composite;
        out.arr[i].erase(out.arr[i].begin() + j + 1);
    }
    out.dir.erase(out.dir.begin() + j + 1);
    erase_node(out, j + 1);
    return out;
}

Hammock reduce_hammock(const LocPair& p, Hammock h)
{
    for (;;) {
        auto rs = rewrites(p, h);
        if (rs.empty())
            return h;
        int before = h.length();
        h = apply_rewrite(p, h, rs.front());
        if (h.length() >= before)
            throw std::logic_error("rewrite did not shorten the hammock");
    }
}

Hammock concat_hammocks(const LocPair& p, const Hammock& h1, const Hammock& h2)
{
    if (h1.Y != h2.X)
        throw std::invalid_argument("hammocks do not meet: " + p.c.objects[h1.Y] + " vs " + p.c.objects[h2.X]);
    if (h1.width != h2.width)
        throw std::invalid_argument("hammocks have different widths");
    Hammock h = h1;
    h.Y = h2.Y;
    h.dir.insert(h.dir.end(), h2.dir.begin(), h2.dir.end());
    for (int i = 0; i <= h.width; ++i) {
        h.obj[i].insert(h.obj[i].end(), h2.obj[i].begin() + 1, h2.obj[i].end());
        h.arr[i].insert(h.arr[i].end(), h2.arr[i].begin(), h2.arr[i].end());
    }
    for (int i = 0; i < h.width; ++i)
        h.vert[i].insert(h.vert[i].end(), h2.vert[i].begin() + 1, h2.vert[i].end());
    return h;
}

Hammock compose_hammocks(const LocPair& p, const Hammock& h1, const Hammock& h2)
{
    return reduce_hammock(p, concat_hammocks(p, h1, h2));
}

Hammock hammock_face(const LocPair& p, const Hammock& h, int i)
{
    if (h.width == 0 || i < 0 || i > h.width)
        throw std::invalid_argument("face index out of range");
    Hammock out = h;
    out.width = h.width - 1;
    out.obj.erase(out.obj.begin() + i);
    out.arr.erase(out.arr.begin() + i);
    if (i == 0) {
        out.vert.erase(out.vert.begin());
    } else if (i == h.width) {
        out.vert.pop_back();
    } else {
        for (int j = 0; j <= h.length(); ++j)
            out.vert[i - 1][j] = p.c.compose(h.vert[i][j], h.vert[i - 1][j]);
        out.vert.erase(out.vert.begin() + i);
    }
    return reduce_hammock(p, std::move(out));
}

Hammock hammock_degeneracy(const LocPair& p, const Hammock& h, int i)
{
    if (i < 0 || i > h.width)
        throw std::invalid_argument("degeneracy index out of range");
    Hammock out = h;
    out.width = h.width + 1;
    out.obj.insert(out.obj.begin() + i, h.obj[i]);
    out.arr.insert(out.arr.begin() + i, h.arr[i]);
    std::vector<int> ids;
    for (int x : h.obj[i])
        ids.push_back(p.c.identity[x]);
    out.vert.insert(out.vert.begin() + i, ids);
    return out;
}

std::vector<Hammock> enumerate_hammocks(const LocPair& p, int x, int y, int width, int max_len, Budget* budget,
                                        bool reduced_only)
{
    const FinCat& c = p.c;
    std::vector<Hammock> out;
    if (x == y)
        out.push_back(identity_hammock(p, x, width));
    if (max_len <= 0)
        return out;

    Hammock h;
    h.X = x;
    h.Y = y;
    h.width = width;
    h.obj.assign(width + 1, {x});
    h.arr.assign(width + 1, {});
    h.vert.assign(width, {c.identity[x]});

    // arrows usable in a column leaving object a
    auto options = [&](Dir d, int a) {
        std::vector<int> r;
        for (int f = 0; f < c.num_arrows(); ++f)
            if (src(c, d, f) == a && (d == Dir::Forward || p.in_w(f)))
                r.push_back(f);
        return r;
    };

    std::function<void()> extend;
    // fill row i of the new column, then its vertical to row i+1
    std::function<void(int)> row = [&](int i) {
        int j = h.length() - 1;
        Dir d = h.dir[j];
        if (i > width) {
            if (reduced_only && identity_column(c, h, j))
                return;
            bool at_y = true;
            for (int r = 0; r <= width; ++r)
                at_y = at_y && h.obj[r][j + 1] == y;
            for (int r = 0; r < width; ++r)
                at_y = at_y && c.is_identity(h.vert[r][j + 1]);
            if (at_y) {
                Hammock done = h;
                done.Y = y;
                out.push_back(std::move(done));
            }
            if (h.length() < max_len)
                extend();
            return;
        }
        for (int f : options(d, h.obj[i][j])) {
            tick(budget);
            h.arr[i].push_back(f);
            h.obj[i].push_back(dst(c, d, f));
            if (i == 0) {
                row(1);
            } else {
                // vertical from row i-1 to row i at the new node
                for (int v = 0; v < c.num_arrows(); ++v) {
                    if (!p.in_w(v) || c.arrows[v].dom != h.obj[i - 1][j + 1] || c.arrows[v].cod != h.obj[i][j + 1])
                        continue;
                    h.vert[i - 1].push_back(v);
                    if (commutes(c, h, i - 1, j))
                        row(i + 1);
                    h.vert[i - 1].pop_back();
                }
            }
            h.obj[i].pop_back();
            h.arr[i].pop_back();
        }
    };
    extend = [&]() {
        std::vector<Dir> dirs;
        if (h.length() == 0 || !reduced_only)
            dirs = {Dir::Forward, Dir::Backward};
        else
            dirs = {h.dir.back() == Dir::Forward ? Dir::Backward : Dir::Forward};
        for (Dir d : dirs) {
            h.dir.push_back(d);
            row(0);
            h.dir.pop_back();
        }
    };
    extend();
    return out;
}

FractionVerdict check_left_fractions(const LocPair& p, Budget* budget)
{
    const FinCat& c = p.c;
    int na = c.num_arrows();
    FractionVerdict v;
    // (i) u: X -> X' in W, f: X -> Y; want v: Y -> Y' in W and f': X' -> Y' with v f = f' u
    for (int u = 0; u < na; ++u) {
        if (!p.in_w(u))
            continue;
        for (int f = 0; f < na; ++f) {
            if (c.arrows[f].dom != c.arrows[u].dom)
                continue;
            bool found = false;
            for (int w = 0; w < na && !found; ++w) {
                if (!p.in_w(w) || c.arrows[w].dom != c.arrows[f].cod)
                    continue;
                for (int g = 0; g < na && !found; ++g) {
                    tick(budget);
                    if (c.arrows[g].dom == c.arrows[u].cod && c.arrows[g].cod == c.arrows[w].cod &&
                        c.compose(w, f) == c.compose(g, u))
                        found = true;
                }
            }
            if (!found) {
                v.ok = false;
                v.witness = FractionWitness{1, u, f, -1};
                return v;
            }
        }
    }
    // (ii) f, g: X -> Y and u in W with f u = g u; want v in W with v f = v g
    for (int u = 0; u < na; ++u) {
        if (!p.in_w(u))
            continue;
        for (int f = 0; f < na; ++f)
            for (int g = f + 1; g < na; ++g) {
                if (c.arrows[f].dom != c.arrows[u].cod || c.arrows[g].dom != c.arrows[f].dom ||
                    c.arrows[g].cod != c.arrows[f].cod || c.compose(f, u) != c.compose(g, u))
                    continue;
                bool found = false;
                for (int w = 0; w < na && !found; ++w) {
                    tick(budget);
                    found = p.in_w(w) && c.arrows[w].dom == c.arrows[f].cod && c.compose(w, f) == c.compose(w, g);
                }
                if (!found) {
                    v.ok = false;
                    v.witness = FractionWitness{2, u, f, g};
                    return v;
                }
            }
    }
    return v;
}

int left_bias_defect(const Hammock& h)
{
    int n = 0;
    for (int j = 0; j < h.length(); ++j) {
        if (h.dir[j] != Dir::Backward)
            continue;
        for (int t = j + 1; t < h.length(); ++t)
            if (h.dir[t] == Dir::Forward) {
                ++n;
                break;
            }
    }
    return n;
}

std::optional<Hammock> left_bias_step(const LocPair& p, const Hammock& h)
{
    if (h.width != 0)
        throw std::invalid_argument("left bias moves act on zigzags");
    const FinCat& c = p.c;
    int j = -1;
    for (int t = 0; t + 1 < h.length(); ++t)
        if (h.dir[t] == Dir::Backward && h.dir[t + 1] == Dir::Forward) {
            j = t;
            break;
        }
    if (j < 0)
        return std::nullopt;
    int w = h.arr[0][j], f = h.arr[0][j + 1];
    // complete the span C' <- ... : w' f = f' w with w' in W
    int wp = -1, fp = -1;
    for (int a = 0; a < c.num_arrows() && wp < 0; ++a) {
        if (!p.in_w(a) || c.arrows[a].dom != c.arrows[f].cod)
            continue;
        for (int b = 0; b < c.num_arrows(); ++b)
            if (c.arrows[b].dom == c.arrows[w].cod && c.arrows[b].cod == c.arrows[a].cod &&
                c.compose(a, f) == c.compose(b, w)) {
                wp = a;
                fp = b;
                break;
            }
    }
    if (wp < 0)
        return std::nullopt;

    Hammock top = h;
    bool appended = j + 2 == h.length();
    if (appended) {
        top.dir.push_back(Dir::Backward);
        top.arr[0].push_back(c.identity[h.Y]);
        top.obj[0].push_back(h.Y);
    }
    int n = top.length();
    Hammock out;
    out.X = h.X;
    out.Y = h.Y;
    out.width = 1;
    out.dir = top.dir;
    out.obj = {top.obj[0], top.obj[0]};
    out.arr = {top.arr[0], top.arr[0]};
    std::vector<int> vert;
    for (int t = 0; t <= n; ++t)
        vert.push_back(c.identity[top.obj[0][t]]);
    int before = top.obj[0][j];
    out.obj[1][j + 1] = before;
    out.arr[1][j] = c.identity[before];
    vert[j + 1] = w;
    out.obj[1][j + 2] = c.arrows[wp].cod;
    out.arr[1][j + 1] = fp;
    vert[j + 2] = wp;
    out.arr[1][j + 2] = c.compose(wp, top.arr[0][j + 2]);
    out.vert = {vert};
    std::string why;
    if (!hammock_valid(p, out, &why))
        throw std::logic_error("left bias move built an invalid hammock: " + why);
    return reduce_hammock(p, std::move(out));
}

std::string hammock_string(const LocPair& p, const Hammock& h)
{
    const FinCat& c = p.c;
    std::string s;
    for (int i = 0; i <= h.width; ++i) {
        if (i)
            s += " ; ";
        s += c.objects[h.obj[i][0]];
        for (int j = 0; j < h.length(); ++j) {
            const std::string& a = c.arrows[h.arr[i][j]].name;
            s += h.dir[j] == Dir::Forward ? " -" + a + "-> " : " <-" + a + "- ";
            s += c.objects[h.obj[i][j + 1]];
        }
    }
    for (int i = 0; i < h.width; ++i) {
        s += " | ";
        for (int j = 0; j <= h.length(); ++j)
            s += (j ? "," : "") + c.arrows[h.vert[i][j]].name;
    }
    return s;
}

}  // namespace simpcat
