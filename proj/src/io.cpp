#include "simpcat/io.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <set>
#include <sstream>

namespace simpcat {

namespace {

const std::set<std::string> kKinds{"sset", "fincat", "scat", "bisset", "nsset", "hammock", "locpair", "nsmap"};
const std::string kArrow = "→";    // x→y
const std::string kCompose = "∘";  // g∘f

[[noreturn]] void schema(const std::string& path, const std::string& what)
{
    throw DocumentError("schema error at " + path + ": " + what);
}

const Json& field(const Json& p, const std::string& key, const std::string& path)
{
    if (!p.is_object())
        schema(path, "expected an object");
    auto it = p.find(key);
    if (it == p.end())
        schema(path, "missing field '" + key + "'");
    return *it;
}

int int_field(const Json& p, const std::string& key, const std::string& path)
{
    const Json& v = field(p, key, path);
    if (!v.is_number_integer())
        schema(path + "." + key, "expected an integer");
    return v.get<int>();
}

std::string str(const Json& v, const std::string& path)
{
    if (!v.is_string())
        schema(path, "expected a string");
    return v.get<std::string>();
}

const Json& array(const Json& v, const std::string& path)
{
    if (!v.is_array())
        schema(path, "expected an array");
    return v;
}

const Json& object(const Json& v, const std::string& path)
{
    if (!v.is_object())
        schema(path, "expected an object");
    return v;
}

std::vector<std::string> strings(const Json& v, const std::string& path)
{
    std::vector<std::string> out;
    for (size_t t = 0; t < array(v, path).size(); ++t)
        out.push_back(str(v[t], path + "[" + std::to_string(t) + "]"));
    return out;
}

std::vector<int> int_list(const Json& v, const std::string& path)
{
    std::vector<int> out;
    for (size_t t = 0; t < array(v, path).size(); ++t) {
        if (!v[t].is_number_integer())
            schema(path + "[" + std::to_string(t) + "]", "expected an integer");
        out.push_back(v[t].get<int>());
    }
    return out;
}

std::vector<std::string> split_on(const std::string& s, const std::string& sep)
{
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        size_t at = s.find(sep, start);
        if (at == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, at - start));
        start = at + sep.size();
    }
}

SimplexRef ref_in(const SSet& s, const std::string& name, const std::string& path)
{
    try {
        return s.parse_ref(name);
    } catch (const std::exception&) {
        throw DocumentError("dangling reference at " + path + ": '" + name + "'");
    }
}

Json smap_table(const SSet& a, const SSet& b, const SMap& f)
{
    Json t = Json::object();
    for (int g = 0; g < a.size(); ++g)
        t[a.name(g)] = b.ref_name(f.image[g]);
    return t;
}

SMap smap_from_table(const SSet& a, const SSet& b, const Json& t, const std::string& path)
{
    object(t, path);
    SMap f;
    for (int g = 0; g < a.size(); ++g) {
        auto it = t.find(a.name(g));
        if (it == t.end())
            schema(path, "no image for '" + a.name(g) + "'");
        f.image.push_back(ref_in(b, str(*it, path + "." + a.name(g)), path + "." + a.name(g)));
    }
    if (t.size() != static_cast<size_t>(a.size()))
        schema(path, "table lists simplices outside the source");
    std::string why;
    if (!is_valid_map(a, b, f, &why))
        schema(path, why);
    return f;
}

std::string index_key(const std::vector<int>& m)
{
    std::string s;
    for (size_t t = 0; t < m.size(); ++t)
        s += (t ? "," : "") + std::to_string(m[t]);
    return s;
}

std::vector<int> parse_index(const std::string& s, const std::string& path)
{
    std::vector<int> out;
    if (s.empty())
        return out;
    try {
        for (const auto& t : split_on(s, ","))
            out.push_back(std::stoi(t));
    } catch (const std::exception&) {
        schema(path, "bad multi-index '" + s + "'");
    }
    return out;
}

}  // namespace

Document parse_document(const std::string& text)
{
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw DocumentError("syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    Document d;
    d.kind = str(field(j, "kind", "document"), "kind");
    if (!kKinds.count(d.kind))
        schema("kind", "unknown kind '" + d.kind + "'");
    d.format_version = int_field(j, "format_version", "document");
    if (d.format_version != 1)
        schema("format_version", "unsupported version " + std::to_string(d.format_version));
    d.payload = object(field(j, "payload", "document"), "payload");
    return d;
}

Document read_document(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DocumentError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str());
}

std::string emit_document(const Document& d)
{
    Json j = {{"kind", d.kind}, {"format_version", d.format_version}, {"payload", d.payload}};
    return j.dump(2) + "\n";
}

// ---- sset ----

Json sset_payload(const SSet& s)
{
    Json nd = Json::array(), faces = Json::object();
    for (int k = 0; k <= s.max_dim(); ++k) {
        std::vector<int> gens = s.nd(k);
        std::sort(gens.begin(), gens.end(), [&](int a, int b) { return s.name(a) < s.name(b); });
        Json row = Json::array();
        for (int g : gens) {
            row.push_back(s.name(g));
            if (k == 0)
                continue;
            Json fs = Json::array();
            for (const auto& f : s.faces(g))
                fs.push_back({{"base", s.name(f.base)}, {"degens", f.degens}});
            faces[s.name(g)] = fs;
        }
        nd.push_back(row);
    }
    return {{"max_dim", s.max_dim()}, {"nd", nd}, {"faces", faces}};
}

SSet sset_from_payload(const Json& p, const std::string& path)
{
    int max_dim = int_field(p, "max_dim", path);
    if (max_dim < 0)
        schema(path + ".max_dim", "negative");
    const Json& nd = array(field(p, "nd", path), path + ".nd");
    const Json& faces = object(field(p, "faces", path), path + ".faces");
    if (nd.size() != static_cast<size_t>(max_dim + 1))
        schema(path + ".nd", "expected one list per dimension 0.." + std::to_string(max_dim));
    SSet s(max_dim);
    size_t with_faces = 0;
    for (int k = 0; k <= max_dim; ++k) {
        auto ids = strings(nd[k], path + ".nd[" + std::to_string(k) + "]");
        for (const auto& id : ids) {
            std::vector<SimplexRef> fs;
            if (k > 0) {
                std::string fp = path + ".faces." + id;
                auto it = faces.find(id);
                if (it == faces.end())
                    schema(path + ".faces", "no faces for '" + id + "'");
                ++with_faces;
                for (size_t i = 0; i < array(*it, fp).size(); ++i) {
                    std::string ip = fp + "[" + std::to_string(i) + "]";
                    std::string base = str(field((*it)[i], "base", ip), ip + ".base");
                    auto g = s.find(base);
                    if (!g)
                        throw DocumentError("dangling reference at " + ip + ".base: '" + base + "'");
                    fs.push_back(SimplexRef{*g, int_list(field((*it)[i], "degens", ip), ip + ".degens")});
                }
            }
            try {
                s.add(id, k, std::move(fs));
            } catch (const std::invalid_argument& e) {
                schema(path + ".nd[" + std::to_string(k) + "]", e.what());
            }
        }
    }
    if (with_faces != faces.size())
        schema(path + ".faces", "faces listed for an unknown simplex");
    try {
        s.check_identities();
    } catch (const std::logic_error& e) {
        schema(path, e.what());
    }
    return s;
}

// ---- fincat ----

Json fincat_payload(const FinCat& c)
{
    Json arrows = Json::array(), ids = Json::array(), comp = Json::object();
    std::vector<Arrow> sorted = c.arrows;
    std::sort(sorted.begin(), sorted.end(), [](const Arrow& a, const Arrow& b) { return a.name < b.name; });
    for (const auto& a : sorted)
        arrows.push_back({{"id", a.name}, {"dom", c.objects[a.dom]}, {"cod", c.objects[a.cod]}});
    for (int x = 0; x < c.num_objects(); ++x)
        ids.push_back(c.arrows[c.identity[x]].name);
    for (int g = 0; g < c.num_arrows(); ++g)
        for (int f = 0; f < c.num_arrows(); ++f)
            if (c.comp[g][f] >= 0)
                comp[c.arrows[g].name + kCompose + c.arrows[f].name] = c.arrows[c.comp[g][f]].name;
    return {{"objects", c.objects}, {"arrows", arrows}, {"identities", ids}, {"comp", comp}};
}

FinCat fincat_from_payload(const Json& p, const std::string& path)
{
    FinCat c;
    c.objects = strings(field(p, "objects", path), path + ".objects");
    const Json& arrows = array(field(p, "arrows", path), path + ".arrows");
    auto obj = [&](const std::string& n, const std::string& at) {
        for (int x = 0; x < c.num_objects(); ++x)
            if (c.objects[x] == n)
                return x;
        throw DocumentError("dangling reference at " + at + ": '" + n + "'");
    };
    std::map<std::string, int> arrow_of;
    for (size_t t = 0; t < arrows.size(); ++t) {
        std::string ap = path + ".arrows[" + std::to_string(t) + "]";
        Arrow a{str(field(arrows[t], "id", ap), ap + ".id"), obj(str(field(arrows[t], "dom", ap), ap + ".dom"), ap + ".dom"),
                obj(str(field(arrows[t], "cod", ap), ap + ".cod"), ap + ".cod")};
        if (!arrow_of.emplace(a.name, static_cast<int>(t)).second)
            schema(ap + ".id", "duplicate arrow '" + a.name + "'");
        c.arrows.push_back(a);
    }
    auto arr = [&](const std::string& n, const std::string& at) {
        auto it = arrow_of.find(n);
        if (it == arrow_of.end())
            throw DocumentError("dangling reference at " + at + ": '" + n + "'");
        return it->second;
    };
    auto ids = strings(field(p, "identities", path), path + ".identities");
    if (ids.size() != c.objects.size())
        schema(path + ".identities", "expected one identity per object");
    for (size_t x = 0; x < ids.size(); ++x)
        c.identity.push_back(arr(ids[x], path + ".identities[" + std::to_string(x) + "]"));
    int n = c.num_arrows();
    c.comp.assign(n, std::vector<int>(n, -1));
    const Json& comp = object(field(p, "comp", path), path + ".comp");
    for (auto it = comp.begin(); it != comp.end(); ++it) {
        std::string cp = path + ".comp." + it.key();
        auto parts = split_on(it.key(), kCompose);
        if (parts.size() != 2)
            schema(cp, "key must have the form g" + kCompose + "f");
        int g = arr(parts[0], cp), f = arr(parts[1], cp);
        if (c.arrows[f].cod != c.arrows[g].dom)
            schema(cp, "arrows are not composable");
        c.comp[g][f] = arr(str(it.value(), cp), cp);
    }
    for (int g = 0; g < n; ++g)
        for (int f = 0; f < n; ++f)
            if (c.arrows[f].cod == c.arrows[g].dom && c.comp[g][f] < 0)
                schema(path + ".comp", "missing composite " + c.arrows[g].name + kCompose + c.arrows[f].name);
    try {
        c.validate();
    } catch (const std::invalid_argument& e) {
        schema(path, e.what());
    }
    return c;
}

// ---- scat ----

Json scat_payload(const SCat& b)
{
    Json homs = Json::object(), comp = Json::object(), ids = Json::object();
    for (const auto& [xy, h] : b.homs)
        homs[b.objects[xy.first] + kArrow + b.objects[xy.second]] = sset_payload(h);
    for (const auto& [xyz, c] : b.comps) {
        auto [x, y, z] = xyz;
        const SSet &hxy = *b.hom(x, y), &hyz = *b.hom(y, z), &hxz = *b.hom(x, z);
        std::vector<std::array<std::string, 3>> rows;
        for (int q = 0; q < c.prod.set.size(); ++q) {
            SimplexRef r{q, {}};
            rows.push_back({hxy.ref_name(apply(c.prod.p1, r)), hyz.ref_name(apply(c.prod.p2, r)),
                            hxz.ref_name(apply(c.map, r))});
        }
        std::sort(rows.begin(), rows.end());
        comp[b.objects[x] + kArrow + b.objects[y] + kArrow + b.objects[z]] = rows;
    }
    for (int x = 0; x < b.num_objects(); ++x)
        ids[b.objects[x]] = b.hom(x, x)->ref_name(b.ids[x]);
    return {{"max_dim", b.max_dim}, {"objects", b.objects}, {"homs", homs}, {"comp", comp}, {"ids", ids}};
}

SCat scat_from_payload(const Json& p, const std::string& path)
{
    SCat b;
    b.max_dim = int_field(p, "max_dim", path);
    b.objects = strings(field(p, "objects", path), path + ".objects");
    std::map<std::string, int> obj;
    for (int x = 0; x < b.num_objects(); ++x)
        if (!obj.emplace(b.objects[x], x).second)
            schema(path + ".objects", "duplicate object '" + b.objects[x] + "'");
    auto objects_of = [&](const std::string& key, size_t n, const std::string& at) {
        auto parts = split_on(key, kArrow);
        if (parts.size() != n)
            schema(at, "bad key '" + key + "'");
        std::vector<int> out;
        for (const auto& s : parts) {
            auto it = obj.find(s);
            if (it == obj.end())
                throw DocumentError("dangling reference at " + at + ": '" + s + "'");
            out.push_back(it->second);
        }
        return out;
    };
    const Json& homs = object(field(p, "homs", path), path + ".homs");
    for (auto it = homs.begin(); it != homs.end(); ++it) {
        std::string hp = path + ".homs." + it.key();
        auto xy = objects_of(it.key(), 2, hp);
        SSet h = sset_from_payload(it.value(), hp);
        if (h.max_dim() != b.max_dim)
            schema(hp, "hom truncated at a different level");
        b.homs.emplace(std::make_pair(xy[0], xy[1]), std::move(h));
    }
    const Json& comp = object(field(p, "comp", path), path + ".comp");
    for (auto it = comp.begin(); it != comp.end(); ++it) {
        std::string cp = path + ".comp." + it.key();
        auto xyz = objects_of(it.key(), 3, cp);
        const SSet *hxy = b.hom(xyz[0], xyz[1]), *hyz = b.hom(xyz[1], xyz[2]), *hxz = b.hom(xyz[0], xyz[2]);
        if (!hxy || !hyz || !hxz)
            schema(cp, "composition over a missing hom");
        std::map<std::pair<std::string, std::string>, std::string> table;
        const Json& rows = array(it.value(), cp);
        for (size_t t = 0; t < rows.size(); ++t) {
            auto row = strings(rows[t], cp + "[" + std::to_string(t) + "]");
            if (row.size() != 3)
                schema(cp + "[" + std::to_string(t) + "]", "expected [f, g, g.f]");
            table[{row[0], row[1]}] = row[2];
        }
        Composition c{product_with_projections(*hxy, *hyz), {}};
        for (int q = 0; q < c.prod.set.size(); ++q) {
            SimplexRef r{q, {}};
            std::string f = hxy->ref_name(apply(c.prod.p1, r)), g = hyz->ref_name(apply(c.prod.p2, r));
            auto t = table.find({f, g});
            if (t == table.end())
                schema(cp, "missing composite of (" + f + ", " + g + ")");
            c.map.image.push_back(ref_in(*hxz, t->second, cp));
        }
        if (table.size() != static_cast<size_t>(c.prod.set.size()))
            schema(cp, "table lists pairs outside the product");
        std::string why;
        if (!is_valid_map(c.prod.set, *hxz, c.map, &why))
            schema(cp, why);
        b.comps.emplace(std::make_tuple(xyz[0], xyz[1], xyz[2]), std::move(c));
    }
    const Json& ids = object(field(p, "ids", path), path + ".ids");
    for (int x = 0; x < b.num_objects(); ++x) {
        auto it = ids.find(b.objects[x]);
        if (it == ids.end() || !b.hom(x, x))
            schema(path + ".ids", "no identity for '" + b.objects[x] + "'");
        b.ids.push_back(ref_in(*b.hom(x, x), str(*it, path + ".ids"), path + ".ids." + b.objects[x]));
    }
    auto v = validate_scat(b, b.max_dim);
    if (!v.ok)
        schema(path, v.failure);
    return b;
}

// ---- locpair, hammock ----

Json locpair_payload(const LocPair& p)
{
    Json w = Json::array();
    for (int f = 0; f < p.c.num_arrows(); ++f)
        if (p.w[f] && !p.c.is_identity(f))
            w.push_back(p.c.arrows[f].name);
    return {{"category", fincat_payload(p.c)}, {"weq", w}};
}

LocPair locpair_from_payload(const Json& p, const std::string& path)
{
    FinCat c = fincat_from_payload(field(p, "category", path), path + ".category");
    auto w = strings(field(p, "weq", path), path + ".weq");
    for (const auto& n : w)
        if (!std::count_if(c.arrows.begin(), c.arrows.end(), [&](const Arrow& a) { return a.name == n; }))
            throw DocumentError("dangling reference at " + path + ".weq: '" + n + "'");
    try {
        return loc_pair(std::move(c), w);
    } catch (const std::invalid_argument& e) {
        schema(path + ".weq", e.what());
    }
}

Json hammock_payload(const LocPair& p, const Hammock& h)
{
    const FinCat& c = p.c;
    auto names = [&](const std::vector<std::vector<int>>& rows, bool objects) {
        Json out = Json::array();
        for (const auto& r : rows) {
            Json row = Json::array();
            for (int v : r)
                row.push_back(objects ? c.objects[v] : c.arrows[v].name);
            out.push_back(row);
        }
        return out;
    };
    Json dir = Json::array();
    for (Dir d : h.dir)
        dir.push_back(d == Dir::Forward ? "forward" : "backward");
    return {{"locpair", locpair_payload(p)}, {"X", c.objects[h.X]}, {"Y", c.objects[h.Y]},
            {"width", h.width}, {"dir", dir}, {"obj", names(h.obj, true)},
            {"arr", names(h.arr, false)}, {"vert", names(h.vert, false)}};
}

Hammock hammock_from_payload(const Json& p, LocPair* pair, const std::string& path)
{
    *pair = locpair_from_payload(field(p, "locpair", path), path + ".locpair");
    const FinCat& c = pair->c;
    auto lookup = [&](const std::string& n, bool objects, const std::string& at) {
        if (objects) {
            for (int x = 0; x < c.num_objects(); ++x)
                if (c.objects[x] == n)
                    return x;
        } else {
            for (int f = 0; f < c.num_arrows(); ++f)
                if (c.arrows[f].name == n)
                    return f;
        }
        throw DocumentError("dangling reference at " + at + ": '" + n + "'");
    };
    auto grid = [&](const std::string& key, bool objects) {
        std::vector<std::vector<int>> out;
        const Json& rows = array(field(p, key, path), path + "." + key);
        for (size_t i = 0; i < rows.size(); ++i) {
            std::string rp = path + "." + key + "[" + std::to_string(i) + "]";
            std::vector<int> row;
            for (const auto& n : strings(rows[i], rp))
                row.push_back(lookup(n, objects, rp));
            out.push_back(row);
        }
        return out;
    };
    Hammock h;
    h.X = lookup(str(field(p, "X", path), path + ".X"), true, path + ".X");
    h.Y = lookup(str(field(p, "Y", path), path + ".Y"), true, path + ".Y");
    h.width = int_field(p, "width", path);
    for (const auto& d : strings(field(p, "dir", path), path + ".dir")) {
        if (d != "forward" && d != "backward")
            schema(path + ".dir", "expected 'forward' or 'backward'");
        h.dir.push_back(d == "forward" ? Dir::Forward : Dir::Backward);
    }
    h.obj = grid("obj", true);
    h.arr = grid("arr", false);
    h.vert = grid("vert", false);
    std::string why;
    if (!hammock_valid(*pair, h, &why))
        schema(path, why);
    return h;
}

// ---- bisset ----

Json bisset_payload(const BiSSet& a)
{
    Json rows = Json::array(), face = Json::array(), degen = Json::array();
    for (int p = 0; p <= a.max_p(); ++p) {
        rows.push_back(sset_payload(a.rows[p]));
        Json fs = Json::array(), ds = Json::array();
        for (const auto& f : a.face[p])
            fs.push_back(smap_table(a.rows[p], a.rows[p - 1], f));
        for (const auto& d : a.degen[p])
            ds.push_back(smap_table(a.rows[p], a.rows[p + 1], d));
        face.push_back(fs);
        degen.push_back(ds);
    }
    return {{"rows", rows}, {"face", face}, {"degen", degen}};
}

BiSSet bisset_from_payload(const Json& p, const std::string& path)
{
    BiSSet a;
    const Json& rows = array(field(p, "rows", path), path + ".rows");
    for (size_t t = 0; t < rows.size(); ++t)
        a.rows.push_back(sset_from_payload(rows[t], path + ".rows[" + std::to_string(t) + "]"));
    int max_p = a.max_p();
    if (max_p < 0)
        schema(path + ".rows", "no rows");
    const Json& face = array(field(p, "face", path), path + ".face");
    const Json& degen = array(field(p, "degen", path), path + ".degen");
    if (face.size() != rows.size() || degen.size() != rows.size())
        schema(path, "expected one list of structure maps per row");
    a.face.resize(max_p + 1);
    a.degen.resize(max_p + 1);
    for (int q = 0; q <= max_p; ++q) {
        std::string fp = path + ".face[" + std::to_string(q) + "]";
        std::string dp = path + ".degen[" + std::to_string(q) + "]";
        if (array(face[q], fp).size() != static_cast<size_t>(q > 0 ? q + 1 : 0))
            schema(fp, "expected " + std::to_string(q > 0 ? q + 1 : 0) + " face maps");
        if (array(degen[q], dp).size() != static_cast<size_t>(q < max_p ? q + 1 : 0))
            schema(dp, "expected " + std::to_string(q < max_p ? q + 1 : 0) + " degeneracy maps");
        for (size_t i = 0; i < face[q].size(); ++i)
            a.face[q].push_back(smap_from_table(a.rows[q], a.rows[q - 1], face[q][i], fp + "[" + std::to_string(i) + "]"));
        for (size_t i = 0; i < degen[q].size(); ++i)
            a.degen[q].push_back(smap_from_table(a.rows[q], a.rows[q + 1], degen[q][i], dp + "[" + std::to_string(i) + "]"));
    }
    auto v = validate_bisset(a);
    if (!v.ok)
        schema(path, v.failure);
    return a;
}

// ---- nsset ----

Json nsset_payload(const NSSet& a)
{
    Json cells = Json::object(), maps = Json::object();
    for (const auto& [m, names] : a.cells)
        cells[index_key(m)] = names;
    for (const auto& [key, v] : a.maps) {
        const auto& [m, d, kind, i] = key;
        maps[index_key(m) + "|" + std::to_string(d) + "|" + (kind ? "s" : "d") + std::to_string(i)] = v;
    }
    return {{"arity", a.arity}, {"bound", a.bound}, {"cells", cells}, {"maps", maps}};
}

NSSet nsset_from_payload(const Json& p, const std::string& path)
{
    NSSet a;
    a.arity = int_field(p, "arity", path);
    a.bound = int_list(field(p, "bound", path), path + ".bound");
    const Json& cells = object(field(p, "cells", path), path + ".cells");
    for (auto it = cells.begin(); it != cells.end(); ++it) {
        std::string cp = path + ".cells." + it.key();
        a.cells[parse_index(it.key(), cp)] = strings(it.value(), cp);
    }
    const Json& maps = object(field(p, "maps", path), path + ".maps");
    for (auto it = maps.begin(); it != maps.end(); ++it) {
        std::string mp = path + ".maps." + it.key();
        auto parts = split_on(it.key(), "|");
        if (parts.size() != 3 || parts[2].size() < 2 || (parts[2][0] != 'd' && parts[2][0] != 's'))
            schema(mp, "key must have the form 'M|direction|d<i>' or 'M|direction|s<i>'");
        int d = 0, i = 0;
        try {
            d = std::stoi(parts[1]);
            i = std::stoi(parts[2].substr(1));
        } catch (const std::exception&) {
            schema(mp, "bad operator");
        }
        a.maps[{parse_index(parts[0], mp), d, parts[2][0] == 's' ? 1 : 0, i}] = int_list(it.value(), mp);
    }
    try {
        validate_nsset(a);
    } catch (const std::invalid_argument& e) {
        schema(path, e.what());
    }
    for (const auto& [key, v] : a.maps) {
        const auto& [m, d, kind, i] = key;
        if (d < 0 || d >= a.arity || i < 0 || i > m[d] || (kind == 0 && m[d] == 0) || (kind == 1 && m[d] == a.bound[d]))
            schema(path + ".maps", "operator outside the bounds at " + index_key(m));
    }
    return a;
}

Json nsmap_payload(const NSMap& f)
{
    Json j = Json::object();
    for (const auto& [m, v] : f.at)
        j[index_key(m)] = v;
    return j;
}

NSMap nsmap_from_payload(const Json& p, const std::string& path)
{
    NSMap f;
    object(p, path);
    for (auto it = p.begin(); it != p.end(); ++it)
        f.at[parse_index(it.key(), path + "." + it.key())] = int_list(it.value(), path + "." + it.key());
    return f;
}

Document canonical(const Document& d)
{
    Document out{d.kind, d.format_version, {}};
    if (d.kind == "sset")
        out.payload = sset_payload(sset_from_payload(d.payload));
    else if (d.kind == "fincat")
        out.payload = fincat_payload(fincat_from_payload(d.payload));
    else if (d.kind == "scat")
        out.payload = scat_payload(scat_from_payload(d.payload));
    else if (d.kind == "locpair")
        out.payload = locpair_payload(locpair_from_payload(d.payload));
    else if (d.kind == "hammock") {
        LocPair p;
        Hammock h = hammock_from_payload(d.payload, &p);
        out.payload = hammock_payload(p, h);
    } else if (d.kind == "bisset")
        out.payload = bisset_payload(bisset_from_payload(d.payload));
    else if (d.kind == "nsmap")
        out.payload = nsmap_payload(nsmap_from_payload(d.payload));
    else
        out.payload = nsset_payload(nsset_from_payload(d.payload));
    return out;
}

}  // namespace simpcat
