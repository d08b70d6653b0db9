#pragma once

#include "simpcat/cat.hpp"
#include "simpcat/quasi.hpp"

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace simpcat {

struct Composition {
    Product prod;  // hom(x,y) x hom(y,z)
    SMap map;      // prod.set -> hom(x,z)
};

// Simplicially enriched category, all homs truncated at max_dim. Missing homs are empty.
struct SCat {
    int max_dim = 0;
    std::vector<std::string> objects;
    std::map<std::pair<int, int>, SSet> homs;
    std::map<std::tuple<int, int, int>, Composition> comps;
    std::vector<SimplexRef> ids;  // vertex of hom(x,x)

    int num_objects() const { return static_cast<int>(objects.size()); }
    const SSet* hom(int x, int y) const;
    const SSet& hom_or_throw(int x, int y) const;
    // g.f for f in hom(x,y), g in hom(y,z) of equal dimension
    SimplexRef compose(int x, int y, int z, const SimplexRef& f, const SimplexRef& g) const;
    SimplexRef identity(int x, int k) const;  // id_x degenerated up to dimension k
    int object_index(const std::string& name) const;
};

// Builds the composition tables from keyed homs and a key-level composition rule.
struct KeyedHom {
    Realized r;
    std::unordered_map<SimplexRef, std::string, RefHash> key_of;
};
KeyedHom keyed(Realized r);

SCat build_scat(std::vector<std::string> objects, int max_dim,
                const std::map<std::pair<int, int>, KeyedHom>& homs,
                const std::function<std::string(int, int, int, const std::string&, const std::string&)>& compose,
                const std::vector<std::string>& id_keys);

struct SCatCheck {
    bool ok = true;
    std::string failure;
};
SCatCheck validate_scat(const SCat& b, int check_dim);

struct SFunctor {
    std::vector<int> obj;
    std::map<std::pair<int, int>, SMap> hom;
};
bool is_valid_sfunctor(const SCat& a, const SCat& b, const SFunctor& f, std::string* why = nullptr);

// Ordinary category with discrete homs.
SCat scat_from_fincat(const FinCat& c, int max_dim);

// Category enriched in finite categories, turned into an SCat by taking nerves.
struct Cat2 {
    std::vector<std::string> objects;
    std::map<std::pair<int, int>, FinCat> homs;
    std::map<std::tuple<int, int, int>, CatFunctor> comps;  // from product(hom(x,y), hom(y,z))
    std::vector<int> ids;                                   // object of hom(x,x)
};
void validate_cat2(const Cat2& c);
SCat scat_from_cat2(const Cat2& c, int max_dim);
Cat2 groupoid_enriched_fixture();  // two objects, every hom Z/2, composition by addition

// Bracketed strings. cuts[t] is the level t+1 cut set, positions 1..len-1, t = 0..dim-1.
struct ResSimplex {
    std::vector<int> leaves;
    std::vector<std::vector<int>> cuts;

    int dim() const { return static_cast<int>(cuts.size()); }
    bool operator==(const ResSimplex&) const = default;
};
std::string res_key(const ResSimplex& s);
ResSimplex res_parse(const std::string& key);
// Nested bracket label; leaf names come from leaf_name.
std::string res_label(const ResSimplex& s, const std::function<std::string(int)>& leaf_name);
// Face i; compose_group returns the composite leaf of a group or -1 for an identity.
ResSimplex res_face(const ResSimplex& s, int i,
                    const std::function<int(const std::vector<int>&)>& compose_group);
ResSimplex res_degen(const ResSimplex& s, int i);
ResSimplex res_concat(const ResSimplex& f, const ResSimplex& g);

// true when the category has no cycle of non-identity arrows
bool is_acyclic(const FinCat& c);
SCat s_resolution(const FinCat& a, int max_dim);
SCat s_ordinal(int n, int max_dim);
// Cosimplicial operator S[f]: S[m] -> S[n] for monotone f: [m] -> [n].
SFunctor s_ordinal_map(const std::vector<int>& f, const SCat& sm, const SCat& sn);
// Memoized S[n] with all homs truncated at max_dim.
const SCat& s_ordinal_cached(int n, int max_dim);
// Vertex of S[n](i,j) for the path through the given interior vertices.
SimplexRef s_ordinal_vertex(const SCat& sn, int i, int j, const std::vector<int>& interior);
// Interior vertices of a path label "(01)(13)" as a bit mask.
unsigned path_mask(const std::string& label);

// Simplices of a poset nerve (such as a cube) looked up by vertex sequence.
class VertexTupleIndex {
public:
    explicit VertexTupleIndex(const SSet& s);
    SimplexRef ref(const std::vector<int>& weak) const;

private:
    std::map<std::vector<int>, int> by_;
};

struct CubeFacet {
    int coordinate = 0;  // interior vertex k
    int value = 0;       // 0: passes through k, 1: skips k
    int source = -1;     // i with the facet the image of the i-th coface, -1 if none
    std::vector<std::string> corners;
};
// Facets of the cube S[n](0,n) and which coface map each comes from.
std::vector<CubeFacet> cube_facets(int n);

struct InterchangeSquare {
    std::vector<CubeFacet> facets;
    CubeFacet square;               // the facet not hit by any coface
    std::vector<std::string> edges; // its four edge labels
    std::string cell;               // its two nondegenerate triangles, joined by " "
};
InterchangeSquare interchange_square();

FinCat pi0_category(const SCat& b);
bool homotopic_in_hom(const SCat& b, int x, int y, const SimplexRef& f, const SimplexRef& g);

struct LocalKanVerdict {
    bool ok = true;
    int max_n = 0;
    int x = -1, y = -1;
    std::optional<HornInstance> witness;
};
LocalKanVerdict is_locally_kan(const SCat& b, int max_n, Budget* budget = nullptr);

// Levelwise resolution of the underlying simplicial category, then the diagonal.
SCat diag_resolution(const SCat& b, int max_dim);

}  // namespace simpcat
