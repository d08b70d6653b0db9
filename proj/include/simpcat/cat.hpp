#pragma once

#include "simpcat/simplicial.hpp"

#include <optional>
#include <string>
#include <vector>

namespace simpcat {

struct Arrow {
    std::string name;
    int dom = 0;
    int cod = 0;
};

// Finite category given by its full composition table.
struct FinCat {
    std::vector<std::string> objects;
    std::vector<Arrow> arrows;
    std::vector<int> identity;            // per object
    std::vector<std::vector<int>> comp;   // comp[g][f] = g.f, -1 when not composable

    int num_objects() const { return static_cast<int>(objects.size()); }
    int num_arrows() const { return static_cast<int>(arrows.size()); }
    int compose(int g, int f) const;
    bool is_identity(int f) const { return identity[arrows[f].dom] == f; }
    int object_index(const std::string& name) const;
    int arrow_index(const std::string& name) const;
    std::vector<int> hom(int x, int y) const;
    void validate() const;  // throws std::invalid_argument
};

// Incremental construction: identities are added with the objects, composites of
// non-identity pairs must all be supplied before build().
class CatBuilder {
public:
    int object(const std::string& name, const std::string& id_name = "");
    int arrow(const std::string& name, int dom, int cod);
    int arrow(const std::string& name, const std::string& dom, const std::string& cod);
    void set(int g, int f, int gf);
    void set(const std::string& g, const std::string& f, const std::string& gf);
    FinCat build() const;
    const FinCat& peek() const { return c_; }

private:
    FinCat c_;
};

FinCat ordinal(int n);                  // [n]; arrow i->j named "ij"
FinCat discrete(int n);
FinCat cyclic_group(int n);             // one object
FinCat free_iso();                      // two objects, one isomorphism
FinCat indiscrete(int n);               // codiscrete groupoid
FinCat monoid(const std::vector<std::string>& elements,
              const std::vector<std::vector<int>>& table);  // element 0 is the unit
FinCat poset(const std::vector<std::string>& elements, const std::vector<std::pair<int, int>>& less);
FinCat product(const FinCat& a, const FinCat& b);
FinCat coproduct(const FinCat& a, const FinCat& b);
FinCat opposite(const FinCat& a);

struct CatFunctor {
    std::vector<int> obj;
    std::vector<int> arr;
};

bool is_valid_functor(const FinCat& a, const FinCat& b, const CatFunctor& f, std::string* why = nullptr);
std::optional<CatFunctor> find_isomorphism(const FinCat& a, const FinCat& b, Budget* budget = nullptr);
bool is_groupoid(const FinCat& c);
std::optional<int> inverse(const FinCat& c, int f);

// Nerve with its chain bookkeeping.
struct NerveSet {
    SSet set;
    std::vector<int> object;              // nd vertex -> object (-1 for higher simplices)
    std::vector<std::vector<int>> chain;  // nd simplex -> its arrows, empty for vertices
    std::vector<int> vertex_of_object;
    bool prefixed = false;  // arrow labels carry "a:" when they clash with object names

    // Composable chain (identities allowed) to its normal-form reference.
    SimplexRef ref(const FinCat& c, const std::vector<int>& arrows) const;
    SimplexRef vertex(int obj) const { return SimplexRef{vertex_of_object[obj], {}}; }
    // Expands a reference back into arrows; for vertices returns {} and sets *obj.
    std::vector<int> arrows_of(const FinCat& c, const SimplexRef& x, int* obj = nullptr) const;
    int arrow_of_edge(const FinCat& c, const SimplexRef& e) const;
};

NerveSet nerve_data(const FinCat& c, int max_dim);
SSet nerve(const FinCat& c, int max_dim);
SMap nerve_map(const FinCat& a, const NerveSet& na, const FinCat& b, const NerveSet& nb,
               const CatFunctor& f);

struct SegalMap {
    int p = 2;
    std::vector<SimplexRef> domain;                 // all p-simplices
    std::vector<std::vector<SimplexRef>> codomain;  // composable edge tuples
    std::vector<int> image;                         // domain -> codomain index
};

std::vector<SimplexRef> spine(const SSet& a, const SimplexRef& x);
SegalMap segal_map(const SSet& a, int p);

struct SegalWitness {
    int p = 0;
    enum Kind { NotSurjective, NotInjective } kind = NotSurjective;
    std::vector<SimplexRef> tuple;     // unreached spine
    std::vector<SimplexRef> simplices; // two simplices with the same spine
};

struct SegalVerdict {
    bool ok = true;
    int max_p = 0;
    std::optional<SegalWitness> witness;
};

SegalVerdict is_strict_segal(const SSet& a, int max_p);
FinCat category_from_segal(const SSet& a);

}  // namespace simpcat
