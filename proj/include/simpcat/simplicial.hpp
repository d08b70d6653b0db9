#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace simpcat {

// Thrown when a search runs out of nodes.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

constexpr long long kDefaultBudget = 1000000;

struct Budget {
    long long limit = kDefaultBudget;
    long long used = 0;

    void tick(long long n = 1)
    {
        used += n;
        if (used > limit)
            throw BudgetExceeded("search budget of " + std::to_string(limit) + " nodes exhausted");
    }
};

inline void tick(Budget* b, long long n = 1)
{
    if (b)
        b->tick(n);
}

// Degeneracy word s_{i1} ... s_{ir}, outermost first. Normal form: strictly decreasing.
using Word = std::vector<int>;

Word normalize_word(Word w);

struct SimplexRef {
    int base = -1;
    Word degens;

    bool degenerate() const { return !degens.empty(); }
    auto operator<=>(const SimplexRef&) const = default;
    bool operator==(const SimplexRef&) const = default;
};

struct RefHash {
    size_t operator()(const SimplexRef& r) const noexcept;
};
struct RefVecHash {
    size_t operator()(const std::vector<SimplexRef>& v) const noexcept;
};

// Finite simplicial set, truncated at max_dim. Only nondegenerate simplices are stored;
// each carries its faces as normal-form references.
class SSet {
public:
    explicit SSet(int max_dim = 0) : max_dim_(max_dim) {}

    int max_dim() const { return max_dim_; }
    int add(std::string name, int dim, std::vector<SimplexRef> faces);

    int size() const { return static_cast<int>(names_.size()); }
    int dim(int g) const { return dims_[g]; }
    const std::string& name(int g) const { return names_[g]; }
    const std::vector<SimplexRef>& faces(int g) const { return faces_[g]; }
    const std::vector<int>& nd(int k) const;
    std::optional<int> find(const std::string& name) const;
    int index(const std::string& name) const;

    int dim(const SimplexRef& x) const { return dims_[x.base] + static_cast<int>(x.degens.size()); }
    SimplexRef face(const SimplexRef& x, int i) const;
    SimplexRef degen(const SimplexRef& x, int i) const;
    SimplexRef vertex_ref(int g) const { return SimplexRef{g, {}}; }

    // All k-simplices, degenerate ones included, in (base, word) order.
    std::vector<SimplexRef> simplices(int k) const;
    size_t count(int k) const;

    std::string ref_name(const SimplexRef& x) const;
    SimplexRef parse_ref(const std::string& text) const;

    // Vertex j of x is obtained by deleting every other vertex.
    std::vector<int> vertices(const SimplexRef& x) const;

    // Throws std::logic_error naming the first violated identity.
    void check_identities() const;

private:
    int max_dim_;
    std::vector<std::string> names_;
    std::vector<int> dims_;
    std::vector<std::vector<SimplexRef>> faces_;
    std::vector<std::vector<int>> nd_;
    std::unordered_map<std::string, int> index_;
};

// Image of every nondegenerate simplex of the source.
struct SMap {
    std::vector<SimplexRef> image;
};

SimplexRef apply(const SMap& f, const SimplexRef& x);
SMap compose(const SMap& g, const SMap& f);  // g after f
SMap identity_map(const SSet& a);
bool is_valid_map(const SSet& a, const SSet& b, const SMap& f, std::string* why = nullptr);
bool maps_equal(const SMap& f, const SMap& g);

// Generic realization of a finite simplicial object presented by keys. The simplices of
// each dimension must be closed under the supplied faces and degeneracies.
struct SimplicialData {
    int max_dim = 0;
    std::vector<std::vector<std::string>> simplices;
    std::function<std::string(const std::string&, int, int)> face;   // (x, dim, i)
    std::function<std::string(const std::string&, int, int)> degen;  // (x, dim, i)
    std::function<std::string(const std::string&)> label;             // optional nd naming
};

struct Realized {
    SSet set;
    std::unordered_map<std::string, SimplexRef> ref;
};

Realized realize(const SimplicialData& data);

// Generators.
std::string subset_name(const std::vector<int>& verts, int n);
SSet standard_simplex(int n, int max_dim);
SSet horn(int n, int i, int max_dim);
SSet boundary(int n, int max_dim);
SMap subcomplex_inclusion(const SSet& sub, const SSet& ambient);  // by matching names

struct Product {
    SSet set;
    SMap p1, p2;
    std::unordered_map<std::vector<SimplexRef>, int, RefVecHash> index;  // {x, y} -> nd
};

Product product_with_projections(const SSet& a, const SSet& b);
SSet product(const SSet& a, const SSet& b);
// Normal form of the pair (x, y) of equal-dimension simplices inside the product.
SimplexRef product_ref(const Product& p, const SSet& a, const SSet& b, const SimplexRef& x,
                       const SimplexRef& y);

// Nerve of a finite poset; nondegenerate simplices are strict chains.
SSet poset_nerve(const std::vector<std::string>& elements,
                 const std::function<bool(int, int)>& less_eq, int max_dim);
std::string chain_name(const std::vector<std::string>& elements, const std::vector<int>& chain);
// Weak chain to normal-form reference.
SimplexRef poset_chain_ref(const SSet& nerve, const std::vector<std::string>& elements,
                           const std::vector<int>& weak_chain);

// Search.
using Constraints = std::map<int, SimplexRef>;
using MapVisitor = std::function<bool(const SMap&)>;  // return false to stop

void for_each_map(const SSet& a, const SSet& b, const Constraints& fixed, const MapVisitor& visit,
                  Budget* budget = nullptr);
std::vector<SMap> enumerate_maps(const SSet& a, const SSet& b, const Constraints& fixed = {},
                                 Budget* budget = nullptr);
std::optional<SMap> is_isomorphic(const SSet& a, const SSet& b, Budget* budget = nullptr);

// Index of all k-simplices of a set keyed by their face tuples.
class FaceIndex {
public:
    explicit FaceIndex(const SSet& s) : s_(s) {}
    const std::vector<SimplexRef>& with_faces(int k, const std::vector<SimplexRef>& faces);
    const std::vector<SimplexRef>& all(int k);

private:
    void build(int k);
    const SSet& s_;
    std::map<int, std::vector<SimplexRef>> all_;
    std::map<int, std::unordered_map<std::vector<SimplexRef>, std::vector<SimplexRef>, RefVecHash>>
        by_faces_;
    std::vector<SimplexRef> empty_;
};

std::vector<SimplexRef> all_faces(const SSet& s, const SimplexRef& x);

}  // namespace simpcat
