#pragma once

#include "simpcat/enriched.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace simpcat {

// Bisimplicial set truncated at max_p horizontally; row p is the simplicial set A_{p/}.
// Row maps act contravariantly: face[p][i] goes from row p to row p-1.
struct BiSSet {
    std::vector<SSet> rows;
    std::vector<std::vector<SMap>> face;   // face[p][i], p >= 1, i = 0..p
    std::vector<std::vector<SMap>> degen;  // degen[p][i], p < max_p, i = 0..p

    int max_p() const { return static_cast<int>(rows.size()) - 1; }
};

struct BiSSetCheck {
    bool ok = true;
    std::string failure;
};
BiSSetCheck validate_bisset(const BiSSet& a);

// Row map A_{p/} -> A_{m/} for monotone f: [m] -> [p].
SMap row_map(const BiSSet& a, const std::vector<int>& f, int p);

// Every simplex of row 0 of positive dimension must be degenerate.
struct PrecatVerdict {
    bool ok = true;
    std::string offending;  // a nondegenerate simplex of row 0
    int dim = 0;
};
PrecatVerdict is_segal_precat(const BiSSet& a);

struct SegalPrecat {
    BiSSet a;
    std::vector<std::string> objects;  // vertices of row 0
};
SegalPrecat as_segal_precat(BiSSet a);  // throws std::invalid_argument

// Object of each simplex of row 0.
int object_of(const SegalPrecat& a, const SimplexRef& x);

// A_{1/} x_{A0} ... x_{A0} A_{1/} (p factors) with the Segal map into it.
struct FiberedPower {
    int p = 0;
    Realized set;
    SMap segal;               // A_{p/} -> set
    std::vector<SMap> proj;   // set -> A_{1/}, one per factor
};
FiberedPower fibered_power(const SegalPrecat& a, int p);

// Inverse of the Segal map with homotopies g.delta ~ id on A_{p/} x Delta[1] and
// delta.g ~ id on P x Delta[1]; vertex 0 of Delta[1] is the composite end.
struct SegalCertificate {
    int p = 2;
    SMap inverse;
    SMap homotopy_a;
    SMap homotopy_p;
};

enum class SegalKind { Strict, Certified, Unknown };
std::string to_string(SegalKind k);

struct SegalLevel {
    int p = 0;
    SegalKind kind = SegalKind::Unknown;
    int q = -1;             // level of the witness
    std::string witness;    // unreached tuple or two simplices with one image
    std::string rejected;   // failing identity of a supplied certificate
};

std::vector<SegalLevel> bisimplicial_segal_check(const SegalPrecat& a, int max_p,
                                                 const std::vector<SegalCertificate>& certificates = {});

FinCat ho_of_segal(const SegalPrecat& a, const std::vector<SegalCertificate>& certificates = {});

SegalPrecat scat_nerve(const SCat& b, int max_p);
// Vertically constant bisimplicial set on a simplicial set.
SegalPrecat constant_precat(const SSet& x, int max_p, int max_q);
// A precategory with Segal maps that are homotopy equivalences but not bijections:
// non-identity chains of c are thickened by the nerve of the indiscrete groupoid on two
// objects. Comes with certificates for p = 2..max_p.
struct FatPrecat {
    SegalPrecat a;
    std::vector<SegalCertificate> certificates;
};
FatPrecat fat_precategory(const FinCat& c, int max_p, int max_q);

// Gamma morphisms: theta from {1..s} to subsets of {1..t}.
struct GammaMap {
    int s = 0, t = 0;
    std::vector<std::vector<int>> theta;  // theta[a-1], sorted
    bool operator==(const GammaMap&) const = default;
};
void validate_gamma(const GammaMap& g);  // throws std::invalid_argument
GammaMap gamma_identity(int n);
GammaMap gamma_compose(const GammaMap& first, const GammaMap& second);
GammaMap delta_to_gamma(const std::vector<int>& f, int n);

// Multisimplicial set truncated at bound[d] in each direction; cells are named.
// maps[{M, d, kind, i}] lists, for each cell at M, its image: kind 0 is the face d_i
// in direction d, kind 1 the degeneracy s_i.
struct NSSet {
    int arity = 0;
    std::vector<int> bound;
    std::map<std::vector<int>, std::vector<std::string>> cells;
    std::map<std::tuple<std::vector<int>, int, int, int>, std::vector<int>> maps;

    const std::vector<std::string>& at(const std::vector<int>& m) const { return cells.at(m); }
};

struct NSMap {
    std::map<std::vector<int>, std::vector<int>> at;
};

void validate_nsset(const NSSet& a);  // throws std::invalid_argument
bool is_natural(const NSSet& a, const NSSet& b, const NSMap& f, std::string* why = nullptr);
NSSet nsset_from_set(const std::vector<std::string>& elements);
NSSet nsset_from_sset(const SSet& x);
NSSet nsset_from_bisset(const BiSSet& a);
NSMap nsmap_from_smap(const SSet& a, const SSet& b, const SMap& f);
NSMap identity_nsmap(const NSSet& a);
NSMap compose_nsmap(const NSMap& g, const NSMap& f);  // g after f

// The simplicial set in the last direction at M.
SSet nsset_slice(const NSSet& a, const std::vector<int>& m);
// Category of the slice at M, with cells at (M,0) and (M,1) as objects and arrows.
FinCat nsset_slice_category(const NSSet& a, const std::vector<int>& m);

struct Truncation {
    NSSet t;
    std::map<std::vector<int>, std::vector<int>> tau;  // cells at (M,0) -> classes at M
};
Truncation truncate(const NSSet& a);
NSMap truncate_map(const NSSet& a, const Truncation& ta, const NSSet& b, const Truncation& tb, const NSMap& f);

bool n_equivalence_check(const NSSet& a, const NSSet& b, const NSMap& f, int n, std::string* why = nullptr);

// Hom slice A_{1/}(x,y) one arity down, with its embedding into row 1.
NSSet hom_slice(const NSSet& a, int x, int y, std::map<std::vector<int>, std::vector<int>>* embed = nullptr);

// Horizontal composition in a 2-precategory (arity 2) from a chosen inverse gamma2 of the
// Segal map at p = 2 and a natural isomorphism alpha2: delta.gamma2 => id.
struct Gamma2 {
    std::map<std::pair<int, int>, int> obj;  // (f, g) at (1,0) -> cell at (2,0)
    std::map<std::pair<int, int>, int> arr;  // (a, b) at (1,1) -> cell at (2,1)
};
struct Alpha2 {
    std::map<std::pair<int, int>, std::pair<int, int>> at;  // (f, g) -> pair of cells at (1,1)
};
Gamma2 strict_gamma2(const NSSet& a);  // exact inverse; throws unless the Segal map is bijective
Alpha2 identity_alpha2(const NSSet& a, const Gamma2& g);

struct HorizontalResult {
    int sigma = -1, sigma2 = -1, epsilon = -1;  // cells of row 2
    std::pair<int, int> conjugated;             // alpha(f',g')^-1 (a x b) alpha(f,g)
    int composite = -1;                         // f #0 g, cell at (1,0)
    int composite_cell = -1;                    // a #0 b, cell at (1,1)
};
HorizontalResult horizontal_compose_2cells(const NSSet& a, const Gamma2& gamma2, const Alpha2& alpha2, int cell_a,
                                           int cell_b);

// Fixtures: a strict 2-category with a non-trivial hom category, and a one-object one whose
// hom is the indiscrete groupoid on two objects with addition mod 2.
Cat2 truncation_fixture();
Cat2 indiscrete_monoidal_fixture();
NSSet nsset_of_cat2(const Cat2& c);

}  // namespace simpcat
