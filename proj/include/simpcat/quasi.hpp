#pragma once

#include "simpcat/cat.hpp"

#include <optional>
#include <vector>

namespace simpcat {

// A map from the horn Lambda^i[n] (truncated at n) into some target.
struct HornInstance {
    int n = 0;
    int i = 0;
    SMap map;
};

const SSet& horn_complex(int n, int i);  // memoized, max_dim = n

// The n-1 faces the horn prescribes, indexed by j != i (slot i is left empty).
std::vector<SimplexRef> horn_faces(const HornInstance& h);

std::optional<SimplexRef> find_filler(const SSet& x, const HornInstance& h);

struct HornVerdict {
    bool ok = true;
    int max_n = 0;
    long long horns_checked = 0;
    std::optional<HornInstance> witness;
};

HornVerdict is_kan(const SSet& x, int max_n, Budget* budget = nullptr);
HornVerdict is_quasicategory(const SSet& x, int max_n, Budget* budget = nullptr);

struct OuterHornResult {
    bool lemma_applies = false;  // the relevant outer edge is invertible
    std::optional<SimplexRef> filler;
};

// h is a horn into nerve(c) with i in {0, n}.
OuterHornResult special_outer_horn_filler(const FinCat& c, const NerveSet& nerve,
                                          const HornInstance& h);
// Searches (n,0)-horns with f on the edge 01, 2 <= n <= max_n, for one without filler.
std::optional<HornInstance> non_invertibility_certificate(const FinCat& c, const NerveSet& nerve,
                                                          int f, int max_n, Budget* budget = nullptr);

// sphere: boundary(2, 2) -> a
std::optional<SimplexRef> is_commuting_sphere(const SSet& a, const SMap& sphere);
SMap make_sphere(const SSet& a, const SimplexRef& d0, const SimplexRef& d1, const SimplexRef& d2);

bool homotopic_edges(const SSet& a, const SimplexRef& f, const SimplexRef& g, Budget* budget = nullptr);

struct HoStats {
    long long fillers_checked = 0;
    std::vector<std::vector<SimplexRef>> classes;  // by arrow index of the result
};

FinCat ho_category(const SSet& a, HoStats* stats = nullptr, Budget* budget = nullptr);

}  // namespace simpcat
