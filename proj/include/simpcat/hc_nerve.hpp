#pragma once

#include "simpcat/enriched.hpp"

#include <string>
#include <vector>

namespace simpcat {

// An n-simplex of the homotopy coherent nerve: an S-functor S[n] -> b. The source is
// s_ordinal_cached(n, hom_dim); the cubes of S[n] have dimension n-1, so any hom_dim
// at least that gives the same simplices.
struct HcSimplex {
    int n = 0;
    int hom_dim = 0;
    SFunctor F;
};

std::vector<HcSimplex> hc_nerve_simplices(const SCat& b, int n, Budget* budget = nullptr, int hom_dim = -1);

// Precomposition with S[f] for monotone f: [m] -> [n].
HcSimplex hc_precompose(const HcSimplex& h, const std::vector<int>& f);
HcSimplex hc_face(const HcSimplex& h, int i);
HcSimplex hc_degen(const HcSimplex& h, int i);
std::string hc_key(const HcSimplex& h);
std::string hc_label(const SCat& b, const HcSimplex& h);

struct HcNerve {
    Realized nerve;
    std::vector<std::vector<HcSimplex>> simplices;  // per dimension, all of them
};
HcNerve hc_nerve(const SCat& b, int max_n, Budget* budget = nullptr);

struct HcQuasiVerdict {
    bool locally_kan = false;  // hypothesis of the theorem, up to max_n
    HornVerdict verdict;
    HcNerve nerve;
};
HcQuasiVerdict hc_nerve_is_quasi(const SCat& b, int max_n, Budget* budget = nullptr);

// F(sigma) for a weakly increasing vertex string of [n]: a map out of the cube
// S[L](0,L), L = sigma.size() - 1.
struct CubeMap {
    std::vector<int> sigma;
    SMap map;
};

struct CoherenceReport {
    std::vector<CubeMap> cubes;
    int checks = 0;
    std::vector<std::string> failures;
};

// Cubes of every string of length 1..max_len (default n) and conditions (i)-(v), with
// coordinates where value 0 means passing through the vertex.
CoherenceReport expand_coherence_data(const SCat& b, const HcSimplex& h, int max_len = -1);

}  // namespace simpcat
