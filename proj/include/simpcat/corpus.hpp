#pragma once

#include "simpcat/cat.hpp"

#include <string>
#include <vector>

namespace simpcat {

struct NamedCat {
    std::string name;
    FinCat cat;
};

// Small categories used by the tests and the acceptance run.
std::vector<NamedCat> test_corpus();
FinCat corpus_cat(const std::string& name);

FinCat klein_four();
FinCat symmetric3();
FinCat parallel_pair();
FinCat span();
FinCat commuting_square();
FinCat noncommuting_square();
FinCat idempotent_monoid();   // {1, e} with ee = e
FinCat nilpotent_monoid();    // {1, n, z} with nn = z absorbing
FinCat retraction();          // rs = id, sr idempotent
FinCat iso_plus_arrow();

}  // namespace simpcat
