#pragma once

#include "simpcat/simplicial.hpp"

#include <string>
#include <vector>

namespace simpcat {

struct Letter {
    int gen = 0;
    int exp = 1;  // +1 or -1
    bool operator==(const Letter&) const = default;
    auto operator<=>(const Letter&) const = default;
};

// Path in a free groupoid, letters in traversal order.
struct GrpdWord {
    int dom = 0, cod = 0;
    std::vector<Letter> letters;
    bool operator==(const GrpdWord&) const = default;
};

struct Generator {
    SimplexRef simplex;  // in K_{n+1}
    std::string name;
    int dom = 0, cod = 0;
};

struct GrpdLevel {
    std::vector<Generator> gens;
    std::vector<std::vector<GrpdWord>> face;   // [gen][i], words one level down
    std::vector<std::vector<GrpdWord>> degen;  // [gen][i], words one level up; empty at the top
};

struct SimpGrpd {
    std::vector<std::string> objects;
    std::vector<GrpdLevel> levels;
    int max_dim() const { return static_cast<int>(levels.size()) - 1; }
};

SimpGrpd dk_groupoid(const SSet& k, int max_dim);
// The same groupoid with the untwisted face d0(x) = d1 x, for testing the checker.
SimpGrpd dk_untwisted(const SSet& k, int max_dim);

GrpdWord word_identity(int obj);
GrpdWord word_letter(const SimpGrpd& g, int dim, int gen, int exp = 1);
GrpdWord word_inverse(GrpdWord w);
GrpdWord word_concat(const GrpdWord& a, const GrpdWord& b);  // a then b
// Cancels to the reduced normal form; throws std::invalid_argument on a broken chain.
GrpdWord word_reduce(const SimpGrpd& g, int dim, GrpdWord w);
std::string word_string(const SimpGrpd& g, int dim, const GrpdWord& w);

// Homomorphic extensions of the structure maps.
GrpdWord word_face(const SimpGrpd& g, int dim, const GrpdWord& w, int i);
GrpdWord word_degen(const SimpGrpd& g, int dim, const GrpdWord& w, int i);

struct GrpdFailure {
    std::string identity;
    int dim = 0;
    std::string generator;
    std::string lhs, rhs;
};

struct GrpdReport {
    bool ok = true;
    int checks = 0;
    std::vector<GrpdFailure> failures;
};

GrpdReport verify_simplicial_groupoid(const SimpGrpd& g, int max_dim);

}  // namespace simpcat
