#pragma once

#include "simpcat/cat.hpp"

#include <optional>
#include <string>
#include <vector>

namespace simpcat {

// A category with a wide subcategory of weak equivalences.
struct LocPair {
    FinCat c;
    std::vector<bool> w;  // per arrow

    bool in_w(int f) const { return w[f]; }
    void validate() const;  // throws std::invalid_argument
};

LocPair loc_pair(FinCat c, const std::vector<std::string>& weq);  // identities added
LocPair loc_identities(FinCat c);
LocPair loc_isos(FinCat c);

enum class Dir { Forward = 1, Backward = -1 };

// Rows 0..width of zigzags of the same shape. Node 0 is X and node n is Y in every row.
// Column j joins nodes j and j+1; a backward column points from node j+1 to node j.
// vert[i][j] goes from row i to row i+1 at node j.
struct Hammock {
    int X = 0, Y = 0;
    int width = 0;
    std::vector<Dir> dir;
    std::vector<std::vector<int>> obj;
    std::vector<std::vector<int>> arr;
    std::vector<std::vector<int>> vert;

    int length() const { return static_cast<int>(dir.size()); }
    auto operator<=>(const Hammock&) const = default;
    bool operator==(const Hammock&) const = default;
};

bool hammock_valid(const LocPair& p, const Hammock& h, std::string* why = nullptr);
bool is_reduced(const LocPair& p, const Hammock& h);
Hammock identity_hammock(const LocPair& p, int x, int width);
// Width-0 hammock from a zigzag: arrows with directions, starting at x.
Hammock zigzag(const LocPair& p, int x, const std::vector<std::pair<Dir, int>>& cols);

// One-step rewrites, in leftmost-first order.
struct Rewrite {
    enum Kind { DropIdentityColumn, MergeColumns } kind;
    int column;
};
std::vector<Rewrite> rewrites(const LocPair& p, const Hammock& h);
Hammock apply_rewrite(const LocPair& p, const Hammock& h, const Rewrite& r);
Hammock reduce_hammock(const LocPair& p, Hammock h);

// Joins at the middle node, whose verticals are identities; no reduction.
Hammock concat_hammocks(const LocPair& p, const Hammock& h1, const Hammock& h2);
Hammock compose_hammocks(const LocPair& p, const Hammock& h1, const Hammock& h2);
Hammock hammock_face(const LocPair& p, const Hammock& h, int i);
Hammock hammock_degeneracy(const LocPair& p, const Hammock& h, int i);

// Reduced hammocks of length <= max_len; with reduced_only false, every valid hammock.
std::vector<Hammock> enumerate_hammocks(const LocPair& p, int x, int y, int width, int max_len,
                                        Budget* budget = nullptr, bool reduced_only = true);

struct FractionWitness {
    int condition = 1;  // 1 or 2
    int u = -1, f = -1, g = -1;  // (i): u in W and f from the same source; (ii): f, g with fu = gu
};
struct FractionVerdict {
    bool ok = true;
    std::optional<FractionWitness> witness;
};
FractionVerdict check_left_fractions(const LocPair& p, Budget* budget = nullptr);

// Backward columns that have a forward column somewhere to their right.
int left_bias_defect(const Hammock& h);
// The width-1 hammock moving the leftmost backward-then-forward pair; nullopt if none applies.
std::optional<Hammock> left_bias_step(const LocPair& p, const Hammock& h);

std::string hammock_string(const LocPair& p, const Hammock& h);

}  // namespace simpcat
