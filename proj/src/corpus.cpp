#include "simpcat/corpus.hpp"

#include <stdexcept>

namespace simpcat {

FinCat klein_four()
{
    return monoid({"e", "a", "b", "c"}, {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}});
}

FinCat symmetric3()
{
    // permutations of {0,1,2} as images; composition (g.f)(x) = g(f(x))
    std::vector<std::vector<int>> perms{{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
    std::vector<std::string> names{"e", "t01", "t12", "t02", "r1", "r2"};
    std::vector<std::vector<int>> table(6, std::vector<int>(6));
    for (int g = 0; g < 6; ++g)
        for (int f = 0; f < 6; ++f) {
            std::vector<int> h{perms[g][perms[f][0]], perms[g][perms[f][1]], perms[g][perms[f][2]]};
            for (int k = 0; k < 6; ++k)
                if (perms[k] == h)
                    table[g][f] = k;
        }
    return monoid(names, table);
}

FinCat parallel_pair()
{
    CatBuilder b;
    b.object("a");
    b.object("b");
    b.arrow("f", "a", "b");
    b.arrow("g", "a", "b");
    return b.build();
}

FinCat span()
{
    CatBuilder b;
    b.object("a");
    b.object("b");
    b.object("c");
    b.arrow("f", "a", "b");
    b.arrow("g", "a", "c");
    return b.build();
}

namespace {

FinCat square(bool commuting)
{
    CatBuilder b;
    for (auto o : {"a", "b", "c", "d"})
        b.object(o);
    b.arrow("f", "a", "b");
    b.arrow("g", "a", "c");
    b.arrow("h", "b", "d");
    b.arrow("k", "c", "d");
    b.arrow("hf", "a", "d");
    if (commuting) {
        b.set("h", "f", "hf");
        b.set("k", "g", "hf");
    } else {
        b.arrow("kg", "a", "d");
        b.set("h", "f", "hf");
        b.set("k", "g", "kg");
    }
    return b.build();
}

}  // namespace

FinCat commuting_square()
{
    return square(true);
}

FinCat noncommuting_square()
{
    return square(false);
}

FinCat idempotent_monoid()
{
    return monoid({"1", "e"}, {{0, 1}, {1, 1}});
}

FinCat nilpotent_monoid()
{
    return monoid({"1", "n", "z"}, {{0, 1, 2}, {1, 2, 2}, {2, 2, 2}});
}

FinCat retraction()
{
    CatBuilder b;
    b.object("a");
    b.object("b");
    b.arrow("s", "a", "b");
    b.arrow("r", "b", "a");
    b.arrow("e", "b", "b");
    b.set("r", "s", "id_a");
    b.set("s", "r", "e");
    b.set("e", "s", "s");
    b.set("r", "e", "r");
    b.set("e", "e", "e");
    return b.build();
}

FinCat iso_plus_arrow()
{
    CatBuilder b;
    b.object("a");
    b.object("b");
    b.object("c");
    b.arrow("i", "a", "b");
    b.arrow("j", "b", "a");
    b.arrow("f", "b", "c");
    b.arrow("fi", "a", "c");
    b.set("j", "i", "id_a");
    b.set("i", "j", "id_b");
    b.set("f", "i", "fi");
    b.set("fi", "j", "f");
    return b.build();
}

std::vector<NamedCat> test_corpus()
{
    std::vector<NamedCat> out;
    for (int n = 0; n <= 4; ++n)
        out.push_back({"ord" + std::to_string(n), ordinal(n)});
    out.push_back({"disc2", discrete(2)});
    out.push_back({"disc3", discrete(3)});
    out.push_back({"z2", cyclic_group(2)});
    out.push_back({"z3", cyclic_group(3)});
    out.push_back({"z4", cyclic_group(4)});
    out.push_back({"klein", klein_four()});
    out.push_back({"s3", symmetric3()});
    out.push_back({"iso", free_iso()});
    out.push_back({"indisc3", indiscrete(3)});
    out.push_back({"z2+z2", coproduct(cyclic_group(2), cyclic_group(2))});
    out.push_back({"parallel", parallel_pair()});
    out.push_back({"span", span()});
    out.push_back({"square", commuting_square()});
    out.push_back({"square_nc", noncommuting_square()});
    out.push_back({"idempotent", idempotent_monoid()});
    out.push_back({"nilpotent", nilpotent_monoid()});
    out.push_back({"retraction", retraction()});
    out.push_back({"iso_arrow", iso_plus_arrow()});
    out.push_back({"ord1xz2", product(ordinal(1), cyclic_group(2))});
    return out;
}

FinCat corpus_cat(const std::string& name)
{
    for (auto& e : test_corpus())
        if (e.name == name)
            return e.cat;
    throw std::invalid_argument("unknown corpus category '" + name + "'");
}

}  // namespace simpcat
