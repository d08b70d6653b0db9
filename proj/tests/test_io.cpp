#include <doctest.h>

#include "simpcat/cli.hpp"
#include "simpcat/corpus.hpp"
#include "simpcat/io.hpp"

#include <sstream>

using namespace simpcat;

namespace {

std::string reemit(const std::string& text)
{
    return emit_document(canonical(parse_document(text)));
}

std::string error_of(const std::string& text)
{
    try {
        canonical(parse_document(text));
    } catch (const DocumentError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("documents round-trip")
{
    std::vector<Document> docs{
        {"sset", 1, sset_payload(horn(3, 1, 3))},
        {"sset", 1, sset_payload(nerve(symmetric3(), 2))},
        {"fincat", 1, fincat_payload(retraction())},
        {"scat", 1, scat_payload(s_ordinal(3, 2))},
        {"locpair", 1, locpair_payload(loc_pair(commuting_square(), {"f", "k"}))},
        {"bisset", 1, bisset_payload(scat_nerve(scat_from_fincat(span(), 1), 2).a)},
        {"nsset", 1, nsset_payload(nsset_of_cat2(indiscrete_monoidal_fixture()))},
    };
    for (const auto& d : docs) {
        CAPTURE(d.kind);
        std::string text = emit_document(d);
        CHECK(reemit(text) == text);
    }
    // parsed structures agree with the originals
    SSet h = sset_from_payload(sset_payload(horn(3, 1, 3)));
    CHECK(is_isomorphic(h, horn(3, 1, 3)).has_value());
    FinCat r = fincat_from_payload(fincat_payload(retraction()));
    CHECK(find_isomorphism(r, retraction()).has_value());
}

TEST_CASE("every example re-emits unchanged")
{
    for (const auto& name : example_names()) {
        CAPTURE(name);
        std::ostringstream out, err;
        REQUIRE(run_command({"example", name}, out, err) == 0);
        CHECK(reemit(out.str()) == out.str());
    }
}

TEST_CASE("document errors name the place")
{
    CHECK(error_of("{\"kind\": ").find("syntax error at byte") == 0);
    CHECK(error_of("{\"kind\":\"nope\",\"format_version\":1,\"payload\":{}}") != "");
    std::string dangling =
        "{\"kind\":\"sset\",\"format_version\":1,\"payload\":{\"max_dim\":1,\"nd\":[[\"a\"],[\"e\"]],"
        "\"faces\":{\"e\":[{\"base\":\"zz\",\"degens\":[]},{\"base\":\"a\",\"degens\":[]}]}}}";
    CHECK(error_of(dangling) == "dangling reference at payload.faces.e[0].base: 'zz'");
    Json cat = fincat_payload(ordinal(2));
    cat["comp"].erase(cat["comp"].begin());
    std::string missing = emit_document({"fincat", 1, cat});
    CHECK(error_of(missing).find("missing composite") != std::string::npos);
}

TEST_CASE("cli exit codes")
{
    std::ostringstream out, err;
    CHECK(run_command({"no-such"}, out, err) == 2);
    CHECK(run_command({"example", "no-such"}, out, err) == 2);
    CHECK(run_command({"--help"}, out, err) == 0);
    CHECK(run_command({"gamma", "fromdelta", "--map", "0,2,1", "--n", "2"}, out, err) == 2);
    std::ostringstream g;
    CHECK(run_command({"gamma", "fromdelta", "--map", "0,0,2", "--n", "3"}, g, err) == 0);
    CHECK(Json::parse(g.str())["result"]["theta"] == Json::parse("[[],[1,2]]"));
}
