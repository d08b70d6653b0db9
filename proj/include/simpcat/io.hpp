#pragma once

#include "simpcat/enriched.hpp"
#include "simpcat/hammock.hpp"
#include "simpcat/segal.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace simpcat {

using Json = nlohmann::json;

// Syntax errors carry a byte offset, schema errors a payload path.
struct DocumentError : std::runtime_error {
    explicit DocumentError(const std::string& what) : std::runtime_error(what) {}
};

struct Document {
    std::string kind;
    int format_version = 1;
    Json payload;
};

Document parse_document(const std::string& text);  // syntax and envelope only
Document read_document(const std::string& path);
std::string emit_document(const Document& d);       // canonical: sorted keys, two-space indent

Json sset_payload(const SSet& s);
SSet sset_from_payload(const Json& p, const std::string& path = "payload");
Json fincat_payload(const FinCat& c);
FinCat fincat_from_payload(const Json& p, const std::string& path = "payload");
Json scat_payload(const SCat& b);
SCat scat_from_payload(const Json& p, const std::string& path = "payload");
Json locpair_payload(const LocPair& p);
LocPair locpair_from_payload(const Json& p, const std::string& path = "payload");
Json hammock_payload(const LocPair& p, const Hammock& h);
Hammock hammock_from_payload(const Json& p, LocPair* pair, const std::string& path = "payload");
Json bisset_payload(const BiSSet& a);
BiSSet bisset_from_payload(const Json& p, const std::string& path = "payload");
Json nsset_payload(const NSSet& a);
NSSet nsset_from_payload(const Json& p, const std::string& path = "payload");
Json nsmap_payload(const NSMap& f);
NSMap nsmap_from_payload(const Json& p, const std::string& path = "payload");

// Parses the payload into its structure and emits it again.
Document canonical(const Document& d);

}  // namespace simpcat
