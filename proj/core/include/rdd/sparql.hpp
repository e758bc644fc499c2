#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rdd/checker.hpp"
#include "rdd/constraint.hpp"

namespace rdd {

// A SPARQL 1.1 ASK query that answers true exactly when its constraint is
// violated in the queried default graph. There is no other polarity.
struct AskQuery {
  Constraint constraint;
  std::string text;

  const std::string& constraint_id() const { return constraint.id; }
};

// IRIs are written as prefixed names when `prefixes` allows; only the
// prefixes actually used are declared.
AskQuery to_ask(const Constraint& c, const PrefixMap& prefixes = {});
std::vector<AskQuery> to_ask(const std::vector<Constraint>& cs, const PrefixMap& prefixes = {});

// "0001-MaxC.rq" for constraint c0001.
std::string bundle_file_name(const Constraint& c);

// Writes one .rq file per query plus manifest.json mapping file names to
// constraint ids. Creates `dir` if needed; returns the written paths.
std::vector<std::filesystem::path> write_bundle(const std::vector<AskQuery>& queries, const std::filesystem::path& dir);

struct EndpointConfig {
  std::string url;  // http(s)://host[:port]/path
  std::chrono::milliseconds timeout{10000};
  std::optional<std::string> bearer_token;
  std::optional<std::pair<std::string, std::string>> basic_auth;
  std::optional<std::string> default_graph;
  unsigned parallel = 4;  // concurrent requests
};

// Runs every query against the endpoint. A true answer becomes a
// witness-less violation; a query that fails twice (transport, HTTP status,
// or unreadable result) is recorded in Report::errors.
// Throws std::invalid_argument for an unusable configuration.
Report run_remote(const std::vector<AskQuery>& queries, const EndpointConfig& cfg);

}  // namespace rdd
