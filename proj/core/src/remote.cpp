#include <atomic>
#include <regex>
#include <stdexcept>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "rdd/sparql.hpp"

namespace rdd {

namespace {

struct Endpoint {
  std::string scheme_host_port;
  std::string path;
};

Endpoint split_url(const std::string& url) {
  static const std::regex re(R"(^(https?://[^/?#]+)([^#]*)$)", std::regex::icase);
  std::smatch m;
  if (!std::regex_match(url, m, re)) throw std::invalid_argument("not an http(s) endpoint URL: " + url);
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (url.rfind("https", 0) == 0 || url.rfind("HTTPS", 0) == 0) {
    throw std::invalid_argument("https endpoints need a build with OpenSSL");
  }
#endif
  std::string path = m[2].str();
  return {m[1].str(), path.empty() ? "/" : path};
}

// One attempt; returns the boolean answer or throws with a description.
bool ask_once(httplib::Client& client, const std::string& path, const EndpointConfig& cfg, const AskQuery& q) {
  std::string target = path;
  if (cfg.default_graph) {
    target += (target.find('?') == std::string::npos ? "?" : "&");
    target += "default-graph-uri=" + httplib::detail::encode_query_param(*cfg.default_graph);
  }
  httplib::Headers headers{{"Accept", "application/sparql-results+json"}};
  auto res = client.Post(target, headers, q.text, "application/sparql-query");
  if (!res) throw std::runtime_error("request failed: " + httplib::to_string(res.error()));
  if (res->status < 200 || res->status >= 300) throw std::runtime_error("HTTP status " + std::to_string(res->status));
  auto doc = nlohmann::json::parse(res->body, nullptr, false);
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("boolean") || !doc["boolean"].is_boolean()) {
    throw std::runtime_error("malformed SPARQL results document");
  }
  return doc["boolean"].get<bool>();
}

}  // namespace

Report run_remote(const std::vector<AskQuery>& queries, const EndpointConfig& cfg) {
  if (cfg.timeout.count() <= 0) throw std::invalid_argument("timeout must be positive");
  Endpoint ep = split_url(cfg.url);
  auto start = std::chrono::steady_clock::now();

  struct Outcome {
    bool violated = false;
    std::optional<std::string> error;
  };
  std::vector<Outcome> outcomes(queries.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    httplib::Client client(ep.scheme_host_port);
    client.set_connection_timeout(cfg.timeout);
    client.set_read_timeout(cfg.timeout);
    client.set_write_timeout(cfg.timeout);
    if (cfg.bearer_token) client.set_bearer_token_auth(*cfg.bearer_token);
    if (cfg.basic_auth) client.set_basic_auth(cfg.basic_auth->first, cfg.basic_auth->second);
    for (std::size_t i = next++; i < queries.size(); i = next++) {
      for (int attempt = 0; attempt < 2; ++attempt) {
        try {
          outcomes[i] = {ask_once(client, ep.path, cfg, queries[i]), std::nullopt};
          break;
        } catch (const std::exception& e) {
          outcomes[i] = {false, e.what()};
        }
      }
    }
  };
  unsigned n = std::max(1u, std::min<unsigned>(cfg.parallel, static_cast<unsigned>(queries.size())));
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  Report r;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    if (outcomes[i].error) {
      r.errors.push_back({queries[i].constraint_id(), *outcomes[i].error});
    } else if (outcomes[i].violated) {
      r.violations.push_back({queries[i].constraint, {}, "endpoint reports a violation (ASK returned true)"});
    }
  }
  r.consistent = r.violations.empty();
  r.stats.constraints = queries.size();
  r.stats.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace rdd
