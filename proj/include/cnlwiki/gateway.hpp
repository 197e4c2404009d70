#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "cnlwiki/error.hpp"
#include "cnlwiki/wiki.hpp"

namespace cnlwiki {

using Json = nlohmann::ordered_json;

Json to_json(const Prediction& p);
Json to_json(const Statement& s);
Json to_json(const WordEntry& e);
Json to_json(const AskResult& r);
Json to_json(const MembershipView& v);
Json to_json(const Error& e);

/// Errors: malformed-request.
WordEntry word_from_json(const Json& j);

struct ApiRequest {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
};

struct ApiResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

/// HTTP+JSON API over a wiki, independent of any transport.
class Api {
 public:
  explicit Api(Wiki& wiki) : wiki_(wiki) {}
  ApiResponse handle(const ApiRequest& request) const;

 private:
  Wiki& wiki_;
};

/// Blocks serving `api` until the process stops. Errors: port-in-use.
void serve(const Api& api, const std::string& host, int port);

}  // namespace cnlwiki
