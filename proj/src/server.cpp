#include <httplib.h>

#include "cnlwiki/gateway.hpp"

namespace cnlwiki {

void serve(const Api& api, const std::string& host, int port) {
  httplib::Server server;
  auto route = [&api](const httplib::Request& req, httplib::Response& res) {
    ApiRequest request{req.method, req.path, {}, req.body};
    for (const auto& [key, value] : req.params) request.query.emplace(key, value);
    const ApiResponse response = api.handle(request);
    res.status = response.status;
    res.set_content(response.body, response.content_type);
  };
  // Plain SO_REUSEADDR: without SO_REUSEPORT a busy port is reported.
  server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes), sizeof(yes));
  });
  const std::string pattern = "/api/.*";
  server.Get(pattern, route);
  server.Post(pattern, route);
  server.Delete(pattern, route);
  if (!server.bind_to_port(host, port)) {
    throw Error("port-in-use", "cannot bind " + host + ":" + std::to_string(port));
  }
  server.listen_after_bind();
}

}  // namespace cnlwiki
