#pragma once

#include <memory>
#include <string>

#include "flowguard/session.hpp"

namespace httplib {
class Server;
}

namespace flowguard {

// HTTP+JSON front end over a SessionManager.
//
//   POST /api/sessions                          create, returns {id, ...}
//   POST /api/sessions/{id}/observe             {label, duration_s}
//   GET  /api/sessions/{id}                     full trace
//   GET  /api/graphs/{id}                       canonical graph document
//   GET  /api/graphs/{id}/successors?state=...  sorted transition row
//
// Errors are 4xx with {"code", "message"}. When a static directory is given
// it is served under "/".
class HttpService {
public:
    explicit HttpService(SessionManager& manager, std::string static_dir = {});
    ~HttpService();

    HttpService(const HttpService&) = delete;
    HttpService& operator=(const HttpService&) = delete;

    // Blocks until stop().
    bool listen(const std::string& host, int port);
    // Binds to an ephemeral port and returns it (or -1); follow with
    // listen_after_bind() on a worker thread.
    int bind_any_port(const std::string& host);
    bool listen_after_bind();
    void wait_until_ready() const;
    void stop();

private:
    void install_routes();

    SessionManager& manager_;
    std::string static_dir_;
    std::unique_ptr<httplib::Server> server_;
};

int http_status(ErrorCode code);

} // namespace flowguard
