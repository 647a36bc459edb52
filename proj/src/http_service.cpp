#include "flowguard/http_service.hpp"

#include "flowguard/error.hpp"
#include "httplib.h"

namespace flowguard {
namespace {

constexpr const char* kJson = "application/json";

void reply(httplib::Response& res, int status, const Json& body)
{
    res.status = status;
    res.set_content(body.dump(), kJson);
}

void reply_error(httplib::Response& res, ErrorCode code, const std::string& message)
{
    reply(res, http_status(code), Json{{"code", std::string(to_string(code))}, {"message", message}});
}

// Runs `fn`, mapping domain and JSON errors onto 4xx responses.
template <typename Fn>
void guarded(httplib::Response& res, Fn&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        reply_error(res, e.code(), e.what());
    } catch (const Json::exception& e) {
        reply_error(res, ErrorCode::InvalidArgument, e.what());
    }
}

Json parse_body(const httplib::Request& req)
{
    if (req.body.empty())
        return Json::object();
    try {
        return Json::parse(req.body);
    } catch (const Json::parse_error& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("request body is not JSON: ") + e.what());
    }
}

} // namespace

int http_status(ErrorCode code)
{
    switch (code) {
    case ErrorCode::UnknownSession:
    case ErrorCode::UnknownGraph:
    case ErrorCode::UnknownDictionary:
        return 404;
    case ErrorCode::SourceExhausted:
        return 409;
    case ErrorCode::MissingReferenceTime:
    case ErrorCode::UnknownLabel:
    case ErrorCode::UnknownState:
        return 422;
    case ErrorCode::Io:
        return 500;
    default:
        return 400;
    }
}

HttpService::HttpService(SessionManager& manager, std::string static_dir)
    : manager_(manager), static_dir_(std::move(static_dir)),
      server_(std::make_unique<httplib::Server>())
{
    install_routes();
}

HttpService::~HttpService() = default;

void HttpService::install_routes()
{
    auto& srv = *server_;

    srv.Post("/api/sessions", [this](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            const auto request = SessionRequest::from_json(parse_body(req));
            const auto id = manager_.create_session(request);
            Json trace = manager_.session_trace(id);
            reply(res, 201, trace);
        });
    });

    srv.Post(R"(/api/sessions/([^/]+)/observe)",
             [this](const httplib::Request& req, httplib::Response& res) {
                 guarded(res, [&] {
                     const Json body = parse_body(req);
                     if (!body.contains("label") || !body["label"].is_string())
                         throw Error(ErrorCode::InvalidArgument, "'label' must be a string");
                     if (!body.contains("duration_s") || !body["duration_s"].is_number())
                         throw Error(ErrorCode::InvalidArgument, "'duration_s' must be a number");
                     const auto obs = manager_.observe(req.matches[1], body["label"].get<std::string>(),
                                                       body["duration_s"].get<double>());
                     reply(res, 200, obs.to_json());
                 });
             });

    srv.Get(R"(/api/sessions/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] { reply(res, 200, manager_.session_trace(req.matches[1])); });
    });

    srv.Get(R"(/api/graphs/([^/]+)/successors)",
            [this](const httplib::Request& req, httplib::Response& res) {
                guarded(res, [&] {
                    if (!req.has_param("state"))
                        throw Error(ErrorCode::InvalidArgument, "missing 'state' query parameter");
                    reply(res, 200, to_json(manager_.successors(req.matches[1], req.get_param_value("state"))));
                });
            });

    srv.Get(R"(/api/graphs/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            res.status = 200;
            res.set_content(manager_.graph_document(req.matches[1]), kJson);
        });
    });

    if (!static_dir_.empty())
        srv.set_mount_point("/", static_dir_);
}

bool HttpService::listen(const std::string& host, int port)
{
    return server_->listen(host, port);
}

int HttpService::bind_any_port(const std::string& host)
{
    return server_->bind_to_any_port(host);
}

bool HttpService::listen_after_bind()
{
    return server_->listen_after_bind();
}

void HttpService::wait_until_ready() const
{
    server_->wait_until_ready();
}

void HttpService::stop()
{
    server_->stop();
}

} // namespace flowguard
