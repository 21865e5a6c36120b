#include "httplib.h"
#include "rgss/service.hpp"

namespace rgss {

struct HttpServer::Impl {
    Service& service;
    httplib::Server server;

    explicit Impl(Service& s) : service(s) {}
};

HttpServer::HttpServer(Service& service) : impl_(std::make_unique<Impl>(service)) {
    auto route = [this](const httplib::Request& req, httplib::Response& res) {
        const HttpResponse r = impl_->service.handle(req.method, req.path, req.body);
        res.status = r.status;
        res.set_content(r.body, r.content_type);
    };
    for (const char* pattern : {R"(/.*)"}) {
        impl_->server.Get(pattern, route);
        impl_->server.Post(pattern, route);
        impl_->server.Put(pattern, route);
        impl_->server.Delete(pattern, route);
    }
    impl_->server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr) {
        res.status = 500;
        res.set_content(api::error_body(ErrorCode::Internal, "internal error"), "application/json");
    });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& listen) {
    const auto colon = listen.rfind(':');
    if (colon == std::string::npos) throw Error(ErrorCode::InvalidArgument, "listen address must be host:port");
    const std::string host = listen.substr(0, colon);
    int port = 0;
    try {
        port = std::stoi(listen.substr(colon + 1));
    } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidArgument, "bad port in listen address '" + listen + "'");
    }
    if (port < 0 || port > 65535) throw Error(ErrorCode::InvalidArgument, "port out of range");
    if (port == 0) {
        port = impl_->server.bind_to_any_port(host);
        if (port < 0) throw Error(ErrorCode::Io, "cannot bind " + listen);
    } else if (!impl_->server.bind_to_port(host, port)) {
        throw Error(ErrorCode::Io, "cannot bind " + listen);
    }
    return port;
}

void HttpServer::run() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
    if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

}  // namespace rgss
