#pragma once

#include <chrono>
#include <memory>
#include <semaphore>
#include <string>
#include <string_view>

#include "rgss/catalog.hpp"
#include "rgss/error.hpp"

namespace rgss {

/// JSON request handlers shared by the HTTP service and the CLI. Each takes
/// the request body and returns the response body, or throws rgss::Error.
/// Bodies are rendered deterministically (sorted keys, fixed indentation),
/// so equal inputs give byte-identical output.
namespace api {

std::string satellites(const Catalog& catalog);
std::string darktimes(const Catalog& catalog, std::string_view body);
std::string availability(const Catalog& catalog, std::string_view body);
std::string geofence(const Catalog& catalog, std::string_view body);
std::string coastal_filter(const Catalog& catalog, std::string_view body);
std::string mitigation(std::string_view body);

/// {"error": {"code": ..., "message": ...}}
std::string error_body(ErrorCode code, std::string_view message);

int http_status(ErrorCode code);

}  // namespace api

struct HttpResponse {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
};

struct ServiceOptions {
    /// Heavy requests running at once; the satellite list is never queued.
    std::ptrdiff_t max_concurrent_computations = 4;
    /// How long a heavy request waits for a slot before 503 busy.
    std::chrono::milliseconds queue_wait{2000};
};

/// Routes requests onto the handlers over an immutable catalog snapshot.
class Service {
public:
    explicit Service(std::shared_ptr<CatalogStore> store, ServiceOptions options = {});

    HttpResponse handle(std::string_view method, std::string_view path, std::string_view body);

    CatalogStore& store() { return *store_; }

private:
    std::shared_ptr<CatalogStore> store_;
    ServiceOptions options_;
    std::counting_semaphore<1024> slots_;
};

/// HTTP/1.1 front end for a Service.
class HttpServer {
public:
    explicit HttpServer(Service& service);
    ~HttpServer();

    /// `listen` is "host:port"; port 0 picks a free port. Returns the bound port.
    int bind(const std::string& listen);
    /// Serves until `stop` is called.
    void run();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace rgss
