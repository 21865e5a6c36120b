#include <cstdlib>

#include "httplib.h"
#include "rgss/catalog.hpp"
#include "rgss/error.hpp"

namespace rgss {

namespace {

struct SplitUrl {
    std::string origin;  // scheme://host[:port]
    std::string target;  // path and query
};

SplitUrl split_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw Error(ErrorCode::InvalidArgument, "TLE source URL lacks a scheme: " + url);
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

HttpElementSource::HttpElementSource(std::string url_template) : template_(std::move(url_template)) {
    if (template_.find("{norad}") == std::string::npos) {
        throw Error(ErrorCode::InvalidArgument, "TLE source template needs a {norad} placeholder");
    }
    split_url(template_);
}

std::string HttpElementSource::default_template() {
    if (const char* env = std::getenv("RGSS_TLE_SOURCE"); env && *env) return env;
    return "https://celestrak.org/NORAD/elements/gp.php?CATNR={norad}&FORMAT=TLE";
}

TwoLineElements HttpElementSource::fetch(int norad_id) {
    std::string url = template_;
    const std::string id = std::to_string(norad_id);
    for (auto pos = url.find("{norad}"); pos != std::string::npos; pos = url.find("{norad}")) {
        url.replace(pos, 7, id);
    }
    const SplitUrl parts = split_url(url);
    httplib::Client client(parts.origin);
    client.set_connection_timeout(10);
    client.set_read_timeout(20);
    client.set_follow_location(true);
    const auto res = client.Get(parts.target);
    if (!res) {
        throw Error(ErrorCode::SourceUnavailable, "GET " + url + ": " + httplib::to_string(res.error()));
    }
    if (res->status != 200) {
        throw Error(ErrorCode::SourceUnavailable, "GET " + url + ": HTTP " + std::to_string(res->status));
    }
    try {
        return parse_tle(res->body);
    } catch (const Error& e) {
        throw Error(ErrorCode::SourceUnavailable, "GET " + url + ": " + e.what());
    }
}

}  // namespace rgss
