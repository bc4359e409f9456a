#pragma once

#include <memory>
#include <string>
#include <utility>

#include "httplib.h"
#include "json.hpp"

#include "litlink/linker.hpp"

namespace litlink {

/// Handles one POST /link body. Returns (HTTP status, response body).
/// Stateless: the response depends only on the request, snapshot, and
/// config, which is what makes concurrent requests trivially safe.
inline std::pair<int, std::string> handle_link_request(const Engine& engine,
                                                       const std::string& body) {
    auto error_body = [](const std::string& message) {
        nlohmann::json j;
        j["error"] = message;
        return j.dump() + "\n";
    };
    nlohmann::json j = nlohmann::json::parse(body, nullptr, false);
    if (j.is_discarded()) return {400, error_body("request body is not valid JSON")};
    try {
        LinkRequest req = parse_link_request(j);
        auto hits = engine.link(req);
        return {200, link_response_json(engine.index(), hits).dump() + "\n"};
    } catch (const InputError& e) {
        return {422, error_body(e.what())};
    } catch (const Error& e) {
        return {400, error_body(e.what())};
    }
}

/// Builds the single-endpoint HTTP service around an immutable engine.
inline std::unique_ptr<httplib::Server> make_server(const Engine& engine) {
    auto server = std::make_unique<httplib::Server>();
    server->Post("/link", [&engine](const httplib::Request& req, httplib::Response& res) {
        auto [status, body] = handle_link_request(engine, req.body);
        res.status = status;
        res.set_content(body, "application/json");
    });
    return server;
}

}  // namespace litlink
