#include <catch2/catch_amalgamated.hpp>

#include <atomic>
#include <thread>
#include <vector>

#include "litlink/service.hpp"
#include "litlink/synthetic.hpp"

using namespace litlink;

namespace {

const Engine& shared_engine() {
    static Engine engine = [] {
        SyntheticConfig cfg;
        cfg.num_papers = 120;
        cfg.num_articles = 30;
        auto data = generate_synthetic(cfg);
        return Engine(std::move(data.papers), std::move(data.alias_table), SearchConfig{});
    }();
    return engine;
}

nlohmann::json sample_request() {
    SyntheticConfig cfg;
    cfg.num_papers = 120;
    cfg.num_articles = 30;
    auto data = generate_synthetic(cfg);
    const NewsArticle& art = data.articles.front();
    nlohmann::json j;
    j["title"] = art.title;
    j["body"] = art.body;
    j["release_date"] = format_date(art.release_date);
    j["top_k"] = 3;
    return j;
}

}  // namespace

TEST_CASE("well-formed link requests return at most top_k hits", "[service]") {
    auto [status, body] = handle_link_request(shared_engine(), sample_request().dump());
    CHECK(status == 200);
    nlohmann::json j = nlohmann::json::parse(body);
    CHECK(j["schema_version"] == 1);
    REQUIRE(j["hits"].is_array());
    CHECK(j["hits"].size() <= 3);
    CHECK(j["hits"].size() >= 1);
    const auto& first = j["hits"][0];
    CHECK(first["rank"] == 1);
    CHECK(first.contains("paper_id"));
    CHECK(first.contains("final_score"));
    CHECK(first["field_scores"].contains("jo"));
}

TEST_CASE("missing or malformed fields produce 4xx naming the field", "[service]") {
    nlohmann::json req = sample_request();
    req.erase("release_date");
    auto [status, body] = handle_link_request(shared_engine(), req.dump());
    CHECK(status == 400);
    CHECK(body.find("release_date") != std::string::npos);

    auto [s2, b2] = handle_link_request(shared_engine(), "this is not json");
    CHECK(s2 == 400);
    CHECK(b2.find("error") != std::string::npos);

    nlohmann::json req3 = sample_request();
    req3["body"] = "";
    auto [s3, b3] = handle_link_request(shared_engine(), req3.dump());
    CHECK(s3 == 400);
    CHECK(b3.find("body") != std::string::npos);

    nlohmann::json req4 = sample_request();
    req4["bogus"] = 1;
    auto [s4, b4] = handle_link_request(shared_engine(), req4.dump());
    CHECK(s4 == 400);
    CHECK(b4.find("bogus") != std::string::npos);
}

TEST_CASE("an unmet threshold yields an empty hit list, not an error", "[service]") {
    nlohmann::json req = sample_request();
    req["threshold"] = 1e9;
    auto [status, body] = handle_link_request(shared_engine(), req.dump());
    CHECK(status == 200);
    nlohmann::json j = nlohmann::json::parse(body);
    CHECK(j["hits"].empty());
}

TEST_CASE("a request with no extractable metadata is a 422", "[service]") {
    nlohmann::json req;
    req["title"] = "";
    req["body"] = "nothing recognizable in this text at all.";
    req["release_date"] = "2020-06-01";
    req["kinds"] = {"au", "jo"};
    auto [status, body] = handle_link_request(shared_engine(), req.dump());
    CHECK(status == 422);
    CHECK(body.find("no extractable metadata") != std::string::npos);
}

TEST_CASE("the crossref-like backend is selectable per request", "[service]") {
    nlohmann::json req = sample_request();
    req["backend"] = "crossref-like";
    auto [status, body] = handle_link_request(shared_engine(), req.dump());
    CHECK(status == 200);
    nlohmann::json j = nlohmann::json::parse(body);
    for (const auto& hit : j["hits"]) {
        CHECK(hit["date_score"] == 1.0);  // hard window, no decay
    }
}

TEST_CASE("the service is stateless over HTTP and safe under concurrency", "[service]") {
    const Engine& engine = shared_engine();
    auto server = make_server(engine);
    int port = server->bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread server_thread([&] { server->listen_after_bind(); });
    server->wait_until_ready();

    std::string request_body = sample_request().dump();
    std::string reference;
    {
        httplib::Client client("127.0.0.1", port);
        auto res = client.Post("/link", request_body, "application/json");
        REQUIRE(res);
        REQUIRE(res->status == 200);
        reference = res->body;
    }

    std::atomic<int> mismatches{0};
    std::vector<std::thread> workers;
    for (int t = 0; t < 4; ++t) {
        workers.emplace_back([&] {
            httplib::Client client("127.0.0.1", port);
            for (int i = 0; i < 5; ++i) {
                auto res = client.Post("/link", request_body, "application/json");
                if (!res || res->status != 200 || res->body != reference) ++mismatches;
            }
        });
    }
    for (auto& w : workers) w.join();
    CHECK(mismatches == 0);

    server->stop();
    server_thread.join();
}
