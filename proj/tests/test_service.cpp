#include <doctest.h>

#include <httplib.h>

#include <thread>

#include "formcap/service.hpp"
#include "session.hpp"

using namespace formcap;
using nlohmann::json;

namespace {

json body_of(const Response& r) { return json::parse(r.body); }

}  // namespace

TEST_CASE("draft flow through the API") {
    CaptureEngine engine;
    Service service(engine);
    auto r = service.handle(session::get("/schema"));
    CHECK(r.status == 200);
    CHECK(body_of(r).at("fields").size() == 17);

    r = service.handle(session::post("/drafts"));
    CHECK(r.status == 201);
    const auto id = body_of(r).at("draft_id").get<std::string>();

    r = service.handle(session::post("/drafts/" + id + "/fields/City", {{"value", "Bellevue"}}));
    CHECK(r.status == 200);
    CHECK(body_of(r).at("menu") == json{{"recent", json::array()}, {"fixed", json::array()}, {"category", false}});

    r = service.handle(session::post("/drafts/" + id + "/finalize"));
    CHECK(r.status == 200);
    CHECK(body_of(r).at("seq") == 1);

    r = service.handle(session::get("/fields/City/menu"));
    CHECK(body_of(r).at("recent")[0] == "Bellevue");

    CHECK(service.handle(session::post("/drafts/" + id + "/finalize")).status == 409);
    CHECK(service.handle(session::post("/drafts/" + id + "/fields/City", {{"value", "x"}})).status == 409);
    CHECK(service.handle(session::post("/drafts/nope/finalize")).status == 404);
    CHECK(service.handle(session::get("/nowhere")).status == 404);
    CHECK(service.handle(session::get("/drafts")).status == 405);
}

TEST_CASE("IBM commit over the preload lists fillin events") {
    CaptureEngine engine;
    Service service(engine);
    for (const auto& rec : worst_case_records()) {
        const auto id = body_of(service.handle(session::post("/drafts"))).at("draft_id").get<std::string>();
        for (const auto& [field, v] : rec.values) {
            service.handle(session::post("/drafts/" + id + "/fields/" + field, {{"value", v.raw}}));
        }
        service.handle(session::post("/drafts/" + id + "/finalize"));
    }
    const auto id = body_of(service.handle(session::post("/drafts"))).at("draft_id").get<std::string>();
    service.handle(session::post("/drafts/" + id + "/fields/State", {{"value", "OR"}}));
    const auto r = service.handle(session::post("/drafts/" + id + "/fields/Company", {{"value", "IBM"}}));
    REQUIRE(r.status == 200);
    const auto events = body_of(r).at("fillin_events");
    CHECK(events.size() >= 5);
    for (const auto& e : events) {
        CHECK(e.at("target") != "State");
        CHECK(e.contains("source_seq"));
    }
}

TEST_CASE("error statuses") {
    CaptureEngine engine;
    Service service(engine);
    service.handle(session::post("/drafts"));
    CHECK(service.handle(session::post("/drafts/draft-1/fields/City", {{"value", ""}, {"source", "menu"}})).status == 422);
    CHECK(service.handle({"POST", "/drafts/draft-1/fields/City", {}, "[1,"}).status == 400);
    CHECK(service.handle(session::post("/drafts/draft-1/fields/City", {{"value", 5}})).status == 400);
    CHECK(service.handle(session::get("/analysis/coverage")).status == 422);
    CHECK(service.handle(session::get("/analysis/coverage", {{"field", "City"}})).status == 422);
    CHECK(service.handle(session::get("/analysis/coverage", {{"field", "Planet"}})).status == 404);
    CHECK(service.handle(session::get("/records", {{"limit", "-1"}})).status == 422);
    const auto r = service.handle(session::get("/fields/FirstName/menu"));
    CHECK(r.status == 404);
    CHECK(body_of(r).contains("error"));
}

TEST_CASE("simulate endpoint") {
    CaptureEngine engine;
    Service service(engine);
    const auto r = service.handle(session::post("/simulate", {{"conditions", json::array({"Null", "D"})}}));
    REQUIRE(r.status == 200);
    const auto j = body_of(r);
    CHECK(j.at("runs").size() == 20);
    CHECK(j.at("medians").size() == 2);
    CHECK(j.at("speedups").size() == 2);
}

TEST_CASE("session replay is deterministic") {
    const auto requests = session::script();
    CHECK(requests.size() == 50);
    std::vector<std::string> first;
    {
        CaptureEngine engine;
        Service service(engine);
        for (const auto& req : requests) first.push_back(service.handle(req).body);
    }
    CaptureEngine engine;
    Service service(engine);
    for (std::size_t i = 0; i < requests.size(); ++i) {
        INFO(requests[i].method << " " << requests[i].path);
        CHECK(service.handle(requests[i]).body == first[i]);
    }
}

TEST_CASE("http socket smoke test") {
    CaptureEngine engine;
    Service service(engine);
    httplib::Server server;
    service.mount(server);
    const int port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread worker([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    httplib::Client client("127.0.0.1", port);
    auto res = client.Post("/drafts", "", "application/json");
    REQUIRE(res);
    CHECK(res->status == 201);
    CHECK(res->get_header_value("Access-Control-Allow-Origin") == "*");
    const auto id = json::parse(res->body).at("draft_id").get<std::string>();
    res = client.Post("/drafts/" + id + "/fields/City", R"({"value":"Pullman","source":"written"})",
                      "application/json");
    REQUIRE(res);
    CHECK(res->status == 200);
    res = client.Post("/drafts/" + id + "/finalize", "", "application/json");
    REQUIRE(res);
    res = client.Get("/fields/City/menu");
    REQUIRE(res);
    CHECK(json::parse(res->body).at("recent")[0] == "Pullman");
    res = client.Get("/records?limit=1");
    REQUIRE(res);
    CHECK(json::parse(res->body).at("records").size() == 1);
    res = client.Get("/fields/FirstName/menu");
    REQUIRE(res);
    CHECK(res->status == 404);

    server.stop();
    worker.join();
}
