#include "formcap/service.hpp"

#include <charconv>
#include <sstream>

#include <httplib.h>

#include "formcap/analyzer.hpp"
#include "formcap/error.hpp"
#include "formcap/reports.hpp"
#include "formcap/simulator.hpp"
#include "formcap/synthetic.hpp"

namespace formcap {

namespace {

using nlohmann::json;

Response ok(const json& body, int status = 200) { return {status, body.dump()}; }

Response fail(int status, const std::string& message) {
    return {status, json{{"error", message}}.dump()};
}

std::vector<std::string> split_path(const std::string& path) {
    std::vector<std::string> parts;
    std::size_t i = 0;
    while (i < path.size()) {
        if (path[i] == '/') {
            ++i;
            continue;
        }
        auto j = path.find('/', i);
        if (j == std::string::npos) j = path.size();
        parts.push_back(path.substr(i, j - i));
        i = j;
    }
    return parts;
}

const std::string* query_param(const Request& r, const std::string& key) {
    auto it = r.query.find(key);
    return it == r.query.end() || it->second.empty() ? nullptr : &it->second;
}

double query_double(const Request& r, const std::string& key, double fallback) {
    const auto* text = query_param(r, key);
    if (!text) return fallback;
    std::size_t used = 0;
    double value = 0;
    try {
        value = std::stod(*text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text->size()) throw Error(ErrorCode::invalid_argument, key + " must be a number");
    return value;
}

std::size_t query_size(const Request& r, const std::string& key, std::size_t fallback) {
    const auto* text = query_param(r, key);
    if (!text) return fallback;
    std::size_t value = 0;
    auto [end, ec] = std::from_chars(text->data(), text->data() + text->size(), value);
    if (ec != std::errc() || end != text->data() + text->size()) {
        throw Error(ErrorCode::invalid_argument, key + " must be a non-negative integer");
    }
    return value;
}

json parse_body(const Request& r) {
    if (r.body.empty()) return json::object();
    auto j = json::parse(r.body, nullptr, false);
    if (j.is_discarded()) throw Error(ErrorCode::parse, "request body is not valid JSON");
    if (!j.is_object()) throw Error(ErrorCode::parse, "request body must be a JSON object");
    return j;
}

json simulate(const CaptureEngine& engine, const json& body) {
    std::vector<Condition> conditions;
    if (!body.contains("conditions") || body.at("conditions").is_string()) {
        conditions = parse_conditions(body.value("conditions", std::string("all")));
    } else {
        for (const auto& name : body.at("conditions")) {
            conditions.push_back(condition_preset(name.get<std::string>()));
        }
    }
    if (conditions.empty()) throw Error(ErrorCode::invalid_argument, "no conditions");

    ExperimentOptions options;
    options.repeats = body.value("repeats", 2);
    options.seed = body.value("seed", std::uint64_t{1});

    CostModel cost = CostModel::defaults();
    if (body.contains("cost_model")) cost = cost_model_from_json(body.at("cost_model"));
    RecognitionModel recognition = RecognitionModel::defaults();
    if (body.contains("recognition")) recognition = recognition_from_json(body.at("recognition"));

    const auto preload = body.value("preload", std::string("synthetic"));
    if (preload != "synthetic" && preload != "store") {
        throw Error(ErrorCode::invalid_argument, "preload must be 'synthetic' or 'store'");
    }
    const auto image = preload == "synthetic"
                           ? ExperimentImage::defaults()
                           : ExperimentImage::from_store(engine.snapshot(), engine.rules());

    std::vector<Record> records;
    if (body.contains("records")) {
        for (const auto& r : body.at("records")) records.push_back(record_from_json(r, engine.schema()));
    } else {
        records = worst_case_records();
    }

    const auto results = run_experiment(records, conditions, image, recognition, cost, options);
    const auto medians = MedianTable::from_results(results);

    json speedups = nullptr;
    if (has_speedup_inputs(medians)) {
        speedups = json::array();
        for (const auto& [c, pct] : speedup_vs_null(medians)) {
            speedups.push_back({{"condition", c}, {"percent", pct}});
        }
    }
    json runs = json::array();
    for (const auto& r : results) {
        runs.push_back({{"condition", r.condition},
                        {"record_id", r.record_id},
                        {"pass", r.pass},
                        {"duration_seconds", r.duration_seconds}});
    }
    json names = json::array();
    for (const auto& c : conditions) names.push_back(c.name);
    return {{"conditions", names},
            {"repeats", options.repeats},
            {"seed", options.seed},
            {"preload", preload},
            {"medians", median_table_to_json(medians).at("medians")},
            {"speedups", speedups},
            {"breakdown", breakdown_to_json(method_breakdown(results))},
            {"runs", runs}};
}

}  // namespace

int http_status(ErrorCode code) {
    switch (code) {
        case ErrorCode::not_found:
        case ErrorCode::no_menu: return 404;
        case ErrorCode::conflict: return 409;
        case ErrorCode::parse: return 400;
        case ErrorCode::invalid_argument:
        case ErrorCode::no_data: return 422;
    }
    return 500;
}

Response Service::handle(const Request& request) const {
    try {
        return dispatch(request);
    } catch (const Error& e) {
        return fail(http_status(e.code()), e.what());
    } catch (const json::exception& e) {
        return fail(400, e.what());
    } catch (const std::exception& e) {
        return fail(500, e.what());
    }
}

Response Service::dispatch(const Request& request) const {
    const auto parts = split_path(request.path);
    const auto& m = request.method;
    const bool get = m == "GET";
    const bool post = m == "POST";
    auto method_not_allowed = [&] { return fail(405, "method " + m + " not allowed on " + request.path); };

    if (parts.size() == 1 && parts[0] == "schema") {
        return get ? ok(schema_to_json(engine_.schema())) : method_not_allowed();
    }
    if (parts.size() == 1 && parts[0] == "drafts") {
        return post ? ok({{"draft_id", engine_.create_draft()}}, 201) : method_not_allowed();
    }
    if (parts.size() == 4 && parts[0] == "drafts" && parts[2] == "fields") {
        if (!post) return method_not_allowed();
        const auto body = parse_body(request);
        if (!body.contains("value")) throw Error(ErrorCode::invalid_argument, "body needs a value");
        const auto value = body.at("value").get<std::string>();
        const auto source = parse_commit_source(body.value("source", std::string("typed")));
        return ok(commit_result_to_json(engine_.commit_field(parts[1], parts[3], value, source)));
    }
    if (parts.size() == 3 && parts[0] == "drafts" && parts[2] == "finalize") {
        return post ? ok({{"seq", engine_.finalize(parts[1])}}) : method_not_allowed();
    }
    if (parts.size() == 2 && parts[0] == "drafts") {
        if (!get) return method_not_allowed();
        return ok({{"draft_id", parts[1]}, {"record", record_to_json(engine_.draft(parts[1]))}});
    }
    if (parts.size() == 3 && parts[0] == "fields" && parts[2] == "menu") {
        return get ? ok(split_menu_to_json(engine_.menu(parts[1]))) : method_not_allowed();
    }
    if (parts.size() == 1 && parts[0] == "records") {
        if (!get) return method_not_allowed();
        const auto limit = query_size(request, "limit", 100);
        const auto offset = query_size(request, "offset", 0);
        json records = json::array();
        for (const auto& r : engine_.records(limit, offset)) {
            auto j = record_to_json(r);
            j["seq"] = r.seq;
            records.push_back(std::move(j));
        }
        return ok({{"total", engine_.record_count()},
                   {"offset", offset},
                   {"limit", limit},
                   {"records", records}});
    }
    if (parts.size() == 2 && parts[0] == "analysis" && parts[1] == "coverage") {
        if (!get) return method_not_allowed();
        const auto* field = query_param(request, "field");
        if (!field) throw Error(ErrorCode::invalid_argument, "field is required");
        if (!engine_.schema().contains(*field)) {
            throw Error(ErrorCode::not_found, "unknown field '" + *field + "'");
        }
        const double target = query_double(request, "target", 0.5);
        const auto k = query_size(request, "k", kMaxMenuEntries);
        const auto store = engine_.snapshot();
        const auto curve = coverage_curve(store.records(), *field, k);
        auto j = coverage_to_json(curve, recommend_menu_size(curve, target, kMaxMenuEntries));
        j["target"] = target;
        return ok(j);
    }
    if (parts.size() == 2 && parts[0] == "analysis" && parts[1] == "dependencies") {
        if (!get) return method_not_allowed();
        auto t = MiningThresholds::defaults();
        t.min_density = query_double(request, "min_density", t.min_density);
        t.min_functionality = query_double(request, "min_functionality", t.min_functionality);
        t.min_support = query_size(request, "min_support", t.min_support);
        const auto store = engine_.snapshot();
        return ok(mining_report_to_json(mine(store.records(), engine_.schema(), t)));
    }
    if (parts.size() == 1 && parts[0] == "simulate") {
        return post ? ok(simulate(engine_, parse_body(request))) : method_not_allowed();
    }
    return fail(404, "no route for " + request.path);
}

void Service::mount(httplib::Server& server) const {
    auto adapt = [this](const httplib::Request& in, httplib::Response& out) {
        Request r{in.method, in.path, {}, in.body};
        for (const auto& [key, value] : in.params) r.query.emplace(key, value);
        const auto response = handle(r);
        out.status = response.status;
        out.set_content(response.body, "application/json; charset=utf-8");
    };
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Headers", "Content-Type"},
                                {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
    server.Get(".*", adapt);
    server.Post(".*", adapt);
    server.Put(".*", adapt);
    server.Delete(".*", adapt);
    server.Patch(".*", adapt);
    server.Options(".*", [](const httplib::Request&, httplib::Response& out) { out.status = 204; });
}

}  // namespace formcap
