// capture: command line front end for the record capture engine.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <httplib.h>

#include "formcap/analyzer.hpp"
#include "formcap/engine.hpp"
#include "formcap/error.hpp"
#include "formcap/reports.hpp"
#include "formcap/service.hpp"
#include "formcap/simulator.hpp"
#include "formcap/synthetic.hpp"

namespace {

using namespace formcap;

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::not_found, "cannot open " + path);
    return in;
}

// Loads the case base the offline commands work on.
RecordStore load_store(const std::string& store_path) {
    RecordStore store(default_schema());
    if (!store_path.empty()) {
        auto in = open_input(store_path);
        store.import_corpus(in, CorpusFormat::jsonl);
    }
    return store;
}

std::vector<RunResult> read_results(const std::string& path) {
    auto in = open_input(path);
    std::vector<RunResult> results;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded()) throw Error(ErrorCode::parse, path + ": invalid JSON", n);
        try {
            results.push_back(run_result_from_json(j));
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorCode::parse, path + ": " + e.what(), n);
        }
    }
    return results;
}

void print_speedups(const MedianTable& table) {
    if (!has_speedup_inputs(table)) return;
    std::cout << "\nSpeedup of repeat entry over novel Null entry\n";
    for (const auto& [condition, pct] : speedup_vs_null(table)) {
        std::printf("  %-6s %6.0f%%\n", condition.c_str(), pct);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Record capture engine: live entry service, analysis and simulation"};
    app.require_subcommand(1);

    std::string store_path;
    app.add_option("--store", store_path, "JSONL record store");

    auto* serve = app.add_subcommand("serve", "Run the JSON API");
    int port = 8080;
    std::string host = "127.0.0.1";
    serve->add_option("--port", port, "Listen port")->check(CLI::Range(1, 65535));
    serve->add_option("--host", host, "Listen address");

    auto* import = app.add_subcommand("import", "Append a corpus to the store");
    std::string import_file;
    std::string import_format = "jsonl";
    import->add_option("FILE", import_file, "Corpus file")->required();
    import->add_option("--format", import_format, "jsonl or csv")
        ->check(CLI::IsMember({"jsonl", "csv"}));

    auto* analyze = app.add_subcommand("analyze", "Coverage curve and menu size for a field");
    std::string analyze_field;
    double analyze_target = 0.5;
    std::size_t analyze_k = kMaxMenuEntries;
    bool analyze_csv = false;
    analyze->add_option("--field", analyze_field, "Field id")->required();
    analyze->add_option("--target", analyze_target, "Coverage target");
    analyze->add_option("--k", analyze_k, "Curve length")->check(CLI::PositiveNumber);
    analyze->add_flag("--csv", analyze_csv, "Print the curve as CSV");

    auto* mine_cmd = app.add_subcommand("mine", "Recommend fillin rules and menu sizes");
    auto thresholds = MiningThresholds::defaults();
    bool mine_json = false;
    mine_cmd->add_option("--min-density", thresholds.min_density, "Density threshold");
    mine_cmd->add_option("--min-functionality", thresholds.min_functionality,
                         "Functionality threshold");
    mine_cmd->add_option("--min-support", thresholds.min_support, "Support threshold");
    mine_cmd->add_flag("--json", mine_json, "Print JSON");

    auto* simulate = app.add_subcommand("simulate", "Run the six-condition entry experiment");
    std::string conditions = "all";
    ExperimentOptions options;
    std::string out_path;
    std::string cost_path;
    std::string recognition_path;
    std::string records_path;
    simulate->add_option("--conditions", conditions, "all or a comma list");
    simulate->add_option("--repeats", options.repeats, "Entries per record")->check(CLI::PositiveNumber);
    simulate->add_option("--seed", options.seed, "Random seed");
    simulate->add_option("--out", out_path, "Write run results as JSONL");
    simulate->add_option("--cost-model", cost_path, "JSON cost model overrides");
    simulate->add_option("--recognition", recognition_path, "JSON recognition overrides");
    simulate->add_option("--records", records_path, "JSONL records to enter");
    simulate->add_flag("!--no-parallel", options.parallel, "Run conditions sequentially");

    auto* report = app.add_subcommand("report", "Summary tables from medians or run results");
    std::string medians_path;
    std::string results_path;
    bool report_csv = false;
    auto* medians_opt = report->add_option("--medians", medians_path, "JSON median table");
    auto* results_opt = report->add_option("--results", results_path, "JSONL run results");
    medians_opt->excludes(results_opt);
    report->add_flag("--csv", report_csv, "Print CSV");
    report->callback([&] {
        if (medians_path.empty() && results_path.empty()) {
            throw CLI::RequiredError("--medians or --results");
        }
    });

    CLI11_PARSE(app, argc, argv);

    try {
        if (*serve) {
            CaptureEngine engine;
            if (!store_path.empty()) engine.attach_store_file(store_path);
            Service service(engine);
            httplib::Server server;
            service.mount(server);
            std::cerr << "listening on " << host << ':' << port << " (" << engine.record_count()
                      << " records)\n";
            if (!server.listen(host, port)) throw Error(ErrorCode::invalid_argument, "cannot listen");
            return 0;
        }

        if (*import) {
            if (store_path.empty()) throw Error(ErrorCode::invalid_argument, "import needs --store");
            CaptureEngine engine;
            engine.attach_store_file(store_path);
            const auto before = engine.record_count();
            auto in = open_input(import_file);
            engine.import_corpus(in, parse_corpus_format(import_format));
            std::cout << "imported " << engine.record_count() - before << " records ("
                      << engine.record_count() << " total)\n";
            return 0;
        }

        if (*analyze) {
            const auto store = load_store(store_path);
            if (!store.schema().contains(analyze_field)) {
                throw Error(ErrorCode::not_found, "unknown field '" + analyze_field + "'");
            }
            const auto curve = coverage_curve(store.records(), analyze_field, analyze_k);
            const auto size = recommend_menu_size(curve, analyze_target, kMaxMenuEntries);
            if (analyze_csv) {
                std::cout << coverage_csv(curve);
            } else {
                std::printf("%s: %zu values, %zu distinct\n", analyze_field.c_str(),
                            curve.histogram.total, curve.distinct);
                for (std::size_t i = 0; i < curve.coverage.size(); ++i) {
                    std::printf("  top %2zu  %6.3f\n", i + 1, curve.coverage[i]);
                }
                if (size) {
                    std::printf("menu size for %.2f coverage: %zu\n", analyze_target, *size);
                } else {
                    std::printf("no menu of <= %zu entries reaches %.2f coverage\n", kMaxMenuEntries,
                                analyze_target);
                }
            }
            return 0;
        }

        if (*mine_cmd) {
            const auto store = load_store(store_path);
            const auto result = mine(store.records(), store.schema(), thresholds);
            if (mine_json) {
                std::cout << mining_report_to_json(result).dump(2) << '\n';
            } else {
                std::cout << format_mining_report(result);
            }
            return 0;
        }

        if (*simulate) {
            auto cost = CostModel::defaults();
            if (!cost_path.empty()) {
                auto in = open_input(cost_path);
                cost = cost_model_from_json(nlohmann::json::parse(in));
            }
            auto recognition = RecognitionModel::defaults();
            if (!recognition_path.empty()) {
                auto in = open_input(recognition_path);
                recognition = recognition_from_json(nlohmann::json::parse(in));
            }
            std::vector<Record> records = worst_case_records();
            if (!records_path.empty()) {
                RecordStore scratch(default_schema());
                auto in = open_input(records_path);
                scratch.import_corpus(in, CorpusFormat::jsonl);
                records.assign(scratch.records().begin(), scratch.records().end());
            }
            const auto image = store_path.empty()
                                   ? ExperimentImage::defaults()
                                   : ExperimentImage::from_store(load_store(store_path));
            const auto condition_list = parse_conditions(conditions);
            const auto results = run_experiment(records, condition_list, image, recognition, cost, options);
            if (!out_path.empty()) {
                std::ofstream out(out_path);
                if (!out) throw Error(ErrorCode::invalid_argument, "cannot write " + out_path);
                for (const auto& r : results) out << run_result_to_json(r).dump() << '\n';
            }
            const auto table = MedianTable::from_results(results);
            std::cout << "Median entry time (minutes)\n" << format_median_table(table);
            print_speedups(table);
            return 0;
        }

        if (*report) {
            if (!medians_path.empty()) {
                auto in = open_input(medians_path);
                const auto table = median_table_from_json(nlohmann::json::parse(in));
                if (report_csv) {
                    std::cout << median_table_csv(table);
                } else {
                    std::cout << format_median_table(table);
                    print_speedups(table);
                }
                return 0;
            }
            const auto results = read_results(results_path);
            const auto table = MedianTable::from_results(results);
            const auto breakdown = method_breakdown(results);
            if (report_csv) {
                std::cout << median_table_csv(table) << '\n' << breakdown_csv(breakdown);
            } else {
                std::cout << "Median entry time (minutes)\n" << format_median_table(table);
                print_speedups(table);
                std::cout << "\nEntry method by field (%)\n" << format_breakdown(breakdown);
            }
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what();
        if (e.line()) std::cerr << " (line " << e.line() << ')';
        std::cerr << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
