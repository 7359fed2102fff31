#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "routeprobe/codegen.hpp"
#include "routeprobe/errors.hpp"
#include "routeprobe/geo.hpp"
#include "routeprobe/monitor.hpp"
#include "routeprobe/probe.hpp"
#include "routeprobe/synth.hpp"
#include "routeprobe/trace.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitAccepted = 0;
constexpr int kExitRejected = 1;
constexpr int kExitError = 2;

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw routeprobe::ValidationError("cannot open '" + path.string() +
                                          "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw routeprobe::ValidationError("cannot write '" + path.string() +
                                          "'");
    }
    out << content;
    if (!out) {
        throw routeprobe::ValidationError("failed writing '" + path.string() +
                                          "'");
    }
}

std::string vehicle_id_from(const fs::path& path) {
    std::string stem = path.stem().string();
    return stem.empty() ? path.string() : stem;
}

routeprobe::RegionSet resolve_regions(const std::string& regions_flag) {
    if (!regions_flag.empty()) {
        return routeprobe::load_regions(read_file(regions_flag), regions_flag);
    }
    if (const char* dir = std::getenv("ROUTEPROBE_CONFIG_DIR")) {
        fs::path candidate = fs::path(dir) / "regions.cfg";
        if (fs::exists(candidate)) {
            return routeprobe::load_regions(read_file(candidate),
                                            candidate.string());
        }
    }
    return routeprobe::default_regions();
}

routeprobe::ProbeDef resolve_probe(const std::string& probe_flag,
                                   const routeprobe::RegionSet& rs) {
    if (auto builtin = routeprobe::builtin_probe(probe_flag)) {
        return *builtin;
    }
    return routeprobe::parse_probe(read_file(probe_flag), rs, probe_flag);
}

json verdict_record(const routeprobe::Verdict& v) {
    json record = {
        {"vehicle_id", v.vehicle_id},
        {"initial_state", v.initial_state},
        {"final_state", v.final_state},
        {"airport_visited", v.airport_visited},
        {"centre_visited", v.centre_visited},
        {"error_seen", v.error_seen},
        {"result", std::string(routeprobe::to_string(v.result))},
    };
    if (v.error_event_index) {
        record["error_event_index"] = *v.error_event_index;
    } else {
        record["error_event_index"] = nullptr;
    }
    return record;
}

std::vector<fs::path> collect_trace_files(
    const std::vector<std::string>& inputs) {
    std::vector<fs::path> files;
    for (const std::string& input : inputs) {
        fs::path path(input);
        if (fs::is_directory(path)) {
            std::vector<fs::path> here;
            for (const auto& entry : fs::directory_iterator(path)) {
                if (entry.is_regular_file() &&
                    entry.path().extension() == ".trace") {
                    here.push_back(entry.path());
                }
            }
            std::sort(here.begin(), here.end());
            files.insert(files.end(), here.begin(), here.end());
        } else {
            files.push_back(path);
        }
    }
    return files;
}

int cmd_check(const std::string& trace_path, const std::string& probe_flag,
              const std::string& regions_flag, const std::string& format) {
    auto rs = resolve_regions(regions_flag);
    auto probe = resolve_probe(probe_flag, rs);
    auto trace = routeprobe::parse_trace(read_file(trace_path),
                                         vehicle_id_from(trace_path), ',',
                                         trace_path);
    auto run = routeprobe::run_probe(trace, probe, rs);
    const routeprobe::Verdict& v = run.verdict;

    if (format == "records") {
        std::cout << verdict_record(v).dump() << "\n";
    } else {
        std::cout << "vehicle:           " << v.vehicle_id << "\n"
                  << "initial state:     " << v.initial_state << "\n"
                  << "final state:       " << v.final_state << "\n"
                  << "AIRPORT visited:   " << (v.airport_visited ? "Yes" : "No")
                  << "\n"
                  << "CENTRE visited:    " << (v.centre_visited ? "Yes" : "No")
                  << "\n"
                  << "ERROR seen:        " << (v.error_seen ? "Yes" : "No")
                  << "\n"
                  << "result:            " << routeprobe::to_string(v.result)
                  << "\n";
        if (v.error_event_index) {
            std::cout << "error event index: " << *v.error_event_index
                      << "\n";
        }
    }
    return v.result == routeprobe::Verdict::Result::Accepted ? kExitAccepted
                                                             : kExitRejected;
}

int cmd_report(const std::vector<std::string>& inputs,
               const std::string& probe_flag,
               const std::string& regions_flag, const std::string& format) {
    auto rs = resolve_regions(regions_flag);
    auto probe = resolve_probe(probe_flag, rs);
    const auto files = collect_trace_files(inputs);
    if (files.empty()) {
        throw routeprobe::ValidationError("no trace files to report on");
    }

    routeprobe::FleetReport report;
    for (const fs::path& file : files) {
        routeprobe::FleetRow row;
        row.vehicle_id = vehicle_id_from(file);
        try {
            auto trace = routeprobe::parse_trace(
                read_file(file), row.vehicle_id, ',', file.string());
            row.verdict = routeprobe::run_probe(trace, probe, rs).verdict;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        report.rows.push_back(std::move(row));
    }

    if (format == "records") {
        for (const routeprobe::FleetRow& row : report.rows) {
            if (row.verdict) {
                std::cout << verdict_record(*row.verdict).dump() << "\n";
            } else {
                json record = {{"vehicle_id", row.vehicle_id},
                               {"result", "Error"},
                               {"error", row.error}};
                std::cout << record.dump() << "\n";
            }
        }
    } else {
        std::cout << routeprobe::render_fleet_table(report);
    }
    return kExitAccepted;
}

int cmd_measures(const std::string& trace_path, const std::string& probe_flag,
                 const std::string& regions_flag, const std::string& out_dir) {
    auto rs = resolve_regions(regions_flag);
    auto probe = resolve_probe(probe_flag, rs);
    auto trace = routeprobe::parse_trace(read_file(trace_path),
                                         vehicle_id_from(trace_path), ',',
                                         trace_path);
    auto run = routeprobe::run_probe(trace, probe, rs);

    fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw routeprobe::ValidationError("cannot create output directory '" +
                                          out_dir + "'");
    }

    for (const std::string& state : run.history.states) {
        auto series = routeprobe::measure_count_in_state(run.history, state);
        write_file(dir / (series.name + ".series"),
                   routeprobe::serialize_measure(series));
    }
    auto max_lat = routeprobe::measure_max_attribute(
        trace, routeprobe::TraceAttribute::Latitude);
    write_file(dir / (max_lat.name + ".series"),
               routeprobe::serialize_measure(max_lat));

    std::cout << "wrote " << run.history.states.size() + 1 << " series to "
              << dir.string() << "\n";
    return kExitAccepted;
}

int cmd_synth(const std::string& route_flag, const std::string& faults_flag,
              std::size_t count, std::uint64_t seed,
              const std::string& out_dir) {
    auto rs = resolve_regions("");
    std::vector<routeprobe::FaultSpec> faults;
    if (!faults_flag.empty()) {
        faults = routeprobe::parse_fault_specs(read_file(faults_flag),
                                               faults_flag);
    }
    if (count < faults.size()) {
        throw routeprobe::ValidationError(
            "count must be at least the number of configured faults");
    }
    const std::size_t n_correct = count - faults.size();

    std::vector<routeprobe::LabelledTrace> fleet;
    if (route_flag.empty()) {
        fleet = routeprobe::generate_fleet(n_correct, faults, seed, rs);
    } else {
        auto route = routeprobe::parse_route_spec(read_file(route_flag),
                                                  route_flag);
        int fleet_number = 937;
        for (std::size_t i = 0; i < count; ++i, ++fleet_number) {
            routeprobe::RouteSpec child = route;
            child.seed = seed ^ (0x9E3779B97F4A7C15ULL * (i + 1));
            const routeprobe::FaultSpec fault =
                i < n_correct ? routeprobe::FaultSpec(routeprobe::NoFault{})
                              : faults[i - n_correct];
            fleet.push_back(routeprobe::generate_trace(
                child, fault, std::to_string(fleet_number), rs));
        }
    }

    fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw routeprobe::ValidationError("cannot create output directory '" +
                                          out_dir + "'");
    }
    for (const routeprobe::LabelledTrace& lt : fleet) {
        write_file(dir / (lt.trace.vehicle_id() + ".trace"),
                   routeprobe::serialize_trace(lt.trace));
    }
    if (!fleet.empty()) {
        write_file(dir / "labels.csv", routeprobe::serialize_labels(fleet));
    }
    std::cout << "wrote " << fleet.size() << " traces to " << dir.string()
              << "\n";
    return kExitAccepted;
}

int cmd_codegen(const std::string& trace_path, std::size_t chunk_size,
                const std::string& out_file) {
    auto trace = routeprobe::parse_trace(read_file(trace_path),
                                         vehicle_id_from(trace_path), ',',
                                         trace_path);
    std::string text = routeprobe::emit_component(trace, chunk_size);
    if (out_file.empty()) {
        std::cout << text;
    } else {
        write_file(out_file, text);
        std::cout << "wrote "
                  << routeprobe::estimate_emitted_size(trace, chunk_size)
                  << " lines to " << out_file << "\n";
    }
    return kExitAccepted;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "routeprobe - checks GPS traces against predicate-guarded route "
        "probes"};
    app.require_subcommand(1);

    std::string probe_flag = "loose";
    std::string regions_flag;
    std::string format = "table";
    std::string trace_path;
    std::vector<std::string> report_inputs;
    std::string out_path;
    std::string route_flag;
    std::string faults_flag;
    std::size_t count = 11;
    std::uint64_t seed = 0;
    std::size_t chunk_size = 500;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--probe", probe_flag,
                        "builtin probe name (loose|strict) or probe file");
        cmd->add_option("--regions", regions_flag,
                        "region config file (default: "
                        "$ROUTEPROBE_CONFIG_DIR/regions.cfg or the shipped "
                        "service-100 regions)");
    };

    CLI::App* check = app.add_subcommand(
        "check", "check one trace and print its verdict");
    check->add_option("trace", trace_path, "trace file")->required();
    add_common(check);
    check->add_option("--format", format, "table|records")
        ->check(CLI::IsMember({"table", "records"}));

    CLI::App* report = app.add_subcommand(
        "report", "fleet table over several traces");
    report->add_option("traces", report_inputs,
                       "trace files and/or directories of .trace files")
        ->required();
    add_common(report);
    report->add_option("--format", format, "table|records")
        ->check(CLI::IsMember({"table", "records"}));

    CLI::App* measures = app.add_subcommand(
        "measures", "write per-state and MaxLatitude series files");
    measures->add_option("trace", trace_path, "trace file")->required();
    add_common(measures);
    measures->add_option("--out", out_path, "output directory")->required();

    CLI::App* synth = app.add_subcommand(
        "synth", "generate labelled synthetic traces");
    synth->add_option("--route", route_flag, "route config file");
    synth->add_option("--faults", faults_flag, "fault config file");
    synth->add_option("--count", count, "total number of traces");
    synth->add_option("--seed", seed, "generator seed");
    synth->add_option("--out", out_path, "output directory")->required();

    CLI::App* codegen = app.add_subcommand(
        "codegen", "emit the straight-line component for a trace");
    codegen->add_option("trace", trace_path, "trace file")->required();
    codegen->add_option("--chunk-size", chunk_size,
                        "max states per emitted process");
    codegen->add_option("--out", out_path,
                        "output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help
        }
        app.exit(e);
        return kExitError;
    }

    try {
        if (check->parsed()) {
            return cmd_check(trace_path, probe_flag, regions_flag, format);
        }
        if (report->parsed()) {
            return cmd_report(report_inputs, probe_flag, regions_flag,
                              format);
        }
        if (measures->parsed()) {
            return cmd_measures(trace_path, probe_flag, regions_flag,
                                out_path);
        }
        if (synth->parsed()) {
            return cmd_synth(route_flag, faults_flag, count, seed, out_path);
        }
        if (codegen->parsed()) {
            return cmd_codegen(trace_path, chunk_size, out_path);
        }
    } catch (const routeprobe::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitError;
    } catch (const routeprobe::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
