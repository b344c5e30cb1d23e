// Copyright 2026 The bellsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bellsim/cli/commands.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <system_error>

#include "CLI11.hpp"
#include "json.hpp"

#include "bellsim/analytic.hpp"
#include "bellsim/cli/digest.hpp"
#include "bellsim/montecarlo.hpp"
#include "bellsim/random.hpp"

namespace bellsim::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::system_clock;

std::string utc_timestamp(Clock::time_point t) {
    const std::time_t seconds = Clock::to_time_t(t);
    std::tm tm{};
    gmtime_r(&seconds, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Files written by one invocation, with their digests, plus the manifest.
class OutputSet {
  public:
    explicit OutputSet(fs::path dir) : dir_(std::move(dir)) {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec) {
            throw IoError("cannot create output directory " + dir_.string() + ": " + ec.message());
        }
    }

    void write(const std::string& name, const std::string& content) {
        const fs::path path = dir_ / name;
        std::ofstream file(path, std::ios::binary | std::ios::trunc);
        file << content;
        file.close();
        if (!file) {
            throw IoError("cannot write " + path.string());
        }
        outputs_.push_back(json{{"file", name}, {"sha256", sha256_hex(content)}});
    }

    void write_manifest(const std::string& command, json config, std::optional<std::uint64_t> seed,
                        Clock::time_point started) {
        json manifest;
        manifest["tool"] = "bellsim";
        manifest["version"] = BELLSIM_VERSION;
        manifest["command"] = command;
        manifest["seed"] = seed ? json(*seed) : json(nullptr);
        manifest["started_utc"] = utc_timestamp(started);
        manifest["finished_utc"] = utc_timestamp(Clock::now());
        manifest["config"] = std::move(config);
        manifest["outputs"] = outputs_;
        const fs::path path = dir_ / "manifest.json";
        std::ofstream file(path, std::ios::binary | std::ios::trunc);
        file << manifest.dump(2) << '\n';
        file.close();
        if (!file) {
            throw IoError("cannot write " + path.string());
        }
    }

  private:
    fs::path dir_;
    json outputs_ = json::array();
};

json estimate_json(const CorrelationEstimate& e) {
    return json{{"r", e.r}, {"standard_error", e.standard_error}, {"n_coincidences", e.n_coincidences}};
}

struct GlobalOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir = ".";
    bool out_given = false;
    unsigned threads = 1;
};

RunDocument load_run_document(const GlobalOptions& options) {
    if (options.config_path.empty()) {
        throw ConfigError("--config: required for this subcommand");
    }
    RunDocument doc = parse_run_document(read_file(options.config_path));
    if (options.seed) {
        doc.experiment.seed = *options.seed;
    }
    return doc;
}

int command_analytic(const GlobalOptions& options, AnalyticRequest request, std::ostream& out) {
    const auto started = Clock::now();
    const std::string table = analytic_table(request);
    out << table;
    if (options.out_given) {
        OutputSet files(options.out_dir);
        files.write("analytic.csv", table);
        static constexpr const char* kForms[] = {"parallel", "two_angle", "lhv", "quantum"};
        json echo{{"form", kForms[static_cast<int>(request.form)]},
                  {"grid_rad", request.grid},
                  {"theta2_rad", request.theta2}};
        files.write_manifest("analytic", std::move(echo), std::nullopt, started);
    }
    return kExitSuccess;
}

int command_simulate(const GlobalOptions& options, std::ostream& out, std::ostream& err) {
    const auto started = Clock::now();
    const RunDocument doc = load_run_document(options);
    const CountsTable counts = run_experiment(doc.experiment, options.threads);

    OutputSet files(options.out_dir);
    files.write("counts.csv", counts_csv(counts));

    json summary;
    summary["model"] = doc.experiment.source.model == Model::Classical ? "classical" : "quantum";
    summary["seed"] = doc.experiment.seed;
    summary["n_pairs"] = doc.experiment.n_pairs;
    summary["coincidence_fraction"] = coincidence_fraction(counts);
    summary["per_pair_correlation"] = per_pair_correlation(counts);
    int code = kExitSuccess;
    try {
        const CorrelationEstimate estimate = r_from_counts(counts);
        summary["r"] = estimate.r;
        summary["standard_error"] = estimate.standard_error;
        summary["n_coincidences"] = estimate.n_coincidences;
        out << "r = " << format_number(estimate.r) << " +/- " << format_number(estimate.standard_error)
            << " (" << estimate.n_coincidences << " coincidences)\n";
    } catch (const DegenerateStatistics& e) {
        summary["r"] = nullptr;
        summary["standard_error"] = nullptr;
        summary["n_coincidences"] = 0;
        err << "bellsim: " << e.what() << '\n';
        code = kExitDegenerate;
    }
    files.write("summary.json", summary.dump(2) + "\n");
    files.write_manifest("simulate", render(doc), doc.experiment.seed, started);
    return code;
}

int command_sweep(const GlobalOptions& options, std::ostream& out, std::ostream& err) {
    const auto started = Clock::now();
    const RunDocument doc = load_run_document(options);
    if (!doc.sweep) {
        throw ConfigError("sweep: missing required key for the sweep subcommand");
    }
    const std::vector<SweepRow> rows = run_sweep(doc, options.threads);
    OutputSet files(options.out_dir);
    files.write("sweep.csv", sweep_csv(sweep_axis_label(*doc.sweep), rows));
    files.write_manifest("sweep", render(doc), doc.experiment.seed, started);

    std::size_t degenerate = 0;
    for (const SweepRow& row : rows) {
        degenerate += row.estimate ? 0 : 1;
    }
    out << rows.size() << " sweep points written\n";
    if (degenerate > 0) {
        err << "bellsim: " << degenerate << " sweep point(s) had no coincidences\n";
        return kExitDegenerate;
    }
    return kExitSuccess;
}

int command_chsh(const GlobalOptions& options, std::ostream& out) {
    const auto started = Clock::now();
    const RunDocument doc = load_run_document(options);
    const ChshRun run = run_chsh(doc, options.threads);

    OutputSet files(options.out_dir);
    static constexpr const char* kLabels[] = {"ab", "ab2", "a2b", "a2b2"};
    const ChshSettings settings{doc.experiment.analyzer_a, *doc.analyzer_a2, doc.experiment.analyzer_b,
                                *doc.analyzer_b2};
    const auto pairs = settings.pairs();
    json per_setting = json::array();
    for (std::size_t i = 0; i < 4; ++i) {
        files.write(std::string("counts_") + kLabels[i] + ".csv", counts_csv(run.counts[i]));
        json entry = estimate_json(run.result.per_setting[i]);
        entry["setting"] = kLabels[i];
        entry["a_rad"] = pairs[i].first.radians();
        entry["b_rad"] = pairs[i].second.radians();
        per_setting.push_back(std::move(entry));
    }
    json result{{"s", run.result.s},
                {"standard_error", run.result.standard_error},
                {"seed", doc.experiment.seed},
                {"per_setting", std::move(per_setting)}};
    files.write("chsh.json", result.dump(2) + "\n");
    files.write_manifest("chsh", render(doc), doc.experiment.seed, started);
    out << "S = " << format_number(run.result.s) << " +/- " << format_number(run.result.standard_error)
        << '\n';
    return kExitSuccess;
}

int command_search(const GlobalOptions& options, std::optional<std::uint64_t> confirm_pairs,
                   std::ostream& out) {
    const auto started = Clock::now();
    if (options.config_path.empty()) {
        throw ConfigError("--config: required for this subcommand");
    }
    SearchDocument doc = parse_search_document(read_file(options.config_path));
    if (options.seed) {
        doc.confirm_seed = *options.seed;
    }
    if (confirm_pairs) {
        doc.confirm_pairs = *confirm_pairs;
    }
    const SearchReport report = grid_search(doc.space, options.threads);

    std::string trace_csv;
    for (const std::string& label : report.parameter_labels) {
        trace_csv += label + ",";
    }
    trace_csv += "objective,efficiency,degenerate\n";
    json trace = json::array();
    for (const SearchPoint& point : report.trace) {
        for (const double p : point.params) {
            trace_csv += format_number(p) + ",";
        }
        if (point.degenerate) {
            trace_csv += "nan,nan,1\n";
        } else {
            trace_csv += format_number(point.objective) + "," + format_number(point.efficiency) + ",0\n";
        }
        trace.push_back(json{{"params", point.params},
                             {"objective", point.degenerate ? json(nullptr) : json(point.objective)},
                             {"efficiency", point.degenerate ? json(nullptr) : json(point.efficiency)},
                             {"degenerate", point.degenerate}});
    }

    json best_params = json::object();
    for (std::size_t i = 0; i < report.best_params.size(); ++i) {
        best_params[report.parameter_labels[i]] = report.best_params[i];
    }
    json summary{{"objective_type", objective_name(doc.space.objective)},
                 {"parameters", report.parameter_labels},
                 {"best", {{"params", best_params},
                           {"objective", report.best_objective},
                           {"efficiency", report.best_efficiency}}},
                 {"trace", std::move(trace)}};
    if (doc.confirm_pairs) {
        const MonteCarloConfirmation check = confirm_with_monte_carlo(
            doc.space, report.best_params, *doc.confirm_pairs, doc.confirm_seed, options.threads);
        summary["confirmation"] = json{{"n_pairs", *doc.confirm_pairs},
                                       {"seed", doc.confirm_seed},
                                       {"analytic", check.analytic},
                                       {"simulated", check.simulated},
                                       {"standard_error", check.standard_error},
                                       {"within_3_sigma", check.agrees_within(3.0)}};
    }

    OutputSet files(options.out_dir);
    files.write("search_trace.csv", trace_csv);
    files.write("search_report.json", summary.dump(2) + "\n");
    files.write_manifest("search", render(doc),
                         doc.confirm_pairs ? std::optional<std::uint64_t>(doc.confirm_seed) : std::nullopt,
                         started);
    out << "best " << objective_name(doc.space.objective) << " = " << format_number(report.best_objective)
        << " at efficiency " << format_number(report.best_efficiency) << '\n';
    return kExitSuccess;
}

}  // namespace

std::string format_number(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, result.ptr);
}

std::string counts_csv(const CountsTable& c) {
    std::ostringstream out;
    out << "n_pp,n_pm,n_mp,n_mm,singles_a,singles_b,n_null,n_total\n"
        << c.n_pp << ',' << c.n_pm << ',' << c.n_mp << ',' << c.n_mm << ',' << c.singles_a << ','
        << c.singles_b << ',' << c.n_null << ',' << c.n_total << '\n';
    return out.str();
}

std::string analytic_table(const AnalyticRequest& request) {
    if (request.grid.empty()) {
        throw ConfigError("grid: empty grid");
    }
    std::string table;
    switch (request.form) {
        case AnalyticForm::Parallel:
            table = "theta,r\n";
            break;
        case AnalyticForm::TwoAngle:
            table = "theta1,r\n";
            break;
        case AnalyticForm::Lhv:
        case AnalyticForm::Quantum:
            table = "delta,E\n";
            break;
    }
    const Angle origin;
    for (const double x : request.grid) {
        const Angle angle = Angle::from_radians(x);
        double value = 0.0;
        switch (request.form) {
            case AnalyticForm::Parallel:
                value = classical_r_parallel(angle);
                break;
            case AnalyticForm::TwoAngle:
                value = classical_r_two_angle(angle, Angle::from_radians(request.theta2));
                break;
            case AnalyticForm::Lhv:
                value = lhv_expectation(origin, angle);
                break;
            case AnalyticForm::Quantum:
                value = quantum_expectation(origin, angle);
                break;
        }
        table += format_number(x) + "," + format_number(value) + "\n";
    }
    return table;
}

std::string sweep_axis_label(const SweepSpec& sweep) {
    switch (sweep.axis) {
        case SweepAxis::Delta:
            return "delta";
        case SweepAxis::Theta:
            return "theta";
        case SweepAxis::Parameter:
            break;
    }
    switch (sweep.arm) {
        case ArmTarget::A:
            return "a." + sweep.parameter;
        case ArmTarget::B:
            return "b." + sweep.parameter;
        case ArmTarget::Both:
            break;
    }
    return sweep.parameter;
}

std::vector<SweepRow> run_sweep(const RunDocument& document, unsigned threads) {
    if (!document.sweep || document.sweep->values.empty()) {
        throw ConfigError("sweep: empty axis");
    }
    const SweepSpec& sweep = *document.sweep;
    std::vector<SweepRow> rows;
    rows.reserve(sweep.values.size());
    for (const double value : sweep.values) {
        ExperimentConfig config = document.experiment;
        switch (sweep.axis) {
            case SweepAxis::Delta:
                config.analyzer_b = Angle::from_radians(config.analyzer_a.radians() + value);
                break;
            case SweepAxis::Theta:
                config.source.distribution = FixedTheta{Angle::from_radians(value)};
                break;
            case SweepAxis::Parameter:
                if (sweep.arm != ArmTarget::B) {
                    set_profile_parameter(config.detection_a, sweep.parameter, value);
                }
                if (sweep.arm != ArmTarget::A) {
                    set_profile_parameter(config.detection_b, sweep.parameter, value);
                }
                break;
        }
        const CountsTable counts = run_experiment(config, threads);
        SweepRow row;
        row.value = value;
        row.coincidence_fraction = coincidence_fraction(counts);
        row.n_coincidences = counts.coincidences();
        if (row.n_coincidences > 0) {
            row.estimate = r_from_counts(counts);
        }
        rows.push_back(row);
    }
    return rows;
}

std::string sweep_csv(const std::string& axis_label, const std::vector<SweepRow>& rows) {
    std::string csv = "axis,value,r,se,coincidence_fraction,n_coincidences\n";
    for (const SweepRow& row : rows) {
        const double r = row.estimate ? row.estimate->r : std::nan("");
        const double se = row.estimate ? row.estimate->standard_error : std::nan("");
        csv += axis_label + "," + format_number(row.value) + "," + format_number(r) + "," +
               format_number(se) + "," + format_number(row.coincidence_fraction) + "," +
               std::to_string(row.n_coincidences) + "\n";
    }
    return csv;
}

ChshRun run_chsh(const RunDocument& document, unsigned threads) {
    if (!document.analyzer_a2 || !document.analyzer_b2) {
        throw ConfigError("angles_deg: chsh needs a2 and b2");
    }
    const ChshSettings settings{document.experiment.analyzer_a, *document.analyzer_a2,
                                document.experiment.analyzer_b, *document.analyzer_b2};
    const auto pairs = settings.pairs();
    ChshRun run;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        ExperimentConfig config = document.experiment;
        config.analyzer_a = pairs[i].first;
        config.analyzer_b = pairs[i].second;
        config.seed = splitmix64(document.experiment.seed + i);
        run.counts[i] = run_experiment(config, threads);
    }
    run.result = chsh_from_runs(run.counts[0], run.counts[1], run.counts[2], run.counts[3]);
    return run;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Polarization-entangled pair correlation simulator", "bellsim"};
    app.require_subcommand(1);

    GlobalOptions options;
    app.add_option("--config", options.config_path, "JSON configuration document");
    app.add_option("--seed", options.seed, "Seed override (u64)");
    auto* out_opt = app.add_option("--out", options.out_dir, "Output directory");
    app.add_option("--threads", options.threads, "Worker threads; results do not depend on it")
        ->check(CLI::PositiveNumber);

    AnalyticRequest request;
    std::string form = "parallel";
    std::vector<double> grid_deg;
    std::vector<double> grid_rad;
    std::optional<double> from_deg;
    std::optional<double> to_deg;
    std::optional<std::uint64_t> points;
    std::optional<double> theta2_deg;
    auto* analytic = app.add_subcommand("analytic", "Tabulate a closed-form correlation curve");
    analytic->fallthrough();
    analytic->add_option("--form", form, "parallel | two_angle | lhv | quantum")
        ->check(CLI::IsMember({"parallel", "two_angle", "lhv", "quantum"}));
    analytic->add_option("--grid-deg", grid_deg, "Comma-separated grid in degrees")->delimiter(',');
    analytic->add_option("--grid-rad", grid_rad, "Comma-separated grid in radians")->delimiter(',');
    analytic->add_option("--from-deg", from_deg, "Evenly spaced grid start (degrees)");
    analytic->add_option("--to-deg", to_deg, "Evenly spaced grid end (degrees)");
    analytic->add_option("--points", points, "Evenly spaced grid size");
    analytic->add_option("--theta2-deg", theta2_deg, "Second angle of the two_angle form (degrees)");

    auto* simulate = app.add_subcommand("simulate", "Run one Monte Carlo experiment");
    simulate->fallthrough();
    auto* sweep = app.add_subcommand("sweep", "Run a one-axis sweep of experiments");
    sweep->fallthrough();
    auto* chsh = app.add_subcommand("chsh", "Run the four CHSH settings");
    chsh->fallthrough();
    std::optional<std::uint64_t> confirm_pairs;
    auto* search = app.add_subcommand("search", "Grid search over detection profiles");
    search->fallthrough();
    search->add_option("--confirm-pairs", confirm_pairs, "Monte Carlo pairs to confirm the optimum");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitSuccess;
    } catch (const CLI::ParseError& e) {
        err << "bellsim: " << e.what() << '\n' << "run with --help for usage\n";
        return kExitConfigError;
    }
    options.out_given = out_opt->count() > 0;

    try {
        if (analytic->parsed()) {
            request.form = form == "two_angle" ? AnalyticForm::TwoAngle
                           : form == "lhv"     ? AnalyticForm::Lhv
                           : form == "quantum" ? AnalyticForm::Quantum
                                               : AnalyticForm::Parallel;
            const int sources = static_cast<int>(!grid_deg.empty()) + static_cast<int>(!grid_rad.empty()) +
                                static_cast<int>(from_deg || to_deg || points);
            if (sources > 1) {
                throw ConfigError("grid: give one of --grid-deg, --grid-rad, --from-deg/--to-deg/--points");
            }
            for (const double d : grid_deg) request.grid.push_back(d * kPi / 180.0);
            for (const double r : grid_rad) request.grid.push_back(r);
            if (from_deg || to_deg || points) {
                if (!from_deg || !to_deg || !points) {
                    throw ConfigError("grid: --from-deg, --to-deg and --points go together");
                }
                for (std::uint64_t i = 0; i < *points; ++i) {
                    const double t = *points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(*points - 1);
                    const double deg = i + 1 == *points && *points > 1 ? *to_deg : *from_deg + t * (*to_deg - *from_deg);
                    request.grid.push_back(deg * kPi / 180.0);
                }
            }
            request.theta2 = theta2_deg.value_or(0.0) * kPi / 180.0;
            return command_analytic(options, request, out);
        }
        if (simulate->parsed()) return command_simulate(options, out, err);
        if (sweep->parsed()) return command_sweep(options, out, err);
        if (chsh->parsed()) return command_chsh(options, out);
        if (search->parsed()) return command_search(options, confirm_pairs, out);
    } catch (const ConfigError& e) {
        err << "bellsim: config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const DegenerateStatistics& e) {
        err << "bellsim: degenerate statistics: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const IoError& e) {
        err << "bellsim: I/O error: " << e.what() << '\n';
        return kExitIoError;
    } catch (const std::invalid_argument& e) {
        err << "bellsim: config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::exception& e) {
        err << "bellsim: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitFailure;
}

}  // namespace bellsim::cli
