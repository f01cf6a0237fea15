#include "locsom/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "locsom/config.hpp"
#include "locsom/error.hpp"
#include "locsom/harness.hpp"
#include "locsom/stats.hpp"
#include "locsom/svg.hpp"

namespace locsom::cli {
namespace {

namespace fs = std::filesystem;

class UsageError : public Error {
public:
    using Error::Error;
};

struct Common {
    std::uint64_t seed = 0;
    std::size_t jobs = 1;
    fs::path out_dir = ".";
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--seed", c.seed, "Base seed");
    cmd->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--out-dir", c.out_dir, "Output directory");
}

void prepare_out_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("write failed on " + path.string());
}

std::size_t side_of(std::size_t units) {
    const auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(units))));
    if (side < 2 || side * side != units) {
        throw UsageError("map size " + std::to_string(units) + " is not a perfect square of at least 4 units");
    }
    return side;
}

std::string fmt(double v, const char* spec = "%.6g") {
    char buf[48];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

// ---------------------------------------------------------------------------
// train

struct TrainArgs {
    Common common;
    std::string dataset;
    std::string variant;
    std::size_t size = 0;
    std::optional<double> cq, lzeta, sigma, rate0, ema_decay, cluster_sigma;
    std::string init = "ric";
    std::size_t iters = 3000;
    std::size_t factor = 10;
    std::size_t record_every = 50;
    std::optional<fs::path> points;
    std::string name = "train";
};

void add_train(CLI::App& app, TrainArgs& a) {
    auto* cmd = app.add_subcommand("train", "Train a single map");
    cmd->add_option("--dataset", a.dataset, "square | clusters2d | sphere | dispersion3d | pointcloud")->required();
    cmd->add_option("--variant", a.variant, "fnnsom | nnsom | classical")->required();
    cmd->add_option("--size", a.size, "Number of units (a perfect square)")->required();
    cmd->add_option("--cq", a.cq, "FNNSOM c_q");
    cmd->add_option("--sigma", a.sigma, "FNNSOM BMU rate");
    cmd->add_option("--lzeta", a.lzeta, "NNSOM constant rate");
    cmd->add_option("--rate0", a.rate0, "Classical initial rate");
    cmd->add_option("--ema-decay", a.ema_decay, "Running-error decay");
    cmd->add_option("--init", a.init, "sic | ric");
    cmd->add_option("--iters", a.iters, "Iterations");
    cmd->add_option("--factor", a.factor, "Samples per iteration per unit");
    cmd->add_option("--record-every", a.record_every, "A_t sampling stride");
    cmd->add_option("--points", a.points, "Point-cloud CSV");
    cmd->add_option("--cluster-sigma", a.cluster_sigma, "Clusters2D component spread");
    cmd->add_option("--name", a.name, "Output file prefix");
    add_common(cmd, a.common);
}

RatePolicy policy_from(const std::string& variant_name, const TrainArgs& a) {
    Variant v;
    try {
        v = parse_variant(variant_name);
    } catch (const InvalidInput& e) {
        throw UsageError(e.what());
    }
    auto reject = [&](bool given, const char* flag) {
        if (given) throw UsageError(std::string(flag) + " does not apply to variant " + to_string(v));
    };
    RatePolicy policy;
    switch (v) {
        case Variant::Fnnsom:
            reject(a.lzeta.has_value(), "--lzeta");
            reject(a.rate0.has_value(), "--rate0");
            policy = RatePolicy::fnnsom(a.cq.value_or(0.15), a.sigma.value_or(0.01));
            break;
        case Variant::Nnsom:
            reject(a.cq.has_value(), "--cq");
            reject(a.sigma.has_value(), "--sigma");
            reject(a.rate0.has_value(), "--rate0");
            policy = RatePolicy::nnsom(a.lzeta.value_or(0.5));
            break;
        case Variant::Classical: {
            reject(a.cq.has_value(), "--cq");
            reject(a.sigma.has_value(), "--sigma");
            reject(a.lzeta.has_value(), "--lzeta");
            ClassicalParams p;
            if (a.rate0) p.initial_rate = *a.rate0;
            policy = RatePolicy::classical(p);
            break;
        }
    }
    if (a.ema_decay) policy.ema_decay = *a.ema_decay;
    try {
        policy.validate();
    } catch (const InvalidInput& e) {
        throw UsageError(e.what());
    }
    return policy;
}

DatasetSpec dataset_from(const std::string& name, const std::optional<fs::path>& points,
                         const std::optional<double>& cluster_sigma) {
    DatasetSpec spec;
    try {
        spec.kind = parse_dataset_kind(name);
    } catch (const InvalidInput& e) {
        throw UsageError(e.what());
    }
    if (spec.kind == DatasetKind::FilePointCloud) {
        if (!points) throw UsageError("dataset pointcloud needs --points");
        spec.file_path = *points;
        ensure_loaded(spec);
    } else if (points) {
        throw UsageError("--points only applies to dataset pointcloud");
    }
    if (cluster_sigma) {
        if (spec.kind != DatasetKind::Clusters2D) throw UsageError("--cluster-sigma only applies to dataset clusters2d");
        if (!(*cluster_sigma > 0.0)) throw UsageError("--cluster-sigma must be positive");
        spec.cluster_sigma = *cluster_sigma;
    }
    return spec;
}

int cmd_train(const TrainArgs& a, std::ostream& out) {
    TrialConfig config;
    config.dataset = dataset_from(a.dataset, a.points, a.cluster_sigma);
    config.map_side = side_of(a.size);
    config.policy = policy_from(a.variant, a);
    try {
        config.init = parse_init_mode(a.init);
    } catch (const InvalidInput& e) {
        throw UsageError(e.what());
    }
    config.iterations = a.iters;
    config.factor = a.factor;
    config.record_every = a.record_every;
    config.seed = a.common.seed;
    try {
        config.validate();
    } catch (const InvalidInput& e) {
        throw UsageError(e.what());
    }

    prepare_out_dir(a.common.out_dir);
    omp_set_num_threads(static_cast<int>(a.common.jobs));
    const TrialResult result = run_trial(config);

    const fs::path csv = a.common.out_dir / (a.name + "_results.csv");
    const fs::path traces = a.common.out_dir / (a.name + "_traces.json");
    persist_results(std::span(&result, 1), csv);
    persist_traces(std::span(&result, 1), traces);
    out << "wrote " << csv.string() << '\n' << "wrote " << traces.string() << '\n';

    if (result.dim == 2) {
        const fs::path mesh = a.common.out_dir / (a.name + "_mesh.svg");
        const std::string title = config.dataset.name() + " n=" + std::to_string(config.units()) + " " +
                                  to_string(config.policy.variant()) + " " + config.policy.param_name() + "=" +
                                  fmt(config.policy.param_value()) + " " + to_string(config.init);
        write_text(mesh, svg::mesh(result.final_weights, LatticeGraph::square(config.map_side), title));
        out << "wrote " << mesh.string() << '\n';
    } else {
        out << "mesh plot skipped: sample space is " << result.dim << "D, plots need 2D\n";
    }

    out << "final_A " << fmt(result.final_alfa) << "  final_quantization " << fmt(result.final_quantization);
    if (result.edge_crossings) out << "  edge_crossings " << *result.edge_crossings;
    out << "  wall_time " << fmt(result.wall_time_seconds, "%.3f") << "s\n";
    return Ok;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepArgs {
    Common common;
    fs::path config;
};

void add_sweep(CLI::App& app, SweepArgs& a) {
    auto* cmd = app.add_subcommand("sweep", "Run a parameter sweep from a JSON config");
    cmd->add_option("config", a.config, "Sweep config file")->required();
    add_common(cmd, a.common);
}

fs::path under(const fs::path& dir, const fs::path& p) { return p.is_absolute() ? p : dir / p; }

void print_summary(const std::vector<TrialOutcome>& outcomes, const SweepPlan& plan, double factor,
                   std::ostream& out) {
    struct Cell {
        const TrialConfig* config = nullptr;
        std::vector<double> alfa;
        std::size_t tangled = 0;
        std::size_t with_crossings = 0;
        std::size_t failed = 0;
    };
    std::vector<Cell> cells(plan.cells);
    // Known-good reference per (dataset, side): trials with no edge crossings.
    std::map<std::pair<std::string, std::size_t>, std::vector<double>> reference;
    for (const auto& o : outcomes) {
        Cell& c = cells[o.config.cell];
        if (!c.config) c.config = &o.config;
        if (!o.result) {
            ++c.failed;
            continue;
        }
        c.alfa.push_back(o.result->final_alfa);
        if (o.result->edge_crossings) {
            ++c.with_crossings;
            if (*o.result->edge_crossings > 0) {
                ++c.tangled;
            } else {
                reference[{o.config.dataset.name(), o.config.map_side}].push_back(o.result->final_alfa);
            }
        }
    }

    out << "dataset      units param        value      init  trials  median_A   IQR_A      tangled(x)  tangled(A)  failed\n";
    for (const Cell& c : cells) {
        if (!c.config) continue;
        const auto& cfg = *c.config;
        char line[256];
        std::string med = "-", spread = "-", crossed = "-", classified = "-";
        if (!c.alfa.empty()) {
            med = fmt(median(c.alfa), "%.5f");
            spread = fmt(iqr(c.alfa), "%.5f");
        }
        if (c.with_crossings) crossed = fmt(static_cast<double>(c.tangled) / c.with_crossings, "%.3f");
        const auto ref = reference.find({cfg.dataset.name(), cfg.map_side});
        if (ref != reference.end() && !c.alfa.empty()) {
            const double baseline = median(ref->second);
            if (baseline > 0.0) {
                std::size_t n = 0;
                for (double a : c.alfa) n += classify_trial(a, baseline, factor) == TangleClass::Tangled;
                classified = fmt(static_cast<double>(n) / c.alfa.size(), "%.3f");
            }
        }
        std::snprintf(line, sizeof line, "%-12s %5zu  %-11s  %-9s  %-4s  %6zu  %-9s  %-9s  %-10s  %-10s  %zu\n",
                      cfg.dataset.name().c_str(), cfg.units(), cfg.policy.param_name().c_str(),
                      fmt(cfg.policy.param_value(), "%.4g").c_str(), to_string(cfg.init).c_str(),
                      c.alfa.size() + c.failed, med.c_str(), spread.c_str(), crossed.c_str(), classified.c_str(),
                      c.failed);
        out << line;
    }
    out << "tangled(x): fraction with lattice-edge crossings (2D only); tangled(A): final_A > " << fmt(factor)
        << " x median final_A of crossing-free trials of the same dataset and size\n";
}

int cmd_sweep(const SweepArgs& a, const CLI::App& cmd, std::ostream& out, std::ostream& err) {
    SweepConfig cfg = load_sweep_config(a.config);
    if (cmd.count("--seed")) cfg.axes.base_seed = a.common.seed;
    if (cmd.count("--jobs")) cfg.jobs = a.common.jobs;

    const SweepPlan plan = expand_plan(cfg.axes);
    prepare_out_dir(a.common.out_dir);
    const fs::path csv = under(a.common.out_dir, cfg.csv_path);
    out << "sweep: " << plan.cells << " cells x " << plan.repeats << " repeats = " << plan.trials.size()
        << " trials on " << cfg.jobs << " thread(s)\n";

    std::size_t next_report = 0;
    const auto outcomes = run_sweep(plan, cfg.jobs, [&](std::size_t done, std::size_t total) {
        const std::size_t pct = done * 100 / total;
        if (pct >= next_report) {
            err << "progress " << done << "/" << total << '\n';
            next_report = pct / 10 * 10 + 10;
        }
    });

    std::vector<TrialResult> results;
    std::size_t failures = 0;
    for (const auto& o : outcomes) {
        if (o.result) {
            results.push_back(*o.result);
        } else {
            ++failures;
            err << "trial cell " << o.config.cell << " repeat " << o.config.repeat << " failed: " << o.error << '\n';
        }
    }
    persist_results(results, csv);
    out << "wrote " << csv.string() << '\n';
    if (cfg.traces_path) {
        const fs::path traces = under(a.common.out_dir, *cfg.traces_path);
        persist_traces(results, traces);
        out << "wrote " << traces.string() << '\n';
    }
    print_summary(outcomes, plan, cfg.tangle_factor, out);
    if (failures) {
        out << failures << " trial(s) failed\n";
        return Runtime;
    }
    return Ok;
}

// ---------------------------------------------------------------------------
// bench

struct BenchArgs {
    Common common;
    std::vector<std::size_t> sizes{100, 400, 900, 1600};
    std::size_t samples = 100000;
    std::size_t repeats = 3;
    std::string dataset = "square";
    std::optional<fs::path> points;
    double cq = 0.15;
    std::string csv = "bench.csv";
};

void add_bench(CLI::App& app, BenchArgs& a) {
    auto* cmd = app.add_subcommand("bench", "Time FNNSOM training at a fixed sample budget across map sizes");
    cmd->add_option("--sizes", a.sizes, "Unit counts (perfect squares, at least three)")->delimiter(',');
    cmd->add_option("--samples", a.samples, "Samples per size")->check(CLI::PositiveNumber);
    cmd->add_option("--repeats", a.repeats, "Timed runs per size; the median is reported")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--dataset", a.dataset, "Dataset to sample from");
    cmd->add_option("--points", a.points, "Point-cloud CSV");
    cmd->add_option("--cq", a.cq, "FNNSOM c_q");
    cmd->add_option("--csv", a.csv, "Timing CSV file name");
    add_common(cmd, a.common);
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
    if (a.sizes.size() < 3) throw InvalidInput("bench needs at least three map sizes");
    std::vector<std::size_t> sides;
    for (std::size_t n : a.sizes) sides.push_back(side_of(n));

    TrialConfig base;
    base.dataset = dataset_from(a.dataset, a.points, std::nullopt);
    base.policy = RatePolicy::fnnsom(a.cq);
    base.init = InitMode::Random;
    base.seed = a.common.seed;

    prepare_out_dir(a.common.out_dir);
    const fs::path csv = a.common.out_dir / a.csv;
    std::ofstream file(csv, std::ios::binary);
    if (!file) throw IoError("cannot write " + csv.string());
    file << "map_size,samples,wall_time_seconds,ns_per_sample\n";

    out << "fixed budget: " << a.samples << " samples per map size (not scaled with n), median of " << a.repeats
        << " run(s)\n";
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < sides.size(); ++i) {
        TrialConfig c = base;
        c.map_side = sides[i];
        std::vector<double> times;
        for (std::size_t r = 0; r < a.repeats; ++r) times.push_back(time_fixed_budget(c, a.samples));
        const double t = median(times);
        const double per = t / static_cast<double>(a.samples) * 1e9;
        xs.push_back(static_cast<double>(a.sizes[i]));
        ys.push_back(t);
        file << a.sizes[i] << ',' << a.samples << ',' << fmt(t, "%.9g") << ',' << fmt(per, "%.6g") << '\n';
        out << "n=" << a.sizes[i] << "  time " << fmt(t, "%.4f") << " s  (" << fmt(per, "%.1f") << " ns/sample)\n";
    }
    if (!file) throw IoError("write failed on " + csv.string());

    const LinearFit fit = fit_linear(xs, ys);
    out << "linear fit time = a*n + b: a = " << fmt(fit.slope, "%.6g") << " s/unit, b = " << fmt(fit.intercept, "%.6g")
        << " s, R^2 = " << fmt(fit.r_squared, "%.6f") << '\n';
    out << "wrote " << csv.string() << '\n';
    return Ok;
}

// ---------------------------------------------------------------------------
// plot

struct PlotArgs {
    Common common;
    std::optional<fs::path> csv;
    std::optional<fs::path> traces;
    std::size_t index = 0;
    std::string name = "plot";
};

void add_plot(CLI::App& app, PlotArgs& a) {
    auto* cmd = app.add_subcommand("plot", "Render SVG plots from sweep or train outputs");
    cmd->add_option("--csv", a.csv, "Results CSV: scatter of final_A against the swept parameter");
    cmd->add_option("--mesh", a.traces, "Trace JSON: mesh of one trial's final weights");
    cmd->add_option("--index", a.index, "Trial index within the trace file");
    cmd->add_option("--name", a.name, "Output file prefix");
    add_common(cmd, a.common);
}

int cmd_plot(const PlotArgs& a, std::ostream& out) {
    if (!a.csv && !a.traces) throw UsageError("plot needs --csv and/or --mesh");

    std::string scatter_svg, mesh_svg;
    if (a.csv) {
        const auto rows = read_results_csv(*a.csv);
        if (rows.empty()) throw ParseError("results file has no rows", 2);
        std::vector<svg::ScatterPoint> pts;
        std::string param = rows.front().param_name;
        for (const auto& r : rows) {
            pts.push_back({r.param_value, r.final_alfa});
            if (r.param_name != param) param = "parameter";
        }
        scatter_svg = svg::scatter(pts, true, param, "final A", a.csv->filename().string());
    }
    if (a.traces) {
        std::ifstream in(*a.traces, std::ios::binary);
        if (!in) throw IoError("cannot open " + a.traces->string());
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("trace file is not valid JSON: ") + e.what(), 0);
        }
        if (!doc.is_array() || a.index >= doc.size()) {
            throw UsageError("--index " + std::to_string(a.index) + " is out of range for " + a.traces->string());
        }
        const auto& entry = doc[a.index];
        try {
            const auto dim = entry.at("dim").get<std::size_t>();
            if (dim != 2) throw UnsupportedDimension("mesh plots need 2D weights, trial has dimension " + std::to_string(dim));
            std::vector<double> w;
            for (const auto& unit : entry.at("final_weights")) {
                for (const auto& v : unit) w.push_back(v.get<double>());
            }
            const auto side = entry.at("config").at("map_side").get<std::size_t>();
            if (w.size() != side * side * 2) throw ParseError("final_weights does not match map_side", 0);
            const auto& c = entry.at("config");
            const std::string title = c.at("dataset").get<std::string>() + " " + c.at("variant").get<std::string>() +
                                      " " + c.at("param_name").get<std::string>() + "=" +
                                      fmt(c.at("param_value").get<double>()) + " " +
                                      c.at("init_mode").get<std::string>();
            mesh_svg = svg::mesh(w, LatticeGraph::square(side), title);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("trace entry has an unexpected shape: ") + e.what(), 0);
        }
    }

    prepare_out_dir(a.common.out_dir);
    if (!scatter_svg.empty()) {
        const fs::path p = a.common.out_dir / (a.name + "_scatter.svg");
        write_text(p, scatter_svg);
        out << "wrote " << p.string() << '\n';
    }
    if (!mesh_svg.empty()) {
        const fs::path p = a.common.out_dir / (a.name + "_mesh.svg");
        write_text(p, mesh_svg);
        out << "wrote " << p.string() << '\n';
    }
    return Ok;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Local-neighborhood self-organizing maps"};
    app.name("locsom");
    app.require_subcommand(1);

    TrainArgs train;
    SweepArgs sweep;
    BenchArgs bench;
    PlotArgs plot;
    add_train(app, train);
    add_sweep(app, sweep);
    add_bench(app, bench);
    add_plot(app, plot);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return Ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        if (const auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
            err << sub->help();
        } else {
            err << app.help();
        }
        return Usage;
    }

    try {
        const CLI::App* cmd = app.get_subcommands().front();
        const std::string name = cmd->get_name();
        if (name == "train") return cmd_train(train, out);
        if (name == "sweep") return cmd_sweep(sweep, *cmd, out, err);
        if (name == "bench") return cmd_bench(bench, out);
        return cmd_plot(plot, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return Usage;
    } catch (const InvalidInput& e) {
        err << "invalid input: " << e.what() << '\n';
        return Usage;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return Config;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return Config;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << '\n';
        return Io;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return Runtime;
    }
}

}  // namespace locsom::cli
