#include "locsom/harness.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "locsom/error.hpp"
#include "locsom/random.hpp"

namespace locsom {

void TrialConfig::validate() const {
    if (map_side < 2) throw InvalidInput("map side must be at least 2");
    if (iterations < 1) throw InvalidInput("iterations must be at least 1");
    if (factor < 1) throw InvalidInput("samples-per-iteration factor must be at least 1");
    if (record_every < 1) throw InvalidInput("record stride must be at least 1");
    policy.validate();
}

std::vector<double> geometric_grid(double lo, double hi, std::size_t count) {
    if (!(lo > 0.0)) throw InvalidInput("geometric grid needs lo > 0");
    if (!(hi > lo)) throw InvalidInput("geometric grid needs hi > lo");
    if (count < 2) throw InvalidInput("geometric grid needs at least two points");
    std::vector<double> out(count);
    const double span = std::log(hi / lo);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = lo * std::exp(span * static_cast<double>(i) / static_cast<double>(count - 1));
    }
    out.front() = lo;
    out.back() = hi;
    return out;
}

RatePolicy with_param(RatePolicy policy, double value) {
    std::visit(
        [value](auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, NnsomParams>) {
                p.l_zeta = value;
            } else if constexpr (std::is_same_v<T, FnnsomParams>) {
                p.c_q = value;
            } else {
                p.initial_rate = value;
            }
        },
        policy.params);
    return policy;
}

TrialResult run_trial(const TrialConfig& config) {
    config.validate();

    DatasetSpec data = config.dataset;
    ensure_loaded(data);
    data.seed = derive_seed(config.seed, 2, config.dataset.seed);

    const LatticeGraph graph = LatticeGraph::square(config.map_side);
    MapState state = init_weights(config.init, graph.size(), bounding_box(data), derive_seed(config.seed, 1));
    SampleStream stream(data);

    RatePolicy policy = config.policy;
    if (auto* c = std::get_if<ClassicalParams>(&policy.params)) {
        *c = resolve_classical(*c, graph, config.iterations);
    }

    TrialResult result;
    result.config = config;
    result.alfa_trace.reserve(config.iterations / config.record_every + 1);

    const std::size_t per_iteration = config.factor * graph.size();
    std::size_t processed = 0;
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t it = 0; it < config.iterations; ++it) {
        for (std::size_t k = 0; k < per_iteration; ++k) {
            apply_sample(state, policy, graph, *stream.next(), it);
        }
        processed += per_iteration;
        const std::size_t done = it + 1;
        if (done % config.record_every == 0 || done == config.iterations) {
            result.alfa_trace.push_back({done, map_alfa(state)});
        }
    }
    const auto stop = std::chrono::steady_clock::now();

    result.wall_time_seconds = std::chrono::duration<double>(stop - start).count();
    result.samples_processed = processed;
    result.final_alfa = result.alfa_trace.back().value;
    result.final_quantization = map_quantization(state);
    result.dim = state.dim();
    result.final_weights = state.weights_row_major();
    if (state.dim() == 2) result.edge_crossings = count_edge_crossings(state, graph);
    return result;
}

double time_fixed_budget(const TrialConfig& config, std::size_t samples) {
    config.validate();
    if (samples == 0) throw InvalidInput("sample budget must be positive");

    DatasetSpec data = config.dataset;
    ensure_loaded(data);
    data.seed = derive_seed(config.seed, 2, config.dataset.seed);
    const LatticeGraph graph = LatticeGraph::square(config.map_side);
    MapState state = init_weights(config.init, graph.size(), bounding_box(data), derive_seed(config.seed, 1));
    SampleStream stream(data);
    RatePolicy policy = config.policy;
    if (auto* c = std::get_if<ClassicalParams>(&policy.params)) *c = resolve_classical(*c, graph, 1);

    const auto start = std::chrono::steady_clock::now();
    for (std::size_t k = 0; k < samples; ++k) apply_sample(state, policy, graph, *stream.next(), 0);
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(stop - start).count();
}

SweepPlan expand_plan(const SweepAxes& axes) {
    if (axes.datasets.empty() || axes.map_sides.empty() || axes.param_values.empty() || axes.inits.empty()) {
        throw InvalidInput("sweep has an empty axis");
    }
    if (axes.repeats < 1) throw InvalidInput("sweep needs at least one repeat");

    SweepPlan plan;
    plan.repeats = axes.repeats;
    std::size_t cell = 0;
    for (const auto& dataset : axes.datasets) {
        for (std::size_t side : axes.map_sides) {
            for (double value : axes.param_values) {
                for (InitMode init : axes.inits) {
                    for (std::size_t rep = 0; rep < axes.repeats; ++rep) {
                        TrialConfig c;
                        c.dataset = dataset;
                        c.map_side = side;
                        c.policy = with_param(axes.policy, value);
                        c.init = init;
                        c.iterations = axes.iterations;
                        c.factor = axes.factor;
                        c.record_every = axes.record_every;
                        c.seed = derive_seed(axes.base_seed, cell, rep);
                        c.cell = cell;
                        c.repeat = rep;
                        plan.trials.push_back(std::move(c));
                    }
                    ++cell;
                }
            }
        }
    }
    plan.cells = cell;
    return plan;
}

std::vector<TrialOutcome> run_sweep(const SweepPlan& plan, std::size_t parallelism, const ProgressFn& progress) {
    if (plan.trials.empty()) throw InvalidInput("sweep plan is empty");
    if (parallelism < 1) throw InvalidInput("parallelism must be at least 1");

    std::vector<TrialOutcome> out(plan.trials.size());
    std::atomic<std::size_t> done{0};
    const auto total = static_cast<long long>(plan.trials.size());

#pragma omp parallel for num_threads(static_cast<int>(parallelism)) schedule(dynamic, 1)
    for (long long i = 0; i < total; ++i) {
        auto& slot = out[static_cast<std::size_t>(i)];
        slot.config = plan.trials[static_cast<std::size_t>(i)];
        try {
            slot.result = run_trial(slot.config);
        } catch (const std::exception& e) {
            slot.error = e.what();
        }
        const std::size_t n = ++done;
        if (progress) {
#pragma omp critical(locsom_progress)
            progress(n, plan.trials.size());
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// persistence

namespace {

const char* kColumns[] = {"dataset",        "map_side",           "variant",        "param_name",
                          "param_value",    "init_mode",          "seed",           "repeat",
                          "final_A",        "final_quantization", "edge_crossings", "wall_time_seconds",
                          "samples_processed"};
constexpr std::size_t kColumnCount = std::size(kColumns);

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <typename T>
T parse_number(const std::string& field, const char* column, std::size_t line) {
    T v{};
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
        throw ParseError(std::string("bad value '") + field + "' in column " + column, line);
    }
    return v;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

const std::string& results_csv_header() {
    static const std::string header = [] {
        std::string h;
        for (std::size_t i = 0; i < kColumnCount; ++i) {
            if (i) h += ',';
            h += kColumns[i];
        }
        return h;
    }();
    return header;
}

ResultRow to_row(const TrialResult& r) {
    ResultRow row;
    row.dataset = r.config.dataset.name();
    row.map_side = r.config.map_side;
    row.variant = to_string(r.config.policy.variant());
    row.param_name = r.config.policy.param_name();
    row.param_value = r.config.policy.param_value();
    row.init_mode = to_string(r.config.init);
    row.seed = r.config.seed;
    row.repeat = r.config.repeat;
    row.final_alfa = r.final_alfa;
    row.final_quantization = r.final_quantization;
    row.edge_crossings = r.edge_crossings;
    row.wall_time_seconds = r.wall_time_seconds;
    row.samples_processed = r.samples_processed;
    return row;
}

void persist_results(std::span<const TrialResult> results, const std::filesystem::path& csv_path) {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw IoError("cannot write " + csv_path.string());
    out << results_csv_header() << '\n';
    for (const auto& r : results) {
        const ResultRow row = to_row(r);
        out << row.dataset << ',' << row.map_side << ',' << row.variant << ',' << row.param_name << ','
            << fmt_double(row.param_value) << ',' << row.init_mode << ',' << row.seed << ',' << row.repeat << ','
            << fmt_double(row.final_alfa) << ',' << fmt_double(row.final_quantization) << ','
            << (row.edge_crossings ? std::to_string(*row.edge_crossings) : std::string()) << ','
            << fmt_double(row.wall_time_seconds) << ',' << row.samples_processed << '\n';
    }
    if (!out) throw IoError("write failed on " + csv_path.string());
}

void persist_traces(std::span<const TrialResult> results, const std::filesystem::path& json_path) {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& r : results) {
        const auto& c = r.config;
        nlohmann::json trace = nlohmann::json::array();
        for (const auto& p : r.alfa_trace) trace.push_back({p.iteration, p.value});
        nlohmann::json weights = nlohmann::json::array();
        for (std::size_t j = 0; j * r.dim < r.final_weights.size(); ++j) {
            weights.push_back(std::vector<double>(r.final_weights.begin() + static_cast<std::ptrdiff_t>(j * r.dim),
                                                  r.final_weights.begin() + static_cast<std::ptrdiff_t>((j + 1) * r.dim)));
        }
        doc.push_back({{"config",
                        {{"dataset", c.dataset.name()},
                         {"map_side", c.map_side},
                         {"variant", to_string(c.policy.variant())},
                         {"param_name", c.policy.param_name()},
                         {"param_value", c.policy.param_value()},
                         {"init_mode", to_string(c.init)},
                         {"iterations", c.iterations},
                         {"factor", c.factor},
                         {"seed", c.seed},
                         {"repeat", c.repeat}}},
                       {"trace", std::move(trace)},
                       {"dim", r.dim},
                       {"final_weights", std::move(weights)}});
    }
    std::ofstream out(json_path, std::ios::binary);
    if (!out) throw IoError("cannot write " + json_path.string());
    out << doc.dump() << '\n';
    if (!out) throw IoError("write failed on " + json_path.string());
}

std::vector<ResultRow> read_results_csv(const std::filesystem::path& csv_path) {
    std::ifstream in(csv_path, std::ios::binary);
    if (!in) throw IoError("cannot open " + csv_path.string());
    std::string line;
    if (!std::getline(in, line)) throw ParseError("results file is empty", 1);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != results_csv_header()) throw ParseError("unexpected results header", 1);

    std::vector<ResultRow> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto f = split(line);
        if (f.size() != kColumnCount) {
            throw ParseError("expected " + std::to_string(kColumnCount) + " columns, found " +
                                 std::to_string(f.size()),
                             lineno);
        }
        ResultRow r;
        r.dataset = f[0];
        r.map_side = parse_number<std::size_t>(f[1], kColumns[1], lineno);
        r.variant = f[2];
        r.param_name = f[3];
        r.param_value = parse_number<double>(f[4], kColumns[4], lineno);
        r.init_mode = f[5];
        r.seed = parse_number<std::uint64_t>(f[6], kColumns[6], lineno);
        r.repeat = parse_number<std::size_t>(f[7], kColumns[7], lineno);
        r.final_alfa = parse_number<double>(f[8], kColumns[8], lineno);
        r.final_quantization = parse_number<double>(f[9], kColumns[9], lineno);
        if (!f[10].empty()) r.edge_crossings = parse_number<std::size_t>(f[10], kColumns[10], lineno);
        r.wall_time_seconds = parse_number<double>(f[11], kColumns[11], lineno);
        r.samples_processed = parse_number<std::size_t>(f[12], kColumns[12], lineno);
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace locsom
