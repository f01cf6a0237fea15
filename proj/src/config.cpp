#include "locsom/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace locsom {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& key, const std::string& what) {
    throw ConfigError("config key '" + key + "': " + what);
}

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& prefix) {
    for (const auto& [key, _] : obj.items()) {
        if (!known.count(key)) throw ConfigError("unknown config key '" + prefix + key + "'");
    }
}

std::size_t positive_int(const json& v, const std::string& key) {
    if (!v.is_number_integer() || v.get<long long>() < 1) fail(key, "expected a positive integer");
    return v.get<std::size_t>();
}

double number(const json& v, const std::string& key) {
    if (!v.is_number()) fail(key, "expected a number");
    return v.get<double>();
}

std::string text(const json& v, const std::string& key) {
    if (!v.is_string()) fail(key, "expected a string");
    return v.get<std::string>();
}

std::vector<std::string> one_or_many(const json& v, const std::string& key) {
    std::vector<std::string> out;
    if (v.is_string()) {
        out.push_back(v.get<std::string>());
    } else if (v.is_array() && !v.empty()) {
        for (const auto& e : v) out.push_back(text(e, key));
    } else {
        fail(key, "expected a string or a non-empty array of strings");
    }
    return out;
}

}  // namespace

SweepConfig parse_sweep_config(const std::string& source) {
    json doc;
    try {
        doc = json::parse(source);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");

    reject_unknown(doc,
                   {"dataset", "variant", "map_sides", "grid", "init", "iterations", "factor", "repeats", "seed",
                    "record_every", "jobs", "sigma", "ema_decay", "cluster_sigma", "points", "tangle_factor",
                    "output"},
                   "");
    for (const char* required : {"dataset", "variant", "map_sides", "grid"}) {
        if (!doc.contains(required)) fail(required, "missing");
    }

    SweepConfig cfg;
    SweepAxes& axes = cfg.axes;

    Variant variant;
    try {
        variant = parse_variant(text(doc["variant"], "variant"));
    } catch (const InvalidInput& e) {
        fail("variant", e.what());
    }
    switch (variant) {
        case Variant::Classical: axes.policy = RatePolicy::classical(); break;
        case Variant::Nnsom: axes.policy = RatePolicy::nnsom(0.5); break;
        case Variant::Fnnsom: axes.policy = RatePolicy::fnnsom(0.15); break;
    }
    if (doc.contains("sigma")) {
        auto* p = std::get_if<FnnsomParams>(&axes.policy.params);
        if (!p) fail("sigma", "only applies to the fnnsom variant");
        p->sigma = number(doc["sigma"], "sigma");
    }
    if (doc.contains("ema_decay")) axes.policy.ema_decay = number(doc["ema_decay"], "ema_decay");

    std::optional<std::filesystem::path> points;
    if (doc.contains("points")) points = text(doc["points"], "points");
    double cluster_sigma = 0.5;
    if (doc.contains("cluster_sigma")) cluster_sigma = number(doc["cluster_sigma"], "cluster_sigma");
    for (const auto& name : one_or_many(doc["dataset"], "dataset")) {
        DatasetSpec spec;
        try {
            spec.kind = parse_dataset_kind(name);
        } catch (const InvalidInput& e) {
            fail("dataset", e.what());
        }
        spec.cluster_sigma = cluster_sigma;
        if (spec.kind == DatasetKind::FilePointCloud) {
            if (!points) fail("points", "required by the pointcloud dataset");
            spec.file_path = points;
            ensure_loaded(spec);
        }
        axes.datasets.push_back(std::move(spec));
    }

    const json& sides = doc["map_sides"];
    if (!sides.is_array() || sides.empty()) fail("map_sides", "expected a non-empty array");
    for (const auto& s : sides) {
        const std::size_t side = positive_int(s, "map_sides");
        if (side < 2) fail("map_sides", "side lengths must be at least 2");
        axes.map_sides.push_back(side);
    }

    const json& grid = doc["grid"];
    if (!grid.is_object()) fail("grid", "expected an object");
    reject_unknown(grid, {"param", "lo", "hi", "count", "values"}, "grid.");
    if (!grid.contains("param")) fail("grid.param", "missing");
    const std::string param = text(grid["param"], "grid.param");
    if (param != axes.policy.param_name()) {
        fail("grid.param", "variant " + to_string(variant) + " sweeps '" + axes.policy.param_name() + "', not '" +
                               param + "'");
    }
    if (grid.contains("values")) {
        if (!grid["values"].is_array() || grid["values"].empty()) fail("grid.values", "expected a non-empty array");
        for (const auto& v : grid["values"]) axes.param_values.push_back(number(v, "grid.values"));
    } else {
        for (const char* k : {"lo", "hi", "count"}) {
            if (!grid.contains(k)) fail(std::string("grid.") + k, "missing");
        }
        try {
            axes.param_values = geometric_grid(number(grid["lo"], "grid.lo"), number(grid["hi"], "grid.hi"),
                                               positive_int(grid["count"], "grid.count"));
        } catch (const InvalidInput& e) {
            fail("grid", e.what());
        }
    }

    if (doc.contains("init")) {
        axes.inits.clear();
        for (const auto& name : one_or_many(doc["init"], "init")) {
            try {
                axes.inits.push_back(parse_init_mode(name));
            } catch (const InvalidInput& e) {
                fail("init", e.what());
            }
        }
    }
    if (doc.contains("iterations")) axes.iterations = positive_int(doc["iterations"], "iterations");
    if (doc.contains("factor")) axes.factor = positive_int(doc["factor"], "factor");
    if (doc.contains("repeats")) axes.repeats = positive_int(doc["repeats"], "repeats");
    if (doc.contains("record_every")) axes.record_every = positive_int(doc["record_every"], "record_every");
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned()) fail("seed", "expected a non-negative integer");
        axes.base_seed = doc["seed"].get<std::uint64_t>();
    }
    if (doc.contains("jobs")) cfg.jobs = positive_int(doc["jobs"], "jobs");
    if (doc.contains("tangle_factor")) {
        cfg.tangle_factor = number(doc["tangle_factor"], "tangle_factor");
        if (!(cfg.tangle_factor > 0.0)) fail("tangle_factor", "must be positive");
    }
    if (doc.contains("output")) {
        const json& out = doc["output"];
        if (!out.is_object()) fail("output", "expected an object");
        reject_unknown(out, {"csv", "traces"}, "output.");
        if (out.contains("csv")) cfg.csv_path = text(out["csv"], "output.csv");
        if (out.contains("traces")) cfg.traces_path = text(out["traces"], "output.traces");
    }

    for (double v : axes.param_values) {
        try {
            with_param(axes.policy, v).validate();
        } catch (const InvalidInput& e) {
            fail("grid", e.what());
        }
    }
    return cfg;
}

SweepConfig load_sweep_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_sweep_config(ss.str());
}

}  // namespace locsom
