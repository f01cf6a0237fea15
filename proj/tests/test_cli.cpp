#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "locsom/cli.hpp"
#include "locsom/error.hpp"
#include "locsom/harness.hpp"
#include "locsom/lattice.hpp"
#include "locsom/svg.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "locsom");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = locsom::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
    const auto d = fs::temp_directory_path() / name;
    fs::remove_all(d);
    return d;
}

bool well_formed(const fs::path& p) {
    boost::property_tree::ptree tree;
    try {
        boost::property_tree::read_xml(p.string(), tree);
    } catch (const boost::property_tree::xml_parser_error&) {
        return false;
    }
    return tree.count("svg") == 1;
}

std::size_t occurrences(const fs::path& p, const std::string& needle) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string s = ss.str();
    std::size_t n = 0;
    for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
    return n;
}

}  // namespace

TEST_CASE("exit codes are distinct") {
    using namespace locsom::cli;
    const std::set<int> codes{Ok, Usage, Config, Io, Runtime};
    CHECK(codes.size() == 5);
}

TEST_CASE("train writes three files") {
    const auto dir = fresh_dir("locsom_cli_train");
    const Run r = invoke({"train", "--dataset", "square", "--variant", "fnnsom", "--size", "100", "--cq", "0.15",
                          "--init", "ric", "--iters", "30", "--seed", "4", "--out-dir", dir.string()});
    INFO(r.err);
    REQUIRE(r.code == 0);
    CHECK(fs::exists(dir / "train_results.csv"));
    CHECK(fs::exists(dir / "train_traces.json"));
    CHECK(fs::exists(dir / "train_mesh.svg"));
    CHECK(well_formed(dir / "train_mesh.svg"));
    CHECK(locsom::read_results_csv(dir / "train_results.csv").size() == 1);
    CHECK(occurrences(dir / "train_mesh.svg", "<circle") == 100);
    CHECK(occurrences(dir / "train_mesh.svg", "<line") >= 180);

    const auto again = fresh_dir("locsom_cli_train2");
    invoke({"train", "--dataset", "square", "--variant", "fnnsom", "--size", "100", "--cq", "0.15", "--iters", "30",
            "--seed", "4", "--out-dir", again.string()});
    auto a = locsom::read_results_csv(dir / "train_results.csv").front();
    auto b = locsom::read_results_csv(again / "train_results.csv").front();
    a.wall_time_seconds = b.wall_time_seconds = 0;
    CHECK(a == b);
}

TEST_CASE("train usage errors") {
    CHECK(invoke({"train", "--dataset", "square", "--variant", "fnnsom"}).code == locsom::cli::Usage);
    CHECK(invoke({"train", "--dataset", "square", "--variant", "fnnsom", "--size", "99"}).code == locsom::cli::Usage);
    CHECK(invoke({"train", "--dataset", "square", "--variant", "nnsom", "--size", "16", "--cq", "0.1"}).code ==
          locsom::cli::Usage);
    CHECK(invoke({"train", "--dataset", "square", "--variant", "nnsom", "--size", "16", "--lzeta", "3"}).code ==
          locsom::cli::Usage);
    CHECK(invoke({"train", "--dataset", "pointcloud", "--variant", "nnsom", "--size", "16"}).code ==
          locsom::cli::Usage);
    CHECK(invoke({"train", "--dataset", "mobius", "--variant", "nnsom", "--size", "16"}).code == locsom::cli::Usage);
    CHECK(invoke({"train", "--dataset", "square", "--variant", "nnsom", "--size", "16", "--iters", "0"}).code ==
          locsom::cli::Usage);
    CHECK(invoke({}).code == locsom::cli::Usage);
    CHECK(invoke({"frobnicate"}).code == locsom::cli::Usage);
    CHECK(invoke({"--help"}).code == locsom::cli::Ok);
}

TEST_CASE("train on a 3D dataset omits the mesh") {
    const auto dir = fresh_dir("locsom_cli_sphere");
    const Run r = invoke({"train", "--dataset", "sphere", "--variant", "nnsom", "--size", "16", "--lzeta", "0.2",
                          "--iters", "10", "--out-dir", dir.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("mesh plot skipped") != std::string::npos);
    CHECK(fs::exists(dir / "train_results.csv"));
    CHECK(fs::exists(dir / "train_traces.json"));
    CHECK_FALSE(fs::exists(dir / "train_mesh.svg"));
}

TEST_CASE("train on a point cloud") {
    const auto dir = fresh_dir("locsom_cli_cloud");
    fs::create_directories(dir);
    {
        std::ofstream out(dir / "cloud.csv");
        for (int i = 0; i < 200; ++i) out << (i % 20) * 0.05 << ',' << (i / 20) * 0.1 << '\n';
    }
    const Run r = invoke({"train", "--dataset", "pointcloud", "--points", (dir / "cloud.csv").string(), "--variant",
                          "fnnsom", "--size", "16", "--iters", "10", "--out-dir", dir.string()});
    INFO(r.err);
    CHECK(r.code == 0);
    CHECK(invoke({"train", "--dataset", "pointcloud", "--points", (dir / "missing.csv").string(), "--variant",
                  "fnnsom", "--size", "16"})
              .code == locsom::cli::Io);
}

TEST_CASE("sweep from a config file") {
    const auto dir = fresh_dir("locsom_cli_sweep");
    fs::create_directories(dir);
    const auto cfg = dir / "sweep.json";
    std::ofstream(cfg) << R"({"dataset": "square", "variant": "fnnsom", "map_sides": [3],
        "grid": {"param": "c_q", "lo": 0.01, "hi": 1, "count": 19}, "iterations": 5, "repeats": 2,
        "output": {"csv": "res.csv", "traces": "tr.json"}})";
    const Run r = invoke({"sweep", cfg.string(), "--out-dir", dir.string(), "--jobs", "2"});
    INFO(r.err);
    REQUIRE(r.code == 0);
    CHECK(locsom::read_results_csv(dir / "res.csv").size() == 38);
    CHECK(fs::exists(dir / "tr.json"));
    CHECK(r.out.find("median_A") != std::string::npos);

    const auto bad = dir / "bad.json";
    std::ofstream(bad) << R"({"dataset": "square", "variant": "nnsom", "mapsize": 10})";
    const Run b = invoke({"sweep", bad.string()});
    CHECK(b.code == locsom::cli::Config);
    CHECK(b.err.find("mapsize") != std::string::npos);

    const auto broken = dir / "broken.json";
    std::ofstream(broken) << "{\n  \"dataset\": \"square\",\n  oops\n}";
    const Run c = invoke({"sweep", broken.string()});
    CHECK(c.code == locsom::cli::Config);
    CHECK(c.err.find("line 3") != std::string::npos);

    CHECK(invoke({"sweep", (dir / "missing.json").string()}).code == locsom::cli::Io);
}

TEST_CASE("bench") {
    const auto dir = fresh_dir("locsom_cli_bench");
    CHECK(invoke({"bench", "--sizes", "100"}).code == locsom::cli::Usage);
    CHECK(invoke({"bench", "--sizes", "100,400,901"}).code == locsom::cli::Usage);
    const Run r = invoke({"bench", "--sizes", "16,64,144", "--samples", "2000", "--repeats", "1", "--out-dir",
                          dir.string()});
    INFO(r.err);
    REQUIRE(r.code == 0);
    CHECK(r.out.find("R^2") != std::string::npos);
    CHECK(r.out.find("fixed budget") != std::string::npos);
    std::ifstream in(dir / "bench.csv");
    std::string line;
    std::size_t lines = 0;
    while (std::getline(in, line)) ++lines;
    CHECK(lines == 4);
}

TEST_CASE("plot") {
    const auto dir = fresh_dir("locsom_cli_plot");
    fs::create_directories(dir);
    const auto cfg = dir / "sweep.json";
    std::ofstream(cfg) << R"({"dataset": "square", "variant": "nnsom", "map_sides": [3],
        "grid": {"param": "l_zeta", "lo": 0.1, "hi": 1, "count": 4}, "iterations": 5, "repeats": 3,
        "output": {"csv": "res.csv", "traces": "tr.json"}})";
    REQUIRE(invoke({"sweep", cfg.string(), "--out-dir", dir.string()}).code == 0);

    const Run r = invoke({"plot", "--csv", (dir / "res.csv").string(), "--mesh", (dir / "tr.json").string(),
                          "--index", "5", "--out-dir", dir.string()});
    INFO(r.err);
    REQUIRE(r.code == 0);
    CHECK(well_formed(dir / "plot_scatter.svg"));
    CHECK(well_formed(dir / "plot_mesh.svg"));
    CHECK(occurrences(dir / "plot_scatter.svg", "class=\"marker\"") == 12);
    CHECK(invoke({"plot", "--mesh", (dir / "tr.json").string(), "--index", "12"}).code == locsom::cli::Usage);
    CHECK(invoke({"plot"}).code == locsom::cli::Usage);

    const auto empty = dir / "empty.csv";
    std::ofstream(empty) << locsom::results_csv_header() << '\n';
    const auto out = dir / "empty_out";
    CHECK(invoke({"plot", "--csv", empty.string(), "--out-dir", out.string()}).code == locsom::cli::Config);
    CHECK_FALSE(fs::exists(out / "plot_scatter.svg"));

    const auto wrong = dir / "wrong.csv";
    std::ofstream(wrong) << "a,b\n1,2\n";
    CHECK(invoke({"plot", "--csv", wrong.string(), "--out-dir", out.string()}).code == locsom::cli::Config);
}

TEST_CASE("svg output escapes text") {
    using namespace locsom;
    CHECK(svg::escape("a<b & \"c\" 'd'>") == "a&lt;b &amp; &quot;c&quot; &apos;d&apos;&gt;");
    const std::vector<svg::ScatterPoint> pts{{0.01, 0.2}, {0.1, 0.5}, {1.0, 0.1}};
    const auto p = fs::temp_directory_path() / "locsom_scatter.svg";
    std::ofstream(p) << svg::scatter(pts, true, "c_q <x>", "A & B", "t\"itle");
    CHECK(well_formed(p));
    CHECK(occurrences(p, "class=\"marker\"") == 3);
    const std::vector<double> w{0, 0, 1, 0, 0, 1, 1, 1};
    std::ofstream(p) << svg::mesh(w, LatticeGraph::square(2), "<mesh>");
    CHECK(well_formed(p));
    CHECK_THROWS_AS(svg::scatter({}, false, "x", "y", "t"), InvalidInput);
}
