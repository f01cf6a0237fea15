#include "locsom/datasets.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>

#include "locsom/error.hpp"

namespace locsom {

namespace {

constexpr std::array<std::array<double, 2>, 5> kCenters{{{0.0, 0.0}, {0.0, 5.0}, {5.0, 0.0}, {5.0, 5.0}, {2.5, 2.5}}};

constexpr double kDispersionExtent = 4.0;

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

}  // namespace

std::string to_string(DatasetKind k) {
    switch (k) {
        case DatasetKind::Square: return "square";
        case DatasetKind::Clusters2D: return "clusters2d";
        case DatasetKind::SphericalShell: return "sphere";
        case DatasetKind::Dispersion3D: return "dispersion3d";
        case DatasetKind::FilePointCloud: return "pointcloud";
    }
    return "unknown";
}

DatasetKind parse_dataset_kind(const std::string& s) {
    if (s == "square") return DatasetKind::Square;
    if (s == "clusters2d") return DatasetKind::Clusters2D;
    if (s == "sphere" || s == "spherical_shell") return DatasetKind::SphericalShell;
    if (s == "dispersion3d" || s == "dispersion") return DatasetKind::Dispersion3D;
    if (s == "pointcloud") return DatasetKind::FilePointCloud;
    throw InvalidInput("unknown dataset '" + s +
                       "' (expected square, clusters2d, sphere, dispersion3d or pointcloud)");
}

std::span<const std::array<double, 2>> cluster_centers() noexcept { return kCenters; }

PointCloud ingest_point_cloud(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open point cloud file " + path.string());

    PointCloud cloud;
    std::string line;
    std::size_t lineno = 0;
    std::vector<double> row;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string_view text = trim(line);
        if (text.empty() || text.front() == '#') continue;

        row.clear();
        std::size_t start = 0;
        for (;;) {
            const std::size_t comma = text.find(',', start);
            const std::string_view field =
                trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
            if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
                throw ParseError("non-numeric field '" + std::string(field) + "'", lineno);
            }
            if (!std::isfinite(v)) throw ParseError("non-finite value", lineno);
            row.push_back(v);
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }

        if (cloud.dim == 0) {
            cloud.dim = row.size();
        } else if (row.size() != cloud.dim) {
            throw ParseError("expected " + std::to_string(cloud.dim) + " fields, found " +
                                 std::to_string(row.size()),
                             lineno);
        }
        cloud.coords.insert(cloud.coords.end(), row.begin(), row.end());
    }
    if (in.bad()) throw IoError("read error on " + path.string());
    if (cloud.dim == 0) throw ParseError("point cloud file " + path.string() + " has no points", lineno);
    return cloud;
}

void ensure_loaded(DatasetSpec& spec) {
    if (spec.kind != DatasetKind::FilePointCloud || spec.cloud) return;
    if (!spec.file_path) throw InvalidInput("pointcloud dataset needs a file path");
    spec.cloud = std::make_shared<const PointCloud>(ingest_point_cloud(*spec.file_path));
}

std::size_t dataset_dim(const DatasetSpec& spec) {
    switch (spec.kind) {
        case DatasetKind::Square:
        case DatasetKind::Clusters2D: return 2;
        case DatasetKind::SphericalShell:
        case DatasetKind::Dispersion3D: return 3;
        case DatasetKind::FilePointCloud: {
            DatasetSpec copy = spec;
            ensure_loaded(copy);
            return copy.cloud->dim;
        }
    }
    return 0;
}

Box bounding_box(const DatasetSpec& spec) {
    switch (spec.kind) {
        case DatasetKind::Square: return {{0.0, 0.0}, {1.0, 1.0}};
        case DatasetKind::Clusters2D: {
            const double pad = 3.0 * spec.cluster_sigma;
            return {{0.0 - pad, 0.0 - pad}, {5.0 + pad, 5.0 + pad}};
        }
        case DatasetKind::SphericalShell: return {{-1.0, -1.0, -1.0}, {1.0, 1.0, 1.0}};
        case DatasetKind::Dispersion3D:
            return {std::vector<double>(3, -kDispersionExtent), std::vector<double>(3, kDispersionExtent)};
        case DatasetKind::FilePointCloud: {
            DatasetSpec copy = spec;
            ensure_loaded(copy);
            const PointCloud& c = *copy.cloud;
            const auto first = c.point(0);
            Box box{{first.begin(), first.end()}, {first.begin(), first.end()}};
            for (std::size_t i = 1; i < c.size(); ++i) {
                const auto p = c.point(i);
                for (std::size_t a = 0; a < c.dim; ++a) {
                    box.lo[a] = std::min(box.lo[a], p[a]);
                    box.hi[a] = std::max(box.hi[a], p[a]);
                }
            }
            return box;
        }
    }
    throw InvalidInput("unknown dataset kind");
}

SampleStream::SampleStream(DatasetSpec spec, bool single_pass)
    : spec_(std::move(spec)), dim_(0), rng_(spec_.seed), single_pass_(single_pass) {
    ensure_loaded(spec_);
    dim_ = dataset_dim(spec_);
    if (spec_.kind == DatasetKind::Clusters2D && !(spec_.cluster_sigma >= 0.0)) {
        throw InvalidInput("cluster sigma must be non-negative");
    }
    buf_.resize(dim_);
    if (spec_.kind == DatasetKind::FilePointCloud && single_pass_) {
        order_.resize(spec_.cloud->size());
        std::iota(order_.begin(), order_.end(), 0);
        for (std::size_t i = order_.size(); i > 1; --i) std::swap(order_[i - 1], order_[rng_.below(i)]);
    }
}

std::optional<std::span<const double>> SampleStream::next() {
    switch (spec_.kind) {
        case DatasetKind::Square:
            buf_[0] = rng_.uniform();
            buf_[1] = rng_.uniform();
            break;
        case DatasetKind::Clusters2D: {
            const auto& c = kCenters[rng_.below(kCenters.size())];
            buf_[0] = c[0] + spec_.cluster_sigma * rng_.normal();
            buf_[1] = c[1] + spec_.cluster_sigma * rng_.normal();
            break;
        }
        case DatasetKind::SphericalShell: {
            double norm = 0.0;
            do {
                for (double& v : buf_) v = rng_.normal();
                norm = std::sqrt(buf_[0] * buf_[0] + buf_[1] * buf_[1] + buf_[2] * buf_[2]);
            } while (norm < 1e-12);
            for (double& v : buf_) v /= norm;
            break;
        }
        case DatasetKind::Dispersion3D:
            for (double& v : buf_) v = rng_.normal();
            break;
        case DatasetKind::FilePointCloud: {
            const PointCloud& c = *spec_.cloud;
            std::size_t idx;
            if (single_pass_) {
                if (cursor_ >= order_.size()) return std::nullopt;
                idx = order_[cursor_++];
            } else {
                idx = rng_.below(c.size());
            }
            const auto p = c.point(idx);
            std::copy(p.begin(), p.end(), buf_.begin());
            break;
        }
    }
    return std::span<const double>(buf_);
}

}  // namespace locsom
