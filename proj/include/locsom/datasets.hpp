#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "locsom/box.hpp"
#include "locsom/random.hpp"

namespace locsom {

enum class DatasetKind { Square, Clusters2D, SphericalShell, Dispersion3D, FilePointCloud };

std::string to_string(DatasetKind k);
DatasetKind parse_dataset_kind(const std::string& s);

/// Points loaded from a CSV file, row-major.
struct PointCloud {
    std::size_t dim = 0;
    std::vector<double> coords;

    std::size_t size() const noexcept { return dim == 0 ? 0 : coords.size() / dim; }
    std::span<const double> point(std::size_t i) const noexcept { return {coords.data() + i * dim, dim}; }
};

/// Reads one point per line as comma-separated decimals. Lines starting
/// with '#' and blank lines are skipped; the first data row fixes the
/// dimension. Throws ParseError (with line number) on ragged rows,
/// non-numeric or non-finite fields and files with no points, IoError when
/// the file cannot be opened.
PointCloud ingest_point_cloud(const std::filesystem::path& path);

struct DatasetSpec {
    DatasetKind kind = DatasetKind::Square;
    std::uint64_t seed = 0;
    /// Isotropic standard deviation of each Clusters2D component.
    double cluster_sigma = 0.5;
    /// FilePointCloud only.
    std::optional<std::filesystem::path> file_path;
    /// FilePointCloud only; loaded on demand from file_path when empty.
    std::shared_ptr<const PointCloud> cloud;

    std::string name() const { return to_string(kind); }
};

/// Loads the point cloud of a FilePointCloud spec if it is not loaded yet.
void ensure_loaded(DatasetSpec& spec);

std::size_t dataset_dim(const DatasetSpec& spec);

/// Sampling domain of a dataset; exact extent for point clouds.
Box bounding_box(const DatasetSpec& spec);

/// The five Clusters2D component centers.
std::span<const std::array<double, 2>> cluster_centers() noexcept;

/// Deterministic stream of samples for a dataset.
///
/// Synthetic kinds never run out. A point cloud is replayed in a seeded
/// random order; in single-pass mode the stream ends after one pass,
/// otherwise it draws points uniformly with replacement.
class SampleStream {
public:
    explicit SampleStream(DatasetSpec spec, bool single_pass = false);

    std::size_t dim() const noexcept { return dim_; }
    const DatasetSpec& spec() const noexcept { return spec_; }

    /// Next sample, or empty once a single-pass point cloud is exhausted.
    /// The span stays valid until the following call.
    std::optional<std::span<const double>> next();

private:
    DatasetSpec spec_;
    std::size_t dim_;
    Rng rng_;
    bool single_pass_;
    std::vector<std::uint64_t> order_;
    std::size_t cursor_ = 0;
    std::vector<double> buf_;
};

}  // namespace locsom
