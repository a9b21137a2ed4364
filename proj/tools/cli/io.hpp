#pragma once

#include "qpca/quasicyclic.hpp"
#include "qpca/signal.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

namespace qpca::cli {

/// Malformed or inconsistent input file.
class FormatError : public std::runtime_error {
public:
    FormatError(const std::filesystem::path& file, std::size_t line, const std::string& what);
    FormatError(const std::filesystem::path& file, const std::string& what);

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_ = 0;
};

struct DatasetManifest {
    std::size_t m = 0;
    std::size_t n = 0;
    std::optional<double> s_hint;
    std::string description;
    std::uint64_t seed = 0;
};

struct DatasetFile {
    DatasetManifest manifest;
    Dataset data;
};

/// A dataset is stored as two files sharing a stem: <stem>.json (manifest)
/// and <stem>.csv (one row per vector, re/im columns alternating).
/// Either file, or the bare stem, may be passed.
struct DatasetPaths {
    std::filesystem::path manifest;
    std::filesystem::path payload;
};
DatasetPaths dataset_paths(const std::filesystem::path& path);

void write_dataset(const std::filesystem::path& path, const DatasetFile& file);
DatasetFile read_dataset(const std::filesystem::path& path);

/// Writes result.json plus component_<j>.csv and spectrum_<j>.csv into dir.
void write_result(const std::filesystem::path& dir, const QpcaResult& result);

/// Decimal text with 17 significant digits; reads back bit-exactly.
std::string format_double(double value);

} // namespace qpca::cli
