#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "smt/forward.hpp"
#include "smt/grid.hpp"

namespace smt {

// File/schema problems (missing file, malformed CSV, wrong header). The CLI
// maps this to its data-error exit code.
struct DataError : std::runtime_error {
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Serializes a double with 17 significant digits (lossless round-trip).
std::string format_double(double v);

// Writes content atomically: temp file in the target directory, then rename.
// Creates missing parent directories.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

// Column-major numeric CSV with a mandatory header row.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;

    std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
};

std::string format_csv(const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);

// Two-column files: header "<xname>,value" ("t" for data, "r" for profiles).
void write_samples_csv(const std::filesystem::path& path, const SampledFn& s,
                       const std::string& xname);
SampledFn read_samples_csv(const std::filesystem::path& path, const std::string& expected_xname);

// Full-sphere files: header "theta,phi,t,value", rows ordered theta-major,
// then phi, t fastest. Reading rebuilds the product quadrature grid and
// verifies the angular nodes match it (the format does not store weights).
void write_sphere_csv(const std::filesystem::path& path, const FullSphereData& data);
FullSphereData read_sphere_csv(const std::filesystem::path& path);

}  // namespace smt
