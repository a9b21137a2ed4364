#include "cli/io.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace qpca::cli {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::ofstream open_output(const fs::path& path) {
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    return out;
}

double parse_number(std::string_view text, const fs::path& file, std::size_t line, std::size_t column) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
        text.remove_prefix(1);
    }
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
        text.remove_suffix(1);
    }
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size()) {
        throw FormatError(file, line, "column " + std::to_string(column) + ": not a number: '" + std::string(text) + "'");
    }
    return value;
}

} // namespace

FormatError::FormatError(const fs::path& file, std::size_t line, const std::string& what)
    : std::runtime_error(file.string() + ":" + std::to_string(line) + ": " + what), line_(line) {}

FormatError::FormatError(const fs::path& file, const std::string& what)
    : std::runtime_error(file.string() + ": " + what) {}

std::string format_double(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

DatasetPaths dataset_paths(const fs::path& path) {
    fs::path stem = path;
    if (path.extension() == ".json" || path.extension() == ".csv") {
        stem.replace_extension();
    }
    fs::path manifest = stem;
    manifest += ".json";
    fs::path payload = stem;
    payload += ".csv";
    return {manifest, payload};
}

void write_dataset(const fs::path& path, const DatasetFile& file) {
    const DatasetPaths paths = dataset_paths(path);
    json manifest = {
        {"m", file.data.size()},
        {"n", file.data.length()},
        {"description", file.manifest.description},
        {"seed", file.manifest.seed},
        {"payload", paths.payload.filename().string()},
    };
    manifest["s_hint"] = file.manifest.s_hint ? json(*file.manifest.s_hint) : json(nullptr);
    open_output(paths.manifest) << manifest.dump(2) << '\n';

    std::ofstream payload = open_output(paths.payload);
    std::string row;
    for (const Signal& x : file.data) {
        row.clear();
        for (std::size_t i = 0; i < x.size(); ++i) {
            const Complex& v = x[static_cast<std::ptrdiff_t>(i)];
            if (i > 0) {
                row += ',';
            }
            row += format_double(v.real());
            row += ',';
            row += format_double(v.imag());
        }
        payload << row << '\n';
    }
}

DatasetFile read_dataset(const fs::path& path) {
    const DatasetPaths paths = dataset_paths(path);
    std::ifstream manifest_in(paths.manifest);
    if (!manifest_in) {
        throw FormatError(paths.manifest, "cannot open manifest");
    }
    json manifest;
    try {
        manifest = json::parse(manifest_in);
    } catch (const json::parse_error& e) {
        throw FormatError(paths.manifest, e.what());
    }

    DatasetFile out;
    try {
        out.manifest.m = manifest.at("m").get<std::size_t>();
        out.manifest.n = manifest.at("n").get<std::size_t>();
        out.manifest.description = manifest.value("description", std::string{});
        out.manifest.seed = manifest.value("seed", std::uint64_t{0});
        if (manifest.contains("s_hint") && !manifest["s_hint"].is_null()) {
            out.manifest.s_hint = manifest["s_hint"].get<double>();
        }
    } catch (const json::exception& e) {
        throw FormatError(paths.manifest, e.what());
    }
    if (out.manifest.n == 0) {
        throw FormatError(paths.manifest, "n must be positive");
    }

    std::ifstream payload(paths.payload);
    if (!payload) {
        throw FormatError(paths.payload, "cannot open payload");
    }
    const std::size_t expected_columns = 2 * out.manifest.n;
    std::vector<Signal> vectors;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(payload, line)) {
        ++line_number;
        if (line.empty() || line == "\r") {
            continue;
        }
        std::vector<Complex> values;
        values.reserve(out.manifest.n);
        std::size_t column = 0;
        std::size_t start = 0;
        double re = 0.0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            const std::string_view field(line.data() + start,
                                         (comma == std::string::npos ? line.size() : comma) - start);
            ++column;
            if (column > expected_columns) {
                throw FormatError(paths.payload, line_number,
                                  "expected " + std::to_string(expected_columns) + " columns, found more");
            }
            const double value = parse_number(field, paths.payload, line_number, column);
            if (column % 2 == 1) {
                re = value;
            } else {
                values.emplace_back(re, value);
            }
            if (comma == std::string::npos) {
                break;
            }
            start = comma + 1;
        }
        if (column != expected_columns) {
            throw FormatError(paths.payload, line_number,
                              "expected " + std::to_string(expected_columns) + " columns, found " + std::to_string(column));
        }
        vectors.emplace_back(std::move(values));
    }
    if (vectors.size() != out.manifest.m) {
        throw FormatError(paths.payload, line_number,
                          "expected " + std::to_string(out.manifest.m) + " rows, found " + std::to_string(vectors.size()));
    }
    out.data = Dataset(std::move(vectors));
    return out;
}

void write_result(const fs::path& dir, const QpcaResult& result) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    json doc = {
        {"N", result.symbols},
        {"s", result.oversampling},
        {"n", result.length},
        {"lambdas", result.lambdas},
        {"coset_eigenvalues", result.coset_eigenvalues},
    };
    json components = json::array();
    json spectra = json::array();
    for (std::size_t j = 0; j < result.components.size(); ++j) {
        const std::string component_name = "component_" + std::to_string(j + 1) + ".csv";
        const std::string spectrum_name = "spectrum_" + std::to_string(j + 1) + ".csv";
        components.push_back(component_name);
        spectra.push_back(spectrum_name);

        std::ofstream time = open_output(dir / component_name);
        time << "index,re,im,abs\n";
        const Signal& q = result.components[j];
        for (std::size_t i = 0; i < q.size(); ++i) {
            const Complex& v = q[static_cast<std::ptrdiff_t>(i)];
            time << i << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << ','
                 << format_double(std::abs(v)) << '\n';
        }
        std::ofstream freq = open_output(dir / spectrum_name);
        freq << "k,re,im,abs\n";
        const Spectrum& q_hat = result.spectra[j];
        for (std::size_t k = 0; k < q_hat.size(); ++k) {
            const Complex& v = q_hat[static_cast<std::ptrdiff_t>(k)];
            freq << k << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << ','
                 << format_double(std::abs(v)) << '\n';
        }
    }
    doc["components"] = components;
    doc["spectra"] = spectra;
    open_output(dir / "result.json") << doc.dump(2) << '\n';
}

} // namespace qpca::cli
