#include "smt/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <system_error>

namespace smt {

namespace fs = std::filesystem;

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text_atomic(const fs::path& path, const std::string& content) {
    const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
    std::error_code ec;
    fs::create_directories(dir, ec);
    const fs::path tmp = dir / (path.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot open for writing: " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw DataError("write failed: " + tmp.string());
    }
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw DataError("rename failed: " + path.string() + ": " + ec.message());
    }
}

std::string format_csv(const CsvTable& table) {
    if (table.header.size() != table.columns.size())
        throw DataError("csv: header/column count mismatch");
    for (const auto& c : table.columns)
        if (c.size() != table.rows()) throw DataError("csv: ragged columns");
    std::ostringstream out;
    for (std::size_t j = 0; j < table.header.size(); ++j) {
        if (j) out << ',';
        out << table.header[j];
    }
    out << '\n';
    for (std::size_t i = 0; i < table.rows(); ++i) {
        for (std::size_t j = 0; j < table.columns.size(); ++j) {
            if (j) out << ',';
            out << format_double(table.columns[j][i]);
        }
        out << '\n';
    }
    return out.str();
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

std::string trimmed(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

CsvTable read_csv(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty file: " + path.string());
    CsvTable table;
    for (const auto& cell : split_line(line)) table.header.push_back(trimmed(cell));
    if (table.header.empty()) throw DataError("missing header: " + path.string());
    table.columns.resize(table.header.size());
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trimmed(line);
        if (t.empty()) continue;
        const std::vector<std::string> cells = split_line(t);
        if (cells.size() != table.header.size())
            throw DataError(path.string() + ":" + std::to_string(lineno) +
                            ": expected " + std::to_string(table.header.size()) + " cells");
        for (std::size_t j = 0; j < cells.size(); ++j) {
            const std::string c = trimmed(cells[j]);
            char* end = nullptr;
            const double v = std::strtod(c.c_str(), &end);
            if (c.empty() || end != c.c_str() + c.size() || !std::isfinite(v))
                throw DataError(path.string() + ":" + std::to_string(lineno) +
                                ": bad number '" + c + "'");
            table.columns[j].push_back(v);
        }
    }
    return table;
}

void write_samples_csv(const fs::path& path, const SampledFn& s, const std::string& xname) {
    CsvTable table;
    table.header = {xname, "value"};
    table.columns = {s.grid.points, s.values};
    write_text_atomic(path, format_csv(table));
}

SampledFn read_samples_csv(const fs::path& path, const std::string& expected_xname) {
    const CsvTable table = read_csv(path);
    if (table.header.size() != 2 || table.header[0] != expected_xname ||
        table.header[1] != "value")
        throw DataError(path.string() + ": expected header '" + expected_xname + ",value'");
    if (table.rows() == 0) throw DataError(path.string() + ": no data rows");
    SampledFn s;
    try {
        s.grid = Grid1D::from_points(table.columns[0]);
    } catch (const std::invalid_argument& e) {
        throw DataError(path.string() + ": bad " + expected_xname + " column: " + e.what());
    }
    s.values = table.columns[1];
    s.label = path.stem().string();
    return s;
}

void write_sphere_csv(const fs::path& path, const FullSphereData& data) {
    CsvTable table;
    table.header = {"theta", "phi", "t", "value"};
    const std::size_t nt = data.grid.theta.size();
    const std::size_t np = data.grid.phi.size();
    const std::size_t nl = data.tgrid.size();
    for (auto& c : table.columns = std::vector<std::vector<double>>(4))
        c.reserve(nt * np * nl);
    for (std::size_t i = 0; i < nt; ++i)
        for (std::size_t j = 0; j < np; ++j)
            for (std::size_t l = 0; l < nl; ++l) {
                table.columns[0].push_back(data.grid.theta[i]);
                table.columns[1].push_back(data.grid.phi[j]);
                table.columns[2].push_back(data.tgrid.points[l]);
                table.columns[3].push_back(data.at(i, j, l));
            }
    write_text_atomic(path, format_csv(table));
}

FullSphereData read_sphere_csv(const fs::path& path) {
    const CsvTable table = read_csv(path);
    if (table.header != std::vector<std::string>{"theta", "phi", "t", "value"})
        throw DataError(path.string() + ": expected header 'theta,phi,t,value'");
    const std::size_t rows = table.rows();
    if (rows == 0) throw DataError(path.string() + ": no data rows");

    auto leading_unique = [](const std::vector<double>& col) {
        std::vector<double> u;
        for (double v : col) {
            if (!u.empty() && v == u.front()) break;  // sequence restarted
            if (!u.empty() && v == u.back()) continue;
            u.push_back(v);
        }
        return u;
    };
    const std::vector<double> ts = leading_unique(table.columns[2]);
    const std::size_t nl = ts.size();
    std::vector<double> phis;
    for (std::size_t r = 0; r < rows; r += nl) {
        if (!phis.empty() && table.columns[1][r] == phis.front()) break;
        phis.push_back(table.columns[1][r]);
    }
    const std::size_t np = phis.size();
    if (nl == 0 || np == 0 || rows % (nl * np) != 0)
        throw DataError(path.string() + ": rows do not form a theta x phi x t product");
    const std::size_t nt = rows / (nl * np);

    FullSphereData data;
    data.grid = SphereGrid::build(static_cast<int>(nt), static_cast<int>(np));
    try {
        data.tgrid = Grid1D::from_points(ts);
    } catch (const std::invalid_argument& e) {
        throw DataError(path.string() + ": bad t column: " + e.what());
    }
    data.values.resize(rows);
    std::size_t r = 0;
    for (std::size_t i = 0; i < nt; ++i)
        for (std::size_t j = 0; j < np; ++j)
            for (std::size_t l = 0; l < nl; ++l, ++r) {
                if (std::abs(table.columns[0][r] - data.grid.theta[i]) > 1e-9 ||
                    std::abs(table.columns[1][r] - data.grid.phi[j]) > 1e-9 ||
                    std::abs(table.columns[2][r] - ts[l]) > 1e-12)
                    throw DataError(path.string() +
                                    ": grid does not match the product quadrature layout");
                data.at(i, j, l) = table.columns[3][r];
            }
    return data;
}

}  // namespace smt
