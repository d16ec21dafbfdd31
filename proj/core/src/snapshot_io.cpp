#include "genfinder/snapshot_io.hpp"

#include <cmath>
#include <fstream>

namespace genfinder {

namespace {

constexpr const char* kQuantumConvention = "transfer-rowmajor-v1";

int checked_dim(const nlohmann::json& j) {
    if (!j.contains("dim") || !j["dim"].is_number_integer())
        throw ParseError("snapshot: missing integer field 'dim'", 0);
    const int d = j["dim"].get<int>();
    if (d <= 0) throw ParseError("snapshot: 'dim' must be positive", 0);
    return d;
}

}  // namespace

nlohmann::json complex_matrix_to_json(const CMat& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

CMat complex_matrix_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("matrix: expected nonempty array", 0);
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    CMat m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        if (static_cast<Eigen::Index>(j[r].size()) != cols)
            throw ParseError("matrix: ragged rows", 0);
        for (Eigen::Index c = 0; c < cols; ++c) {
            const auto& e = j[r][c];
            if (!e.is_array() || e.size() != 2)
                throw ParseError("matrix: complex entries must be [re, im]", 0);
            m(r, c) = cxd(e[0].get<double>(), e[1].get<double>());
        }
    }
    return m;
}

nlohmann::json real_matrix_to_json(const RMat& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

RMat real_matrix_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("matrix: expected nonempty array", 0);
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    RMat m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        if (static_cast<Eigen::Index>(j[r].size()) != cols)
            throw ParseError("matrix: ragged rows", 0);
        for (Eigen::Index c = 0; c < cols; ++c) {
            if (!j[r][c].is_number()) throw ParseError("matrix: expected real entries", 0);
            m(r, c) = j[r][c].get<double>();
        }
    }
    return m;
}

CMat paper_to_transfer(const CMat& p) {
    const auto n = p.rows();
    const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(double(n))));
    if (d * d != n || p.cols() != n)
        throw NotSquareOfSquare("paper_to_transfer: dimension is not a perfect square");
    CMat t(n, n);
    for (Eigen::Index a = 0; a < d; ++a)
        for (Eigen::Index b = 0; b < d; ++b)
            for (Eigen::Index i = 0; i < d; ++i)
                for (Eigen::Index j = 0; j < d; ++j)
                    t(a * d + b, i * d + j) = p(i * d + j, b * d + a);
    return t;
}

nlohmann::json transfer_to_json(const TransferMatrix& t) {
    return {{"kind", "quantum"},
            {"dim", t.hilbert_dim},
            {"convention", kQuantumConvention},
            {"matrix", complex_matrix_to_json(t.matrix)}};
}

TransferMatrix transfer_from_json(const nlohmann::json& j, IndexConvention conv) {
    if (!j.contains("kind") || j["kind"] != "quantum")
        throw ParseError("snapshot: expected kind 'quantum'", 0);
    const int d = checked_dim(j);
    if (j.contains("convention") && j["convention"] != kQuantumConvention)
        throw ParseError("snapshot: unknown convention tag", 0);
    CMat m = complex_matrix_from_json(j.at("matrix"));
    if (conv == IndexConvention::PaperTrace) m = paper_to_transfer(m);
    try {
        return make_transfer(d, std::move(m));
    } catch (const InvalidSnapshot& e) {
        throw ParseError(e.what(), 0);
    }
}

nlohmann::json stochastic_to_json(const StochasticMatrix& t) {
    return {{"kind", "classical"}, {"dim", t.dim}, {"matrix", real_matrix_to_json(t.matrix)}};
}

StochasticMatrix stochastic_from_json(const nlohmann::json& j) {
    if (!j.contains("kind") || j["kind"] != "classical")
        throw ParseError("snapshot: expected kind 'classical'", 0);
    const int d = checked_dim(j);
    RMat m = real_matrix_from_json(j.at("matrix"));
    if (m.rows() != d || m.cols() != d)
        throw ParseError("snapshot: matrix shape does not match 'dim'", 0);
    try {
        return make_stochastic(std::move(m));
    } catch (const InvalidSnapshot& e) {
        throw ParseError(e.what(), 0);
    }
}

nlohmann::json series_to_json(const SnapshotSeries& s) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : s.entries)
        arr.push_back({{"time", e.time}, {"snapshot", transfer_to_json(e.snapshot)}});
    return {{"kind", "series"}, {"snapshots", std::move(arr)}};
}

SnapshotSeries series_from_json(const nlohmann::json& j, IndexConvention conv) {
    if (!j.contains("kind") || j["kind"] != "series")
        throw ParseError("series: expected kind 'series'", 0);
    if (!j.contains("snapshots") || !j["snapshots"].is_array() || j["snapshots"].empty())
        throw ParseError("series: expected nonempty 'snapshots' array", 0);
    std::vector<SeriesEntry> entries;
    for (const auto& e : j["snapshots"]) {
        if (!e.contains("time") || !e["time"].is_number())
            throw ParseError("series: snapshot entries need a numeric 'time'", 0);
        entries.push_back(
            SeriesEntry{e["time"].get<double>(), transfer_from_json(e.at("snapshot"), conv)});
    }
    try {
        return make_series(std::move(entries));
    } catch (const InconsistentSeries& e) {
        throw ParseError(e.what(), 0);
    }
}

nlohmann::json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), 0);
    }
    return j;
}

void atomic_write_file(const std::filesystem::path& path, const std::string& contents) {
    namespace fs = std::filesystem;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw Error("cannot write file: " + tmp.string());
        out << contents;
        if (!out) throw Error("short write: " + tmp.string());
    }
    fs::rename(tmp, path);
}

}  // namespace genfinder
