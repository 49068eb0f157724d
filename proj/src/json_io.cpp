#include "odholo/json_io.hpp"

#include <fstream>

namespace odholo {

Json matrix_to_json(const ComplexMatrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back({m(i, j).real(), m(i, j).imag()});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw ConfigError("matrix: expected non-empty array of rows");
    const std::size_t rows = j.size();
    const std::size_t cols = j.at(0).size();
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const Json& row = j.at(i);
        if (!row.is_array() || row.size() != cols) {
            throw ConfigError("matrix: ragged rows");
        }
        for (std::size_t k = 0; k < cols; ++k) {
            const Json& e = row.at(k);
            if (!e.is_array() || e.size() != 2) {
                throw ConfigError("matrix: entries must be [re, im]");
            }
            m(i, k) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
        }
    }
    return m;
}

Json curve_to_json(const CurveFamily& c) {
    Json j;
    j["schema_version"] = 1;
    j["N"] = c.ambient_dim();
    j["eta"] = c.eta();
    j["dims"] = c.dims();
    j["grid"] = c.grid();
    Json frames = Json::array();
    for (std::size_t s = 0; s < c.samples(); ++s) {
        Json per_subspace = Json::array();
        for (std::size_t l = 0; l < c.eta(); ++l) {
            per_subspace.push_back(matrix_to_json(c.sample(s).frame(l).basis()));
        }
        frames.push_back(std::move(per_subspace));
    }
    j["frames"] = std::move(frames);
    return j;
}

CurveFamily curve_from_json(const Json& j) {
    for (const char* key : {"schema_version", "N", "eta", "dims", "grid", "frames"}) {
        if (!j.contains(key)) throw ConfigError(std::string("curve: missing key ") + key);
    }
    if (j.at("schema_version").get<int>() != 1) {
        throw ConfigError("curve: unsupported schema_version");
    }
    const std::size_t n = j.at("N").get<std::size_t>();
    const std::size_t eta = j.at("eta").get<std::size_t>();
    const auto dims = j.at("dims").get<std::vector<std::size_t>>();
    if (dims.size() != eta) throw ConfigError("curve: dims length disagrees with eta");
    std::vector<double> grid = j.at("grid").get<std::vector<double>>();
    const Json& frames = j.at("frames");
    if (frames.size() != grid.size()) throw ConfigError("curve: frames/grid length mismatch");
    std::vector<Decomposition> samples;
    samples.reserve(grid.size());
    for (std::size_t s = 0; s < frames.size(); ++s) {
        const Json& per_subspace = frames.at(s);
        if (per_subspace.size() != eta) throw ConfigError("curve: wrong subspace count");
        std::vector<Frame> fs;
        fs.reserve(eta);
        for (std::size_t l = 0; l < eta; ++l) {
            ComplexMatrix basis = matrix_from_json(per_subspace.at(l));
            if (static_cast<std::size_t>(basis.rows()) != n ||
                static_cast<std::size_t>(basis.cols()) != dims[l]) {
                throw ConfigError("curve: frame shape mismatch");
            }
            fs.emplace_back(std::move(basis));
        }
        samples.emplace_back(std::move(fs));
    }
    return CurveFamily::from_samples(std::move(grid), std::move(samples));
}

Json holonomy_result_to_json(const HolonomyResult& r) {
    Json j;
    Json seq = Json::array();
    for (std::size_t l : r.seq) seq.push_back(l + 1);  // labels are 1-based outside
    j["seq"] = std::move(seq);
    j["gamma"] = matrix_to_json(r.gamma);
    j["holonomy"] = matrix_to_json(r.holonomy);
    j["rank"] = r.rank;
    j["singular_values"] = r.singular_values;
    j["status"] = to_string(r.status);
    return j;
}

Json sigma_table_to_json(const SigmaTable& t) {
    Json j;
    j["schema_version"] = 1;
    j["dims"] = t.dims();
    Json blocks = Json::array();
    for (std::size_t k = 0; k < t.eta(); ++k) {
        Json row = Json::array();
        for (std::size_t l = 0; l < t.eta(); ++l) {
            row.push_back(matrix_to_json(t.block(k, l)));
        }
        blocks.push_back(std::move(row));
    }
    j["blocks"] = std::move(blocks);
    return j;
}

SigmaTable sigma_table_from_json(const Json& j, double unitarity_tol) {
    for (const char* key : {"dims", "blocks"}) {
        if (!j.contains(key)) throw ConfigError(std::string("sigma_table: missing key ") + key);
    }
    auto dims = j.at("dims").get<std::vector<std::size_t>>();
    const Json& rows = j.at("blocks");
    if (rows.size() != dims.size()) throw ConfigError("sigma_table: wrong block row count");
    std::vector<std::vector<ComplexMatrix>> blocks(dims.size());
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (rows.at(k).size() != dims.size()) {
            throw ConfigError("sigma_table: wrong block column count");
        }
        for (std::size_t l = 0; l < dims.size(); ++l) {
            blocks[k].push_back(matrix_from_json(rows.at(k).at(l)));
        }
    }
    return SigmaTable::from_blocks(std::move(dims), std::move(blocks), unitarity_tol);
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return j;
}

void save_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace odholo
