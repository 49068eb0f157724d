#pragma once

#include <string>

#include <json.hpp>

#include "odholo/holonomy.hpp"
#include "odholo/subspaces.hpp"

namespace odholo {

using Json = nlohmann::json;

/// Complex matrices travel as row-major nested arrays with innermost [re, im].
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

/// Curve document: {schema_version, N, eta, dims, grid, frames} with
/// frames[sample][subspace] an N x n_l complex matrix.
Json curve_to_json(const CurveFamily& c);
CurveFamily curve_from_json(const Json& j);

/// Holonomy record: {seq (1-based), gamma, holonomy, rank, singular_values,
/// status}.
Json holonomy_result_to_json(const HolonomyResult& r);

Json sigma_table_to_json(const SigmaTable& t);
SigmaTable sigma_table_from_json(const Json& j, double unitarity_tol = 1e-6);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

}  // namespace odholo
