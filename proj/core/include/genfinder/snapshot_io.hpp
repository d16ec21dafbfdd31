#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "genfinder/channel.hpp"

namespace genfinder {

/// How the d^2 x d^2 entries of a quantum snapshot file are paired.
/// TransferRowMajor is the native layout (row = output pair, column = input
/// pair, identity map = identity matrix). PaperTrace is the
/// trace-against-basis pairing E_{(i,j),(k,l)} = tr[E(|i><j|) |k><l|]; files
/// in that layout are re-indexed on load.
enum class IndexConvention { TransferRowMajor, PaperTrace };

nlohmann::json transfer_to_json(const TransferMatrix& t);
TransferMatrix transfer_from_json(const nlohmann::json& j,
                                  IndexConvention conv = IndexConvention::TransferRowMajor);

nlohmann::json stochastic_to_json(const StochasticMatrix& t);
StochasticMatrix stochastic_from_json(const nlohmann::json& j);

nlohmann::json series_to_json(const SnapshotSeries& s);
SnapshotSeries series_from_json(const nlohmann::json& j,
                                IndexConvention conv = IndexConvention::TransferRowMajor);

nlohmann::json complex_matrix_to_json(const CMat& m);
CMat complex_matrix_from_json(const nlohmann::json& j);
nlohmann::json real_matrix_to_json(const RMat& m);
RMat real_matrix_from_json(const nlohmann::json& j);

/// Re-index a paper-convention matrix into the native transfer layout:
/// T_{(a,b),(i,j)} = P_{(i,j),(b,a)}.
CMat paper_to_transfer(const CMat& p);

nlohmann::json load_json_file(const std::filesystem::path& path);

/// Write via temp file + rename so readers never observe partial output.
void atomic_write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace genfinder
