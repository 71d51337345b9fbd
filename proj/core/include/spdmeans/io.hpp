#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "spdmeans/pinch.hpp"
#include "spdmeans/spd.hpp"

namespace spdmeans {

// Matrix text format: first line m, then m rows of m whitespace-separated
// decimals. JSON alternative: {"rows": m, "data": [[...], ...]}. Tuples are a
// single line of positive decimals, or {"values": [...]}. Writers emit 17
// significant digits so parse/write round-trips are exact.

/// Parses either format, sniffing JSON by a leading '{'.
SPDMatrix parse_matrix(const std::string& text);
SPDMatrix load_matrix(const std::string& path);

std::string write_matrix_text(const SPDMatrix& m);
nlohmann::json matrix_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const nlohmann::json& j);

PositiveTuple parse_tuple(const std::string& text);
PositiveTuple load_tuple(const std::string& path);
std::string write_tuple_text(const PositiveTuple& t);

/// Chain wire format:
/// {"source": [...], "target": [...], "steps": [{"i", "j", "t", "kind"}]}
/// with 1-based indices.
nlohmann::json chain_to_json(const PinchChain& chain);
PinchChain chain_from_json(const nlohmann::json& j);

std::string read_file(const std::string& path);

}  // namespace spdmeans
