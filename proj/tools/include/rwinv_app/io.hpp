#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <Eigen/Dense>
#include <json.hpp>

#include "rwinv/graph.hpp"

namespace rwinv::app {

struct Instance {
  Graph graph;
  std::optional<Eigen::VectorXd> rho;
  /// FNV-1a of the raw file bytes, 16 hex digits.
  std::string hash;
};

std::string read_file(const std::filesystem::path& path);

/// 64-bit FNV-1a, rendered as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& bytes);

Instance parse_instance(const nlohmann::json& doc);
Instance load_instance(const std::filesystem::path& path);

/// Accepts a bare array or an object carrying the vector under "tau", "r"
/// or "values".
Eigen::VectorXd load_vector(const std::filesystem::path& path);

nlohmann::json to_json(const Eigen::VectorXd& v);

/// Writes to a sibling temporary file, then renames over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace rwinv::app
