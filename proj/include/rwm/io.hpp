#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <Eigen/Dense>
#include <json.hpp>

namespace rwm {

/// Writes `contents` to a sibling temporary file and renames it over `path`.
/// Throws std::runtime_error if the directory is not writable.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

std::string read_file(const std::filesystem::path& path);

/// printf-style "%.10g"; used for every number that ends up in a CSV so the
/// output bytes are reproducible.
std::string format_number(double x);

nlohmann::json vec_to_json(const Eigen::VectorXd& v);
Eigen::VectorXd vec_from_json(const nlohmann::json& j);
/// Row-major nested arrays.
nlohmann::json mat_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd mat_from_json(const nlohmann::json& j);

}  // namespace rwm
