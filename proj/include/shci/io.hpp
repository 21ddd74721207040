#pragma once

#include <Eigen/Core>

#include <filesystem>
#include <iosfwd>

namespace shci::io {

/// Flat binary container: "SHCI", u32 version, u64 rows, u64 cols, then
/// rows * cols little-endian IEEE-754 doubles in row-major order.
inline constexpr std::uint32_t kContainerVersion = 1;

void write_matrix(std::ostream& out, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix(std::istream& in);

void save_matrix(const std::filesystem::path& path, const Eigen::MatrixXd& m);
Eigen::MatrixXd load_matrix(const std::filesystem::path& path);

/// Vectors are stored as rows x 1 containers.
void save_vector(const std::filesystem::path& path, const Eigen::VectorXd& v);
/// Accepts rows x 1 and 1 x cols containers.
Eigen::VectorXd load_vector(const std::filesystem::path& path);

/// One row per line, comma separated, 17 significant digits.
void write_csv(std::ostream& out, const Eigen::MatrixXd& m);
void save_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m);

} // namespace shci::io
