#include "shci/errors.hpp"
#include "shci/io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <limits>
#include <sstream>

namespace fs = std::filesystem;

TEST(Io, MatrixRoundTrip)
{
    Eigen::MatrixXd m(2, 3);
    m << 1.0, -2.5, 3.0, std::numeric_limits<double>::denorm_min(), 1e300, -0.0;
    std::stringstream buf;
    shci::io::write_matrix(buf, m);
    EXPECT_EQ(buf.str().size(), 4 + 4 + 8 + 8 + 6 * 8U);
    EXPECT_EQ(buf.str().substr(0, 4), "SHCI");
    const Eigen::MatrixXd back = shci::io::read_matrix(buf);
    EXPECT_EQ(back, m);
}

TEST(Io, RejectsCorruptInput)
{
    std::stringstream bad("XXXX1234");
    EXPECT_THROW(shci::io::read_matrix(bad), shci::ConfigError);
    Eigen::MatrixXd m = Eigen::MatrixXd::Ones(2, 2);
    std::stringstream buf;
    shci::io::write_matrix(buf, m);
    std::string truncated = buf.str().substr(0, buf.str().size() - 3);
    std::stringstream t(truncated);
    EXPECT_THROW(shci::io::read_matrix(t), shci::ConfigError);
}

TEST(Io, FilesAndVectors)
{
    const fs::path dir = fs::temp_directory_path() / "shci_io_test";
    fs::create_directories(dir);
    Eigen::VectorXd v(3);
    v << 0.1, 0.2, 0.3;
    shci::io::save_vector(dir / "v.bin", v);
    EXPECT_EQ(shci::io::load_vector(dir / "v.bin"), v);
    shci::io::save_matrix(dir / "row.bin", v.transpose());
    EXPECT_EQ(shci::io::load_vector(dir / "row.bin"), v);
    EXPECT_THROW(shci::io::load_matrix(dir / "missing.bin"), shci::ConfigError);
    fs::remove_all(dir);
}

TEST(Io, CsvPrecision)
{
    Eigen::MatrixXd m(1, 2);
    m << 0.1, 1.0 / 3.0;
    std::stringstream out;
    shci::io::write_csv(out, m);
    std::string line;
    std::getline(out, line);
    const auto comma = line.find(',');
    EXPECT_EQ(std::stod(line.substr(0, comma)), 0.1);
    EXPECT_EQ(std::stod(line.substr(comma + 1)), 1.0 / 3.0);
}
