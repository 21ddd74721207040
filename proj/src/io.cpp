#include "shci/io.hpp"

#include "shci/errors.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <string>

namespace shci::io {

namespace {

constexpr std::array<char, 4> kMagic{'S', 'H', 'C', 'I'};

template <class T>
void put_le(std::ostream& out, T value)
{
    static_assert(std::is_trivially_copyable_v<T>);
    std::array<unsigned char, sizeof(T)> bytes{};
    std::memcpy(bytes.data(), &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) {
        std::reverse(bytes.begin(), bytes.end());
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <class T>
T get_le(std::istream& in)
{
    std::array<unsigned char, sizeof(T)> bytes{};
    in.read(reinterpret_cast<char*>(bytes.data()), sizeof(T));
    if (!in) {
        throw ConfigError("binary container truncated");
    }
    if constexpr (std::endian::native == std::endian::big) {
        std::reverse(bytes.begin(), bytes.end());
    }
    T value;
    std::memcpy(&value, bytes.data(), sizeof(T));
    return value;
}

} // namespace

void write_matrix(std::ostream& out, const Eigen::MatrixXd& m)
{
    out.write(kMagic.data(), kMagic.size());
    put_le<std::uint32_t>(out, kContainerVersion);
    put_le<std::uint64_t>(out, static_cast<std::uint64_t>(m.rows()));
    put_le<std::uint64_t>(out, static_cast<std::uint64_t>(m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            put_le<double>(out, m(i, j));
        }
    }
}

Eigen::MatrixXd read_matrix(std::istream& in)
{
    std::array<char, 4> magic{};
    in.read(magic.data(), magic.size());
    if (!in || magic != kMagic) {
        throw ConfigError("not an SHCI binary container (bad magic)");
    }
    const auto version = get_le<std::uint32_t>(in);
    if (version != kContainerVersion) {
        throw ConfigError("unsupported SHCI container version " + std::to_string(version));
    }
    const auto rows = get_le<std::uint64_t>(in);
    const auto cols = get_le<std::uint64_t>(in);
    constexpr auto limit = static_cast<std::uint64_t>(std::numeric_limits<Eigen::Index>::max());
    if (rows > limit || cols > limit || (cols != 0 && rows > limit / cols)) {
        throw ConfigError("SHCI container dimensions out of range");
    }
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            m(i, j) = get_le<double>(in);
        }
    }
    return m;
}

void save_matrix(const std::filesystem::path& path, const Eigen::MatrixXd& m)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot open '" + path.string() + "' for writing");
    }
    write_matrix(out, m);
    if (!out) {
        throw ConfigError("write failed for '" + path.string() + "'");
    }
}

Eigen::MatrixXd load_matrix(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open '" + path.string() + "' for reading");
    }
    try {
        return read_matrix(in);
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

void save_vector(const std::filesystem::path& path, const Eigen::VectorXd& v)
{
    save_matrix(path, Eigen::MatrixXd(v));
}

Eigen::VectorXd load_vector(const std::filesystem::path& path)
{
    Eigen::MatrixXd m = load_matrix(path);
    if (m.cols() == 1) {
        return m.col(0);
    }
    if (m.rows() == 1) {
        return m.row(0).transpose();
    }
    throw ConfigError(path.string() + ": expected a vector container");
}

void write_csv(std::ostream& out, const Eigen::MatrixXd& m)
{
    const auto flags = out.flags();
    const auto precision = out.precision();
    out << std::setprecision(17);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j > 0) {
                out << ',';
            }
            out << m(i, j);
        }
        out << '\n';
    }
    out.flags(flags);
    out.precision(precision);
}

void save_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m)
{
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot open '" + path.string() + "' for writing");
    }
    write_csv(out, m);
}

} // namespace shci::io
