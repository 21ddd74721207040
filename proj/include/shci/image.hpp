#pragma once

#include "shci/confidence.hpp"
#include "shci/lasso.hpp"
#include "shci/model.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

namespace shci {

/// Grayscale image, row-major pixels nominally in [0, 1].
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<double> pixels;

    [[nodiscard]] double& at(int row, int col) { return pixels[static_cast<std::size_t>(row * width + col)]; }
    [[nodiscard]] double at(int row, int col) const { return pixels[static_cast<std::size_t>(row * width + col)]; }
    static GrayImage blank(int width, int height, double value = 0.0);
};

/// Binary PGM (P5), maxval up to 255, mapped linearly to [0, 1].
GrayImage read_pgm(const std::filesystem::path& path);
/// Values are clamped to [0, 1] and rounded to 8 bits.
void write_pgm(const std::filesystem::path& path, const GrayImage& image);

/// Column-stacked pixel vector.
Eigen::VectorXd image_to_vector(const GrayImage& image);
GrayImage vector_to_image(const Eigen::Ref<const Eigen::VectorXd>& v, int width, int height);

double psnr(const GrayImage& reference, const GrayImage& test);

/// constant_scale at which a 64 x 64 sparse-dots image sampled at half the
/// pixel count is accepted as S0-sparse while the same image over a smooth
/// background is rejected.
inline constexpr double kDeskImageConstantScale = 1.5e-4;

struct ImageJobConfig {
    double sampling_fraction = 0.05;
    double sparsity_fraction = 0.03;
    /// S1 = s1_factor * S0.
    Eigen::Index s1_factor = 2;
    double delta = 0.05;
    NoiseSpec noise = NoiseSpec::gaussian(1e-4, 0.01);
    LassoConfig lasso;
    /// Explicit penalty constant; unset means default_kappa(noise c, tail_C).
    std::optional<double> lasso_kappa;
    double tail_C = 1.0;
    double constant_scale = 1.0;
    std::uint64_t seed = 20160702;

    void validate() const;
    [[nodiscard]] double kappa() const;
};

struct ImageResult {
    GrayImage reconstruction;
    GrayImage extremal;
    int decision = 0;
    ConfidenceBall ball;
    TestReport report;
    EstimateReport estimate;
    Eigen::Index n = 0;
    Eigen::Index S0 = 0;
    Eigen::Index S1 = 0;
    /// Smallest constant_scale at which the image is accepted as S0-sparse.
    double acceptance_scale = 0.0;
};

/// Each half of the sample observes n = round(sampling_fraction p) random
/// rows of the scaled trigonometric transform of the pixel vector, plus
/// noise. The first half is reconstructed with the lasso and the two-index
/// test runs at S0 = round(sparsity_fraction p) against S1 = s1_factor S0.
ImageResult run_image_pipeline(const GrayImage& image, const ImageJobConfig& cfg);
ImageResult run_image_pipeline(const std::filesystem::path& input, const ImageJobConfig& cfg);

/// Point of the ball closest to the constant vector at the mean of the
/// center: center + min(1, radius / ||g - center||) (g - center).
Eigen::VectorXd extremal_contrast_point(const ConfidenceBall& ball);

/// Synthetic test images.
GrayImage make_dots_image(int width, int height, int dots, std::uint64_t seed);
/// Adds a smooth two-dimensional gradient of peak `amplitude`.
GrayImage add_smooth_background(GrayImage image, double amplitude);

} // namespace shci
