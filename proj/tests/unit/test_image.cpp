#include "shci/errors.hpp"
#include "shci/image.hpp"

#include <gtest/gtest.h>

#include <algorithm>

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace shci;
namespace fs = std::filesystem;

TEST(Image, PgmRoundTrip)
{
    GrayImage img = GrayImage::blank(5, 3);
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        img.pixels[i] = double(i * 17 % 256) / 255.0;
    }
    const fs::path path = fs::temp_directory_path() / "shci_roundtrip.pgm";
    write_pgm(path, img);
    const GrayImage back = read_pgm(path);
    ASSERT_EQ(back.width, 5);
    ASSERT_EQ(back.height, 3);
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        EXPECT_NEAR(back.pixels[i], img.pixels[i], 1e-12);
    }
    fs::remove(path);
}

TEST(Image, PgmWithCommentsAndErrors)
{
    const fs::path path = fs::temp_directory_path() / "shci_comment.pgm";
    {
        std::ofstream out(path, std::ios::binary);
        out << "P5\n# made by hand\n2 1\n# maxval next\n100\n";
        out.put(static_cast<char>(0));
        out.put(static_cast<char>(100));
    }
    const GrayImage img = read_pgm(path);
    EXPECT_EQ(img.pixels[0], 0.0);
    EXPECT_EQ(img.pixels[1], 1.0);
    {
        std::ofstream out(path, std::ios::binary);
        out << "P2\n2 1\n255\n0 0\n";
    }
    EXPECT_THROW(read_pgm(path), ConfigError);
    {
        std::ofstream out(path, std::ios::binary);
        out << "P5\n4 4\n255\nab";
    }
    EXPECT_THROW(read_pgm(path), ConfigError);
    fs::remove(path);
    EXPECT_THROW(read_pgm(path), ConfigError);
}

TEST(Image, VectorizationIsColumnStacked)
{
    GrayImage img = GrayImage::blank(2, 3);
    img.at(0, 1) = 1.0;
    const Eigen::VectorXd v = image_to_vector(img);
    EXPECT_EQ(v[3], 1.0);
    const GrayImage back = vector_to_image(v, 2, 3);
    EXPECT_EQ(back.pixels, img.pixels);
}

TEST(Image, ExtremalContrastPoint)
{
    ConfidenceBall ball;
    ball.center = Eigen::Vector4d(1.0, 0.0, 0.0, 3.0);
    const Eigen::VectorXd g = Eigen::VectorXd::Constant(4, 1.0);
    const double dist = (g - ball.center).norm();

    ball.radius = 0.0;
    EXPECT_EQ(extremal_contrast_point(ball), ball.center);
    ball.radius = dist * 1.5;
    EXPECT_LT((extremal_contrast_point(ball) - g).norm(), 1e-15);
    ball.radius = dist * 0.4;
    const Eigen::VectorXd m = extremal_contrast_point(ball);
    EXPECT_NEAR((m - ball.center).norm(), ball.radius, 1e-12);
    // on the segment: m - c is a nonnegative multiple of g - c
    const Eigen::VectorXd d = (g - ball.center) / dist;
    EXPECT_NEAR((m - ball.center - d * d.dot(m - ball.center)).norm(), 0.0, 1e-12);
    EXPECT_GT(d.dot(m - ball.center), 0.0);
}

TEST(Image, BlackImageAccepted)
{
    ImageJobConfig cfg;
    cfg.noise = NoiseSpec::gaussian(0.0, 0.01);
    cfg.sampling_fraction = 0.25;
    const GrayImage black = GrayImage::blank(16, 16);
    const auto res = run_image_pipeline(black, cfg);
    EXPECT_EQ(res.decision, 0);
    EXPECT_EQ(*std::max_element(res.reconstruction.pixels.begin(), res.reconstruction.pixels.end()), 0.0);
}

TEST(Image, SparseDotsRecovered)
{
    ImageJobConfig cfg;
    cfg.noise = NoiseSpec::gaussian(0.0, 0.01);
    cfg.sampling_fraction = 0.5;
    const GrayImage dots = make_dots_image(64, 64, 61, 3);  // S0 = 123
    const auto res = run_image_pipeline(dots, cfg);
    EXPECT_EQ(res.S0, 123);
    EXPECT_EQ(res.S1, 246);
    EXPECT_EQ(res.decision, 0);
    EXPECT_GT(psnr(dots, res.reconstruction), 40.0);
}

TEST(Image, FullSamplingClosedForm)
{
    // with every row observed the first-half design is orthogonal and the
    // reconstruction is the soft-thresholded image
    ImageJobConfig cfg;
    cfg.noise = NoiseSpec::gaussian(0.0, 0.01);
    cfg.sampling_fraction = 1.0;
    const GrayImage img = add_smooth_background(make_dots_image(16, 16, 10, 2), 0.2);
    const auto res = run_image_pipeline(img, cfg);
    const double p = 256.0;
    const double t = lasso_penalty(cfg.kappa(), cfg.delta, 256, 256) / (2.0 * p);
    const Eigen::VectorXd v = image_to_vector(img);
    const Eigen::VectorXd r = image_to_vector(res.reconstruction);
    for (Eigen::Index j = 0; j < v.size(); ++j) {
        EXPECT_NEAR(r[j], soft_threshold(v[j], t), 1e-9);
    }
}

TEST(Image, BadFractionsRejected)
{
    ImageJobConfig cfg;
    cfg.sampling_fraction = 0.0;
    EXPECT_THROW(run_image_pipeline(GrayImage::blank(8, 8), cfg), ConfigError);
    cfg.sampling_fraction = 0.001;
    EXPECT_THROW(run_image_pipeline(GrayImage::blank(8, 8), cfg), ConfigError);
    cfg.sampling_fraction = 0.5;
    cfg.sparsity_fraction = 0.9;
    EXPECT_THROW(run_image_pipeline(GrayImage::blank(8, 8), cfg), ConfigError);
}
