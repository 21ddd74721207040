#include "shci/image.hpp"

#include "shci/errors.hpp"
#include "shci/rng.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <string>

namespace shci {

namespace {

// next whitespace-delimited header token, skipping # comments
std::string pgm_token(std::istream& in)
{
    std::string tok;
    int c = 0;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) {
                return tok;
            }
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    return tok;
}

} // namespace

GrayImage GrayImage::blank(int width, int height, double value)
{
    if (width < 1 || height < 1) {
        throw ConfigError("image dimensions must be positive");
    }
    GrayImage img;
    img.width = width;
    img.height = height;
    img.pixels.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), value);
    return img;
}

GrayImage read_pgm(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open image '" + path.string() + "'");
    }
    if (pgm_token(in) != "P5") {
        throw ConfigError(path.string() + ": not a binary PGM (P5) file");
    }
    int width = 0;
    int height = 0;
    int maxval = 0;
    try {
        width = std::stoi(pgm_token(in));
        height = std::stoi(pgm_token(in));
        maxval = std::stoi(pgm_token(in));
    } catch (const std::logic_error&) {
        throw ConfigError(path.string() + ": malformed PGM header");
    }
    if (width < 1 || height < 1 || maxval < 1 || maxval > 255) {
        throw ConfigError(path.string() + ": unsupported PGM dimensions or maxval");
    }
    GrayImage img = GrayImage::blank(width, height);
    std::vector<unsigned char> raw(img.pixels.size());
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (in.gcount() != static_cast<std::streamsize>(raw.size())) {
        throw ConfigError(path.string() + ": truncated PGM pixel data");
    }
    for (std::size_t i = 0; i < raw.size(); ++i) {
        img.pixels[i] = static_cast<double>(raw[i]) / static_cast<double>(maxval);
    }
    return img;
}

void write_pgm(const std::filesystem::path& path, const GrayImage& image)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot open '" + path.string() + "' for writing");
    }
    out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
    std::vector<unsigned char> raw(image.pixels.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const double v = std::clamp(image.pixels[i], 0.0, 1.0);
        raw[i] = static_cast<unsigned char>(std::lround(v * 255.0));
    }
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!out) {
        throw ConfigError("write failed for '" + path.string() + "'");
    }
}

Eigen::VectorXd image_to_vector(const GrayImage& image)
{
    Eigen::VectorXd v(static_cast<Eigen::Index>(image.pixels.size()));
    Eigen::Index k = 0;
    for (int c = 0; c < image.width; ++c) {
        for (int r = 0; r < image.height; ++r) {
            v[k++] = image.at(r, c);
        }
    }
    return v;
}

GrayImage vector_to_image(const Eigen::Ref<const Eigen::VectorXd>& v, int width, int height)
{
    GrayImage img = GrayImage::blank(width, height);
    if (v.size() != static_cast<Eigen::Index>(img.pixels.size())) {
        throw ConfigError("vector length does not match the image size");
    }
    Eigen::Index k = 0;
    for (int c = 0; c < width; ++c) {
        for (int r = 0; r < height; ++r) {
            img.at(r, c) = v[k++];
        }
    }
    return img;
}

double psnr(const GrayImage& reference, const GrayImage& test)
{
    if (reference.pixels.size() != test.pixels.size()) {
        throw ConfigError("psnr: image sizes differ");
    }
    double mse = 0.0;
    for (std::size_t i = 0; i < reference.pixels.size(); ++i) {
        const double d = reference.pixels[i] - test.pixels[i];
        mse += d * d;
    }
    mse /= static_cast<double>(reference.pixels.size());
    if (mse == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return 10.0 * std::log10(1.0 / mse);
}

void ImageJobConfig::validate() const
{
    if (!(sampling_fraction > 0.0 && sampling_fraction <= 1.0)) {
        throw ConfigError("sampling fraction must lie in (0, 1]");
    }
    if (!(sparsity_fraction > 0.0 && sparsity_fraction <= 1.0)) {
        throw ConfigError("sparsity fraction must lie in (0, 1]");
    }
    if (s1_factor < 2) {
        throw ConfigError("s1_factor must be at least 2");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw ConfigError("delta must lie in (0, 1)");
    }
    if (!(constant_scale > 0.0)) {
        throw ConfigError("constant_scale must be positive");
    }
    noise.validate();
}

double ImageJobConfig::kappa() const
{
    return lasso_kappa ? *lasso_kappa : default_kappa(noise.sub_gaussian_c, tail_C);
}

ImageResult run_image_pipeline(const GrayImage& image, const ImageJobConfig& cfg)
{
    cfg.validate();
    const auto p = static_cast<Eigen::Index>(image.pixels.size());
    const auto n = static_cast<Eigen::Index>(std::llround(cfg.sampling_fraction * static_cast<double>(p)));
    if (n < 1) {
        throw ConfigError("sampling fraction times p is below one measurement");
    }
    const Eigen::Index S0 =
        std::max<Eigen::Index>(1, std::llround(cfg.sparsity_fraction * static_cast<double>(p)));
    const Eigen::Index S1 = cfg.s1_factor * S0;
    if (S1 > p) {
        throw ConfigError("S1 = " + std::to_string(S1) + " exceeds the pixel count");
    }

    const Eigen::VectorXd theta = image_to_vector(image);
    const Rng root(cfg.seed);
    RegressionSample sample{make_partial_fourier_design(n, p, root.split(1).key()),
                            make_partial_fourier_design(n, p, root.split(2).key()), Eigen::VectorXd(),
                            Eigen::VectorXd(), cfg.noise.variance()};
    sample.y_first = generate_observations(theta, sample.design_first, cfg.noise, root.split(3).key());
    sample.y_second = generate_observations(theta, sample.design_second, cfg.noise, root.split(4).key());

    LassoConfig lasso = cfg.lasso;
    lasso.kappa = cfg.kappa();
    lasso.delta = cfg.delta;
    ThresholdSpec spec;
    spec.delta = cfg.delta;
    spec.constant_scale = cfg.constant_scale;

    ConfidenceResult res = two_index_confset(sample, S0, S1, lasso, spec);

    ImageResult out;
    out.n = n;
    out.S0 = S0;
    out.S1 = S1;
    out.decision = static_cast<int>(res.report.psi);
    out.reconstruction = vector_to_image(res.estimate.theta_hat, image.width, image.height);
    out.extremal = vector_to_image(extremal_contrast_point(res.ball), image.width, image.height);

    ThresholdSpec unit = spec;
    unit.constant_scale = 1.0;
    const ThresholdPair unit_thr =
        thresholds(unit.bind(res.report.b_hat, sample.sigma_sq), S0, n, p, IndexConvention::two_index, S1);
    out.acceptance_scale = acceptance_scale(res.report.r_n, res.report.tail_stats.at(S0), unit_thr);

    out.ball = std::move(res.ball);
    out.report = std::move(res.report);
    out.estimate = std::move(res.estimate);
    return out;
}

ImageResult run_image_pipeline(const std::filesystem::path& input, const ImageJobConfig& cfg)
{
    return run_image_pipeline(read_pgm(input), cfg);
}

Eigen::VectorXd extremal_contrast_point(const ConfidenceBall& ball)
{
    if (ball.center.size() == 0) {
        throw ConfigError("extremal_contrast_point: empty ball");
    }
    const Eigen::VectorXd g = Eigen::VectorXd::Constant(ball.center.size(), ball.center.mean());
    const Eigen::VectorXd d = g - ball.center;
    const double dist = d.norm();
    if (dist == 0.0 || ball.radius >= dist) {
        return g;
    }
    return ball.center + (ball.radius / dist) * d;
}

GrayImage make_dots_image(int width, int height, int dots, std::uint64_t seed)
{
    GrayImage img = GrayImage::blank(width, height);
    if (dots < 0 || dots > width * height) {
        throw ConfigError("dot count out of range");
    }
    Rng r(seed);
    for (auto idx : r.sample_without_replacement(img.pixels.size(), static_cast<std::size_t>(dots))) {
        img.pixels[idx] = 0.6 + 0.4 * r.uniform();
    }
    return img;
}

GrayImage add_smooth_background(GrayImage image, double amplitude)
{
    const double w = std::max(1, image.width - 1);
    const double h = std::max(1, image.height - 1);
    for (int r = 0; r < image.height; ++r) {
        for (int c = 0; c < image.width; ++c) {
            const double x = c / w;
            const double y = r / h;
            image.at(r, c) += amplitude * 0.5 * (x + y);
        }
    }
    return image;
}

} // namespace shci
