#pragma once

#include "shci/confidence.hpp"
#include "shci/lasso.hpp"
#include "shci/model.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace shci {

enum class DesignKind { gaussian, partial_fourier };

std::string to_string(DesignKind kind);
DesignKind parse_design_kind(const std::string& text);
std::string to_string(ThresholdMode mode);
ThresholdMode parse_threshold_mode(const std::string& text);
std::string to_string(IndexConvention convention);
IndexConvention parse_index_convention(const std::string& text);

/// Pilot-calibrated constant_scale of the desk preset: the 95th percentile
/// (5.59e-4) of the smallest accepting scale over 200 Theta1 pilot
/// replications with seed 777, rounded up.
inline constexpr double kDeskConstantScale = 6.5e-4;

struct SimulationConfig {
    Eigen::Index p = 10000;
    Eigen::Index n = 1000;
    Eigen::Index S0 = 5;
    Eigen::Index S1 = 10;
    PriorFamily prior = PriorFamily::theta1;
    /// C in the Theta3 background variance.
    double prior_C = 32.0;
    int replications = 10000;
    double delta = 0.05;
    NoiseSpec noise = NoiseSpec::gaussian(1.0);
    DesignKind design = DesignKind::gaussian;
    LassoConfig lasso;
    /// Explicit penalty constant; unset means default_kappa(noise c, tail_C).
    std::optional<double> lasso_kappa;
    /// C of the enlarged class: enters the default penalty and E.
    double tail_C = 32.0;
    ThresholdMode threshold_mode = ThresholdMode::explicit_constants;
    double general_c_m = 1.0;
    double general_C_M = 1.0;
    double constant_scale = 1.0;
    IndexConvention test_mode = IndexConvention::two_index;
    std::uint64_t seed = 20160701;
    /// Worker threads; 0 uses the hardware concurrency.
    int threads = 1;

    /// p = 10^4, n = 10^3, (S0, S1) = (5, 10), 10^4 replications, unit
    /// Gaussian noise, unscaled constants. Long-running.
    static SimulationConfig paper_preset();
    /// p = 2048, n = 512, (S0, S1) = (5, 20), 200 replications, Gaussian
    /// noise of variance 1/16, multi-index test with the calibrated scale.
    static SimulationConfig desk_preset();

    void validate() const;
    [[nodiscard]] double kappa() const;
    [[nodiscard]] LassoConfig resolved_lasso() const;
    [[nodiscard]] ThresholdSpec threshold_spec() const;
    [[nodiscard]] PriorSpec prior_spec() const;
    [[nodiscard]] std::vector<Eigen::Index> grid() const { return {S0, S1}; }
};

struct ReplicationRecord {
    Eigen::Index index = 0;
    int label = 0;
    /// 0 when the ball uses S0, 1 otherwise.
    int decision = 0;
    Eigen::Index selected_sparsity = 0;
    bool covered = false;
    double diameter = 0.0;
    Eigen::Index l0 = 0;
    double risk = 0.0;
    /// Distance from theta to the S0-sparse vectors.
    double separation = 0.0;
    /// rho_margin under the test convention and constant_scale.
    double rho = 0.0;
    /// Smallest constant_scale at which the S0 index is accepted.
    double acceptance_scale = 0.0;
    double b_hat = 0.0;
    double r_n = 0.0;
    double tail = 0.0;
    bool converged = false;
};

struct MetricsRow {
    double misclassification = 0.0;
    double mean_l0 = 0.0;
    double miss_coverage = 0.0;
    double mean_diameter = 0.0;
    double mean_risk = 0.0;
};

/// Replaces the prior draw; receives the configuration and a seed.
using ThetaSampler = std::function<Eigen::VectorXd(const SimulationConfig&, std::uint64_t)>;

DesignOperator make_design(const SimulationConfig& cfg, std::uint64_t seed);

/// Replication `index`: every random quantity derives from (cfg.seed, index).
ReplicationRecord run_replication(const SimulationConfig& cfg, Eigen::Index index,
                                  const ThetaSampler& sampler = {});

/// All replications, sorted by index, run on cfg.threads workers.
std::vector<ReplicationRecord> run_replications(const SimulationConfig& cfg, const ThetaSampler& sampler = {});

/// Exact averages of the per-replication values; independent of record order.
MetricsRow aggregate(std::vector<ReplicationRecord> records);

MetricsRow run_simulation(const SimulationConfig& cfg);

/// q-quantile (nearest rank) of the smallest accepting scale over Theta1
/// pilot replications of `cfg`.
double calibrate_constant_scale(SimulationConfig cfg, int pilot_replications, double quantile);

/// Theta sampler for exactly S0-sparse vectors with random signs and
/// magnitudes at least `min_magnitude`.
ThetaSampler exact_sparse_sampler(Eigen::Index sparsity, double min_magnitude);

} // namespace shci
