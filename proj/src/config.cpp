#include "shci/config.hpp"

#include "shci/errors.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <system_error>

namespace shci {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <typename T>
T parse_integer(const std::string& key, const std::string& value)
{
    T out{};
    const auto* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError("config key '" + key + "': expected an integer, got '" + value + "'");
    }
    return out;
}

double parse_real(const std::string& key, const std::string& value)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) {
            throw std::invalid_argument(value);
        }
        return v;
    } catch (const std::logic_error&) {
        throw ConfigError("config key '" + key + "': expected a number, got '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value)
{
    if (value == "true" || value == "1") {
        return true;
    }
    if (value == "false" || value == "0") {
        return false;
    }
    throw ConfigError("config key '" + key + "': expected true or false");
}

} // namespace

const std::vector<std::string>& config_keys()
{
    static const std::vector<std::string> keys{
        "p", "n", "S0", "S1", "prior", "prior_C", "replications", "delta",
        "noise", "noise.variance", "noise.bound", "noise.sub_gaussian_c",
        "design", "lasso.kappa", "lasso.max_iter", "lasso.tol", "lasso.kkt_tol", "lasso.step_rule", "lasso.step",
        "lasso.beta", "lasso.record_trace", "tail_C", "threshold_mode", "general.c_m", "general.C_M",
        "constant_scale", "test_mode", "seed", "threads"};
    return keys;
}

void set_config_value(SimulationConfig& cfg, const std::string& key, const std::string& value)
{
    if (key == "p") {
        cfg.p = parse_integer<Eigen::Index>(key, value);
    } else if (key == "n") {
        cfg.n = parse_integer<Eigen::Index>(key, value);
    } else if (key == "S0") {
        cfg.S0 = parse_integer<Eigen::Index>(key, value);
    } else if (key == "S1") {
        cfg.S1 = parse_integer<Eigen::Index>(key, value);
    } else if (key == "prior") {
        cfg.prior = parse_prior_family(value);
    } else if (key == "prior_C") {
        cfg.prior_C = parse_real(key, value);
    } else if (key == "replications") {
        cfg.replications = parse_integer<int>(key, value);
    } else if (key == "delta") {
        cfg.delta = parse_real(key, value);
    } else if (key == "noise") {
        if (value == "gaussian") {
            cfg.noise.family = NoiseFamily::gaussian;
        } else if (value == "bounded_rademacher") {
            cfg.noise.family = NoiseFamily::bounded_rademacher;
        } else {
            throw ConfigError("unknown noise family '" + value + "' (gaussian|bounded_rademacher)");
        }
    } else if (key == "noise.variance") {
        cfg.noise.family = NoiseFamily::gaussian;
        cfg.noise.scale = parse_real(key, value);
    } else if (key == "noise.bound") {
        cfg.noise.family = NoiseFamily::bounded_rademacher;
        cfg.noise.scale = parse_real(key, value);
    } else if (key == "noise.sub_gaussian_c") {
        cfg.noise.sub_gaussian_c = parse_real(key, value);
    } else if (key == "design") {
        cfg.design = parse_design_kind(value);
    } else if (key == "lasso.kappa") {
        if (value == "auto") {
            cfg.lasso_kappa.reset();
        } else {
            cfg.lasso_kappa = parse_real(key, value);
        }
    } else if (key == "lasso.max_iter") {
        cfg.lasso.max_iter = parse_integer<int>(key, value);
    } else if (key == "lasso.tol") {
        cfg.lasso.tol = parse_real(key, value);
    } else if (key == "lasso.kkt_tol") {
        cfg.lasso.kkt_tol = parse_real(key, value);
    } else if (key == "lasso.step_rule") {
        if (value == "backtracking") {
            if (!std::holds_alternative<Backtracking>(cfg.lasso.step_rule)) {
                cfg.lasso.step_rule = Backtracking{};
            }
        } else if (value == "fixed") {
            if (!std::holds_alternative<FixedStep>(cfg.lasso.step_rule)) {
                cfg.lasso.step_rule = FixedStep{};
            }
        } else {
            throw ConfigError("unknown step rule '" + value + "' (backtracking|fixed)");
        }
    } else if (key == "lasso.step") {
        cfg.lasso.step_rule = FixedStep{parse_real(key, value)};
    } else if (key == "lasso.beta") {
        cfg.lasso.step_rule = Backtracking{parse_real(key, value)};
    } else if (key == "lasso.record_trace") {
        cfg.lasso.record_trace = parse_bool(key, value);
    } else if (key == "tail_C") {
        cfg.tail_C = parse_real(key, value);
    } else if (key == "threshold_mode") {
        cfg.threshold_mode = parse_threshold_mode(value);
    } else if (key == "general.c_m") {
        cfg.general_c_m = parse_real(key, value);
    } else if (key == "general.C_M") {
        cfg.general_C_M = parse_real(key, value);
    } else if (key == "constant_scale") {
        cfg.constant_scale = parse_real(key, value);
    } else if (key == "test_mode") {
        cfg.test_mode = parse_index_convention(value);
    } else if (key == "seed") {
        cfg.seed = parse_integer<std::uint64_t>(key, value);
    } else if (key == "threads") {
        cfg.threads = parse_integer<int>(key, value);
    } else {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

SimulationConfig parse_simulation_config(std::istream& in, SimulationConfig base)
{
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            set_config_value(base, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError("config line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return base;
}

SimulationConfig load_simulation_config(const std::filesystem::path& path, SimulationConfig base)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config '" + path.string() + "'");
    }
    try {
        return parse_simulation_config(in, std::move(base));
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

void apply_seed_override(SimulationConfig& cfg)
{
    if (const char* env = std::getenv("SHCI_SEED"); env != nullptr && *env != '\0') {
        cfg.seed = parse_integer<std::uint64_t>("SHCI_SEED", env);
    }
}

SimulationConfig preset_by_name(const std::string& name)
{
    if (name == "desk") {
        return SimulationConfig::desk_preset();
    }
    if (name == "paper") {
        return SimulationConfig::paper_preset();
    }
    throw ConfigError("unknown preset '" + name + "' (desk|paper)");
}

} // namespace shci
