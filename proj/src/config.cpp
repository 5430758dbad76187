#include "ehsim/config.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

namespace ehsim
{

namespace
{

struct PlantField {
    std::string_view key;
    double PlantParams::*member;
};

constexpr std::array<PlantField, 14> plant_fields{{
    {"Ps", &PlantParams::Ps},
    {"rho", &PlantParams::rho},
    {"Cd", &PlantParams::Cd},
    {"w", &PlantParams::w},
    {"Ap", &PlantParams::Ap},
    {"Ctp", &PlantParams::Ctp},
    {"beta_e", &PlantParams::beta_e},
    {"Vt", &PlantParams::Vt},
    {"Mt", &PlantParams::Mt},
    {"Bp", &PlantParams::Bp},
    {"K", &PlantParams::K},
    {"delta_l", &PlantParams::delta_l},
    {"delta_r", &PlantParams::delta_r},
    {"kv", &PlantParams::kv},
}};

constexpr std::string_view model_prefix = "model.";

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_number(std::string_view key, std::string_view text)
{
    text = trim(text);
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size() || text.empty()) {
        throw ConfigError(std::string(key), "cannot parse '" + std::string(text) + "' as a number");
    }
    return value;
}

std::vector<double> parse_list(std::string_view key, std::string_view text)
{
    std::vector<double> values;
    while (true) {
        const auto comma = text.find(',');
        values.push_back(parse_number(key, text.substr(0, comma)));
        if (comma == std::string_view::npos) {
            break;
        }
        text.remove_prefix(comma + 1);
    }
    return values;
}

bool parse_bool(std::string_view key, std::string_view text)
{
    if (text == "true" || text == "1" || text == "yes") {
        return true;
    }
    if (text == "false" || text == "0" || text == "no") {
        return false;
    }
    throw ConfigError(std::string(key), "expected true or false, got '" + std::string(text) + "'");
}

double *plant_member(PlantParams &p, std::string_view key)
{
    for (const auto &field : plant_fields) {
        if (field.key == key) {
            return &(p.*field.member);
        }
    }
    return nullptr;
}

/// Shortest text that parses back to the same double.
std::string exact(double value)
{
    std::array<char, 32> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), end);
}

std::string join(const std::vector<double> &values)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += exact(values[i]);
    }
    return out;
}

template <typename Fn>
void rethrow_as_config_error(Fn &&fn, std::string_view prefix = {})
{
    try {
        fn();
    } catch (const InvalidParameter &err) {
        throw ConfigError(std::string(prefix) + err.field(), err.what());
    }
}

} // namespace

ConfigError::ConfigError(std::string key, const std::string &message)
    : std::runtime_error("config key '" + key + "': " + message), key_(std::move(key))
{
}

FuzzyEstimator RunConfig::estimator() const
{
    return FuzzyEstimator(centers, initial_consequents);
}

void RunConfig::validate() const
{
    rethrow_as_config_error([&] { plant.validate(); });
    rethrow_as_config_error([&] { controller.model.validate(); }, model_prefix);
    rethrow_as_config_error([&] { controller.validate(); });
    rethrow_as_config_error([&] { scenario.validate(); });
    try {
        (void)estimator();
    } catch (const std::invalid_argument &err) {
        const bool size_mismatch = initial_consequents.size() != centers.size();
        throw ConfigError(size_mismatch ? "D_hat0" : "centers", err.what());
    }
}

RunConfig parse_config(std::string_view text)
{
    RunConfig cfg;
    std::optional<double> lambda;
    std::optional<double> c0;
    std::optional<double> c1;
    std::optional<std::vector<double>> consequents;
    std::vector<std::pair<std::string, double>> model_overrides;

    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(std::string(trim(line)),
                              "line " + std::to_string(line_no) + " is not of the form key = value");
        }
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));

        if (double *member = plant_member(cfg.plant, key)) {
            *member = parse_number(key, value);
        } else if (key.starts_with(model_prefix) &&
                   plant_member(cfg.controller.model, key.substr(model_prefix.size()))) {
            // Applied after the plant block so the model inherits unset fields.
            model_overrides.emplace_back(key.substr(model_prefix.size()), parse_number(key, value));
        } else if (key == "lambda") {
            lambda = parse_number(key, value);
        } else if (key == "c0") {
            c0 = parse_number(key, value);
        } else if (key == "c1") {
            c1 = parse_number(key, value);
        } else if (key == "kappa") {
            cfg.controller.kappa = parse_number(key, value);
        } else if (key == "phi") {
            cfg.controller.phi = parse_number(key, value);
        } else if (key == "centers") {
            cfg.centers = parse_list(key, value);
        } else if (key == "D_hat0") {
            consequents = parse_list(key, value);
        } else if (key == "duration") {
            cfg.scenario.duration = parse_number(key, value);
        } else if (key == "dt_plant") {
            cfg.scenario.dt_plant = parse_number(key, value);
        } else if (key == "dt_control") {
            cfg.scenario.dt_control = parse_number(key, value);
        } else if (key == "amplitude") {
            cfg.scenario.reference.amplitude = parse_number(key, value);
        } else if (key == "omega") {
            cfg.scenario.reference.omega = parse_number(key, value);
        } else if (key == "supply_pressure_mode") {
            try {
                cfg.scenario.supply_mode = parse_supply_mode(value);
            } catch (const std::invalid_argument &err) {
                throw ConfigError(std::string(key), err.what());
            }
        } else if (key == "x0") {
            cfg.scenario.initial.x = parse_number(key, value);
        } else if (key == "v0") {
            cfg.scenario.initial.v = parse_number(key, value);
        } else if (key == "PL0") {
            cfg.scenario.initial.PL = parse_number(key, value);
        } else if (key == "freeze_adaptation") {
            cfg.scenario.freeze_adaptation = parse_bool(key, value);
        } else if (key == "monitor_window") {
            cfg.scenario.monitor.window = parse_number(key, value);
        } else if (key == "monitor_tolerance") {
            cfg.scenario.monitor.tolerance = parse_number(key, value);
        } else if (key == "monitor_e_threshold") {
            cfg.scenario.monitor.e_threshold = parse_number(key, value);
        } else if (key == "transient_fraction") {
            cfg.scenario.monitor.transient_fraction = parse_number(key, value);
        } else if (key == "output") {
            cfg.output = std::string(value);
        } else if (key == "emit_plot_data") {
            cfg.emit_plot_data = parse_bool(key, value);
        } else {
            throw ConfigError(std::string(key), "unknown key");
        }
    }

    // lambda expands to the critically damped pair unless c0/c1 are explicit.
    cfg.controller.c0 = c0.value_or(lambda ? *lambda * *lambda : cfg.controller.c0);
    cfg.controller.c1 = c1.value_or(lambda ? 2.0 * *lambda : cfg.controller.c1);

    cfg.controller.model = cfg.plant;
    for (const auto &[field, value] : model_overrides) {
        *plant_member(cfg.controller.model, field) = value;
    }
    cfg.initial_consequents = consequents.value_or(std::vector<double>(cfg.centers.size(), 0.0));
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("config", "cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

RunConfig apply_overrides(RunConfig cfg, const ConfigOverrides &overrides)
{
    if (overrides.supply_mode) {
        cfg.scenario.supply_mode = *overrides.supply_mode;
    }
    if (overrides.duration) {
        cfg.scenario.duration = *overrides.duration;
    }
    if (overrides.output) {
        cfg.output = *overrides.output;
    }
    if (overrides.freeze_adaptation) {
        cfg.scenario.freeze_adaptation = true;
    }
    cfg.validate();
    return cfg;
}

void print_config(std::ostream &os, const RunConfig &cfg)
{
    os << "# plant\n";
    for (const auto &field : plant_fields) {
        os << field.key << " = " << exact(cfg.plant.*field.member) << '\n';
    }
    os << "# controller model\n";
    for (const auto &field : plant_fields) {
        os << model_prefix << field.key << " = " << exact(cfg.controller.model.*field.member)
           << '\n';
    }
    os << "# controller\n"
       << "c0 = " << exact(cfg.controller.c0) << '\n'
       << "c1 = " << exact(cfg.controller.c1) << '\n'
       << "kappa = " << exact(cfg.controller.kappa) << '\n'
       << "phi = " << exact(cfg.controller.phi) << '\n'
       << "# fuzzy\n"
       << "centers = " << join(cfg.centers) << '\n'
       << "D_hat0 = " << join(cfg.initial_consequents) << '\n'
       << "# scenario\n"
       << "duration = " << exact(cfg.scenario.duration) << '\n'
       << "dt_plant = " << exact(cfg.scenario.dt_plant) << '\n'
       << "dt_control = " << exact(cfg.scenario.dt_control) << '\n'
       << "amplitude = " << exact(cfg.scenario.reference.amplitude) << '\n'
       << "omega = " << exact(cfg.scenario.reference.omega) << '\n'
       << "supply_pressure_mode = " << to_string(cfg.scenario.supply_mode) << '\n'
       << "x0 = " << exact(cfg.scenario.initial.x) << '\n'
       << "v0 = " << exact(cfg.scenario.initial.v) << '\n'
       << "PL0 = " << exact(cfg.scenario.initial.PL) << '\n'
       << "freeze_adaptation = " << (cfg.scenario.freeze_adaptation ? "true" : "false") << '\n'
       << "monitor_window = " << exact(cfg.scenario.monitor.window) << '\n'
       << "monitor_tolerance = " << exact(cfg.scenario.monitor.tolerance) << '\n'
       << "monitor_e_threshold = " << exact(cfg.scenario.monitor.e_threshold) << '\n'
       << "transient_fraction = " << exact(cfg.scenario.monitor.transient_fraction) << '\n'
       << "# output\n";
    if (!cfg.output.empty()) {
        os << "output = " << cfg.output << '\n';
    }
    os << "emit_plot_data = " << (cfg.emit_plot_data ? "true" : "false") << '\n';
}

} // namespace ehsim
