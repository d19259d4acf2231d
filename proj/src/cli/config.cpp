// config.cpp — settings files, precedence and RunConfig resolution

#include "tfd/cli.hpp"

#include "tfd/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

namespace tfd::cli {

namespace {

constexpr std::array<std::string_view, 24> kKnownKeys{
    "omega0", "omegac", "charge", "bfield", "mass", "omega1", "omega2", "beta",
    "omega-ref1", "omega-ref2", "hbar", "t0", "t1", "samples", "out", "format",
    "n-max", "k-max", "betas", "beta-log", "grid", "workers", "window", "window-samples"};

// Keys that choose how the oscillator is specified. A layer that sets any key of
// one group hides the other groups from lower-precedence layers.
const std::array<std::vector<std::string>, 3> kModelGroups{
    std::vector<std::string>{"omega1", "omega2"},
    std::vector<std::string>{"charge", "bfield"},
    std::vector<std::string>{"omegac"}};

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double to_double(std::string_view key, std::string_view text)
{
    text = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw ParameterError("invalid number for " + std::string(key) + ": '" + std::string(text) + "'");
    }
    if (!std::isfinite(value)) throw ParameterError(std::string(key) + " must be finite");
    return value;
}

long long to_integer(std::string_view key, std::string_view text, long long lo)
{
    text = trim(text);
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        throw ParameterError("invalid integer for " + std::string(key) + ": '" + std::string(text) + "'");
    }
    if (value < lo) throw ParameterError(std::string(key) + " must be at least " + std::to_string(lo));
    return value;
}

bool has_any(const Settings& s, const std::vector<std::string>& keys)
{
    return std::any_of(keys.begin(), keys.end(), [&](const std::string& k) { return s.count(k) > 0; });
}

} // namespace

std::string normalize_key(std::string_view key)
{
    std::string k(trim(key));
    while (!k.empty() && k.front() == '-') k.erase(k.begin());
    std::replace(k.begin(), k.end(), '_', '-');
    std::transform(k.begin(), k.end(), k.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return k;
}

bool is_known_key(std::string_view key)
{
    return std::find(kKnownKeys.begin(), kKnownKeys.end(), key) != kKnownKeys.end();
}

Settings parse_config(std::istream& in, std::string_view origin)
{
    Settings settings;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view(line);
        if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        view = trim(view);
        if (view.empty()) continue;
        const auto eq = view.find('=');
        const std::string where = std::string(origin) + ":" + std::to_string(line_no);
        if (eq == std::string_view::npos) throw ParameterError(where + ": expected key=value");
        const std::string key = normalize_key(view.substr(0, eq));
        if (!is_known_key(key)) throw ParameterError(where + ": unknown key '" + key + "'");
        settings[key] = std::string(trim(view.substr(eq + 1)));
    }
    return settings;
}

Settings load_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open config file '" + path + "'");
    return parse_config(in, path);
}

std::vector<double> parse_list(std::string_view spec)
{
    std::vector<double> out;
    std::string_view rest = trim(spec);
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const std::string_view item = trim(rest.substr(0, comma));
        if (!item.empty()) out.push_back(to_double("list entry", item));
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
    }
    return out;
}

std::vector<double> parse_beta_log(std::string_view spec)
{
    const auto c1 = spec.find(':');
    const auto c2 = c1 == std::string_view::npos ? c1 : spec.find(':', c1 + 1);
    if (c2 == std::string_view::npos) throw ParameterError("beta-log expects min:max:count");
    const double lo = to_double("beta-log min", spec.substr(0, c1));
    const double hi = to_double("beta-log max", spec.substr(c1 + 1, c2 - c1 - 1));
    const long long count = to_integer("beta-log count", spec.substr(c2 + 1), 0);
    if (!(lo > 0.0) || !(hi >= lo)) throw ParameterError("beta-log requires 0 < min <= max");
    std::vector<double> betas(static_cast<std::size_t>(count));
    if (count == 1) betas[0] = lo;
    const double a = std::log10(lo);
    const double b = std::log10(hi);
    for (long long j = 0; j < count && count > 1; ++j) {
        betas[static_cast<std::size_t>(j)] = std::pow(10.0, a + (b - a) * static_cast<double>(j) / static_cast<double>(count - 1));
    }
    if (count > 1) {
        betas.front() = lo;
        betas.back() = hi;
    }
    return betas;
}

RunConfig resolve(const Settings& file_settings, const Settings& flag_settings)
{
    Settings merged = file_settings;
    for (const auto& group : kModelGroups) {
        if (!has_any(flag_settings, group)) continue;
        for (const auto& other : kModelGroups) {
            if (&other == &group) continue;
            for (const auto& k : other) merged.erase(k);
        }
    }
    for (const auto& [k, v] : flag_settings) merged[k] = v;

    auto get = [&](const char* key) -> const std::string* {
        const auto it = merged.find(key);
        return it == merged.end() ? nullptr : &it->second;
    };
    auto number = [&](const char* key, double fallback) {
        const std::string* v = get(key);
        return v ? to_double(key, *v) : fallback;
    };

    RunConfig cfg;
    const double mass = number("mass", 1.0);
    const double hbar = number("hbar", 1.0);
    const double omega0 = number("omega0", 0.1);
    if (get("omega1") || get("omega2")) {
        if (!get("omega1") || !get("omega2")) throw ParameterError("omega1 and omega2 must be given together");
        cfg.params = OscillatorParams::from_modes(number("omega1", 0.0), number("omega2", 0.0), mass, hbar);
    } else if (get("charge") || get("bfield")) {
        if (!get("charge") || !get("bfield")) throw ParameterError("charge and bfield must be given together");
        cfg.params = OscillatorParams::from_field(omega0, number("charge", 0.0), number("bfield", 0.0), mass, hbar);
    } else {
        cfg.params = OscillatorParams{mass, hbar, omega0, number("omegac", 0.0)};
    }
    validate(cfg.params);

    cfg.beta = number("beta", 1.0);
    validate(ThermalParams{cfg.beta});
    cfg.refs = {number("omega-ref1", 1.0), number("omega-ref2", 1.0)};
    validate(cfg.refs);

    if (get("t0")) cfg.t0 = number("t0", 0.0);
    if (get("t1")) cfg.t1 = number("t1", 0.0);
    if (const std::string* v = get("samples")) cfg.samples = static_cast<std::size_t>(to_integer("samples", *v, 2));
    if (const std::string* v = get("out")) cfg.out = *v;
    if (const std::string* v = get("format")) {
        if (*v == "csv") {
            cfg.format = OutputFormat::csv;
        } else if (*v == "json") {
            cfg.format = OutputFormat::json;
        } else {
            throw ParameterError("format must be csv or json, got '" + *v + "'");
        }
    }
    if (const std::string* v = get("n-max")) cfg.n_max = static_cast<int>(to_integer("n-max", *v, 0));
    if (const std::string* v = get("k-max")) cfg.k_max = static_cast<int>(to_integer("k-max", *v, 0));

    if (get("betas") && get("beta-log")) throw ParameterError("give either betas or beta-log, not both");
    if (const std::string* v = get("betas")) cfg.betas = parse_list(*v);
    if (const std::string* v = get("beta-log")) cfg.betas = parse_beta_log(*v);
    if (const std::string* v = get("grid")) cfg.grid_path = *v;
    if (const std::string* v = get("workers")) cfg.workers = static_cast<unsigned>(to_integer("workers", *v, 1));
    if (get("window")) {
        cfg.window = number("window", 0.0);
        if (!(*cfg.window > 0.0)) throw ParameterError("window must be positive");
    }
    if (const std::string* v = get("window-samples")) {
        cfg.window_samples = static_cast<std::size_t>(to_integer("window-samples", *v, 2));
    }
    return cfg;
}

} // namespace tfd::cli
