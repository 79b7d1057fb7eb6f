#include "gempic/config.hpp"

#include <charconv>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace gempic {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& line)
{
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

std::string unquote(const std::string& v, const std::string& where)
{
    if (v.size() >= 2 && v.front() == '"') {
        if (v.back() != '"') throw ConfigError(where + ": unterminated string");
        return v.substr(1, v.size() - 2);
    }
    return v;
}

const std::set<std::string> kKnownKeys = {
    "grid.M",           "grid.L",          "basis.kind",         "basis.degree",         "shape.degree",
    "shape.scale",      "particles.N",     "particles.sampler",  "particles.seed",       "scheme.kind",
    "integrator.kind",  "integrator.dt",   "integrator.steps",   "integrator.dg_tol",    "integrator.linear_tol",
    "integrator.max_iter", "case.name",    "case.k",             "case.amplitude",       "case.vth1",
    "case.vth2",        "case.drift",      "output.path",        "output.sample_every",
};

double as_double(const ConfigTable& t, const std::string& key, double def)
{
    auto it = t.find(key);
    if (it == t.end()) return def;
    const std::string& s = it->second;
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw ConfigError(key + ": expected a number, got '" + s + "'");
    return v;
}

long long as_int(const ConfigTable& t, const std::string& key, long long def)
{
    auto it = t.find(key);
    if (it == t.end()) return def;
    const std::string& s = it->second;
    long long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) {
        // allow integral floats such as 1e5
        const double d = as_double(t, key, 0.0);
        if (d != static_cast<double>(static_cast<long long>(d)))
            throw ConfigError(key + ": expected an integer, got '" + s + "'");
        v = static_cast<long long>(d);
    }
    return v;
}

std::string as_string(const ConfigTable& t, const std::string& key, const std::string& def)
{
    auto it = t.find(key);
    return it == t.end() ? def : it->second;
}

}  // namespace

ConfigTable parse_config_text(const std::string& text, const std::string& origin)
{
    ConfigTable table;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string where = origin + ":" + std::to_string(lineno);
        line = trim(strip_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(where + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) throw ConfigError(where + ": empty section name");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string full = section.empty() ? key : section + "." + key;
        table[full] = unquote(trim(line.substr(eq + 1)), where);
    }
    return table;
}

ConfigTable load_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path);
}

void apply_override(ConfigTable& table, const std::string& assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--set expects section.key=value, got '" + assignment + "'");
    const std::string key = trim(assignment.substr(0, eq));
    if (key.find('.') == std::string::npos) throw ConfigError("--set key must be section.key: '" + key + "'");
    table[key] = unquote(trim(assignment.substr(eq + 1)), "--set " + key);
}

RunConfig make_run_config(const ConfigTable& t)
{
    for (const auto& [k, v] : t)
        if (!kKnownKeys.count(k)) throw ConfigError(k + ": unknown key");

    RunConfig c;
    const std::string case_name = as_string(t, "case.name", "weibel");
    if (case_name == "weibel") c.case_cfg = weibel_case();
    else if (case_name == "two_stream") c.case_cfg = two_stream_case();
    else throw ConfigError("case.name: expected weibel or two_stream, got '" + case_name + "'");
    c.case_cfg.k = as_double(t, "case.k", c.case_cfg.k);
    c.case_cfg.amplitude = as_double(t, "case.amplitude", c.case_cfg.amplitude);
    c.case_cfg.vth1 = as_double(t, "case.vth1", c.case_cfg.vth1);
    c.case_cfg.vth2 = as_double(t, "case.vth2", c.case_cfg.vth2);
    c.case_cfg.drift = as_double(t, "case.drift", c.case_cfg.drift);
    if (!(c.case_cfg.k > 0.0)) throw ConfigError("case.k: must be positive");
    if (!(c.case_cfg.amplitude > 0.0)) throw ConfigError("case.amplitude: must be positive");
    if (!(c.case_cfg.vth1 > 0.0)) throw ConfigError("case.vth1: must be positive");
    if (!(c.case_cfg.vth2 > 0.0)) throw ConfigError("case.vth2: must be positive");

    const std::string kind = as_string(t, "basis.kind", "fourier");
    if (kind == "fourier") c.basis = BasisKind::Fourier;
    else if (kind == "spline") c.basis = BasisKind::Spline;
    else throw ConfigError("basis.kind: expected spline or fourier, got '" + kind + "'");
    c.basis_degree = static_cast<int>(as_int(t, "basis.degree", c.basis_degree));

    const long long M = as_int(t, "grid.M", static_cast<long long>(c.M));
    if (M < 3) throw ConfigError("grid.M: must be >= 3");
    c.M = static_cast<std::size_t>(M);
    c.L = as_double(t, "grid.L", 0.0);
    if (c.L < 0.0) throw ConfigError("grid.L: must be positive");
    if (c.L > 0.0) {
        if (t.count("case.k")) throw ConfigError("grid.L: conflicts with case.k (L = 2 pi / k)");
        c.case_cfg.k = 2.0 * std::numbers::pi / c.L;
    }
    if (c.basis == BasisKind::Fourier && c.M % 2 == 0) throw ConfigError("grid.M: Fourier basis requires odd M");
    if (c.basis == BasisKind::Spline) {
        if (c.basis_degree < 1) throw ConfigError("basis.degree: spline degree must be >= 1");
        if (static_cast<long long>(c.M) <= c.basis_degree) throw ConfigError("grid.M: spline requires M > degree");
    }

    c.shape_degree = static_cast<int>(as_int(t, "shape.degree", c.shape_degree));
    if (c.shape_degree < 1 || c.shape_degree > 15)
        throw ConfigError("shape.degree: must be in [1, 15] (point dofs need a continuous shape)");
    c.shape_scale = as_double(t, "shape.scale", 0.0);
    if (c.shape_scale < 0.0) throw ConfigError("shape.scale: must be positive");

    const long long N = as_int(t, "particles.N", static_cast<long long>(c.N));
    if (N < 1) throw ConfigError("particles.N: must be >= 1");
    c.N = static_cast<std::size_t>(N);
    try {
        c.sampler = parse_sampler(as_string(t, "particles.sampler", "hammersley"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("particles.sampler: ") + e.what());
    }
    c.seed = static_cast<std::uint64_t>(as_int(t, "particles.seed", 1));

    try {
        c.integrator.scheme = parse_scheme(as_string(t, "scheme.kind", "variational"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("scheme.kind: ") + e.what());
    }
    try {
        c.integrator.kind = parse_propagator(as_string(t, "integrator.kind", "strang"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("integrator.kind: ") + e.what());
    }
    c.integrator.dt = as_double(t, "integrator.dt", c.integrator.dt);
    c.integrator.dg_tol = as_double(t, "integrator.dg_tol", c.integrator.dg_tol);
    c.integrator.linear_tol = as_double(t, "integrator.linear_tol", c.integrator.linear_tol);
    c.integrator.max_iter = static_cast<int>(as_int(t, "integrator.max_iter", c.integrator.max_iter));
    const long long steps = as_int(t, "integrator.steps", static_cast<long long>(c.steps));
    if (steps < 0) throw ConfigError("integrator.steps: must be >= 0");
    c.steps = static_cast<std::size_t>(steps);
    try {
        c.integrator.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    c.output_path = as_string(t, "output.path", c.output_path);
    const long long every = as_int(t, "output.sample_every", 1);
    if (every < 1) throw ConfigError("output.sample_every: must be >= 1");
    c.sample_every = static_cast<std::size_t>(every);
    return c;
}

}  // namespace gempic
