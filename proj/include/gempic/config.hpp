#pragma once

/// Run configuration from a flat TOML subset: [section] headers and
/// key = value lines (strings in double quotes, numbers, booleans, # comments).

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "gempic/derham1d.hpp"
#include "gempic/integrators.hpp"
#include "gempic/particles.hpp"

namespace gempic {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Flat "section.key" -> raw value table.
using ConfigTable = std::map<std::string, std::string>;

ConfigTable parse_config_text(const std::string& text, const std::string& origin = "<string>");
ConfigTable load_config_file(const std::string& path);
/// Applies "section.key=value".
void apply_override(ConfigTable& table, const std::string& assignment);

struct RunConfig {
    std::size_t M = 15;
    double L = 0.0;  // 0: derived from the case; otherwise sets case k = 2 pi / L
    BasisKind basis = BasisKind::Fourier;
    int basis_degree = 3;
    int shape_degree = 1;
    double shape_scale = 0.0;  // 0: grid spacing
    std::size_t N = 1000;
    SamplerKind sampler = SamplerKind::Hammersley;
    std::uint64_t seed = 1;
    PropagatorConfig integrator;
    std::size_t steps = 2000;
    CaseConfig case_cfg = weibel_case();
    std::string output_path = "diagnostics.csv";
    std::size_t sample_every = 1;

    bool transverse() const { return case_cfg.name == "weibel"; }
    double length() const { return case_cfg.length(); }
};

/// Builds and validates a RunConfig; errors name the offending key.
RunConfig make_run_config(const ConfigTable& table);

}  // namespace gempic
