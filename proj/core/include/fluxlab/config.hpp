#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fluxlab/geometry.hpp"
#include "fluxlab/wavepacket.hpp"

namespace fluxlab {

// One experiment, as described by a JSON config file.  Field applicability
// by kind:
//   fas-scan:  packet, cone, radii, t_start, fas_t_start, tolerances
//   sict:      packet, cone, times, r_min
//   bohm:      packet, cone, radii, ensemble
//   remainder: packet
//   window:    packet, radii, window
struct ExperimentConfig {
    std::string kind;
    std::string label;  // optional tag used in output file names

    std::vector<GaussianComponent> components;
    bool normalize = true;

    std::optional<Cone> cone;
    std::vector<double> radii;
    std::vector<double> times;
    std::array<double, 2> window{0.0, 1.0};
    double t_start = 0.0;      // lower end of flux time integrals
    double fas_t_start = 1.0;  // lower end of the current-distance integral
    double r_min = 0.0;
    bool with_fas_distance = true;

    double epsilon_tail = 1e-6;
    double time_tol = 1e-7;
    double radial_tol = 1e-10;
    double ode_rel_tol = 1e-8;
    int cap_order = 64;

    std::size_t ensemble_n = 10000;
    std::uint64_t seed = 1;
    double t_budget = -1.0;  // <= 0: automatic

    WavePacket packet() const;  // built from components (normalized if requested)
};

// Parses and validates a config file.  On failure `config` is empty and
// `errors` lists every problem found (dotted paths + message), not just the
// first one.  Unknown keys are errors.
struct ParseOutcome {
    std::optional<ExperimentConfig> config;
    std::vector<std::string> errors;
};
ParseOutcome parse_config_file(const std::string& path);
ParseOutcome parse_config_text(const std::string& json_text);

}  // namespace fluxlab
