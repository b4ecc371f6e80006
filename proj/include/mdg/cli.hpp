#pragma once

// Command front end. Every command is a pure function of an ExperimentConfig
// returning its rendered output and an exit code:
//
//   0  all checks passed
//   1  a mathematical check failed (output carries the witness)
//   2  configuration or validation error

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mdg/serialize.hpp"
#include "mdg/spectral.hpp"

namespace mdg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfigError = 2;

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "MDG_OUTPUT_DIR";

enum class Format { Json, Csv };

struct ExperimentConfig {
    std::int64_t p = 1;
    std::int64_t q = 2;
    std::int64_t k = 1;
    std::int64_t n = 2;
    std::vector<std::int64_t> n_sweep;  ///< empty: use {n}
    std::int64_t grid = 1024;
    int refine_levels = 12;
    std::int64_t refine_factor = 2;
    int refine_radius = 2;
    int refine_starts = 64;
    std::vector<std::int64_t> moduli;
    std::optional<Format> format;  ///< unset: command default
    std::string output;
    double safety_margin = 0.01;
    bool certify = false;
    double target_separation = 0.0;
    double max_slack = 1.0;
    std::int64_t max_scale = 4;
    std::size_t vertex_cap = 100;
    unsigned threads = 0;  ///< 0: all available

    ModularDistanceParams params() const;
    RefinementConfig refinement() const;
    std::vector<std::int64_t> sweep() const;
};

/// Throws InvalidArgument on the first violated precondition.
void validate(const ExperimentConfig& config);

/// Overlays fields present in a JSON config document onto `config`. Keys
/// mirror the ExperimentConfig field names.
void apply_config_document(const Json& doc, ExperimentConfig& config);

struct CommandResult {
    int exit_code = kExitOk;
    std::string output;  ///< rendered document (stdout or output file)
    std::string diagnostics;  ///< warnings and errors (stderr)
};

CommandResult cmd_generators(const ExperimentConfig& config);
CommandResult cmd_bound(const ExperimentConfig& config);
CommandResult cmd_embed_verify(const ExperimentConfig& config);
CommandResult cmd_triangle_check(const ExperimentConfig& config);
CommandResult cmd_quotient_alpha(const ExperimentConfig& config);
CommandResult cmd_report(const ExperimentConfig& config);

/// Full argv entry point used by the executable.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace mdg::cli
