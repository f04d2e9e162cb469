#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "lgt/drivers.hpp"

namespace lgt {

// Parse a JSON config file into a validated RunConfig. Omitted keys take the
// documented defaults (t=1, h=0.5, p=3, eta=0.02, ...); unknown keys are an
// error, as is a missing required key for the chosen mode.
RunConfig parse_config(const std::string& path);

// Same, from an in-memory document (test seam).
RunConfig parse_config_text(const std::string& text);

// Dispatch one subcommand: run the experiment, write trace/summary/plot files
// under out_dir. Returns 0 (converged), 2 (ran but unconverged). Throws on
// config or I/O errors; the executable maps exceptions to exit 1.
int run_command(const std::string& subcommand, const std::string& config_path,
                const std::string& out_dir,
                std::optional<uint64_t> seed_override = std::nullopt);

}  // namespace lgt
