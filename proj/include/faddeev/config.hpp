#pragma once

#include <filesystem>
#include <string>

#include "faddeev/diagnostics.hpp"
#include "faddeev/integrator.hpp"

namespace faddeev {

/// Everything a run config file specifies (grammar in docs/config.md).
struct AppConfig {
  RunConfig run;
  FitWindow fit;
};

/// Parses and validates; InvalidConfig messages start with the key path.
AppConfig parse_config(std::string_view json_text);
AppConfig load_config(const std::filesystem::path& path);

/// The built-in default (what an empty object "{}" parses to).
AppConfig default_config();

}  // namespace faddeev
