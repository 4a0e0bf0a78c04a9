#ifndef NCGFT_CONFIG_HPP
#define NCGFT_CONFIG_HPP

#include "ncgft/afcore.hpp"
#include "ncgft/ssbm.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace ncgft
{

  /// Minimal TOML reader (tables, key = value, strings, numbers, booleans,
  /// nested arrays, comments) lowered into the same JSON document the JSON
  /// path produces, so one schema validator covers both formats.
  nlohmann::json toml_to_json(const std::string & text);

  struct RunConfig
  {
    std::string name = "run";
    EmbeddingSpec spec;
    PathSpec path;
    MinOptions opts;
    double discontinuity_threshold = 0.05;
    std::string output_dir = "out";
    std::vector<double> masses_lambdas;    ///< for the `masses` subcommand
    std::vector<long long> k0_vector;      ///< for the `k0` subcommand
    nlohmann::json echo;                   ///< canonical form for metadata
  };

  /// Validates a configuration document (unknown keys rejected, embedding
  /// checked through validate_embedding).
  RunConfig parse_config(const nlohmann::json & doc);

  /// Reads a .json or .toml file (format by extension).
  RunConfig load_config_file(const std::string & path);

  /// Paper scan cases: case1 M2->M3, case2 M2+M2->M4, case3 M2+M2->M5,
  /// case4 M2+M3->M5, each with the diagonal path on [-1,3].
  nlohmann::json preset_config(const std::string & name);

}

#endif
