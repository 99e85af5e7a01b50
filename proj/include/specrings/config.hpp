#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "specrings/empirics.hpp"
#include "specrings/model.hpp"

namespace specrings {

// Unreadable or inconsistent configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Experiment configuration as read from a JSON file. Every field is
// optional so that command-line flags can fill or override it.
//
//   {
//     "preset": "figure1" | "figure2",  "n": 1000,       // or
//     "blocks": [{"center_re": 0, "center_im": 0, "dim": 9}, ...],
//     "gamma": 0.75, "seed": 7, "noise_kind": "real" | "complex",
//     "eps_prime": 0.1, "grid": "re0,re1,im0,im1,nx,ny", "threads": 4
//   }
//
// A run manifest is accepted too; its "config" object is used.
struct ExperimentConfig {
  std::optional<std::string> preset;
  std::optional<int> n;
  std::vector<BlockSpec> blocks;
  std::optional<double> gamma;
  std::optional<std::uint64_t> seed;
  std::optional<NoiseKind> noise_kind;
  std::optional<double> eps_prime;
  std::optional<GridSpec> grid;
  std::optional<int> threads;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string config_to_text(const ExperimentConfig& config);

// Builds the model: preset XOR explicit blocks. Missing gamma/seed take
// the supplied defaults.
ModelSpec resolve_model(const ExperimentConfig& config, double default_gamma, std::uint64_t default_seed);

// Explicit-block serialization of a model.
std::string model_spec_to_text(const ModelSpec& spec);
ModelSpec model_spec_from_text(const std::string& text);

}  // namespace specrings
