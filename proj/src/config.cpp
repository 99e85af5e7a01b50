#include "specrings/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace specrings {

using nlohmann::json;

namespace {

const std::vector<std::string> kKnownKeys = {"preset", "n",         "blocks", "gamma", "seed",
                                             "noise_kind", "eps_prime", "grid", "threads"};

BlockSpec block_from_json(const json& j) {
  for (const auto& [key, value] : j.items()) {
    if (key != "center_re" && key != "center_im" && key != "dim") {
      throw ConfigError("config: unknown block key '" + key + "'");
    }
  }
  BlockSpec b;
  b.center = {j.value("center_re", 0.0), j.value("center_im", 0.0)};
  if (!j.contains("dim")) throw ConfigError("config: block without 'dim'");
  b.dim = j.at("dim").get<int>();
  return b;
}

json block_to_json(const BlockSpec& b) {
  return json{{"center_re", b.center.real()}, {"center_im", b.center.imag()}, {"dim", b.dim}};
}

ExperimentConfig config_from_json(const json& root) {
  if (!root.is_object()) throw ConfigError("config: top level must be an object");
  const json& j = root.contains("config") && root.at("config").is_object() ? root.at("config") : root;
  for (const auto& [key, value] : j.items()) {
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end()) {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  }
  ExperimentConfig c;
  try {
    if (j.contains("preset")) c.preset = j.at("preset").get<std::string>();
    if (j.contains("n")) c.n = j.at("n").get<int>();
    if (j.contains("blocks")) {
      for (const auto& b : j.at("blocks")) c.blocks.push_back(block_from_json(b));
    }
    if (j.contains("gamma")) c.gamma = j.at("gamma").get<double>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("noise_kind")) c.noise_kind = noise_kind_from_string(j.at("noise_kind").get<std::string>());
    if (j.contains("eps_prime")) c.eps_prime = j.at("eps_prime").get<double>();
    if (j.contains("grid")) c.grid = GridSpec::parse(j.at("grid").get<std::string>());
    if (j.contains("threads")) c.threads = j.at("threads").get<int>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (c.preset && *c.preset != "figure1" && *c.preset != "figure2") {
    throw ConfigError("config: preset must be \"figure1\" or \"figure2\"");
  }
  return c;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  return config_from_json(j);
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot read '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string config_to_text(const ExperimentConfig& c) {
  json j = json::object();
  if (c.preset) j["preset"] = *c.preset;
  if (c.n) j["n"] = *c.n;
  if (!c.blocks.empty()) {
    j["blocks"] = json::array();
    for (const auto& b : c.blocks) j["blocks"].push_back(block_to_json(b));
  }
  if (c.gamma) j["gamma"] = *c.gamma;
  if (c.seed) j["seed"] = *c.seed;
  if (c.noise_kind) j["noise_kind"] = to_string(*c.noise_kind);
  if (c.eps_prime) j["eps_prime"] = *c.eps_prime;
  if (c.grid) j["grid"] = c.grid->to_string();
  if (c.threads) j["threads"] = *c.threads;
  return j.dump(2);
}

ModelSpec resolve_model(const ExperimentConfig& c, double default_gamma, std::uint64_t default_seed) {
  const double gamma = c.gamma.value_or(default_gamma);
  const std::uint64_t seed = c.seed.value_or(default_seed);
  const bool has_preset = c.preset.has_value();
  const bool has_blocks = !c.blocks.empty();
  if (has_preset == has_blocks) {
    throw ConfigError("config: give exactly one of a preset or explicit blocks");
  }
  ModelSpec spec;
  try {
    if (has_preset) {
      if (!c.n) throw ConfigError("config: preset requires n");
      spec = *c.preset == "figure1" ? make_fig1_spec(*c.n, gamma, seed) : make_fig2_spec(*c.n, gamma, seed);
    } else {
      spec.blocks = c.blocks;
      spec.gamma = gamma;
      spec.seed = seed;
      if (c.n && *c.n != spec.n()) throw ConfigError("config: n disagrees with the block dimensions");
    }
    spec.noise_kind = c.noise_kind.value_or(NoiseKind::real);
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return spec;
}

std::string model_spec_to_text(const ModelSpec& spec) {
  ExperimentConfig c;
  c.blocks = spec.blocks;
  c.gamma = spec.gamma;
  c.seed = spec.seed;
  c.noise_kind = spec.noise_kind;
  return config_to_text(c);
}

ModelSpec model_spec_from_text(const std::string& text) {
  const ExperimentConfig c = parse_config_text(text);
  return resolve_model(c, 1.0, 0);
}

}  // namespace specrings
