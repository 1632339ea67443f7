#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace graphau::cli {

// Every knob the CLI exposes. Precedence: defaults < --config file < flags.
// The merged result is written to <out-dir>/config.json by every command.
struct RunConfig {
  std::string command;
  std::string out_dir = "out";

  // data
  std::string input;
  std::string format = "tsv";
  bool has_header = false;
  std::size_t k_core = 0;
  std::string ratios = "0.6,0.2,0.2";
  std::uint64_t split_seed = 2023;
  bool stratify = false;
  std::string splits;

  // model / objective
  std::string objective = "graphau";
  std::size_t dim = 32;
  double init_scale = 0.1;
  std::size_t layers = 2;
  double alpha = 1.0;
  double gamma = 0.5;
  std::size_t uniformity_order = 0;
  std::string uniformity_metric = "sq";

  // optimization
  double lr = 0.01;
  double weight_decay = 0.0;
  std::size_t epochs = 300;
  std::size_t batch_size = 1024;
  std::size_t patience = 10;
  std::size_t eval_every = 1;
  std::size_t k = 20;
  std::uint64_t seed = 42;

  // eval
  std::string checkpoint;
  std::string split = "test";

  // bench
  std::size_t max_layers = 3;
  std::size_t trials = 3;
  std::size_t synthetic_users = 2500;
  std::size_t synthetic_items = 2500;
  std::size_t synthetic_edges = 6000;
  double power_law_exponent = 2.2;
  std::uint64_t visit_cap = 200'000'000;

  // grid: "a:b:step", "x,y,z" or a single value
  std::string grid_layers;
  std::string grid_alpha;
  std::string grid_gamma;
  std::string grid_lr;
  std::string grid_weight_decay;
};

nlohmann::json to_json(const RunConfig& c);
// Overlays the keys present in `j`; unknown keys are an error.
void apply_json(const nlohmann::json& j, RunConfig& c);

// Inclusive "start:stop:step", a comma list, or a single number.
std::vector<double> parse_range(const std::string& spec);

// Entry point behind the graphau binary. Exit codes: 0 ok, 2 config,
// 3 io, 4 data, 5 numeric, 1 anything else. Failures print exactly one
// line "error[<category>]: <message>" to stderr.
int run(int argc, const char* const* argv);

}  // namespace graphau::cli
