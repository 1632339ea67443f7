#include "graphau/cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "graphau/bench.hpp"
#include "graphau/dataset.hpp"
#include "graphau/evaluator.hpp"
#include "graphau/graph.hpp"
#include "graphau/model.hpp"
#include "graphau/synthetic.hpp"
#include "graphau/trainer.hpp"

namespace graphau::cli {

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(
    RunConfig, command, out_dir, input, format, has_header, k_core, ratios, split_seed, stratify,
    splits, objective, dim, init_scale, layers, alpha, gamma, uniformity_order, uniformity_metric,
    lr, weight_decay, epochs, batch_size, patience, eval_every, k, seed, checkpoint, split,
    max_layers, trials, synthetic_users, synthetic_items, synthetic_edges, power_law_exponent,
    visit_cap, grid_layers, grid_alpha, grid_gamma, grid_lr, grid_weight_decay)

nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j;
  graphau::cli::to_json(j, c);
  return j;
}

namespace {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace

void apply_json(const nlohmann::json& j, RunConfig& c) {
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  nlohmann::json merged = to_json(c);
  for (const auto& [key, value] : j.items()) {
    if (!merged.contains(key)) throw ConfigError("unknown config key '" + key + "'");
    merged[key] = value;
  }
  try {
    c = merged.get<RunConfig>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
}

std::vector<double> parse_range(const std::string& spec) {
  const auto number = [&spec](const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw ConfigError("cannot parse '" + spec + "' as a value list");
    return v;
  };
  std::vector<double> out;
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw ConfigError("range '" + spec + "' must be start:stop:step");
    const double start = number(parts[0]), stop = number(parts[1]), step = number(parts[2]);
    if (!(step > 0) || stop < start) throw ConfigError("range '" + spec + "' needs step > 0 and stop >= start");
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
    for (std::size_t k = 0; k <= n; ++k) {
      // snap to 12 decimals so 0.1-steps print as written
      out.push_back(std::round((start + static_cast<double>(k) * step) * 1e12) / 1e12);
    }
    return out;
  }
  std::stringstream ss(spec);
  for (std::string p; std::getline(ss, p, ',');) out.push_back(number(p));
  if (out.empty()) throw ConfigError("empty value list");
  return out;
}

namespace {

enum class Category { config, io, data, numeric, internal };

int exit_code(Category c) {
  switch (c) {
    case Category::config: return 2;
    case Category::io: return 3;
    case Category::data: return 4;
    case Category::numeric: return 5;
    case Category::internal: return 1;
  }
  return 1;
}

const char* name(Category c) {
  switch (c) {
    case Category::config: return "config";
    case Category::io: return "io";
    case Category::data: return "data";
    case Category::numeric: return "numeric";
    case Category::internal: return "internal";
  }
  return "internal";
}

int fail(Category c, const std::string& message) {
  std::string one_line = message;
  for (char& ch : one_line) {
    if (ch == '\n') ch = ' ';
  }
  std::cerr << "error[" << name(c) << "]: " << one_line << std::endl;
  return exit_code(c);
}

namespace fs = std::filesystem;

void write_text(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void write_snapshot(const RunConfig& c) {
  nlohmann::json j = to_json(c);
  write_text(fs::path(c.out_dir) / "config.json", j.dump(2) + "\n");
}

bool in_grid(double v, std::initializer_list<double> grid) {
  for (double g : grid) {
    if (std::abs(v - g) <= 1e-12 * std::max(1.0, std::abs(g))) return true;
  }
  return false;
}

bool on_tenth_step(double v, double lo, double hi) {
  return v >= lo - 1e-12 && v <= hi + 1e-12 && std::abs(v * 10 - std::round(v * 10)) < 1e-9;
}

void warn_off_grid(const RunConfig& c) {
  if (!in_grid(c.lr, {0.1, 0.05, 0.01, 0.005})) spdlog::warn("lr {} is outside the usual grid {{0.1, 0.05, 0.01, 0.005}}", c.lr);
  if (!in_grid(c.weight_decay, {0.0, 1e-2, 1e-4, 1e-6, 1e-8})) {
    spdlog::warn("weight_decay {} is outside the usual grid {{0, 1e-2, 1e-4, 1e-6, 1e-8}}", c.weight_decay);
  }
  if (c.layers > 4) spdlog::warn("layers {} is outside the usual range 1..4", c.layers);
  if (!on_tenth_step(c.gamma, 0.0, 1.0)) spdlog::warn("gamma {} is off the 0.0..1.0 step-0.1 grid", c.gamma);
  if (!on_tenth_step(c.alpha, 0.0, 2.0)) spdlog::warn("alpha {} is off the 0.0..2.0 step-0.1 grid", c.alpha);
}

SplitRatios parse_ratios(const std::string& s) {
  const auto v = parse_range(s);
  if (v.size() != 3) throw ConfigError("--ratios needs three comma-separated fractions");
  return {v[0], v[1], v[2]};
}

InteractionDataset load_dataset(const RunConfig& c, bool write_manifest) {
  InteractionDataset ds;
  if (!c.splits.empty()) {
    if (!fs::exists(c.splits)) throw ConfigError("split manifest not found: " + c.splits);
    ds = read_split_manifest(c.splits);
  } else {
    if (c.input.empty()) throw ConfigError("no dataset given (use --input or --splits)");
    if (!fs::exists(c.input)) throw ConfigError("dataset not found: " + c.input);
    auto raw = load_interactions(c.input, {parse_input_format(c.format), c.has_header});
    if (c.k_core > 1) {
      raw = k_core_filter(raw, c.k_core);
      if (raw.empty()) throw DataError("k-core filter removed every interaction");
    }
    ds = split_dataset(raw, {parse_ratios(c.ratios), c.split_seed, c.stratify});
  }
  if (write_manifest) write_split_manifest(ds, fs::path(c.out_dir) / "splits" / "manifest.txt");
  spdlog::info("dataset: {} users, {} items, train/valid/test = {}/{}/{}", ds.n_users, ds.n_items,
               ds.train_edges.size(), ds.valid_edges.size(), ds.test_edges.size());
  return ds;
}

TrainConfig train_config(const RunConfig& c) {
  TrainConfig t;
  t.epochs_max = c.epochs;
  t.batch_size = c.batch_size;
  t.early_stop_patience = c.patience;
  t.eval_every = c.eval_every;
  t.eval_k = c.k;
  t.seed = c.seed;
  t.objective = parse_objective(c.objective);
  t.dim = c.dim;
  t.init_scale = c.init_scale;
  t.loss = {c.alpha, c.gamma, c.layers, c.uniformity_order,
            parse_uniformity_metric(c.uniformity_metric)};
  t.adam.lr = c.lr;
  t.adam.weight_decay = c.weight_decay;
  try {
    t.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return t;
}

struct TrainOutcome {
  TrainResult result;
  std::optional<RankingMetrics> valid;
  std::optional<RankingMetrics> test;
};

TrainOutcome train_and_score(const InteractionDataset& ds, const TrainConfig& cfg,
                             const fs::path& log_path) {
  fs::create_directories(log_path.parent_path());
  std::ofstream log(log_path);
  if (!log) throw std::runtime_error("cannot write " + log_path.string());
  TrainOutcome out{train(ds, cfg, [&log](const EpochRecord& r) {
                     log << r.to_json_line() << '\n';
                     log.flush();
                     if (r.valid) {
                       spdlog::info("epoch {:4d} loss {:.5f} valid N@{} {:.4f} ({:.2f}s)", r.epoch,
                                    r.loss.total, r.valid->k, r.valid->ndcg, r.train_seconds);
                     }
                   }),
                   {}, {}};
  if (!ds.valid_edges.empty()) out.valid = evaluate(out.result.model, ds, EvalSplit::valid, cfg.eval_k);
  if (!ds.test_edges.empty()) out.test = evaluate(out.result.model, ds, EvalSplit::test, cfg.eval_k);
  return out;
}

nlohmann::json metrics_json(const TrainOutcome& o) {
  nlohmann::json j;
  j["best_epoch"] = o.result.log.best_epoch;
  j["epochs_run"] = o.result.log.epochs.size();
  if (o.valid) j["valid"] = to_json(*o.valid);
  if (o.test) j["test"] = to_json(*o.test);
  j["masking"] = {{"valid", "train"}, {"test", "train+valid"}};
  j["tie_break"] = "ascending item index";
  return j;
}

int cmd_preprocess(const RunConfig& c) {
  write_snapshot(c);
  const auto ds = load_dataset(c, true);
  std::cout << "wrote " << (fs::path(c.out_dir) / "splits" / "manifest.txt").string() << ": "
            << ds.n_users << " users, " << ds.n_items << " items, " << ds.train_edges.size() << '/'
            << ds.valid_edges.size() << '/' << ds.test_edges.size() << " train/valid/test\n";
  return 0;
}

int cmd_train(const RunConfig& c) {
  const TrainConfig cfg = train_config(c);
  warn_off_grid(c);
  write_snapshot(c);
  const auto ds = load_dataset(c, true);
  const fs::path out(c.out_dir);
  const auto outcome = train_and_score(ds, cfg, out / "trainlog.jsonl");
  save_checkpoint(outcome.result.model, ds.vocab_hash(), out / "checkpoint.bin");
  write_text(out / "metrics.json", metrics_json(outcome).dump(2) + "\n");
  std::vector<std::pair<std::string, RankingMetrics>> rows;
  if (outcome.valid) rows.emplace_back("valid", *outcome.valid);
  if (outcome.test) rows.emplace_back("test", *outcome.test);
  std::cout << format_metrics_table(rows);
  return 0;
}

int cmd_eval(const RunConfig& c) {
  if (c.splits.empty()) throw ConfigError("eval needs --splits");
  if (c.checkpoint.empty()) throw ConfigError("eval needs --checkpoint");
  if (!fs::exists(c.checkpoint)) throw ConfigError("checkpoint not found: " + c.checkpoint);
  const EvalSplit split = parse_eval_split(c.split);
  write_snapshot(c);
  const auto ds = load_dataset(c, false);
  const auto model = load_checkpoint(c.checkpoint, ds.vocab_hash());
  const auto m = evaluate(model, ds, split, c.k);
  nlohmann::json j;
  j[to_string(split)] = to_json(m);
  j["masking"] = split == EvalSplit::test ? "train+valid" : "train";
  write_text(fs::path(c.out_dir) / "metrics.json", j.dump(2) + "\n");
  std::cout << format_metrics_table({{to_string(split), m}});
  return 0;
}

int cmd_bench(const RunConfig& c) {
  write_snapshot(c);
  BipartiteGraph graph;
  if (!c.input.empty()) {
    if (!fs::exists(c.input)) throw ConfigError("dataset not found: " + c.input);
    const auto raw = load_interactions(c.input, {parse_input_format(c.format), c.has_header});
    Vocabulary users, items;
    std::vector<Edge> edges;
    for (const auto& r : raw) edges.push_back({users.intern(r.user_id), items.intern(r.item_id)});
    graph = BipartiteGraph(users.size(), items.size(), std::move(edges));
  } else {
    graph = BipartiteGraph(c.synthetic_users, c.synthetic_items,
                           power_law_bipartite(c.synthetic_users, c.synthetic_items,
                                               c.synthetic_edges, c.power_law_exponent, c.seed));
  }
  spdlog::info("bench graph: {} users, {} items, {} edges", graph.n_users(), graph.n_items(),
               graph.edges().size());
  BenchConfig b;
  b.max_layers = c.max_layers;
  b.trials = c.trials;
  b.batch_size = c.batch_size;
  b.dim = c.dim;
  b.alpha = c.alpha;
  b.gamma = c.gamma;
  b.adam.lr = c.lr;
  b.adam.weight_decay = c.weight_decay;
  b.seed = c.seed;
  b.visit_cap = c.visit_cap;
  const auto rows = bench_scalability(graph, b);
  write_bench_csv(rows, fs::path(c.out_dir) / "bench.csv");
  std::cout << format_bench_table(rows);
  return 0;
}

std::vector<double> grid_values(const std::string& spec, double fallback) {
  return spec.empty() ? std::vector<double>{fallback} : parse_range(spec);
}

int cmd_grid(const RunConfig& c) {
  train_config(c);
  write_snapshot(c);
  const auto ds = load_dataset(c, true);
  const fs::path out(c.out_dir);
  const auto layers = grid_values(c.grid_layers, static_cast<double>(c.layers));
  const auto alphas = grid_values(c.grid_alpha, c.alpha);
  const auto gammas = grid_values(c.grid_gamma, c.gamma);
  const auto lrs = grid_values(c.grid_lr, c.lr);
  const auto decays = grid_values(c.grid_weight_decay, c.weight_decay);

  std::ofstream csv(out / "grid.csv");
  if (!csv) throw std::runtime_error("cannot write " + (out / "grid.csv").string());
  csv << "run,layers,alpha,gamma,lr,weight_decay,best_epoch,valid_recall,valid_hr,valid_ndcg,"
         "test_recall,test_hr,test_ndcg\n";
  std::vector<std::pair<std::string, RankingMetrics>> table;
  std::size_t run = 0;
  for (double L : layers) {
    if (L < 0 || L != std::floor(L)) throw ConfigError("layer counts must be non-negative integers");
    for (double a : alphas) {
      for (double g : gammas) {
        for (double lr : lrs) {
          for (double wd : decays) {
            RunConfig rc = c;
            rc.layers = static_cast<std::size_t>(L);
            rc.alpha = a;
            rc.gamma = g;
            rc.lr = lr;
            rc.weight_decay = wd;
            if (rc.uniformity_order > rc.layers) rc.uniformity_order = rc.layers;
            warn_off_grid(rc);
            const TrainConfig cfg = train_config(rc);
            char label[32];
            std::snprintf(label, sizeof(label), "run_%03zu", run);
            spdlog::info("{}: L={} alpha={} gamma={} lr={} wd={}", label, rc.layers, a, g, lr, wd);
            const auto o = train_and_score(ds, cfg, out / "grid" / label / "trainlog.jsonl");
            write_text(out / "grid" / label / "metrics.json", metrics_json(o).dump(2) + "\n");
            const auto fmt = [](const std::optional<RankingMetrics>& m, double RankingMetrics::*f) {
              return m ? std::to_string(*m.*f) : std::string();
            };
            csv << label << ',' << rc.layers << ',' << a << ',' << g << ',' << lr << ',' << wd << ','
                << o.result.log.best_epoch << ',' << fmt(o.valid, &RankingMetrics::recall) << ','
                << fmt(o.valid, &RankingMetrics::hit_ratio) << ',' << fmt(o.valid, &RankingMetrics::ndcg)
                << ',' << fmt(o.test, &RankingMetrics::recall) << ','
                << fmt(o.test, &RankingMetrics::hit_ratio) << ',' << fmt(o.test, &RankingMetrics::ndcg)
                << '\n';
            csv.flush();
            if (o.test) {
              std::ostringstream name;
              name << label << " L=" << rc.layers << " a=" << a << " g=" << g;
              table.emplace_back(name.str(), *o.test);
            }
            ++run;
          }
        }
      }
    }
  }
  if (!table.empty()) std::cout << format_metrics_table(table);
  return 0;
}

void add_data_options(CLI::App* app, RunConfig& c) {
  app->add_option("--input", c.input, "Interaction file (user,item[,...] per row)");
  app->add_option("--format", c.format, "Input delimiter: tsv or csv")->capture_default_str();
  app->add_flag("--has-header", c.has_header, "Skip the first non-empty row");
  app->add_option("--k-core", c.k_core, "Iterative k-core filter before splitting (0 = off)");
  app->add_option("--ratios", c.ratios, "train,valid,test fractions")->capture_default_str();
  app->add_option("--split-seed", c.split_seed, "Seed for the random split")->capture_default_str();
  app->add_flag("--stratify", c.stratify, "Split each user's interactions separately");
  app->add_option("--splits", c.splits, "Reuse a split manifest instead of --input");
}

void add_train_options(CLI::App* app, RunConfig& c, bool grid) {
  app->add_option("--objective", c.objective, "graphau or bpr")->capture_default_str();
  app->add_option("--dim", c.dim, "Embedding dimension")->capture_default_str();
  app->add_option("--init-scale", c.init_scale, "Std-dev of the normal initializer")->capture_default_str();
  if (grid) {
    app->add_option("--layers", c.grid_layers, "Layer counts (range or list)");
    app->add_option("--alpha", c.grid_alpha, "Layer weights alpha (range or list)");
    app->add_option("--gamma", c.grid_gamma, "Uniformity weights gamma (range or list)");
    app->add_option("--lr", c.grid_lr, "Learning rates (range or list)");
    app->add_option("--weight-decay", c.grid_weight_decay, "Weight decays (range or list)");
  } else {
    app->add_option("--layers", c.layers, "Aggregation layers L")->capture_default_str();
    app->add_option("--alpha", c.alpha, "Layer weight factor alpha")->capture_default_str();
    app->add_option("--gamma", c.gamma, "Uniformity weight gamma")->capture_default_str();
    app->add_option("--lr", c.lr, "Adam learning rate")->capture_default_str();
    app->add_option("--weight-decay", c.weight_decay, "L2 weight decay")->capture_default_str();
  }
  app->add_option("--uniformity-order", c.uniformity_order, "Layer feeding the uniformity terms")
      ->capture_default_str();
  app->add_option("--uniformity-metric", c.uniformity_metric, "sq or l2")->capture_default_str();
  app->add_option("--epochs", c.epochs, "Maximum epochs")->capture_default_str();
  app->add_option("--batch-size", c.batch_size, "Edges per batch")->capture_default_str();
  app->add_option("--patience", c.patience, "Early-stop patience in evaluations")->capture_default_str();
  app->add_option("--eval-every", c.eval_every, "Validate every N epochs")->capture_default_str();
  app->add_option("--k", c.k, "Ranking cutoff")->capture_default_str();
  app->add_option("--seed", c.seed, "Run seed")->capture_default_str();
}

std::string prescan_config(int argc, const char* const* argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--config" && i + 1 < argc) return argv[i + 1];
    if (a.rfind("--config=", 0) == 0) return a.substr(9);
  }
  return {};
}

int dispatch(int argc, const char* const* argv) {
  RunConfig c;
  if (const std::string path = prescan_config(argc, argv); !path.empty()) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config file not found: " + path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
    }
    apply_json(j, c);
  }

  CLI::App app{"Graph-based alignment and uniformity embeddings for implicit-feedback recommendation"};
  app.require_subcommand(1);
  std::string config_path;
  bool verbose = false, quiet = false;
  const auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON file with option overrides");
    sub->add_option("--out-dir", c.out_dir, "Output directory")->capture_default_str();
    sub->add_flag("-v,--verbose", verbose, "Debug logging");
    sub->add_flag("-q,--quiet", quiet, "Warnings and errors only");
  };

  auto* preprocess = app.add_subcommand("preprocess", "Map ids and write a reproducible split manifest");
  common(preprocess);
  add_data_options(preprocess, c);

  auto* train_cmd = app.add_subcommand("train", "Train embeddings with early stopping");
  common(train_cmd);
  add_data_options(train_cmd, c);
  add_train_options(train_cmd, c, false);

  auto* eval_cmd = app.add_subcommand("eval", "Score a checkpoint on a split");
  common(eval_cmd);
  eval_cmd->add_option("--splits", c.splits, "Split manifest");
  eval_cmd->add_option("--checkpoint", c.checkpoint, "Checkpoint file");
  eval_cmd->add_option("--split", c.split, "valid or test")->capture_default_str();
  eval_cmd->add_option("--k", c.k, "Ranking cutoff")->capture_default_str();

  auto* bench_cmd = app.add_subcommand("bench", "Epoch time versus high-order pair count");
  common(bench_cmd);
  bench_cmd->add_option("--input", c.input, "Interaction file (default: synthetic power-law graph)");
  bench_cmd->add_option("--format", c.format, "Input delimiter: tsv or csv")->capture_default_str();
  bench_cmd->add_flag("--has-header", c.has_header, "Skip the first non-empty row");
  bench_cmd->add_option("--synthetic-users", c.synthetic_users)->capture_default_str();
  bench_cmd->add_option("--synthetic-items", c.synthetic_items)->capture_default_str();
  bench_cmd->add_option("--synthetic-edges", c.synthetic_edges)->capture_default_str();
  bench_cmd->add_option("--power-law-exponent", c.power_law_exponent)->capture_default_str();
  bench_cmd->add_option("--max-layers", c.max_layers, "Largest L measured")->capture_default_str();
  bench_cmd->add_option("--trials", c.trials, "Epochs timed per L (median reported)")->capture_default_str();
  bench_cmd->add_option("--visit-cap", c.visit_cap, "BFS state cap for pair enumeration")->capture_default_str();
  bench_cmd->add_option("--batch-size", c.batch_size)->capture_default_str();
  bench_cmd->add_option("--dim", c.dim)->capture_default_str();
  bench_cmd->add_option("--alpha", c.alpha)->capture_default_str();
  bench_cmd->add_option("--gamma", c.gamma)->capture_default_str();
  bench_cmd->add_option("--lr", c.lr)->capture_default_str();
  bench_cmd->add_option("--seed", c.seed)->capture_default_str();

  auto* grid_cmd = app.add_subcommand("grid", "Train one run per hyper-parameter combination");
  common(grid_cmd);
  add_data_options(grid_cmd, c);
  add_train_options(grid_cmd, c, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  auto logger = spdlog::get("graphau");
  if (!logger) logger = spdlog::stderr_color_mt("graphau");
  spdlog::set_default_logger(logger);
  spdlog::set_level(verbose ? spdlog::level::debug : quiet ? spdlog::level::warn : spdlog::level::info);

  CLI::App* chosen = app.get_subcommands().front();
  c.command = chosen->get_name();
  if (c.command == "preprocess") return cmd_preprocess(c);
  if (c.command == "train") return cmd_train(c);
  if (c.command == "eval") return cmd_eval(c);
  if (c.command == "bench") return cmd_bench(c);
  return cmd_grid(c);
}

}  // namespace

int run(int argc, const char* const* argv) {
  try {
    return dispatch(argc, argv);
  } catch (const ConfigError& e) {
    return fail(Category::config, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(Category::config, e.what());
  } catch (const DataError& e) {
    return fail(Category::data, e.what());
  } catch (const CheckpointError& e) {
    return fail(Category::io, e.what());
  } catch (const NonFiniteGradient& e) {
    return fail(Category::numeric, e.what());
  } catch (const NonFiniteLoss& e) {
    return fail(Category::numeric, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(Category::io, e.what());
  } catch (const std::exception& e) {
    return fail(Category::internal, e.what());
  }
}

}  // namespace graphau::cli
