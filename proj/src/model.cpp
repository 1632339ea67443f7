#include "graphau/model.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <random>

namespace graphau {

static_assert(std::endian::native == std::endian::little, "checkpoint I/O assumes little-endian");

EmbeddingModel init_model(std::size_t n_users, std::size_t n_items, std::size_t dim,
                          std::size_t layers, std::uint64_t seed, double init_scale) {
  if (dim == 0) throw std::invalid_argument("embedding dimension must be >= 1");
  if (init_scale < 0) throw std::invalid_argument("init_scale must be non-negative");
  EmbeddingModel model{Matrix(n_users, dim), Matrix(n_items, dim), layers};
  if (init_scale == 0) return model;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, init_scale);
  for (double& x : model.user_emb0.data()) x = normal(rng);
  for (double& x : model.item_emb0.data()) x = normal(rng);
  return model;
}

LayerStack forward(const EmbeddingModel& model, const BipartiteGraph& graph) {
  if (model.n_users() != graph.n_users() || model.n_items() != graph.n_items()) {
    throw std::invalid_argument("forward: model and graph node counts differ");
  }
  LayerStack stack;
  stack.user_layers.reserve(model.layers + 1);
  stack.item_layers.reserve(model.layers + 1);
  stack.user_layers.push_back(model.user_emb0);
  stack.item_layers.push_back(model.item_emb0);
  for (std::size_t l = 1; l <= model.layers; ++l) {
    stack.user_layers.push_back(aggregate_users_from_items(graph, stack.item_layers[l - 1]));
    stack.item_layers.push_back(aggregate_items_from_users(graph, stack.user_layers[l - 1]));
  }
  return stack;
}

namespace {

constexpr char kMagic[8] = {'G', 'R', 'A', 'P', 'H', 'A', 'U', '\0'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ofstream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::ifstream& in) {
  T value{};
  if (!in.read(reinterpret_cast<char*>(&value), sizeof(T))) {
    throw CheckpointError("truncated checkpoint header");
  }
  return value;
}

}  // namespace

void save_checkpoint(const EmbeddingModel& model, std::uint64_t vocab_hash,
                     const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CheckpointError("cannot write " + path.string());
  out.write(kMagic, sizeof(kMagic));
  put<std::uint32_t>(out, kVersion);
  put<std::uint64_t>(out, model.n_users());
  put<std::uint64_t>(out, model.n_items());
  put<std::uint64_t>(out, model.dim());
  put<std::uint64_t>(out, model.layers);
  put<std::uint64_t>(out, vocab_hash);
  for (const Matrix* table : {&model.user_emb0, &model.item_emb0}) {
    out.write(reinterpret_cast<const char*>(table->data().data()),
              static_cast<std::streamsize>(table->size() * sizeof(double)));
  }
  if (!out) throw CheckpointError("write error on " + path.string());
}

EmbeddingModel load_checkpoint(const std::filesystem::path& path, std::uint64_t expected_vocab_hash) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot open " + path.string());
  char magic[8];
  if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw CheckpointError(path.string() + " is not a graphau checkpoint");
  }
  if (const auto version = get<std::uint32_t>(in); version != kVersion) {
    throw CheckpointError("unsupported checkpoint version " + std::to_string(version));
  }
  const auto n_users = get<std::uint64_t>(in);
  const auto n_items = get<std::uint64_t>(in);
  const auto dim = get<std::uint64_t>(in);
  const auto layers = get<std::uint64_t>(in);
  const auto hash = get<std::uint64_t>(in);
  if (hash != expected_vocab_hash) {
    throw CheckpointError("checkpoint vocabulary hash does not match the dataset");
  }
  if (dim == 0) throw CheckpointError("checkpoint has zero embedding dimension");
  EmbeddingModel model{Matrix(n_users, dim), Matrix(n_items, dim), layers};
  for (Matrix* table : {&model.user_emb0, &model.item_emb0}) {
    if (!in.read(reinterpret_cast<char*>(table->data().data()),
                 static_cast<std::streamsize>(table->size() * sizeof(double)))) {
      throw CheckpointError("truncated checkpoint tables");
    }
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw CheckpointError("trailing bytes after checkpoint tables");
  }
  return model;
}

}  // namespace graphau
