#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace graphau {

using Index = std::uint32_t;

struct RawInteraction {
  std::string user_id;
  std::string item_id;

  friend bool operator==(const RawInteraction&, const RawInteraction&) = default;
};

struct Edge {
  Index user = 0;
  Index item = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Token <-> dense index bijection.
class Vocabulary {
 public:
  Index intern(const std::string& token);
  Index at(const std::string& token) const;
  bool contains(const std::string& token) const { return index_.count(token) != 0; }
  const std::string& token(Index idx) const { return tokens_.at(idx); }
  std::size_t size() const { return tokens_.size(); }
  const std::vector<std::string>& tokens() const { return tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, Index> index_;
};

struct InteractionDataset {
  std::size_t n_users = 0;
  std::size_t n_items = 0;
  std::vector<Edge> train_edges;
  std::vector<Edge> valid_edges;
  std::vector<Edge> test_edges;
  Vocabulary user_vocab;
  Vocabulary item_vocab;

  // Throws std::invalid_argument when an index is out of range, an edge is
  // duplicated, or the splits overlap.
  void validate() const;

  // FNV-1a over both vocabularies; checkpoints carry it.
  std::uint64_t vocab_hash() const;
};

// Error raised for malformed input data. The message names the line when the
// problem is tied to one.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class InputFormat { tsv, csv };

InputFormat parse_input_format(const std::string& name);

struct LoadOptions {
  InputFormat format = InputFormat::tsv;
  bool has_header = false;
};

// Reads user,item[,ignored...] rows. Duplicate pairs collapse to their first
// occurrence; file order is kept.
std::vector<RawInteraction> load_interactions(const std::filesystem::path& path,
                                              const LoadOptions& options = {});

// Drops users and items with fewer than k interactions until none remain.
std::vector<RawInteraction> k_core_filter(const std::vector<RawInteraction>& interactions,
                                          std::size_t k);

struct SplitRatios {
  double train = 0.6;
  double valid = 0.2;
  double test = 0.2;
};

struct SplitOptions {
  SplitRatios ratios;
  std::uint64_t seed = 42;
  // Cut each user's interactions at the ratio boundaries instead of drawing
  // every interaction independently.
  bool stratify_by_user = false;
};

InteractionDataset split_dataset(const std::vector<RawInteraction>& interactions,
                                 const SplitOptions& options);

// Plain-text manifest: vocab tables followed by the three edge lists.
//
//   graphau-splits 1
//   users <n>
//   <index>\t<token>           (n lines)
//   items <n>
//   <index>\t<token>           (n lines)
//   train <m>
//   <user>\t<item>             (m lines; same for valid and test)
//   valid <m>
//   ...
//   test <m>
//   ...
void write_split_manifest(const InteractionDataset& dataset, const std::filesystem::path& path);
InteractionDataset read_split_manifest(const std::filesystem::path& path);

}  // namespace graphau
