#include "graphau/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

namespace graphau {

Index Vocabulary::intern(const std::string& token) {
  auto [it, inserted] = index_.try_emplace(token, static_cast<Index>(tokens_.size()));
  if (inserted) tokens_.push_back(token);
  return it->second;
}

Index Vocabulary::at(const std::string& token) const {
  auto it = index_.find(token);
  if (it == index_.end()) throw std::out_of_range("unknown token: " + token);
  return it->second;
}

void InteractionDataset::validate() const {
  if (user_vocab.size() != n_users || item_vocab.size() != n_items) {
    throw std::invalid_argument("vocabulary size does not match counts");
  }
  std::set<Edge> seen;
  const auto check = [&](const std::vector<Edge>& edges, const char* name) {
    for (const Edge& e : edges) {
      if (e.user >= n_users || e.item >= n_items) {
        throw std::invalid_argument(std::string(name) + " edge index out of range");
      }
      if (!seen.insert(e).second) {
        throw std::invalid_argument(std::string(name) + " edge duplicated across or within splits");
      }
    }
  };
  check(train_edges, "train");
  check(valid_edges, "valid");
  check(test_edges, "test");
}

std::uint64_t InteractionDataset::vocab_hash() const {
  std::uint64_t h = 1469598103934665603ull;
  const auto mix = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= 0xffu;
    h *= 1099511628211ull;
  };
  for (const auto& t : user_vocab.tokens()) mix(t);
  mix("\x01items");
  for (const auto& t : item_vocab.tokens()) mix(t);
  return h;
}

InputFormat parse_input_format(const std::string& name) {
  if (name == "tsv") return InputFormat::tsv;
  if (name == "csv") return InputFormat::csv;
  throw std::invalid_argument("unknown input format '" + name + "' (expected tsv or csv)");
}

namespace {

std::vector<std::string> split_fields(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

}  // namespace

std::vector<RawInteraction> load_interactions(const std::filesystem::path& path,
                                              const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  const char sep = options.format == InputFormat::tsv ? '\t' : ',';

  std::vector<RawInteraction> out;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  bool header_pending = options.has_header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    auto fields = split_fields(line, sep);
    if (fields.size() < 2) {
      throw DataError("line " + std::to_string(line_no) + ": expected at least 2 columns");
    }
    RawInteraction r{trim(fields[0]), trim(fields[1])};
    if (r.user_id.empty() || r.item_id.empty()) {
      throw DataError("line " + std::to_string(line_no) + ": empty user or item id");
    }
    std::string key = r.user_id;
    key.push_back('\0');
    key += r.item_id;
    if (seen.insert(std::move(key)).second) out.push_back(std::move(r));
  }
  if (in.bad()) throw std::runtime_error("read error on " + path.string());
  if (out.empty()) throw DataError("empty dataset");
  return out;
}

std::vector<RawInteraction> k_core_filter(const std::vector<RawInteraction>& interactions,
                                          std::size_t k) {
  std::vector<RawInteraction> current = interactions;
  if (k <= 1) return current;
  while (true) {
    std::unordered_map<std::string, std::size_t> user_deg, item_deg;
    for (const auto& r : current) {
      ++user_deg[r.user_id];
      ++item_deg[r.item_id];
    }
    std::vector<RawInteraction> kept;
    kept.reserve(current.size());
    for (const auto& r : current) {
      if (user_deg[r.user_id] >= k && item_deg[r.item_id] >= k) kept.push_back(r);
    }
    if (kept.size() == current.size()) return kept;
    current = std::move(kept);
  }
}

InteractionDataset split_dataset(const std::vector<RawInteraction>& interactions,
                                 const SplitOptions& options) {
  const auto& r = options.ratios;
  if (interactions.empty()) throw DataError("empty dataset");
  if (!(r.train > 0 && r.valid > 0 && r.test > 0)) {
    throw std::invalid_argument("split ratios must be positive");
  }
  if (std::abs(r.train + r.valid + r.test - 1.0) > 1e-9) {
    throw std::invalid_argument("split ratios must sum to 1");
  }

  InteractionDataset ds;
  std::vector<Edge> edges;
  edges.reserve(interactions.size());
  for (const auto& raw : interactions) {
    edges.push_back({ds.user_vocab.intern(raw.user_id), ds.item_vocab.intern(raw.item_id)});
  }
  ds.n_users = ds.user_vocab.size();
  ds.n_items = ds.item_vocab.size();

  std::mt19937_64 rng(options.seed);
  // 0 = train, 1 = valid, 2 = test
  std::vector<int> assignment(edges.size(), 0);
  if (!options.stratify_by_user) {
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    for (auto& a : assignment) {
      const double draw = uniform(rng);
      a = draw < r.train ? 0 : (draw < r.train + r.valid ? 1 : 2);
    }
  } else {
    std::vector<std::vector<std::size_t>> by_user(ds.n_users);
    for (std::size_t e = 0; e < edges.size(); ++e) by_user[edges[e].user].push_back(e);
    for (auto& members : by_user) {
      std::shuffle(members.begin(), members.end(), rng);
      const auto n = static_cast<double>(members.size());
      const auto n_train = static_cast<std::size_t>(std::llround(r.train * n));
      const auto n_valid = static_cast<std::size_t>(std::llround(r.valid * n));
      for (std::size_t k = 0; k < members.size(); ++k) {
        assignment[members[k]] = k < n_train ? 0 : (k < n_train + n_valid ? 1 : 2);
      }
    }
  }
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto& target = assignment[e] == 0 ? ds.train_edges
                   : assignment[e] == 1 ? ds.valid_edges
                                        : ds.test_edges;
    target.push_back(edges[e]);
  }
  return ds;
}

void write_split_manifest(const InteractionDataset& dataset, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "graphau-splits 1\n";
  const auto vocab = [&out](const char* name, const Vocabulary& v) {
    out << name << ' ' << v.size() << '\n';
    for (std::size_t k = 0; k < v.size(); ++k) out << k << '\t' << v.token(static_cast<Index>(k)) << '\n';
  };
  const auto edges = [&out](const char* name, const std::vector<Edge>& es) {
    out << name << ' ' << es.size() << '\n';
    for (const Edge& e : es) out << e.user << '\t' << e.item << '\n';
  };
  vocab("users", dataset.user_vocab);
  vocab("items", dataset.item_vocab);
  edges("train", dataset.train_edges);
  edges("valid", dataset.valid_edges);
  edges("test", dataset.test_edges);
  if (!out) throw std::runtime_error("write error on " + path.string());
}

InteractionDataset read_split_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::size_t line_no = 0;
  std::string line;
  const auto next = [&]() -> std::string {
    if (!std::getline(in, line)) {
      throw DataError(path.string() + ": unexpected end of manifest after line " +
                      std::to_string(line_no));
    }
    ++line_no;
    return line;
  };
  const auto fail = [&](const std::string& what) {
    throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + what);
  };
  const auto section = [&](const std::string& name) -> std::size_t {
    std::istringstream ss(next());
    std::string tag;
    std::size_t n = 0;
    if (!(ss >> tag >> n) || tag != name) fail("expected '" + name + " <count>'");
    return n;
  };

  if (next() != "graphau-splits 1") fail("not a graphau split manifest (version 1)");
  InteractionDataset ds;
  for (auto [name, vocab] : {std::pair{"users", &ds.user_vocab}, std::pair{"items", &ds.item_vocab}}) {
    const std::size_t n = section(name);
    for (std::size_t k = 0; k < n; ++k) {
      const std::string row = next();
      const auto tab = row.find('\t');
      if (tab == std::string::npos) fail("expected '<index>\\t<token>'");
      if (std::stoul(row.substr(0, tab)) != k) fail("vocabulary indices must be dense and ordered");
      if (vocab->intern(row.substr(tab + 1)) != k) fail("duplicate vocabulary token");
    }
  }
  ds.n_users = ds.user_vocab.size();
  ds.n_items = ds.item_vocab.size();
  for (auto [name, list] : {std::pair{"train", &ds.train_edges}, std::pair{"valid", &ds.valid_edges},
                            std::pair{"test", &ds.test_edges}}) {
    const std::size_t n = section(name);
    list->reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      std::istringstream ss(next());
      unsigned long u = 0, i = 0;
      if (!(ss >> u >> i)) fail("expected '<user>\\t<item>'");
      list->push_back({static_cast<Index>(u), static_cast<Index>(i)});
    }
  }
  try {
    ds.validate();
  } catch (const std::invalid_argument& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  return ds;
}

}  // namespace graphau
