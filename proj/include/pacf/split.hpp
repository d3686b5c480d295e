#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pacf/digest.hpp"
#include "pacf/interaction.hpp"
#include "pacf/rng.hpp"

namespace pacf {

struct SplitConfig {
  std::uint64_t seed = 0;
  double test_fraction = 0.15;
  double valid_fraction = 0.15;
  int min_user_interactions = 5;

  void validate() const {
    if (!(test_fraction > 0 && test_fraction < 1) ||
        !(valid_fraction > 0 && valid_fraction < 1))
      throw UsageError("split: fractions must be in (0,1)");
    if (test_fraction + valid_fraction >= 1)
      throw UsageError("split: test_fraction + valid_fraction must be < 1");
    if (min_user_interactions < 0)
      throw UsageError("split: min_user_interactions must be >= 0");
  }
};

/// Train/valid/test matrices sharing one id space, plus the 256-bit digest of
/// the canonical serialized form of all three entry sets.
struct SplitBundle {
  InteractionMatrix train, valid, test;
  SplitConfig config;
  std::string content_digest;
};

struct ItemSegments {
  std::vector<int> head;           ///< descending-popularity order
  std::vector<int> tail;           ///< ascending item index
  std::vector<char> is_head;       ///< n_items mask
  double head_fraction = 0.10;
};

namespace detail {

/// Canonical text form of one split: "user_id<TAB>item_id\n" lines sorted
/// lexicographically. This is both the on-disk file content and the digest
/// input.
inline std::string split_text(const InteractionMatrix& universe,
                              const std::vector<std::pair<int, int>>& entries) {
  std::vector<std::string> lines;
  lines.reserve(entries.size());
  for (const auto& [u, i] : entries)
    lines.push_back(universe.user_ids()[u] + "\t" + universe.item_ids()[i] + "\n");
  std::sort(lines.begin(), lines.end());
  std::string out;
  std::size_t total = 0;
  for (const auto& l : lines) total += l.size();
  out.reserve(total);
  for (const auto& l : lines) out += l;
  return out;
}

}  // namespace detail

/// Per-user seeded hold-out split. For a user with n >= min_user_interactions
/// interactions: test = max(1, floor(test_fraction*n)); from the remaining r,
/// valid = max(1, floor(valid_fraction*r)); the rest stays in train. Users
/// below the minimum keep everything in train. Each user draws from a
/// substream derived from (seed, user index), so the result is independent of
/// iteration order.
inline SplitBundle holdout_split(const InteractionMatrix& m, const SplitConfig& cfg) {
  cfg.validate();
  if (m.nnz() == 0) throw UsageError("split: empty matrix");

  std::vector<std::pair<int, int>> tr, va, te;
  for (int u = 0; u < m.n_users(); ++u) {
    auto row = m.items_of(u);
    std::vector<int> items(row.begin(), row.end());
    const long n = static_cast<long>(items.size());
    if (n < cfg.min_user_interactions) {
      for (int i : items) tr.emplace_back(u, i);
      continue;
    }
    SplitMix64 rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(u)));
    rng.shuffle(items);
    const long t = std::max<long>(1, floor_frac(cfg.test_fraction, n));
    const long r = n - t;
    const long v = std::max<long>(1, floor_frac(cfg.valid_fraction, r));
    for (long k = 0; k < n; ++k) {
      if (k < t)
        te.emplace_back(u, items[k]);
      else if (k < t + v)
        va.emplace_back(u, items[k]);
      else
        tr.emplace_back(u, items[k]);
    }
  }

  SplitBundle b;
  b.config = cfg;
  b.train = InteractionMatrix::from_entries(m.n_users(), m.n_items(), tr,
                                            m.user_ids(), m.item_ids());
  b.valid = InteractionMatrix::from_entries(m.n_users(), m.n_items(), va,
                                            m.user_ids(), m.item_ids());
  b.test = InteractionMatrix::from_entries(m.n_users(), m.n_items(), te,
                                           m.user_ids(), m.item_ids());
  Sha256 h;
  h.update(detail::split_text(m, b.train.entries()));
  h.update(detail::split_text(m, b.valid.entries()));
  h.update(detail::split_text(m, b.test.entries()));
  b.content_digest = h.hex();
  return b;
}

/// Ranks items by training interaction count (descending, ties by ascending
/// index); the top ceil(head_fraction * N) are the head, the rest the tail.
inline ItemSegments head_tail_partition(const InteractionMatrix& train,
                                        double head_fraction = 0.10) {
  if (!(head_fraction > 0 && head_fraction < 1))
    throw UsageError("head_tail: fraction must be in (0,1)");
  if (train.nnz() == 0) throw UsageError("head_tail: empty training matrix");
  const int n = train.n_items();
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const int da = train.item_degree(a), db = train.item_degree(b);
    return da != db ? da > db : a < b;
  });
  const long h = std::min<long>(n, ceil_frac(head_fraction, n));
  ItemSegments s;
  s.head_fraction = head_fraction;
  s.is_head.assign(n, 0);
  s.head.assign(order.begin(), order.begin() + h);
  for (int i : s.head) s.is_head[i] = 1;
  for (int i = 0; i < n; ++i)
    if (!s.is_head[i]) s.tail.push_back(i);
  return s;
}

// ---------------------------------------------------------------------------
// Persistence: train/valid/test text files plus a JSON manifest carrying the
// seed, the digest, and the shared id space.
// ---------------------------------------------------------------------------

inline void save_split(const SplitBundle& b, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const InteractionMatrix& uni = b.train;  // id space is shared
  const char* names[3] = {"train.tsv", "valid.tsv", "test.tsv"};
  const InteractionMatrix* mats[3] = {&b.train, &b.valid, &b.test};
  for (int s = 0; s < 3; ++s) {
    std::ofstream out(fs::path(dir) / names[s], std::ios::binary);
    if (!out) throw std::runtime_error(std::string("cannot write ") + names[s]);
    out << detail::split_text(uni, mats[s]->entries());
  }
  nlohmann::ordered_json man{
      {"seed", b.config.seed},
      {"test_fraction", b.config.test_fraction},
      {"valid_fraction", b.config.valid_fraction},
      {"min_user_interactions", b.config.min_user_interactions},
      {"digest", b.content_digest},
      {"n_users", b.train.n_users()},
      {"n_items", b.train.n_items()},
      {"counts",
       {{"train", b.train.nnz()}, {"valid", b.valid.nnz()}, {"test", b.test.nnz()}}},
      {"user_ids", uni.user_ids()},
      {"item_ids", uni.item_ids()}};
  std::ofstream mo(fs::path(dir) / "split.manifest.json", std::ios::binary);
  mo << man.dump(2) << "\n";
}

namespace detail {

inline InteractionMatrix load_split_part(const std::string& path,
                                         const InteractionMatrix& universe_ids,
                                         int n_users, int n_items) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open split file: " + path);
  std::vector<std::pair<int, int>> entries;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw UsageError(path + ":" + std::to_string(line_no) + ": expected user<TAB>item");
    const int u = universe_ids.user_index(line.substr(0, tab));
    const int i = universe_ids.item_index(line.substr(tab + 1));
    if (u < 0 || i < 0)
      throw UsageError(path + ":" + std::to_string(line_no) + ": id not in manifest");
    entries.emplace_back(u, i);
  }
  return InteractionMatrix::from_entries(n_users, n_items, std::move(entries),
                                         universe_ids.user_ids(),
                                         universe_ids.item_ids());
}

}  // namespace detail

/// reads_test=false lets fit-stage commands load a bundle without ever
/// touching test.tsv (the test matrix stays empty).
inline SplitBundle load_split(const std::string& dir, bool reads_test = true) {
  namespace fs = std::filesystem;
  std::ifstream mi(fs::path(dir) / "split.manifest.json");
  if (!mi) throw UsageError("cannot open split manifest in " + dir);
  nlohmann::json man = nlohmann::json::parse(mi);
  SplitBundle b;
  b.config.seed = man.at("seed").get<std::uint64_t>();
  b.config.test_fraction = man.at("test_fraction").get<double>();
  b.config.valid_fraction = man.at("valid_fraction").get<double>();
  b.config.min_user_interactions = man.at("min_user_interactions").get<int>();
  b.content_digest = man.at("digest").get<std::string>();
  const int n_users = man.at("n_users").get<int>();
  const int n_items = man.at("n_items").get<int>();
  auto user_ids = man.at("user_ids").get<std::vector<std::string>>();
  auto item_ids = man.at("item_ids").get<std::vector<std::string>>();
  auto universe = InteractionMatrix::from_entries(n_users, n_items, {},
                                                  std::move(user_ids),
                                                  std::move(item_ids));
  b.train = detail::load_split_part((fs::path(dir) / "train.tsv").string(),
                                    universe, n_users, n_items);
  b.valid = detail::load_split_part((fs::path(dir) / "valid.tsv").string(),
                                    universe, n_users, n_items);
  if (reads_test)
    b.test = detail::load_split_part((fs::path(dir) / "test.tsv").string(),
                                     universe, n_users, n_items);
  return b;
}

}  // namespace pacf
