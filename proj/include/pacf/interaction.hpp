#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pacf/common.hpp"

namespace pacf {

/// Sparse binary user x item matrix with both row-major (user -> items) and
/// column-major (item -> users) index structures, plus dense-index <-> external
/// id maps. Read-only after construction.
class InteractionMatrix {
 public:
  InteractionMatrix() = default;

  /// Builds from (user, item) index pairs. Deduplicates; both views are
  /// derived from the same entry set.
  static InteractionMatrix from_entries(int n_users, int n_items,
                                        std::vector<std::pair<int, int>> entries,
                                        std::vector<std::string> user_ids = {},
                                        std::vector<std::string> item_ids = {}) {
    InteractionMatrix m;
    m.n_users_ = n_users;
    m.n_items_ = n_items;
    for (auto& [u, i] : entries) {
      if (u < 0 || u >= n_users || i < 0 || i >= n_items)
        throw std::invalid_argument("interaction entry out of range");
    }
    std::sort(entries.begin(), entries.end());
    entries.erase(std::unique(entries.begin(), entries.end()), entries.end());

    m.row_ptr_.assign(static_cast<std::size_t>(n_users) + 1, 0);
    m.col_ptr_.assign(static_cast<std::size_t>(n_items) + 1, 0);
    m.col_idx_.resize(entries.size());
    m.row_idx_.resize(entries.size());
    for (const auto& [u, i] : entries) {
      ++m.row_ptr_[static_cast<std::size_t>(u) + 1];
      ++m.col_ptr_[static_cast<std::size_t>(i) + 1];
    }
    for (int u = 0; u < n_users; ++u) m.row_ptr_[u + 1] += m.row_ptr_[u];
    for (int i = 0; i < n_items; ++i) m.col_ptr_[i + 1] += m.col_ptr_[i];
    // entries are sorted by (u, i): row fill is sequential, column fill uses
    // a rolling cursor per column.
    std::vector<std::int64_t> ccur(m.col_ptr_.begin(), m.col_ptr_.end() - 1);
    std::size_t k = 0;
    for (const auto& [u, i] : entries) {
      m.col_idx_[k++] = i;
      m.row_idx_[static_cast<std::size_t>(ccur[i]++)] = u;
    }
    m.set_ids(std::move(user_ids), std::move(item_ids));
    return m;
  }

  int n_users() const { return n_users_; }
  int n_items() const { return n_items_; }
  std::int64_t nnz() const { return static_cast<std::int64_t>(col_idx_.size()); }

  /// Item indices of user u, ascending.
  std::span<const int> items_of(int u) const {
    return {col_idx_.data() + row_ptr_[u], col_idx_.data() + row_ptr_[u + 1]};
  }
  /// User indices of item i, ascending.
  std::span<const int> users_of(int i) const {
    return {row_idx_.data() + col_ptr_[i], row_idx_.data() + col_ptr_[i + 1]};
  }

  int user_degree(int u) const {
    return static_cast<int>(row_ptr_[u + 1] - row_ptr_[u]);
  }
  int item_degree(int i) const {
    return static_cast<int>(col_ptr_[i + 1] - col_ptr_[i]);
  }

  bool has(int u, int i) const {
    auto row = items_of(u);
    return std::binary_search(row.begin(), row.end(), i);
  }

  const std::vector<std::string>& user_ids() const { return user_ids_; }
  const std::vector<std::string>& item_ids() const { return item_ids_; }
  int user_index(const std::string& id) const {
    auto it = user_map_.find(id);
    return it == user_map_.end() ? -1 : it->second;
  }
  int item_index(const std::string& id) const {
    auto it = item_map_.find(id);
    return it == item_map_.end() ? -1 : it->second;
  }

  std::vector<std::pair<int, int>> entries() const {
    std::vector<std::pair<int, int>> e;
    e.reserve(static_cast<std::size_t>(nnz()));
    for (int u = 0; u < n_users_; ++u)
      for (int i : items_of(u)) e.emplace_back(u, i);
    return e;
  }

 private:
  void set_ids(std::vector<std::string> user_ids, std::vector<std::string> item_ids) {
    if (user_ids.empty())
      for (int u = 0; u < n_users_; ++u) user_ids.push_back(std::to_string(u));
    if (item_ids.empty())
      for (int i = 0; i < n_items_; ++i) item_ids.push_back(std::to_string(i));
    if (static_cast<int>(user_ids.size()) != n_users_ ||
        static_cast<int>(item_ids.size()) != n_items_)
      throw std::invalid_argument("id map size mismatch");
    user_ids_ = std::move(user_ids);
    item_ids_ = std::move(item_ids);
    user_map_.clear();
    item_map_.clear();
    for (int u = 0; u < n_users_; ++u) user_map_[user_ids_[u]] = u;
    for (int i = 0; i < n_items_; ++i) item_map_[item_ids_[i]] = i;
  }

  int n_users_ = 0;
  int n_items_ = 0;
  std::vector<std::int64_t> row_ptr_;
  std::vector<int> col_idx_;
  std::vector<std::int64_t> col_ptr_;
  std::vector<int> row_idx_;
  std::vector<std::string> user_ids_, item_ids_;
  std::unordered_map<std::string, int> user_map_, item_map_;
};

/// Column layout of a delimiter-separated interaction file. delimiter 0 means
/// any run of whitespace. rating_threshold applies only when rating_col >= 0
/// and keeps records with rating >= threshold; without a threshold the rating
/// column is ignored. Timestamp columns are never read.
struct LoadFormat {
  char delimiter = 0;
  int user_col = 0;
  int item_col = 1;
  int rating_col = -1;
  double rating_threshold = 0.0;
  bool has_rating_threshold = false;
  int skip_lines = 0;
  int k_core = 0;  ///< optional k-core filter, 0 = off
};

namespace detail {

inline std::vector<std::string> split_fields(const std::string& line, char delim) {
  std::vector<std::string> out;
  if (delim == 0) {
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
  } else {
    std::string cur;
    for (char c : line) {
      if (c == delim) {
        out.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    out.push_back(cur);
  }
  return out;
}

}  // namespace detail

/// Loads a delimiter-separated interaction file into a deduplicated,
/// densely re-indexed binary matrix. Indices are assigned by first
/// appearance so repeated loads of the same file are identical.
inline InteractionMatrix load_interactions(const std::string& path,
                                           const LoadFormat& fmt = {}) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open dataset file: " + path);

  std::vector<std::string> user_ids, item_ids;
  std::unordered_map<std::string, int> umap, imap;
  std::vector<std::pair<int, int>> entries;

  const int need = std::max({fmt.user_col, fmt.item_col, fmt.rating_col}) + 1;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no <= fmt.skip_lines) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = detail::split_fields(line, fmt.delimiter);
    if (static_cast<int>(fields.size()) < need)
      throw UsageError(path + ":" + std::to_string(line_no) +
                       ": expected at least " + std::to_string(need) +
                       " fields, got " + std::to_string(fields.size()));
    if (fmt.rating_col >= 0 && fmt.has_rating_threshold) {
      double rating;
      try {
        rating = std::stod(fields[fmt.rating_col]);
      } catch (const std::exception&) {
        throw UsageError(path + ":" + std::to_string(line_no) +
                         ": malformed rating '" + fields[fmt.rating_col] + "'");
      }
      if (rating < fmt.rating_threshold) continue;
    }
    const std::string& us = fields[fmt.user_col];
    const std::string& is = fields[fmt.item_col];
    if (us.empty() || is.empty())
      throw UsageError(path + ":" + std::to_string(line_no) + ": empty id token");
    auto [uit, unew] = umap.try_emplace(us, static_cast<int>(user_ids.size()));
    if (unew) user_ids.push_back(us);
    auto [iit, inew] = imap.try_emplace(is, static_cast<int>(item_ids.size()));
    if (inew) item_ids.push_back(is);
    entries.emplace_back(uit->second, iit->second);
  }
  if (entries.empty()) throw UsageError("empty dataset: " + path);

  if (fmt.k_core > 0) {
    // iterate degree filtering to the k-core fixed point, then re-index
    // densely by first appearance within the surviving entry stream.
    std::sort(entries.begin(), entries.end());
    entries.erase(std::unique(entries.begin(), entries.end()), entries.end());
    bool changed = true;
    std::vector<int> ud(user_ids.size()), id(item_ids.size());
    while (changed) {
      std::fill(ud.begin(), ud.end(), 0);
      std::fill(id.begin(), id.end(), 0);
      for (auto& [u, i] : entries) {
        ++ud[u];
        ++id[i];
      }
      std::vector<std::pair<int, int>> kept;
      kept.reserve(entries.size());
      for (auto& [u, i] : entries)
        if (ud[u] >= fmt.k_core && id[i] >= fmt.k_core) kept.emplace_back(u, i);
      changed = kept.size() != entries.size();
      entries = std::move(kept);
    }
    if (entries.empty()) throw UsageError("k-core filter removed all interactions");
    std::vector<int> unew(user_ids.size(), -1), inew(item_ids.size(), -1);
    std::vector<std::string> u2, i2;
    for (auto& [u, i] : entries) {
      if (unew[u] < 0) {
        unew[u] = static_cast<int>(u2.size());
        u2.push_back(user_ids[u]);
      }
      if (inew[i] < 0) {
        inew[i] = static_cast<int>(i2.size());
        i2.push_back(item_ids[i]);
      }
      u = unew[u];
      i = inew[i];
    }
    user_ids = std::move(u2);
    item_ids = std::move(i2);
  }

  return InteractionMatrix::from_entries(static_cast<int>(user_ids.size()),
                                         static_cast<int>(item_ids.size()),
                                         std::move(entries), std::move(user_ids),
                                         std::move(item_ids));
}

}  // namespace pacf
