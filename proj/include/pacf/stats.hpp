#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "pacf/interaction.hpp"

#include <nlohmann/json.hpp>

namespace pacf {

struct DatasetStats {
  std::int64_t users = 0;
  std::int64_t items = 0;
  std::int64_t interactions = 0;
  double density = 0.0;
  double gini_user = 0.0;
  double gini_item = 0.0;
};

/// Sorted cumulative-share Gini, G = (2*sum i*x_(i))/(n*sum x) - (n+1)/n,
/// evaluated as one division of exact integer numerator/denominator so that
/// the uniform case is exactly 0 and one-owner-among-n is exactly (n-1)/n.
inline double gini(std::vector<std::int64_t> counts) {
  const std::int64_t n = static_cast<std::int64_t>(counts.size());
  if (n == 0) return 0.0;
  std::sort(counts.begin(), counts.end());
  std::int64_t total = 0, weighted = 0;
  for (std::int64_t i = 0; i < n; ++i) {
    total += counts[i];
    weighted += (i + 1) * counts[i];
  }
  if (total == 0) return 0.0;
  const std::int64_t num = 2 * weighted - (n + 1) * total;
  const std::int64_t den = n * total;
  return static_cast<double>(num) / static_cast<double>(den);
}

inline DatasetStats compute_stats(const InteractionMatrix& m) {
  if (m.nnz() == 0) throw UsageError("compute_stats: empty matrix");
  DatasetStats s;
  s.users = m.n_users();
  s.items = m.n_items();
  s.interactions = m.nnz();
  s.density = static_cast<double>(s.interactions) /
              (static_cast<double>(s.users) * static_cast<double>(s.items));
  std::vector<std::int64_t> uc(m.n_users()), ic(m.n_items());
  for (int u = 0; u < m.n_users(); ++u) uc[u] = m.user_degree(u);
  for (int i = 0; i < m.n_items(); ++i) ic[i] = m.item_degree(i);
  s.gini_user = gini(std::move(uc));
  s.gini_item = gini(std::move(ic));
  return s;
}

inline nlohmann::ordered_json stats_to_json(const DatasetStats& s) {
  return nlohmann::ordered_json{{"users", s.users},
                                {"items", s.items},
                                {"interactions", s.interactions},
                                {"density", s.density},
                                {"gini_user", s.gini_user},
                                {"gini_item", s.gini_item}};
}

}  // namespace pacf
