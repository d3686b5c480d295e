#pragma once

#include <Eigen/Dense>
#include <numeric>
#include <vector>

#include "pacf/normalized.hpp"

namespace pacf {

/// Matrix-free symmetric operator G = R~' R~ on item space, optionally
/// restricted to an item subset. The N x N item Gram is never materialized;
/// applications cost O(nnz of the touched columns).
class GramOperator {
 public:
  explicit GramOperator(const NormalizedView& view) : view_(&view) {
    items_.resize(view.base().n_items());
    std::iota(items_.begin(), items_.end(), 0);
  }

  GramOperator(const NormalizedView& view, std::vector<int> items)
      : view_(&view), items_(std::move(items)) {}

  int dim() const { return static_cast<int>(items_.size()); }
  const std::vector<int>& items() const { return items_; }
  const NormalizedView& view() const { return *view_; }

  /// y = G x over the (restricted) item space.
  void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
    if (x.size() != dim()) throw std::invalid_argument("gram apply: dimension mismatch");
    const InteractionMatrix& m = view_->base();
    Eigen::VectorXd s = Eigen::VectorXd::Zero(m.n_users());
    // s = R~ x restricted to subset columns, then y = (R~ subset)' s.
    for (int a = 0; a < dim(); ++a) {
      const int i = items_[a];
      const double xi = x[a] * view_->item_weight(i);
      if (xi == 0.0) continue;
      for (int u : m.users_of(i)) s[u] += view_->user_weight(u) * xi;
    }
    y.resize(dim());
    for (int a = 0; a < dim(); ++a) {
      const int i = items_[a];
      const double wi = view_->item_weight(i);
      double acc = 0.0;
      for (int u : m.users_of(i)) acc += view_->user_weight(u) * s[u];
      y[a] = acc * wi;
    }
  }

  /// Diagonal of G: squared norms of the restricted columns.
  Eigen::VectorXd diagonal() const {
    const InteractionMatrix& m = view_->base();
    Eigen::VectorXd d(dim());
    for (int a = 0; a < dim(); ++a) {
      const int i = items_[a];
      const double wi = view_->item_weight(i);
      double acc = 0.0;
      for (int u : m.users_of(i)) {
        const double w = view_->user_weight(u);
        acc += w * w;
      }
      d[a] = acc * wi * wi;
    }
    return d;
  }

 private:
  const NormalizedView* view_;
  std::vector<int> items_;
};

inline GramOperator gram_operator(const NormalizedView& view) {
  return GramOperator(view);
}

inline GramOperator gram_operator(const NormalizedView& view, std::vector<int> items) {
  return GramOperator(view, std::move(items));
}

}  // namespace pacf
