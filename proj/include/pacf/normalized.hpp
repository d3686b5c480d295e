#pragma once

#include <cmath>
#include <vector>

#include "pacf/interaction.hpp"

namespace pacf {

/// Lazily weighted view of an interaction matrix: entry (u,i) has value
/// deg(u)^-a * deg(i)^-b. Zero-degree rows/columns yield exactly zero
/// weights, never NaN/Inf. Degrees are those of the base (training) matrix.
class NormalizedView {
 public:
  NormalizedView(const InteractionMatrix& base, double a, double b)
      : base_(&base), a_(a), b_(b) {
    if (a < 0 || b < 0) throw std::invalid_argument("normalize: exponents must be >= 0");
    user_w_.resize(base.n_users());
    item_w_.resize(base.n_items());
    for (int u = 0; u < base.n_users(); ++u) {
      const int d = base.user_degree(u);
      user_w_[u] = d > 0 ? std::pow(static_cast<double>(d), -a) : 0.0;
    }
    for (int i = 0; i < base.n_items(); ++i) {
      const int d = base.item_degree(i);
      item_w_[i] = d > 0 ? std::pow(static_cast<double>(d), -b) : 0.0;
    }
  }

  const InteractionMatrix& base() const { return *base_; }
  double user_exponent() const { return a_; }
  double item_exponent() const { return b_; }

  double weight(int u, int i) const { return user_w_[u] * item_w_[i]; }
  double user_weight(int u) const { return user_w_[u]; }
  double item_weight(int i) const { return item_w_[i]; }

 private:
  const InteractionMatrix* base_;
  double a_, b_;
  std::vector<double> user_w_, item_w_;
};

inline NormalizedView normalize(const InteractionMatrix& m, double a, double b) {
  return NormalizedView(m, a, b);
}

}  // namespace pacf
