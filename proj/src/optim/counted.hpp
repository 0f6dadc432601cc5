#pragma once

#include <vector>

#include "cargoload/optim.hpp"

namespace cargoload::detail {

struct BudgetExhausted {};

// Wraps an objective with an evaluation budget and best-seen tracking.
// Throws BudgetExhausted instead of evaluating past the budget.
class CountedObjective {
 public:
  CountedObjective(const ObjectiveFn& f, std::size_t budget, MinimizeResult& out)
      : f_(f), budget_(budget), out_(out) {}

  double operator()(const std::vector<double>& x) {
    if (out_.trace.size() >= budget_) throw BudgetExhausted{};
    const double v = f_(x);
    out_.trace.push_back(v);
    if (out_.x.empty() || v < out_.value) {
      out_.x = x;
      out_.value = v;
    }
    return v;
  }

 private:
  const ObjectiveFn& f_;
  std::size_t budget_;
  MinimizeResult& out_;
};

}  // namespace cargoload::detail
