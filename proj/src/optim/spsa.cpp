#include <cmath>
#include <limits>
#include <random>

#include "cargoload/optim.hpp"

namespace cargoload {

std::vector<double> rademacher(std::size_t dim, std::uint64_t seed, std::size_t iteration) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(iteration), static_cast<std::uint32_t>(iteration >> 32)};
  std::mt19937_64 rng(seq);
  std::vector<double> delta(dim);
  std::uint64_t bits = 0;
  for (std::size_t k = 0; k < dim; ++k) {
    if (k % 64 == 0) bits = rng();
    delta[k] = ((bits >> (k % 64)) & 1U) ? 1.0 : -1.0;
  }
  return delta;
}

MinimizeResult spsa(const ObjectiveFn& f, std::vector<double> x0, const SpsaOptions& opts) {
  MinimizeResult result;
  result.value = std::numeric_limits<double>::infinity();
  auto eval = [&](const std::vector<double>& x) {
    const double v = f(x);
    result.trace.push_back(v);
    if (result.x.empty() || v < result.value) {
      result.x = x;
      result.value = v;
    }
    return v;
  };

  const auto& s = opts.schedule;
  const std::size_t dim = x0.size();
  std::vector<double> theta = std::move(x0);
  std::vector<double> plus(dim), minus(dim);

  // Two evaluations per step plus one for the final iterate; an even budget
  // spends its spare evaluation on the starting point.
  if (opts.budget % 2 == 0 && opts.budget > 0) eval(theta);
  for (std::size_t k = 0; result.trace.size() + 3 <= opts.budget; ++k) {
    const double kk = static_cast<double>(k + 1);
    const double ak = s.a / std::pow(kk + s.A, s.alpha);
    const double ck = s.c / std::pow(kk, s.gamma);
    const auto delta = rademacher(dim, opts.seed, k);
    for (std::size_t i = 0; i < dim; ++i) {
      plus[i] = theta[i] + ck * delta[i];
      minus[i] = theta[i] - ck * delta[i];
    }
    const double fp = eval(plus);
    const double fm = eval(minus);
    const double slope = (fp - fm) / (2.0 * ck);
    for (std::size_t i = 0; i < dim; ++i) theta[i] -= ak * slope / delta[i];
  }
  if (result.trace.size() < opts.budget) eval(theta);
  return result;
}

}  // namespace cargoload
