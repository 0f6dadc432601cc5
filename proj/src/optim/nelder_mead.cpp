#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cargoload/optim.hpp"
#include "counted.hpp"

namespace cargoload {

namespace {

double diameter(const std::vector<std::vector<double>>& simplex) {
  double widest = 0.0;
  for (std::size_t v = 1; v < simplex.size(); ++v) {
    double d2 = 0.0;
    for (std::size_t k = 0; k < simplex[0].size(); ++k) {
      const double d = simplex[v][k] - simplex[0][k];
      d2 += d * d;
    }
    widest = std::max(widest, std::sqrt(d2));
  }
  return widest;
}

}  // namespace

MinimizeResult nelder_mead(const ObjectiveFn& f, std::vector<double> x0, const NelderMeadOptions& opts) {
  MinimizeResult result;
  result.value = std::numeric_limits<double>::infinity();
  detail::CountedObjective eval(f, opts.budget, result);

  const std::size_t n = x0.size();
  const double dim = static_cast<double>(n);
  const bool adaptive = opts.adaptive && n >= 2;
  const double reflect = 1.0;
  const double expand = adaptive ? 1.0 + 2.0 / dim : 2.0;
  const double contract = adaptive ? 0.75 - 0.5 / dim : 0.5;
  const double shrink = adaptive ? 1.0 - 1.0 / dim : 0.5;

  std::vector<std::vector<double>> simplex(n + 1, x0);
  std::vector<double> fx(n + 1);
  std::vector<std::size_t> order(n + 1);

  try {
    if (n == 0) {
      eval(x0);
      return result;
    }
    fx[0] = eval(simplex[0]);
    for (std::size_t k = 0; k < n; ++k) {
      simplex[k + 1][k] += opts.initial_step;
      fx[k + 1] = eval(simplex[k + 1]);
    }

    std::vector<double> centroid(n), xr(n), xe(n), xc(n);
    auto blend = [n](const std::vector<double>& from, const std::vector<double>& to, double t,
                     std::vector<double>& out) {
      for (std::size_t k = 0; k < n; ++k) out[k] = from[k] + t * (to[k] - from[k]);
    };

    for (;;) {
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });
      {
        std::vector<std::vector<double>> s2(n + 1);
        std::vector<double> f2(n + 1);
        for (std::size_t v = 0; v <= n; ++v) {
          s2[v] = std::move(simplex[order[v]]);
          f2[v] = fx[order[v]];
        }
        simplex.swap(s2);
        fx.swap(f2);
      }
      if (diameter(simplex) < opts.tolerance) break;

      std::fill(centroid.begin(), centroid.end(), 0.0);
      for (std::size_t v = 0; v < n; ++v)
        for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[v][k];
      for (auto& c : centroid) c /= dim;

      auto& worst = simplex[n];
      blend(centroid, worst, -reflect, xr);
      const double fr = eval(xr);

      if (fr < fx[0]) {
        blend(centroid, worst, -reflect * expand, xe);
        const double fe = eval(xe);
        if (fe < fr) {
          worst = xe;
          fx[n] = fe;
        } else {
          worst = xr;
          fx[n] = fr;
        }
        continue;
      }
      if (fr < fx[n - 1]) {
        worst = xr;
        fx[n] = fr;
        continue;
      }
      bool accepted = false;
      if (fr < fx[n]) {
        blend(centroid, xr, contract, xc);  // outside contraction
        const double fc = eval(xc);
        if (fc <= fr) {
          worst = xc;
          fx[n] = fc;
          accepted = true;
        }
      } else {
        blend(centroid, worst, contract, xc);  // inside contraction
        const double fc = eval(xc);
        if (fc < fx[n]) {
          worst = xc;
          fx[n] = fc;
          accepted = true;
        }
      }
      if (!accepted) {
        for (std::size_t v = 1; v <= n; ++v) {
          blend(simplex[0], simplex[v], shrink, simplex[v]);
          fx[v] = eval(simplex[v]);
        }
      }
    }
  } catch (const detail::BudgetExhausted&) {
  }
  return result;
}

}  // namespace cargoload
