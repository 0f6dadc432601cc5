// Powell's COBYLA restricted to the unconstrained case: a simplex of n + 1
// points carries a linear model of f, each iteration steps to the edge of a
// trust region of radius rho along the model's descent direction, and rho is
// halved once neither progress nor a geometry repair is possible.

#include <cmath>
#include <limits>

#include "cargoload/optim.hpp"
#include "counted.hpp"

namespace cargoload {

namespace {

// Powell's acceptability and step constants.
constexpr double kAlpha = 0.25;  // vertex "height" floor, in units of rho
constexpr double kBeta = 2.1;    // vertex distance ceiling, in units of rho
constexpr double kGamma = 0.5;   // geometry-repair step, in units of rho
constexpr double kDelta = 1.1;   // edge length beyond which a vertex is dropped

using Matrix = std::vector<std::vector<double>>;

}  // namespace

MinimizeResult cobyla(const ObjectiveFn& f, std::vector<double> x0, const CobylaOptions& opts) {
  MinimizeResult result;
  result.value = std::numeric_limits<double>::infinity();
  detail::CountedObjective eval(f, opts.budget, result);
  const std::size_t n = x0.size();

  try {
    if (n == 0) {
      eval(x0);
      return result;
    }
    const double rho_end = std::min(opts.rho_end, opts.rho_begin);
    double rho = opts.rho_begin;

    // sim[v] is vertex v as an offset from the pole base; simi is its inverse
    // (rows indexed by vertex); fval[n] belongs to the pole.
    std::vector<double> base = x0;
    Matrix sim(n, std::vector<double>(n, 0.0));
    Matrix simi(n, std::vector<double>(n, 0.0));
    for (std::size_t j = 0; j < n; ++j) {
      sim[j][j] = rho;
      simi[j][j] = 1.0 / rho;
    }
    std::vector<double> fval(n + 1);

    // Initial simplex, moving the pole whenever a new vertex improves on it.
    std::vector<double> x = x0;
    fval[n] = eval(x);
    for (std::size_t j = 0; j < n; ++j) {
      x[j] += rho;
      const double fj = eval(x);
      if (fval[n] <= fj) {
        fval[j] = fj;
        x[j] = base[j];
      } else {
        fval[j] = fval[n];
        fval[n] = fj;
        base[j] = x[j];
        for (std::size_t k = 0; k <= j; ++k) {
          sim[k][j] = -rho;
          double t = 0.0;
          for (std::size_t i = k; i <= j; ++i) t -= simi[i][k];
          simi[j][k] = t;
        }
      }
    }

    std::vector<double> grad(n), dx(n), vsig(n), veta(n), trial(n);

    // Replaces vertex `drop` by base + dx and updates the inverse in place.
    auto replace_vertex = [&](std::size_t drop) {
      double t = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        sim[drop][i] = dx[i];
        t += simi[drop][i] * dx[i];
      }
      for (std::size_t i = 0; i < n; ++i) simi[drop][i] /= t;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == drop) continue;
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += simi[j][i] * dx[i];
        for (std::size_t i = 0; i < n; ++i) simi[j][i] -= s * simi[drop][i];
      }
    };

    // Powell's IBRNCH: false only after a failed step left the simplex
    // unacceptable, which forces one geometry repair.
    bool trusted = true;
    for (;;) {
      // Move the best vertex into the pole position.
      std::size_t best = n;
      for (std::size_t j = 0; j < n; ++j)
        if (fval[j] < fval[best]) best = j;
      if (best < n) {
        std::swap(fval[n], fval[best]);
        const auto shift = sim[best];
        for (std::size_t i = 0; i < n; ++i) base[i] += shift[i];
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t i = 0; i < n; ++i) sim[j][i] -= shift[i];
        sim[best].assign(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) sim[best][i] = -shift[i];
        for (std::size_t i = 0; i < n; ++i) {
          double t = 0.0;
          for (std::size_t k = 0; k < n; ++k) t -= simi[k][i];
          simi[best][i] = t;
        }
      }

      // Rounding has wrecked the inverse; nothing sensible is left to do.
      double error = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          double t = i == j ? -1.0 : 0.0;
          for (std::size_t k = 0; k < n; ++k) t += simi[i][k] * sim[j][k];
          error = std::max(error, std::abs(t));
        }
      if (error > 0.1) break;

      // Linear model gradient.
      for (std::size_t i = 0; i < n; ++i) {
        double g = 0.0;
        for (std::size_t j = 0; j < n; ++j) g += (fval[j] - fval[n]) * simi[j][i];
        grad[i] = g;
      }

      bool acceptable = true;
      const double parsig = kAlpha * rho;
      const double pareta = kBeta * rho;
      for (std::size_t j = 0; j < n; ++j) {
        double wsig = 0.0, weta = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          wsig += simi[j][i] * simi[j][i];
          weta += sim[j][i] * sim[j][i];
        }
        vsig[j] = 1.0 / std::sqrt(wsig);
        veta[j] = std::sqrt(weta);
        if (vsig[j] < parsig || veta[j] > pareta) acceptable = false;
      }

      if (!trusted && !acceptable) {
        // Geometry repair: drop the farthest vertex, else the flattest one.
        std::size_t drop = n;
        double worst = pareta;
        for (std::size_t j = 0; j < n; ++j)
          if (veta[j] > worst) {
            drop = j;
            worst = veta[j];
          }
        if (drop == n) {
          worst = parsig;
          for (std::size_t j = 0; j < n; ++j)
            if (vsig[j] < worst) {
              drop = j;
              worst = vsig[j];
            }
        }
        const double len = kGamma * rho * vsig[drop];
        double slope = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          dx[i] = len * simi[drop][i];
          slope += grad[i] * dx[i];
        }
        if (slope > 0.0)
          for (auto& d : dx) d = -d;
        replace_vertex(drop);
        for (std::size_t i = 0; i < n; ++i) trial[i] = base[i] + dx[i];
        fval[drop] = eval(trial);
        trusted = true;
        continue;
      }

      // Trust-region step: the linear model falls fastest along -grad.
      trusted = true;
      double gnorm = 0.0;
      for (double g : grad) gnorm += g * g;
      gnorm = std::sqrt(gnorm);
      if (gnorm > 0.0) {
        for (std::size_t i = 0; i < n; ++i) dx[i] = -rho * grad[i] / gnorm;
        const double predicted = rho * gnorm;
        for (std::size_t i = 0; i < n; ++i) trial[i] = base[i] + dx[i];
        const double fnew = eval(trial);
        const double actual = fval[n] - fnew;

        // Pick the vertex to replace with the trial point.
        // Replacement is mandatory after an improvement.
        double ratio = actual > 0.0 ? 0.0 : 1.0;
        std::size_t drop = n;
        std::vector<double> sigbar(n);
        for (std::size_t j = 0; j < n; ++j) {
          double s = 0.0;
          for (std::size_t i = 0; i < n; ++i) s += simi[j][i] * dx[i];
          s = std::abs(s);
          if (s > ratio) {
            drop = j;
            ratio = s;
          }
          sigbar[j] = s * vsig[j];
        }
        double edgmax = kDelta * rho;
        std::size_t far = n;
        for (std::size_t j = 0; j < n; ++j) {
          if (sigbar[j] >= parsig || sigbar[j] >= vsig[j]) {
            double t = veta[j];
            if (actual > 0.0) {
              t = 0.0;
              for (std::size_t i = 0; i < n; ++i) t += (dx[i] - sim[j][i]) * (dx[i] - sim[j][i]);
              t = std::sqrt(t);
            }
            if (t > edgmax) {
              far = j;
              edgmax = t;
            }
          }
        }
        if (far < n) drop = far;
        if (drop < n) {
          replace_vertex(drop);
          fval[drop] = fnew;
          if (actual > 0.0 && actual >= 0.1 * predicted) continue;
        }
      }

      if (!acceptable) {
        trusted = false;
        continue;
      }
      if (rho <= rho_end) break;
      rho *= 0.5;
      if (rho <= 1.5 * rho_end) rho = rho_end;
    }
  } catch (const detail::BudgetExhausted&) {
  }
  return result;
}

}  // namespace cargoload
