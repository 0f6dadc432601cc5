#include <cmath>
#include <cstdint>

#include "cargoload/sim.hpp"

namespace cargoload::kernels {

template <typename Real>
void ry(std::span<std::complex<Real>> amps, std::size_t q, double theta) {
  const Real c = static_cast<Real>(std::cos(0.5 * theta));
  const Real s = static_cast<Real>(std::sin(0.5 * theta));
  const std::uint64_t stride = std::uint64_t{1} << q;
  const std::uint64_t low_mask = stride - 1;
  const auto pairs = static_cast<std::int64_t>(amps.size() / 2);
  std::complex<Real>* data = amps.data();
  // Pair p maps to the index with bit q cleared and the other bits of p
  // spread around it.
#pragma omp parallel for schedule(static)
  for (std::int64_t p = 0; p < pairs; ++p) {
    const auto u = static_cast<std::uint64_t>(p);
    const std::uint64_t lo = ((u & ~low_mask) << 1) | (u & low_mask);
    const std::uint64_t hi = lo | stride;
    const auto a0 = data[lo];
    const auto a1 = data[hi];
    data[lo] = c * a0 - s * a1;
    data[hi] = s * a0 + c * a1;
  }
}

template <typename Real>
void rzz(std::span<std::complex<Real>> amps, std::size_t a, std::size_t b, double theta) {
  const std::complex<Real> same(static_cast<Real>(std::cos(0.5 * theta)), static_cast<Real>(-std::sin(0.5 * theta)));
  const std::complex<Real> differ = std::conj(same);
  const auto size = static_cast<std::int64_t>(amps.size());
  std::complex<Real>* data = amps.data();
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < size; ++i) {
    const auto s = static_cast<std::uint64_t>(i);
    data[s] *= (((s >> a) ^ (s >> b)) & 1U) ? differ : same;
  }
}

template void ry<double>(std::span<std::complex<double>>, std::size_t, double);
template void ry<float>(std::span<std::complex<float>>, std::size_t, double);
template void rzz<double>(std::span<std::complex<double>>, std::size_t, std::size_t, double);
template void rzz<float>(std::span<std::complex<float>>, std::size_t, std::size_t, double);

}  // namespace cargoload::kernels
