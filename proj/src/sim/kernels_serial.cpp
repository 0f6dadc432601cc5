#include <cmath>

#include "cargoload/sim.hpp"

namespace cargoload::kernels::serial {

template <typename Real>
void ry(std::span<std::complex<Real>> amps, std::size_t q, double theta) {
  const Real c = static_cast<Real>(std::cos(0.5 * theta));
  const Real s = static_cast<Real>(std::sin(0.5 * theta));
  const std::size_t stride = std::size_t{1} << q;
  for (std::size_t base = 0; base < amps.size(); base += 2 * stride) {
    for (std::size_t lo = base; lo < base + stride; ++lo) {
      const auto a0 = amps[lo];
      const auto a1 = amps[lo + stride];
      amps[lo] = c * a0 - s * a1;
      amps[lo + stride] = s * a0 + c * a1;
    }
  }
}

template <typename Real>
void rzz(std::span<std::complex<Real>> amps, std::size_t a, std::size_t b, double theta) {
  const std::complex<Real> same(static_cast<Real>(std::cos(0.5 * theta)), static_cast<Real>(-std::sin(0.5 * theta)));
  const std::complex<Real> differ = std::conj(same);
  for (std::size_t s = 0; s < amps.size(); ++s) {
    const bool parity = (((s >> a) ^ (s >> b)) & 1U) != 0;
    amps[s] *= parity ? differ : same;
  }
}

template void ry<double>(std::span<std::complex<double>>, std::size_t, double);
template void ry<float>(std::span<std::complex<float>>, std::size_t, double);
template void rzz<double>(std::span<std::complex<double>>, std::size_t, std::size_t, double);
template void rzz<float>(std::span<std::complex<float>>, std::size_t, std::size_t, double);

}  // namespace cargoload::kernels::serial
