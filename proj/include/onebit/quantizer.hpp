#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "onebit/dsp/signal.hpp"
#include "onebit/error.hpp"

namespace onebit {

enum class Resolution { infinite, one_bit };

/// DAC/ADC model. `level` is the per-rail output magnitude in one-bit mode.
struct ConverterMode {
  Resolution resolution = Resolution::infinite;
  double level = kInvSqrt2;

  static ConverterMode infinite() { return {Resolution::infinite, kInvSqrt2}; }
  static ConverterMode one_bit(double level = kInvSqrt2) { return {Resolution::one_bit, level}; }
};

/// a sign(Re x) + j a sign(Im x), with sign(0) = +1.
inline std::vector<cplx> one_bit_quantize(std::span<const cplx> x, double level) {
  if (!(level > 0.0)) throw ConfigError("one_bit_quantize: level must be > 0");
  std::vector<cplx> out(x.size());
  for (std::size_t n = 0; n < x.size(); ++n)
    out[n] = {x[n].real() >= 0.0 ? level : -level, x[n].imag() >= 0.0 ? level : -level};
  return out;
}

inline std::vector<cplx> convert(std::span<const cplx> x, const ConverterMode& mode) {
  if (mode.resolution == Resolution::infinite) return {x.begin(), x.end()};
  return one_bit_quantize(x, mode.level);
}

inline ComplexBasebandSignal convert(const ComplexBasebandSignal& x, const ConverterMode& mode) {
  return {convert(std::span<const cplx>(x.samples), mode), x.sample_rate};
}

}  // namespace onebit
