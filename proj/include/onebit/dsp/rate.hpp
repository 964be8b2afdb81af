#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "onebit/dsp/signal.hpp"
#include "onebit/error.hpp"

namespace onebit {

/// Inserts L-1 zeros after every symbol; output rate L * B.
inline ComplexBasebandSignal upsample_zero_insert(const SymbolStream& symbols, int factor) {
  if (factor < 1) throw ConfigError("upsample factor must be >= 1");
  const auto l = static_cast<std::size_t>(factor);
  ComplexBasebandSignal out;
  out.sample_rate = symbols.baud_rate * factor;
  out.samples.assign(symbols.size() * l, cplx{});
  for (std::size_t n = 0; n < symbols.size(); ++n) out.samples[n * l] = symbols.symbols[n];
  return out;
}

/// Zero-order hold: each sample repeated `factor` times.
template <class T>
std::vector<T> zoh_hold(std::span<const T> x, int factor) {
  if (factor < 1) throw ConfigError("zoh factor must be >= 1");
  const auto m = static_cast<std::size_t>(factor);
  std::vector<T> out;
  out.reserve(x.size() * m);
  for (const auto& v : x) out.insert(out.end(), m, v);
  return out;
}

inline ComplexBasebandSignal zoh_hold(const ComplexBasebandSignal& x, int factor) {
  return {zoh_hold(std::span<const cplx>(x.samples), factor), x.sample_rate * factor};
}

/// Keeps samples phase, phase + M, phase + 2M, ...
template <class T>
std::vector<T> downsample(std::span<const T> x, int factor, int phase) {
  if (factor < 1) throw ConfigError("downsample factor must be >= 1");
  if (phase < 0 || phase >= factor) throw ConfigError("downsample phase must satisfy 0 <= phase < factor");
  std::vector<T> out;
  out.reserve(x.size() / static_cast<std::size_t>(factor) + 1);
  for (auto i = static_cast<std::size_t>(phase); i < x.size(); i += static_cast<std::size_t>(factor)) out.push_back(x[i]);
  return out;
}

inline ComplexBasebandSignal downsample(const ComplexBasebandSignal& x, int factor, int phase) {
  return {downsample(std::span<const cplx>(x.samples), factor, phase), x.sample_rate / factor};
}

}  // namespace onebit
