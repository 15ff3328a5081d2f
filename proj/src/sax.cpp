#include "motifvar/sax.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "motifvar/error.hpp"

namespace motifvar {

void SaxParams::validate() const {
  if (alphabet_size < 2 || alphabet_size > 10) throw config_error("alphabet size must be in [2, 10]");
  if (motif_len < 2) throw config_error("motif length must be at least 2");
  if (!(noise_floor_watts >= 0.0)) throw config_error("noise floor must be non-negative");
}

MotifWord::MotifWord(std::string symbols, int alphabet_size) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw config_error("empty motif word");
  for (char c : symbols_) {
    if (c < 'a' || c >= 'a' + alphabet_size) throw config_error("motif word '" + symbols_ + "' outside alphabet");
  }
}

std::optional<DeltaSeries> difference(const PeakDayWindow& window) {
  if (!window.valid || window.readings.size() < 2) return std::nullopt;
  DeltaSeries out{window.household_id, window.date, {}};
  out.deltas.reserve(window.readings.size() - 1);
  for (std::size_t i = 0; i + 1 < window.readings.size(); ++i)
    out.deltas.push_back(window.readings[i + 1] - window.readings[i]);
  return out;
}

// Acklam's rational approximation followed by one Halley step against erfc,
// which brings the result to full double precision.
double normal_quantile(double p) {
  if (p <= 0.0) return -HUGE_VAL;
  if (p >= 1.0) return HUGE_VAL;
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                 1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                 6.680131188771972e+01,  -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                 -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                 3.754408661907416e+00};
  constexpr double low = 0.02425;
  double x = 0.0;
  if (p < low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(x * x / 2.0);
  return x - u / (1.0 + x * u / 2.0);
}

std::vector<double> breakpoints(int alphabet_size) {
  if (alphabet_size < 2 || alphabet_size > 10) throw config_error("alphabet size must be in [2, 10]");
  std::vector<double> cuts(static_cast<std::size_t>(alphabet_size - 1));
  for (int i = 1; i < alphabet_size; ++i) {
    // Exact zero at the median, and exact mirror symmetry elsewhere.
    if (2 * i == alphabet_size) {
      cuts[static_cast<std::size_t>(i - 1)] = 0.0;
    } else if (2 * i > alphabet_size) {
      cuts[static_cast<std::size_t>(i - 1)] = -cuts[static_cast<std::size_t>(alphabet_size - i - 1)];
    } else {
      cuts[static_cast<std::size_t>(i - 1)] = normal_quantile(static_cast<double>(i) / alphabet_size);
    }
  }
  return cuts;
}

std::optional<MotifWord> symbolize_window(std::span<const double> values, std::span<const double> cuts,
                                          double noise_floor) {
  if (values.empty()) return std::nullopt;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (*hi - *lo < noise_floor) return std::nullopt;

  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / n);
  if (!(sd > 0.0)) return std::nullopt;

  std::string symbols(values.size(), 'a');
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double z = (values[i] - mean) / sd;
    const auto bin = std::lower_bound(cuts.begin(), cuts.end(), z) - cuts.begin();
    symbols[i] = static_cast<char>('a' + bin);
  }
  return MotifWord(std::move(symbols), static_cast<int>(cuts.size()) + 1);
}

int window_count(std::size_t delta_count, const SaxParams& params) {
  const int all = static_cast<int>(delta_count) - params.motif_len + 1;
  if (all <= 0) return 0;
  return params.include_final_window ? all : all - 1;
}

std::vector<WindowOccurrence> window_words(const DeltaSeries& deltas, const SaxParams& params) {
  params.validate();
  const auto cuts = breakpoints(params.alphabet_size);
  const std::span<const double> all(deltas.deltas);
  const int windows = window_count(deltas.deltas.size(), params);
  const auto len = static_cast<std::size_t>(params.motif_len);
  std::vector<WindowOccurrence> out;
  for (int start = 0; start < windows; ++start) {
    const auto window = all.subspan(static_cast<std::size_t>(start), len);
    auto word = symbolize_window(window, cuts, params.noise_floor_watts);
    if (!word) continue;
    const auto [lo, hi] = std::minmax_element(window.begin(), window.end());
    out.push_back({deltas.household_id, deltas.date, start, start * kSlotMinutes, std::move(*word), *hi - *lo});
  }
  return out;
}

}  // namespace motifvar
