#include "landau/fit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "landau/errors.hpp"

namespace landau {

std::vector<std::size_t> envelope_points(const std::vector<double>& y) {
  std::vector<std::size_t> out;
  double running = -std::numeric_limits<double>::infinity();
  for (std::size_t i = y.size(); i-- > 0;) {
    if (y[i] >= running) {
      out.push_back(i);
      running = y[i];
    }
  }
  std::reverse(out.begin(), out.end());
  return out;
}

DecayFit fit_decay_against(const std::vector<double>& t, const std::vector<double>& y,
                           const std::function<double(double)>& abscissa, const FitOptions& options) {
  if (t.size() != y.size()) throw ValidationError("decay fit: time and value series differ in length");
  DecayFit fit;
  double peak = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (t[i] >= options.t_min && t[i] <= options.t_max && std::isfinite(y[i])) peak = std::max(peak, y[i]);
  }
  if (!(peak > 0.0)) {
    fit.message = "no positive samples in the window";
    return fit;
  }
  std::vector<double> window_t, window_y;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (t[i] < options.t_min || t[i] > options.t_max) continue;
    if (!(y[i] > options.floor_rel * peak)) continue;
    window_t.push_back(t[i]);
    window_y.push_back(y[i]);
  }
  // Oscillating series: keep the envelope points that are local peaks.
  auto touch = envelope_points(window_y);
  std::vector<std::size_t> peaks;
  for (auto i : touch) {
    if (i > 0 && i + 1 < window_y.size() && window_y[i] >= window_y[i - 1] && window_y[i] >= window_y[i + 1]) {
      peaks.push_back(i);
    }
  }
  if (peaks.size() >= 3) touch = peaks;
  if (touch.size() < 3) {
    fit.message = "fewer than three envelope points";
    return fit;
  }
  std::vector<double> xs, ls;
  for (auto i : touch) {
    xs.push_back(abscissa(window_t[i]));
    ls.push_back(std::log(window_y[i]));
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, ml = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    ml += ls[i];
  }
  mx /= n;
  ml /= n;
  double sxx = 0.0, sxl = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxl += (xs[i] - mx) * (ls[i] - ml);
  }
  fit.t_begin = window_t[touch.front()];
  fit.t_end = window_t[touch.back()];
  fit.points = static_cast<int>(touch.size());
  if (!(sxx > 0.0)) {
    fit.message = "degenerate abscissa";
    return fit;
  }
  const double slope = sxl / sxx;
  const double intercept = ml - slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ls[i] - (intercept + slope * xs[i]);
    ss += r * r;
  }
  fit.rate = -slope;
  fit.C = std::exp(intercept);
  fit.residual = std::sqrt(ss / n);
  if (!(slope < 0.0)) {
    fit.message = "series is not decaying";
    return fit;
  }
  if (!(fit.residual < options.residual_threshold)) {
    std::ostringstream os;
    os << "residual " << fit.residual << " above threshold " << options.residual_threshold;
    fit.message = os.str();
    return fit;
  }
  fit.ok = true;
  return fit;
}

DecayFit decay_fit(const std::vector<double>& t, const std::vector<double>& y, double k_norm,
                   const std::vector<double>& gammas, const FitOptions& options) {
  if (gammas.empty()) throw ValidationError("decay fit: empty gamma grid");
  DecayFit best;
  bool have = false;
  for (double g : gammas) {
    if (!(g > 0.0 && g <= 1.0)) throw ValidationError("decay fit: gamma must lie in (0, 1]");
    auto abscissa = [&](double s) { return std::pow(1.0 + k_norm * k_norm * (1.0 + s * s), 0.5 * g); };
    DecayFit fit = fit_decay_against(t, y, abscissa, options);
    fit.gamma = g;
    const bool decaying = fit.points >= 3 && fit.rate > 0.0;
    if (!decaying) {
      if (!have) best = fit;
      continue;
    }
    if (!have || fit.residual < best.residual) {
      best = fit;
      have = true;
    }
  }
  return best;
}

DecayFit exponential_fit(const std::vector<double>& t, const std::vector<double>& y, const FitOptions& options) {
  DecayFit fit = fit_decay_against(t, y, [](double s) { return s; }, options);
  fit.gamma = 1.0;
  return fit;
}

std::vector<double> default_gamma_grid() {
  std::vector<double> g;
  for (int i = 4; i <= 20; ++i) g.push_back(0.05 * i);
  return g;
}

}  // namespace landau
