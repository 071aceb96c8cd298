#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace landau {

// log y ~ log C - rate * s(t) on the upper envelope of a sampled series.
struct DecayFit {
  bool ok = false;
  double C = 0.0;
  double rate = 0.0;
  double gamma = 1.0;
  double residual = 0.0;  // RMS of the log residuals
  double t_begin = 0.0;
  double t_end = 0.0;
  int points = 0;
  std::string message;
};

struct FitOptions {
  double t_min = 0.0;
  double t_max = std::numeric_limits<double>::infinity();
  // Samples below floor_rel * max(y) are treated as unresolved and dropped.
  double floor_rel = 1e-10;
  // A fit is reported only when its residual is below this.
  double residual_threshold = 0.05;
};

// Indices i with y_i >= y_j for all j > i (right-running supremum touch points).
std::vector<std::size_t> envelope_points(const std::vector<double>& y);

DecayFit fit_decay_against(const std::vector<double>& t, const std::vector<double>& y,
                           const std::function<double(double)>& abscissa, const FitOptions& options);

// Best fit over gamma candidates with abscissa <k, kt>^gamma.
DecayFit decay_fit(const std::vector<double>& t, const std::vector<double>& y, double k_norm,
                   const std::vector<double>& gammas, const FitOptions& options = {});

// Abscissa t.
DecayFit exponential_fit(const std::vector<double>& t, const std::vector<double>& y, const FitOptions& options = {});

std::vector<double> default_gamma_grid();

}  // namespace landau
