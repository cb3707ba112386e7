#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>

#include "thermoprobe/errors.hpp"

namespace thermoprobe {

struct QuadratureOptions {
  double window = 40.0;  // half-width of the integration window in k_B T
  double abs_tol = 1e-10;
  int max_depth = 48;
  int initial_panels = 32;
};

template <std::size_t N>
struct QuadratureResult {
  std::array<double, N> value{};
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

// Fermi-Dirac occupation and the positive kernel -df/dE (k_B = 1).
double fermi(double energy, double temperature, double mu);
double fermi_window(double energy, double temperature, double mu);

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <std::size_t N, class F>
std::array<double, N> evaluate_checked(F& f, double x, std::size_t& count) {
  std::array<double, N> v = f(x);
  ++count;
  for (double c : v) {
    if (!std::isfinite(c)) {
      throw QuadratureError(
          x, "non-finite integrand at energy " + std::to_string(x));
    }
  }
  return v;
}

template <std::size_t N, class F>
void gk15_panel(F& f, double a, double b, std::array<double, N>& kronrod,
                double& error, std::size_t& count) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<double, N> gauss{};
  kronrod = {};

  const auto mid = evaluate_checked<N>(f, center, count);
  for (std::size_t i = 0; i < N; ++i) {
    kronrod[i] = mid[i] * kKronrodWeights[7];
    gauss[i] = mid[i] * kGaussWeights[3];
  }
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const auto lo = evaluate_checked<N>(f, center - dx, count);
    const auto hi = evaluate_checked<N>(f, center + dx, count);
    for (std::size_t i = 0; i < N; ++i) {
      const double s = lo[i] + hi[i];
      kronrod[i] += kKronrodWeights[j] * s;
      if (j % 2 == 1) gauss[i] += kGaussWeights[j / 2] * s;
    }
  }
  error = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    kronrod[i] *= half;
    gauss[i] *= half;
    error = std::max(error, std::abs(kronrod[i] - gauss[i]));
  }
}

template <std::size_t N, class F>
void refine(F& f, double a, double b, double tol, int depth,
            QuadratureResult<N>& out) {
  std::array<double, N> value;
  double error = 0.0;
  gk15_panel<N>(f, a, b, value, error, out.evaluations);
  if (error <= tol || depth <= 0) {
    for (std::size_t i = 0; i < N; ++i) out.value[i] += value[i];
    out.error_estimate += error;
    return;
  }
  const double mid = 0.5 * (a + b);
  refine<N>(f, a, mid, 0.5 * tol, depth - 1, out);
  refine<N>(f, mid, b, 0.5 * tol, depth - 1, out);
}

}  // namespace detail

// Adaptive Gauss-Kronrod integration of a vector-valued integrand on [a, b].
// The absolute tolerance applies to every component; it is shared between
// the initial panels in proportion to their width.
template <std::size_t N, class F>
QuadratureResult<N> integrate(F&& f, double a, double b, double abs_tol,
                              int max_depth = 48, int initial_panels = 32) {
  QuadratureResult<N> out;
  const int panels = std::max(1, initial_panels);
  const double width = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double hi = (p + 1 == panels) ? b : lo + width;
    detail::refine<N>(f, lo, hi, abs_tol / panels, max_depth, out);
  }
  return out;
}

// ∫ (-df/dE) (E - mu)^n T(E) dE over mu ± window * temperature.
double fermi_derivative_moment(int order, double temperature, double mu,
                               const std::function<double(double)>& transmission,
                               const QuadratureOptions& options = {});

}  // namespace thermoprobe
