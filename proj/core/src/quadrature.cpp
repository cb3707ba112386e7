#include "thermoprobe/quadrature.hpp"

#include <cmath>

namespace thermoprobe {

double fermi(double energy, double temperature, double mu) {
  const double x = (energy - mu) / temperature;
  if (x > 0.0) {
    const double e = std::exp(-x);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(x));
}

double fermi_window(double energy, double temperature, double mu) {
  const double c = std::cosh(0.5 * (energy - mu) / temperature);
  return 1.0 / (4.0 * temperature * c * c);
}

double fermi_derivative_moment(int order, double temperature, double mu,
                               const std::function<double(double)>& transmission,
                               const QuadratureOptions& options) {
  if (order < 0 || order > 2) {
    throw Error(ErrorKind::Domain, "moment order must be 0, 1 or 2");
  }
  if (!(temperature > 0.0)) {
    throw Error(ErrorKind::Domain, "temperature must be positive");
  }
  auto integrand = [&](double e) {
    const double de = e - mu;
    const double tr = transmission(e);
    return std::array<double, 1>{fermi_window(e, temperature, mu) *
                                 std::pow(de, order) * tr};
  };
  const double half = options.window * temperature;
  return integrate<1>(integrand, mu - half, mu + half, options.abs_tol,
                      options.max_depth, options.initial_panels)
      .value[0];
}

}  // namespace thermoprobe
