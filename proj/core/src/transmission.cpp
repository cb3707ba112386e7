#include "thermoprobe/transmission.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "thermoprobe/errors.hpp"

namespace thermoprobe {

double TransmissionMatrix::row_sum(Terminal a) const {
  double s = 0.0;
  for (Terminal b : kTerminals) {
    if (b != a) s += (*this)(a, b);
  }
  return s;
}

double TransmissionMatrix::column_sum(Terminal a) const {
  double s = 0.0;
  for (Terminal b : kTerminals) {
    if (b != a) s += (*this)(b, a);
  }
  return s;
}

TransmissionSet::TransmissionSet(Evaluator evaluator, FieldSign field,
                                 double channel_count)
    : TransmissionSet(std::make_shared<const Evaluator>(std::move(evaluator)),
                      field, channel_count) {}

TransmissionSet::TransmissionSet(std::shared_ptr<const Evaluator> evaluator,
                                 FieldSign field, double channel_count)
    : evaluator_(std::move(evaluator)), field_(field), channel_count_(channel_count) {
  if (!evaluator_ || !*evaluator_) {
    throw ValidationError("transmission", "empty evaluator");
  }
  if (!(channel_count_ > 0.0)) {
    throw ValidationError("transmission.channel_count", "must be positive");
  }
}

TransmissionSet TransmissionSet::constant(double tau) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    throw ValidationError("transmission.tau", "must be finite and non-negative");
  }
  return TransmissionSet(
      [tau](double, FieldSign) {
        TransmissionMatrix m;
        for (Terminal a : kTerminals) {
          for (Terminal b : kTerminals) {
            if (a != b) m(a, b) = tau;
          }
        }
        return m;
      },
      FieldSign::Plus, std::max(1.0, std::ceil(tau)));
}

TransmissionSet TransmissionSet::field_reversed() const {
  return TransmissionSet(evaluator_, reversed(field_), channel_count_);
}

TransmissionInvariantReport TransmissionSet::check_invariants(
    std::span<const double> energies) const {
  TransmissionInvariantReport report;
  report.min_value = std::numeric_limits<double>::infinity();
  report.max_value = -std::numeric_limits<double>::infinity();
  const TransmissionSet reverse = field_reversed();
  for (double e : energies) {
    const TransmissionMatrix fwd = at(e);
    const TransmissionMatrix rev = reverse.at(e);
    for (Terminal a : kTerminals) {
      report.sum_rule_violation = std::max(
          report.sum_rule_violation, std::abs(fwd.row_sum(a) - fwd.column_sum(a)));
      for (Terminal b : kTerminals) {
        if (a == b) continue;
        report.min_value = std::min(report.min_value, fwd(a, b));
        report.max_value = std::max(report.max_value, fwd(a, b));
        report.reciprocity_violation =
            std::max(report.reciprocity_violation, std::abs(fwd(a, b) - rev(b, a)));
      }
    }
  }
  report.nonnegative = report.min_value >= 0.0;
  return report;
}

}  // namespace thermoprobe
