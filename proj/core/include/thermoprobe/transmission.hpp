#pragma once

#include <array>
#include <functional>
#include <memory>
#include <span>

#include "thermoprobe/transport_types.hpp"

namespace thermoprobe {

// T_αβ(E) for every ordered terminal pair, indexed the way it enters
// J_α = Σ_β T_αβ (f_α − f_β). Diagonal entries are ignored.
struct TransmissionMatrix {
  std::array<std::array<double, 3>, 3> values{};

  double operator()(Terminal a, Terminal b) const {
    return values[index(a)][index(b)];
  }
  double& operator()(Terminal a, Terminal b) {
    return values[index(a)][index(b)];
  }
  // Σ_{β≠α} T_αβ
  double row_sum(Terminal a) const;
  // Σ_{β≠α} T_βα
  double column_sum(Terminal a) const;
};

struct TransmissionInvariantReport {
  double min_value = 0.0;
  double max_value = 0.0;
  double sum_rule_violation = 0.0;
  double reciprocity_violation = 0.0;
  bool nonnegative = true;

  bool ok(double tolerance) const {
    return nonnegative && sum_rule_violation <= tolerance &&
           reciprocity_violation <= tolerance;
  }
};

// Energy-resolved transmissions at one field orientation, with access to the
// field-reversed companion through the same evaluator.
class TransmissionSet {
 public:
  using Evaluator = std::function<TransmissionMatrix(double energy, FieldSign field)>;

  explicit TransmissionSet(Evaluator evaluator, FieldSign field = FieldSign::Plus,
                           double channel_count = 1.0);

  // Same transmission for every ordered pair, independent of field and energy.
  static TransmissionSet constant(double tau);

  TransmissionMatrix at(double energy) const { return (*evaluator_)(energy, field_); }
  double operator()(Terminal a, Terminal b, double energy) const {
    return at(energy)(a, b);
  }

  FieldSign field() const noexcept { return field_; }
  double channel_count() const noexcept { return channel_count_; }
  TransmissionSet field_reversed() const;

  // Sum rule and T_αβ(+B) = T_βα(−B) sampled on the given energies.
  TransmissionInvariantReport check_invariants(std::span<const double> energies) const;

 private:
  TransmissionSet(std::shared_ptr<const Evaluator> evaluator, FieldSign field,
                  double channel_count);

  std::shared_ptr<const Evaluator> evaluator_;
  FieldSign field_;
  double channel_count_;
};

}  // namespace thermoprobe
