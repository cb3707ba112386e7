#pragma once

#include <array>

#include "thermoprobe/transmission.hpp"
#include "thermoprobe/transport_types.hpp"

namespace thermoprobe {

// Three single-level dots on a ring, dot α coupled to reservoir α in the
// wide-band limit. Each bond (L→P, P→R, R→L) carries t' e^{iφ/3}.
struct DotRingModel {
  std::array<double, 3> site_energies{1.0, 1.0, 1.0};  // E_α − μ
  std::array<double, 3> couplings{0.5, 0.5, 0.5};      // γ_α
  double hopping = 1.0;                                // t'
  double phi = 0.0;                                    // 2πΦ/Φ₀
  FieldSign field = FieldSign::Plus;

  void validate() const;
  // Loop phase actually threaded through the ring: φ at +B, −φ at −B.
  double loop_phase() const { return field == FieldSign::Plus ? phi : -phi; }
  DotRingModel field_reversed() const;
};

// Site energies 1.0, couplings 0.5, hopping 1.0 (k_B T = 1, μ = 0).
DotRingModel canonical_dot_ring(double phi = 0.0);

inline constexpr double kCanonicalTemperature = 1.0;
inline constexpr double kCanonicalMu = 0.0;
inline constexpr double kMaxConditionNumber = 1e14;

// All six ordered-pair transmissions T_αβ = Tr[Γ_α G Γ_β G†] at energy E
// (energy measured from μ).
TransmissionMatrix dot_ring_transmission(const DotRingModel& model, double energy);

// Evaluator that honours the requested field sign.
TransmissionSet dot_ring_transmission_set(const DotRingModel& model);

}  // namespace thermoprobe
