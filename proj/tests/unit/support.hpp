#pragma once

#include <random>

#include "thermoprobe/dot_ring.hpp"
#include "thermoprobe/onsager.hpp"
#include "thermoprobe/transport_kernel.hpp"

namespace testing_support {

using namespace thermoprobe;

// Symmetric part M Mᵀ + small diagonal shift, plus an antisymmetric part:
// a valid but otherwise generic Onsager matrix.
inline OnsagerMatrix random_onsager(std::mt19937_64& rng, OnsagerRank rank,
                                    double asymmetry = 0.3) {
  const int n = dimension(rank);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  OnsagerBlock m(n, n), a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      m(i, j) = u(rng);
      a(i, j) = u(rng);
    }
  OnsagerBlock s = m * m.transpose();
  for (int i = 0; i < n; ++i) s(i, i) += 0.1;
  const OnsagerBlock anti = asymmetry * (a - a.transpose());
  return OnsagerMatrix(rank, FieldSign::Plus, s + anti);
}

struct Pipeline {
  OnsagerMatrix full;
  VoltageProbeReduction vp;
  ButtikerReduction bt;
};

inline Pipeline dot_ring_pipeline(double phi, FieldSign field = FieldSign::Plus) {
  DotRingModel m = canonical_dot_ring(phi);
  m.field = field;
  OnsagerMatrix full = assemble_onsager4(dot_ring_transmission_set(m), kCanonicalTemperature,
                                         kCanonicalMu);
  VoltageProbeReduction vp = reduce_voltage_probe(full);
  ButtikerReduction bt = reduce_buttiker(vp.reduced);
  return {std::move(full), std::move(vp), std::move(bt)};
}

}  // namespace testing_support
