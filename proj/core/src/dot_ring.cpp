#include "thermoprobe/dot_ring.hpp"

#include <cmath>
#include <complex>

#include "thermoprobe/errors.hpp"

namespace thermoprobe {
namespace {

using cplx = std::complex<double>;
using Mat3 = std::array<std::array<cplx, 3>, 3>;

double norm1(const Mat3& m) {
  double best = 0.0;
  for (int j = 0; j < 3; ++j) {
    double col = 0.0;
    for (int i = 0; i < 3; ++i) col += std::abs(m[i][j]);
    best = std::max(best, col);
  }
  return best;
}

// Adjugate inverse. The cofactors of a transposed matrix are the transposed
// cofactors term by term, so reciprocity survives in floating point.
Mat3 invert(const Mat3& m) {
  Mat3 cof;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const int r0 = (i + 1) % 3, r1 = (i + 2) % 3;
      const int c0 = (j + 1) % 3, c1 = (j + 2) % 3;
      cof[i][j] = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    }
  }
  const cplx det = m[0][0] * cof[0][0] + m[0][1] * cof[0][1] + m[0][2] * cof[0][2];
  if (det == cplx(0.0, 0.0)) {
    throw Error(ErrorKind::IllConditioned, "singular ring Green function");
  }
  Mat3 inv;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) inv[i][j] = cof[j][i] / det;
  }
  return inv;
}

}  // namespace

void DotRingModel::validate() const {
  for (int a = 0; a < 3; ++a) {
    if (!(couplings[a] > 0.0) || !std::isfinite(couplings[a])) {
      throw ValidationError("model.couplings", "every coupling must be positive");
    }
    if (!std::isfinite(site_energies[a])) {
      throw ValidationError("model.site_energies", "must be finite");
    }
  }
  if (!std::isfinite(hopping)) throw ValidationError("model.hopping", "must be finite");
  if (!std::isfinite(phi)) throw ValidationError("model.phi", "must be finite");
}

DotRingModel DotRingModel::field_reversed() const {
  DotRingModel m = *this;
  m.field = reversed(field);
  return m;
}

DotRingModel canonical_dot_ring(double phi) {
  DotRingModel m;
  m.site_energies = {1.0, 1.0, 1.0};
  m.couplings = {0.5, 0.5, 0.5};
  m.hopping = 1.0;
  m.phi = phi;
  return m;
}

TransmissionMatrix dot_ring_transmission(const DotRingModel& model, double energy) {
  cplx bond = std::polar(model.hopping, model.phi / 3.0);
  if (model.field == FieldSign::Minus) bond = std::conj(bond);

  // M = E − H + (i/2) Σ Γ_α
  Mat3 m{};
  for (int a = 0; a < 3; ++a) {
    m[a][a] = cplx(energy - model.site_energies[a], 0.5 * model.couplings[a]);
  }
  // H(next, current) = bond along L→P→R→L.
  for (int a = 0; a < 3; ++a) {
    const int next = (a + 1) % 3;
    m[next][a] = -bond;
    m[a][next] = -std::conj(bond);
  }

  const Mat3 g = invert(m);
  if (norm1(m) * norm1(g) > kMaxConditionNumber) {
    throw Error(ErrorKind::IllConditioned, "ring Green function is ill-conditioned at E=" +
                                               std::to_string(energy));
  }

  TransmissionMatrix t;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      if (a == b) continue;
      t.values[a][b] = model.couplings[a] * model.couplings[b] * std::norm(g[a][b]);
    }
  }
  return t;
}

TransmissionSet dot_ring_transmission_set(const DotRingModel& model) {
  model.validate();
  DotRingModel base = model;
  base.field = FieldSign::Plus;
  return TransmissionSet(
      [base](double energy, FieldSign field) {
        DotRingModel m = base;
        m.field = field;
        return dot_ring_transmission(m, energy);
      },
      model.field, 1.0);
}

}  // namespace thermoprobe
