#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "support.hpp"
#include "thermoprobe/errors.hpp"
#include "thermoprobe/transport_kernel.hpp"

using namespace thermoprobe;
using namespace testing_support;
using enum Terminal;

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

// Transmission with an energy-dependent, field-free profile (no particle-hole
// symmetry), so every Onsager entry is nonzero.
TransmissionSet lorentzian_set() {
  return TransmissionSet([](double e, FieldSign) {
    TransmissionMatrix m;
    const double lp = 0.25 / ((e - 0.8) * (e - 0.8) + 0.25);
    const double lr = 0.16 / ((e - 1.3) * (e - 1.3) + 0.16);
    const double pr = 0.3 / ((e + 0.2) * (e + 0.2) + 0.5);
    m(L, P) = m(P, L) = lp;
    m(L, R) = m(R, L) = lr;
    m(P, R) = m(R, P) = pr;
    return m;
  });
}

std::array<double, 4> flux4(const CurrentVector& c) {
  return {c.particle_of(L), c.heat_of(L), c.particle_of(P), c.heat_of(P)};
}

}  // namespace

TEST(Assemble, ConstantTransmission) {
  const double tau = 0.37;
  const OnsagerMatrix l = assemble_onsager4(TransmissionSet::constant(tau), 1.0, 0.0);
  EXPECT_EQ(l.rank(), OnsagerRank::Full4);
  EXPECT_NEAR(l.entry(1, 1), 2.0 * tau, 1e-12);
  EXPECT_NEAR(l.entry(1, 2), 0.0, 1e-12);
  EXPECT_NEAR(l.entry(2, 2), 2.0 * tau * kPi2 / 3.0, 1e-10);
  EXPECT_NEAR(l.entry(1, 3), -tau, 1e-12);
  EXPECT_NEAR(l.entry(3, 3), 2.0 * tau, 1e-12);
  EXPECT_NEAR(l.entry(4, 4), 2.0 * tau * kPi2 / 3.0, 1e-10);
  EXPECT_NEAR(l.entry(2, 4), -tau * kPi2 / 3.0, 1e-10);
}

TEST(Assemble, StatedEqualitiesHold) {
  const OnsagerMatrix l = dot_ring_pipeline(1.3).full;
  EXPECT_EQ(l.entry(2, 1), l.entry(1, 2));
  EXPECT_EQ(l.entry(2, 3), l.entry(1, 4));
  EXPECT_EQ(l.entry(4, 1), l.entry(3, 2));
  EXPECT_EQ(l.entry(4, 3), l.entry(3, 4));
}

TEST(Assemble, SymmetricWithoutField) {
  const OnsagerMatrix l = dot_ring_pipeline(0.0).full;
  EXPECT_LE(l.max_asymmetry(), 1e-9);
  const OnsagerMatrix lz = assemble_onsager4(lorentzian_set(), 1.0, 0.0);
  EXPECT_LE(lz.max_asymmetry(), 1e-9);
}

TEST(Assemble, OnsagerCasimir) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  std::vector<double> phis{std::numbers::pi / 2};
  for (int i = 0; i < 20; ++i) phis.push_back(u(rng));
  for (double phi : phis) {
    const OnsagerMatrix plus = dot_ring_pipeline(phi, FieldSign::Plus).full;
    const OnsagerMatrix minus = dot_ring_pipeline(phi, FieldSign::Minus).full;
    EXPECT_EQ(minus.field(), FieldSign::Minus);
    EXPECT_LE((plus.entries() - minus.entries().transpose()).cwiseAbs().maxCoeff(), 1e-9) << phi;
  }
}

TEST(Assemble, FluxProducesAsymmetry) {
  EXPECT_GT(dot_ring_pipeline(std::numbers::pi / 2).full.max_asymmetry(), 1e-4);
}

TEST(Assemble, SecondLaw) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (double phi : {0.0, 0.7, 2.1, 4.4}) {
    const Pipeline p = dot_ring_pipeline(phi);
    EXPECT_TRUE(p.full.has_nonnegative_diagonal());
    EXPECT_GE(p.full.min_symmetric_eigenvalue(), -1e-12);
    for (int k = 0; k < 100; ++k) {
      OnsagerVector x4(4), x3(3), x2(2);
      x4 << u(rng), u(rng), u(rng), u(rng);
      x3 << u(rng), u(rng), u(rng);
      x2 << u(rng), u(rng);
      EXPECT_GE(p.full.entropy_production(x4), -1e-12);
      EXPECT_GE(p.vp.reduced.entropy_production(x3), -1e-12);
      EXPECT_GE(p.bt.reduced.entropy_production(x2), -1e-12);
    }
  }
}

TEST(Landauer, EquilibriumCarriesNothing) {
  ReservoirState r;
  const CurrentVector c = landauer_currents(dot_ring_transmission_set(canonical_dot_ring(1.0)), r);
  for (int a = 0; a < 3; ++a) {
    EXPECT_NEAR(c.particle[a], 0.0, 1e-15);
    EXPECT_NEAR(c.heat[a], 0.0, 1e-15);
  }
}

TEST(Landauer, ConservationAtRandomOffsets) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-0.05, 0.05);
  const TransmissionSet s = dot_ring_transmission_set(canonical_dot_ring(2.0));
  for (int k = 0; k < 20; ++k) {
    ReservoirState r;
    r.delta_t_left = u(rng);
    r.delta_mu_left = u(rng);
    r.delta_t_probe = u(rng);
    r.delta_mu_probe = u(rng);
    const CurrentVector c = landauer_currents(s, r);
    EXPECT_NEAR(c.particle_sum(), 0.0, 1e-10);
    EXPECT_NEAR(c.energy_sum(), 0.0, 1e-10);
    for (Terminal t : kTerminals) {
      EXPECT_NEAR(c.heat_of(t), c.energy_of(t) - r.mu_of(t) * c.particle_of(t), 1e-14);
    }
  }
}

TEST(Landauer, ConstantTransmissionSmallThermalBias) {
  // Particle-hole symmetric: both the linear and the nonlinear J_L^N vanish.
  const TransmissionSet s = TransmissionSet::constant(0.4);
  ReservoirState r;
  r.delta_t_left = 1e-4;
  const CurrentVector c = landauer_currents(s, r);
  const OnsagerMatrix l = assemble_onsager4(s, 1.0, 0.0);
  const ForceVector f = ForceVector::from_reservoirs(r);
  const double lin = l.entry(1, 1) * f.voltage_left + l.entry(1, 2) * f.thermal_left;
  EXPECT_NEAR(c.particle_of(L), lin, 1e-12);
  EXPECT_NEAR(c.particle_of(L), 0.0, 1e-12);
}

// Each column of L4 from centred differences of the nonlinear currents.
TEST(Landauer, LinearizationReproducesOnsagerColumns) {
  QuadratureOptions tight;
  tight.abs_tol = 1e-14;
  for (const TransmissionSet& s :
       {lorentzian_set(), dot_ring_transmission_set(canonical_dot_ring(std::numbers::pi / 3))}) {
    const OnsagerMatrix l = assemble_onsager4(s, 1.0, 0.0, tight);
    const double h = 1e-4;
    for (int col = 0; col < 4; ++col) {
      auto offsets = [&](double sign) {
        ReservoirState r;
        const double v = sign * h;
        if (col == 0) r.delta_mu_left = v;
        if (col == 1) r.delta_t_left = v;
        if (col == 2) r.delta_mu_probe = v;
        if (col == 3) r.delta_t_probe = v;
        return r;
      };
      const auto jp = flux4(landauer_currents(s, offsets(+1.0), tight));
      const auto jm = flux4(landauer_currents(s, offsets(-1.0), tight));
      const double force = h;  // T = 1: X^V = Δμ/T, X^T = ΔT/T²
      for (int row = 0; row < 4; ++row) {
        const double numeric = (jp[row] - jm[row]) / (2.0 * force);
        const double exact = l.entry(row + 1, col + 1);
        EXPECT_NEAR(numeric, exact, 1e-6 * std::max(std::abs(exact), 1e-3))
            << "row " << row << " col " << col;
      }
    }
  }
}

TEST(ReduceProbe, DecoupledProbeLeavesBlock) {
  OnsagerBlock b(4, 4);
  b << 1.0, 0.2, 0.0, 0.3,
       0.2, 2.0, 0.0, 0.0,
       0.0, 0.0, 1.5, 0.0,
       0.1, 0.0, 0.4, 3.0;
  const auto vp = reduce_voltage_probe(OnsagerMatrix(OnsagerRank::Full4, FieldSign::Plus, b));
  EXPECT_EQ(vp.reduced.rank(), OnsagerRank::VoltageProbe3);
  EXPECT_DOUBLE_EQ(vp.reduced.entry(1, 1), 1.0);
  EXPECT_DOUBLE_EQ(vp.reduced.entry(1, 2), 0.2);
  EXPECT_DOUBLE_EQ(vp.reduced.entry(2, 1), 0.2);
  EXPECT_DOUBLE_EQ(vp.reduced.entry(2, 2), 2.0);
}

TEST(ReduceProbe, Eq1Schur) {
  std::mt19937_64 rng(3);
  const OnsagerMatrix l = random_onsager(rng, OnsagerRank::Full4);
  const auto vp = reduce_voltage_probe(l);
  auto L = [&](int i, int j) { return l.entry(i, j); };
  EXPECT_NEAR(vp.reduced.entry(1, 1), (L(3, 3) * L(1, 1) - L(1, 3) * L(3, 1)) / L(3, 3), 1e-14);
  EXPECT_NEAR(vp.reduced.entry(3, 3), (L(3, 3) * L(4, 4) - L(3, 4) * L(4, 3)) / L(3, 3), 1e-14);
  EXPECT_NEAR(vp.reduced.entry(2, 3), (L(2, 4) * L(3, 3) - L(2, 3) * L(3, 4)) / L(3, 3), 1e-14);
}

TEST(ReduceProbe, CurrentsAgreeWithEliminatedForce) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const OnsagerMatrix& l : {assemble_onsager4(TransmissionSet::constant(0.3), 1.0, 0.0),
                                 dot_ring_pipeline(0.9).full,
                                 random_onsager(rng, OnsagerRank::Full4)}) {
    const auto vp = reduce_voltage_probe(l);
    for (int k = 0; k < 50; ++k) {
      const double xv = u(rng), xt = u(rng), xpt = u(rng);
      OnsagerVector f4(4), f3(3);
      f4 << xv, xt, vp.probe_voltage_for(xv, xt, xpt), xpt;
      f3 << xv, xt, xpt;
      const OnsagerVector j4 = l.fluxes(f4), j3 = vp.reduced.fluxes(f3);
      EXPECT_NEAR(j4(2), 0.0, 1e-12);
      EXPECT_NEAR(j4(0), j3(0), 1e-12);
      EXPECT_NEAR(j4(1), j3(1), 1e-12);
      EXPECT_NEAR(j4(3), j3(2), 1e-12);
    }
  }
}

TEST(ReduceProbe, DiagonalStaysNonnegative) {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 50; ++k) {
    const auto vp = reduce_voltage_probe(random_onsager(rng, OnsagerRank::Full4));
    EXPECT_TRUE(vp.reduced.has_nonnegative_diagonal(1e-14));
  }
}

TEST(ReduceProbe, SingularPivot) {
  OnsagerBlock b = OnsagerBlock::Identity(4, 4);
  b(2, 2) = 0.0;
  try {
    reduce_voltage_probe(OnsagerMatrix(OnsagerRank::Full4, FieldSign::Plus, b));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularElimination);
  }
}

TEST(ReduceProbe, RejectsWrongRank) {
  std::mt19937_64 rng(1);
  EXPECT_THROW(reduce_voltage_probe(random_onsager(rng, OnsagerRank::VoltageProbe3)), Error);
  EXPECT_THROW(reduce_buttiker(random_onsager(rng, OnsagerRank::Full4)), Error);
}

TEST(ReduceButtiker, BlockDiagonalPassesThrough) {
  OnsagerBlock b(3, 3);
  b << 1.0, 0.3, 0.0, 0.1, 2.0, 0.0, 0.0, 0.0, 4.0;
  const auto bt = reduce_buttiker(OnsagerMatrix(OnsagerRank::VoltageProbe3, FieldSign::Plus, b));
  EXPECT_EQ(bt.reduced.rank(), OnsagerRank::Buttiker2);
  EXPECT_DOUBLE_EQ(bt.reduced.entry(1, 1), 1.0);
  EXPECT_DOUBLE_EQ(bt.reduced.entry(1, 2), 0.3);
  EXPECT_DOUBLE_EQ(bt.reduced.entry(2, 1), 0.1);
  EXPECT_DOUBLE_EQ(bt.reduced.entry(2, 2), 2.0);
}

TEST(ReduceButtiker, SymmetryPreserved) {
  std::mt19937_64 rng(8);
  const auto bt = reduce_buttiker(random_onsager(rng, OnsagerRank::VoltageProbe3, 0.0));
  EXPECT_NEAR(bt.reduced.entry(1, 2), bt.reduced.entry(2, 1), 1e-14);
}

TEST(ReduceButtiker, FieldReversal) {
  const Pipeline plus = dot_ring_pipeline(std::numbers::pi / 2, FieldSign::Plus);
  const Pipeline minus = dot_ring_pipeline(std::numbers::pi / 2, FieldSign::Minus);
  EXPECT_NEAR(plus.bt.reduced.entry(1, 2), minus.bt.reduced.entry(2, 1), 1e-9);
  EXPECT_NEAR(plus.vp.reduced.entry(1, 3), minus.vp.reduced.entry(3, 1), 1e-9);
}

TEST(ReduceButtiker, CurrentsAgree) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Pipeline p = dot_ring_pipeline(2.5);
  for (int k = 0; k < 50; ++k) {
    const double xv = u(rng), xt = u(rng);
    OnsagerVector f3(3), f2(2);
    f3 << xv, xt, p.bt.probe_thermal_for(xv, xt);
    f2 << xv, xt;
    const OnsagerVector j3 = p.vp.reduced.fluxes(f3), j2 = p.bt.reduced.fluxes(f2);
    EXPECT_NEAR(j3(2), 0.0, 1e-12);
    EXPECT_NEAR(j3(0), j2(0), 1e-12);
    EXPECT_NEAR(j3(1), j2(1), 1e-12);
  }
}

TEST(Bounds, DiagonalMatrixPasses) {
  OnsagerBlock b = OnsagerBlock::Zero(3, 3);
  b(0, 0) = 1.0;
  b(1, 1) = 2.0;
  b(2, 2) = 0.5;
  const OnsagerMatrix l(OnsagerRank::VoltageProbe3, FieldSign::Plus, b);
  for (double xi : {-5.0, -0.3, 0.0, 1.0, 4.0}) {
    const BoundReport r = check_bounds(l, xi);
    EXPECT_TRUE(r.all_pass());
    for (double v : r.residuals) EXPECT_GE(v, 0.0);
  }
}

TEST(Bounds, EffectiveMatrix) {
  std::mt19937_64 rng(4);
  const OnsagerMatrix l = random_onsager(rng, OnsagerRank::VoltageProbe3);
  const double xi = 0.7;
  const BoundReport r = check_bounds(l, xi);
  auto L = [&](int i, int j) { return l.entry(i, j); };
  EXPECT_DOUBLE_EQ(r.l11, L(1, 1));
  EXPECT_NEAR(r.l12, L(1, 2) + L(1, 3) * xi, 1e-15);
  EXPECT_NEAR(r.l21, L(2, 1) + L(3, 1) * xi, 1e-15);
  EXPECT_NEAR(r.l22, L(2, 2) + L(3, 3) * xi * xi + (L(2, 3) + L(3, 2)) * xi, 1e-14);
  EXPECT_NEAR(r.residuals[2],
              r.l11 * r.l22 + r.l12 * r.l21 - (r.l12 * r.l12 - r.l21 * r.l21), 1e-14);
}

TEST(Bounds, DotRingSweepPasses) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> xi(-5.0, 5.0), phi(0.0, 2.0 * std::numbers::pi);
  for (int k = 0; k < 100; ++k) {
    const Pipeline p = dot_ring_pipeline(phi(rng));
    EXPECT_TRUE(check_bounds(p.vp.reduced, xi(rng)).all_pass());
    EXPECT_TRUE(check_buttiker_bounds(p.bt.reduced).all_pass());
  }
}

TEST(Bounds, ViolationIsReported) {
  OnsagerBlock b(3, 3);
  b << 1.0, 5.0, 0.0, -5.0, 1.0, 0.0, 0.0, 0.0, 1.0;
  const BoundReport r = check_bounds(OnsagerMatrix(OnsagerRank::VoltageProbe3, FieldSign::Plus, b), 0.0);
  EXPECT_TRUE(r.pass[0]);
  EXPECT_TRUE(r.pass[1]);
  // 1 − 25 − (25 − 25) < 0
  EXPECT_FALSE(r.pass[2]);
  EXPECT_FALSE(r.all_pass());
}

TEST(Types, ForceRatios) {
  ReservoirState r;
  r.temperature = 2.0;
  r.delta_t_left = 0.4;
  r.delta_t_probe = 0.2;
  r.delta_mu_left = 0.1;
  const ForceVector f = ForceVector::from_reservoirs(r);
  EXPECT_DOUBLE_EQ(f.thermal_left, 0.1);
  EXPECT_DOUBLE_EQ(f.voltage_left, 0.05);
  ASSERT_TRUE(f.xi() && f.delta());
  EXPECT_DOUBLE_EQ(*f.xi() * *f.delta(), 1.0);
  ForceVector g;
  EXPECT_FALSE(g.xi().has_value());
  EXPECT_EQ(r.temperature_of(Terminal::R), 2.0);
  EXPECT_EQ(r.mu_of(Terminal::P), 0.0);
}

TEST(Types, LinearResponseWarnings) {
  ReservoirState r;
  r.delta_t_left = 0.5;
  EXPECT_EQ(r.linear_response_warnings().size(), 1u);
  r.delta_t_left = 0.01;
  EXPECT_TRUE(r.linear_response_warnings().empty());
}
