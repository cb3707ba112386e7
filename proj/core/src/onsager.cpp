#include "thermoprobe/onsager.hpp"

#include <Eigen/Eigenvalues>

#include "thermoprobe/errors.hpp"

namespace thermoprobe {

const char* to_string(OnsagerRank rank) {
  switch (rank) {
    case OnsagerRank::Full4: return "FULL4";
    case OnsagerRank::VoltageProbe3: return "VPROBE3";
    case OnsagerRank::Buttiker2: return "BUTTIKER2";
  }
  return "?";
}

int dimension(OnsagerRank rank) {
  switch (rank) {
    case OnsagerRank::Full4: return 4;
    case OnsagerRank::VoltageProbe3: return 3;
    case OnsagerRank::Buttiker2: return 2;
  }
  return 0;
}

OnsagerMatrix::OnsagerMatrix(OnsagerRank rank, FieldSign field, OnsagerBlock entries)
    : rank_(rank), field_(field), entries_(std::move(entries)) {
  const int n = dimension(rank);
  if (entries_.rows() != n || entries_.cols() != n) {
    throw ValidationError("onsager", std::string("entry block does not match rank ") +
                                         to_string(rank));
  }
}

std::vector<std::string> OnsagerMatrix::flux_labels() const {
  switch (rank_) {
    case OnsagerRank::Full4: return {"J_L^N", "J_L^Q", "J_P^N", "J_P^Q"};
    case OnsagerRank::VoltageProbe3: return {"J_L^N", "J_L^Q", "J_P^Q"};
    case OnsagerRank::Buttiker2: return {"J_L^N", "J_L^Q"};
  }
  return {};
}

std::vector<std::string> OnsagerMatrix::force_labels() const {
  switch (rank_) {
    case OnsagerRank::Full4: return {"X_L^V", "X_L^T", "X_P^V", "X_P^T"};
    case OnsagerRank::VoltageProbe3: return {"X_L^V", "X_L^T", "X_P^T"};
    case OnsagerRank::Buttiker2: return {"X_L^V", "X_L^T"};
  }
  return {};
}

OnsagerVector OnsagerMatrix::fluxes(const OnsagerVector& forces) const {
  if (forces.size() != size()) {
    throw ValidationError("forces", "length does not match the Onsager matrix");
  }
  return entries_ * forces;
}

double OnsagerMatrix::entropy_production(const OnsagerVector& forces) const {
  return fluxes(forces).dot(forces);
}

double OnsagerMatrix::min_symmetric_eigenvalue() const {
  const Eigen::MatrixXd sym = 0.5 * (entries_ + entries_.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool OnsagerMatrix::has_nonnegative_diagonal(double tolerance) const {
  for (int i = 0; i < size(); ++i) {
    if (entries_(i, i) < -tolerance) return false;
  }
  return true;
}

double OnsagerMatrix::max_asymmetry() const {
  return (entries_ - entries_.transpose()).cwiseAbs().maxCoeff();
}

double OnsagerMatrix::max_abs_entry() const { return entries_.cwiseAbs().maxCoeff(); }

OnsagerMatrix OnsagerMatrix::transposed() const {
  return OnsagerMatrix(rank_, reversed(field_), entries_.transpose());
}

OnsagerMatrix OnsagerMatrix::scaled(double factor) const {
  return OnsagerMatrix(rank_, field_, entries_ * factor);
}

}  // namespace thermoprobe
