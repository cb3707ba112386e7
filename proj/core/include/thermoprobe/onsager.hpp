#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "thermoprobe/transport_types.hpp"

namespace thermoprobe {

enum class OnsagerRank { Full4, VoltageProbe3, Buttiker2 };
const char* to_string(OnsagerRank rank);
int dimension(OnsagerRank rank);

using OnsagerBlock =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor, 4, 4>;
using OnsagerVector = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 4, 1>;

// Linear-response matrix J = L X with flux/force labels fixed by the rank:
//   Full4:         (J_L^N, J_L^Q, J_P^N, J_P^Q) <- (X_L^V, X_L^T, X_P^V, X_P^T)
//   VoltageProbe3: (J_L^N, J_L^Q, J_P^Q)        <- (X_L^V, X_L^T, X_P^T)
//   Buttiker2:     (J_L^N, J_L^Q)               <- (X_L^V, X_L^T)
class OnsagerMatrix {
 public:
  OnsagerMatrix(OnsagerRank rank, FieldSign field, OnsagerBlock entries);

  OnsagerRank rank() const noexcept { return rank_; }
  FieldSign field() const noexcept { return field_; }
  int size() const noexcept { return static_cast<int>(entries_.rows()); }

  // Indices start at 1 and follow the flux/force labels above.
  double entry(int row, int col) const { return entries_(row - 1, col - 1); }
  const OnsagerBlock& entries() const noexcept { return entries_; }

  std::vector<std::string> flux_labels() const;
  std::vector<std::string> force_labels() const;

  OnsagerVector fluxes(const OnsagerVector& forces) const;
  // Ṡ = Σ J_i X_i
  double entropy_production(const OnsagerVector& forces) const;

  double min_symmetric_eigenvalue() const;
  bool has_nonnegative_diagonal(double tolerance = 0.0) const;
  // max |L_ij − L_ji|
  double max_asymmetry() const;
  double max_abs_entry() const;

  OnsagerMatrix transposed() const;
  OnsagerMatrix scaled(double factor) const;

 private:
  OnsagerRank rank_;
  FieldSign field_;
  OnsagerBlock entries_;
};

}  // namespace thermoprobe
