// Copyright 2026 The ymc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "ymc/lattice.hpp"

namespace ymc {

/// Largest N^3 K for which dense materialization is allowed.
inline constexpr std::size_t kDenseLimit = 4096;

/// Linear map on color-scalar lattice functions.
///
/// Coordinates of the dense form are the raw data indices of
/// ColorScalarField (site * K + a). Because the l2 weight is uniform, the
/// l2 adjoint is the matrix transpose.
class LatticeOperator {
 public:
  virtual ~LatticeOperator() = default;

  virtual const Grid& grid() const noexcept = 0;
  virtual int K() const noexcept = 0;
  virtual ColorScalarField apply(const ColorScalarField& f) const = 0;
  virtual ColorScalarField apply_adjoint(const ColorScalarField& f) const = 0;

  std::size_t dimension() const noexcept { return grid().sites() * static_cast<std::size_t>(K()); }

  /// Column k is apply(e_k). Throws CapacityError when dimension() > kDenseLimit.
  Eigen::MatrixXd materialize() const;

 protected:
  void require_shape(const ColorScalarField& f, const char* op) const;
};

/// Copies between fields and flat vectors in data order.
Eigen::VectorXd to_vector(const ColorScalarField& f);
ColorScalarField from_vector(const Grid& grid, int K, const Eigen::VectorXd& v);

}  // namespace ymc
