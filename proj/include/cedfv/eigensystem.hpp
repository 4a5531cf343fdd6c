#pragma once

#include <array>

#include "cedfv/char_matrices.hpp"

namespace cedfv {

enum class Axis { X = 0, Y = 1 };

//! Complete eigensystem of one characteristic matrix.  Eigenvalues are
//! sorted ascending; left/right vectors form a biorthonormal pair,
//! left[i] . right[j] = delta_ij.  CED always has exactly two zero
//! eigenvalues (the non-evolutionary constraint waves).
struct AxisEigensystem {
  std::array<double, 6> lambda{};  //!< ascending (m/s)
  std::array<State, 6> right{};
  std::array<State, 6> left{};
  int m_split = 0;        //!< number of strictly negative eigenvalues
  double zero_tol = 0.0;  //!< |lambda| at or below this counts as zero
};

//! Eigendecomposition of A (axis X) or B (axis Y).  Diagonal materials
//! take a closed-form path; general symmetric tensors fall back to a
//! numerical solve with biorthonormalization.  Throws EigensystemError
//! if the matrix is defective beyond tolerance.
AxisEigensystem eigendecompose_axis(const CharMatrices& matrices, Axis axis);

}  // namespace cedfv
