#pragma once

#include <cstdint>
#include <vector>

namespace cedfv {

//! Dense 3D array of scalars with (i,j,k) indexing, k fastest.
struct FaceArray {
  int n0 = 0, n1 = 0, n2 = 0;
  std::vector<double> v;

  void resize(int a, int b, int c, double fill = 0.0) {
    n0 = a;
    n1 = b;
    n2 = c;
    v.assign(static_cast<std::size_t>(a) * b * c, fill);
  }
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * n1 + j) * n2 + k;
  }
  double& operator()(int i, int j, int k) { return v[index(i, j, k)]; }
  double operator()(int i, int j, int k) const { return v[index(i, j, k)]; }
  std::size_t size() const { return v.size(); }
};

}  // namespace cedfv
