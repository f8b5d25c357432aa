#pragma once

#include <Eigen/Core>

namespace qa {

/// In-place unnormalized fast Walsh-Hadamard transform.
///
/// The length must be a power of two. Applying the transform twice multiplies
/// the vector by its length, so the orthonormal version is walsh_hadamard
/// followed by division by sqrt(length).
template <typename Scalar>
void walsh_hadamard(Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& v) {
  const Eigen::Index n = v.size();
  for (Eigen::Index len = 1; len < n; len <<= 1) {
    for (Eigen::Index base = 0; base < n; base += (len << 1)) {
      for (Eigen::Index i = base; i < base + len; ++i) {
        const Scalar a = v[i];
        const Scalar b = v[i + len];
        v[i] = a + b;
        v[i + len] = a - b;
      }
    }
  }
}

}  // namespace qa
