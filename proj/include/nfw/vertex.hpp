#ifndef NFW_VERTEX_HPP
#define NFW_VERTEX_HPP

#include <cstdint>

#include "nfw/types.hpp"

namespace nfw {

/// An extreme point of a simplex- or ell1-ball-like set: a single signed
/// coordinate.  Kept sparse so active-set arithmetic stays O(1) per vertex;
/// materialize only at user boundaries.
template <typename Scalar>
struct Vertex {
  Index index = 0;
  Scalar value = Scalar(1);  // signed magnitude of the nonzero coordinate
  Index dim = 0;

  VectorX<Scalar> to_dense() const {
    VectorX<Scalar> v = VectorX<Scalar>::Zero(dim);
    v[index] = value;
    return v;
  }

  /// <g, vertex> without materializing.
  Scalar dot(const VectorX<Scalar>& g) const { return g[index] * value; }

  /// Identity key: same coordinate and sign means same vertex.
  std::int64_t key() const {
    return 2 * static_cast<std::int64_t>(index) + (value < Scalar(0) ? 1 : 0);
  }

  friend bool operator==(const Vertex& a, const Vertex& b) {
    return a.index == b.index && a.value == b.value && a.dim == b.dim;
  }
};

}  // namespace nfw

#endif  // NFW_VERTEX_HPP
