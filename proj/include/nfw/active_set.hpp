#ifndef NFW_ACTIVE_SET_HPP
#define NFW_ACTIVE_SET_HPP

#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "nfw/types.hpp"
#include "nfw/vertex.hpp"

namespace nfw {

/// Convex-combination representation of an iterate: a list of vertices with
/// nonnegative weights summing to one.  The weights are the primary state;
/// the dense iterate is always rebuilt from them, so the combination and the
/// materialized point cannot drift apart.
template <typename Scalar>
class ActiveSet {
 public:
  struct Atom {
    Vertex<Scalar> vertex;
    Scalar weight;
  };

  ActiveSet() = default;

  bool empty() const { return atoms_.empty(); }
  std::size_t size() const { return atoms_.size(); }
  const std::vector<Atom>& atoms() const { return atoms_; }

  void clear() {
    atoms_.clear();
    lookup_.clear();
  }

  /// Adds weight to a vertex, inserting it if absent.
  void add(const Vertex<Scalar>& v, Scalar weight) {
    auto it = lookup_.find(v.key());
    if (it == lookup_.end()) {
      lookup_.emplace(v.key(), atoms_.size());
      atoms_.push_back({v, weight});
    } else {
      atoms_[it->second].weight += weight;
    }
  }

  /// Scales every weight by s.
  void scale(Scalar s) {
    for (auto& a : atoms_) a.weight *= s;
  }

  Scalar weight_sum() const {
    Scalar s = Scalar(0);
    for (const auto& a : atoms_) s += a.weight;
    return s;
  }

  Scalar min_weight() const {
    Scalar m = atoms_.empty() ? Scalar(0) : atoms_.front().weight;
    for (const auto& a : atoms_)
      if (a.weight < m) m = a.weight;
    return m;
  }

  /// Removes nonpositive-weight atoms and rescales the rest to sum to one.
  /// Throws if the accumulated drift exceeds the bookkeeping tolerance.
  void prune_and_renormalize(Scalar drift_tol = Scalar(1e-9)) {
    const Scalar s = weight_sum();
    if (!(std::abs(s - Scalar(1)) <= drift_tol))
      throw std::runtime_error("ActiveSet: weight bookkeeping drift exceeds tolerance");
    std::vector<Atom> kept;
    kept.reserve(atoms_.size());
    for (const auto& a : atoms_)
      if (a.weight > Scalar(0)) kept.push_back(a);
    atoms_.swap(kept);
    rebuild_lookup();
    const Scalar s2 = weight_sum();
    if (s2 > Scalar(0))
      for (auto& a : atoms_) a.weight /= s2;
  }

  /// Materializes u = sum_i w_i v_i.
  VectorX<Scalar> combination(Index dim) const {
    VectorX<Scalar> u = VectorX<Scalar>::Zero(dim);
    for (const auto& a : atoms_) u[a.vertex.index] += a.weight * a.vertex.value;
    return u;
  }

  /// Index of the active vertex maximizing <g, v>; ties go to the lowest
  /// vertex key for determinism.  Requires a nonempty set.
  std::size_t argmax_inner(const VectorX<Scalar>& g) const {
    std::size_t best = 0;
    Scalar best_val = atoms_[0].vertex.dot(g);
    for (std::size_t i = 1; i < atoms_.size(); ++i) {
      const Scalar val = atoms_[i].vertex.dot(g);
      if (val > best_val ||
          (val == best_val && atoms_[i].vertex.key() < atoms_[best].vertex.key())) {
        best = i;
        best_val = val;
      }
    }
    return best;
  }

  Atom& at(std::size_t i) { return atoms_[i]; }
  const Atom& at(std::size_t i) const { return atoms_[i]; }

  /// Merges `other` scaled by s into this set (weights accumulate per vertex).
  void merge_scaled(const ActiveSet& other, Scalar s) {
    for (const auto& a : other.atoms_) add(a.vertex, s * a.weight);
  }

 private:
  void rebuild_lookup() {
    lookup_.clear();
    for (std::size_t i = 0; i < atoms_.size(); ++i)
      lookup_.emplace(atoms_[i].vertex.key(), i);
  }

  std::vector<Atom> atoms_;
  std::unordered_map<std::int64_t, std::size_t> lookup_;
};

}  // namespace nfw

#endif  // NFW_ACTIVE_SET_HPP
