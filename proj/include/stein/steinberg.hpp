#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stein/algebra.hpp"
#include "stein/twist.hpp"

namespace stein {

/// Convolution algebra of a cocycle twist on a finite graded groupoid,
/// realised on the arrow basis: (f g)_c = sum over ab = c of f_a g_b w(a,b).
/// The diagonal is the span of the unit arrows; the expectation restricts a
/// function to them.
class SteinbergAlgebra {
 public:
  using Elt = std::vector<int>;

  explicit SteinbergAlgebra(CocycleTwist twist, const Caps& caps = {});

  const CocycleTwist& twist() const { return twist_; }
  const Ring& ring() const { return *twist_.ring; }
  const Groupoid& groupoid() const { return *twist_.gpd; }
  int dim() const { return twist_.gpd->size(); }

  Elt zero() const { return Elt(dim(), twist_.ring->zero()); }
  Elt delta(int arrow) const;
  Elt delta(int arrow, int coeff) const;
  /// Sum of the unit deltas; the multiplicative identity.
  Elt identity() const;
  /// Unit coefficients on the given arrows.
  Elt indicator(const std::vector<int>& arrows) const;

  Elt add(const Elt& a, const Elt& b) const;
  Elt sub(const Elt& a, const Elt& b) const;
  Elt neg(const Elt& a) const;
  Elt scale(int t, const Elt& a) const;
  Elt convolve(const Elt& a, const Elt& b) const;
  bool is_zero(const Elt& a) const;

  /// Arrows carrying a nonzero coefficient, ascending.
  std::vector<int> support(const Elt& a) const;
  Elt component(const Elt& a, int g) const;
  std::optional<int> homogeneous_degree(const Elt& a) const;
  /// Restriction to the unit arrows.
  Elt diagonal_part(const Elt& a) const;
  bool in_diagonal(const Elt& a) const;

  std::string show(const Elt& a) const;

  /// The same algebra as structure constants: basis named by arrow labels,
  /// C spanned by the unit deltas, P the restriction to them.
  const StructuredAlgebra& to_structured() const;

 private:
  CocycleTwist twist_;
  Caps caps_;
  mutable std::shared_ptr<const StructuredAlgebra> structured_;
};

}  // namespace stein
