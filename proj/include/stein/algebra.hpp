#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stein/groupoid.hpp"
#include "stein/ring.hpp"

namespace stein {

/// Finite graded algebra presented by structure constants on a homogeneous
/// basis, carrying a distinguished commutative subalgebra C (as module
/// generators) and an optional candidate conditional expectation P (by its
/// values on the basis). Elements are dense coefficient vectors over the
/// ring, indexed by the basis.
class StructuredAlgebra {
 public:
  using Elt = std::vector<int>;

  struct Data {
    std::shared_ptr<const Ring> ring;
    std::shared_ptr<const Group> gamma;
    std::vector<std::string> basis;
    std::vector<int> deg;               // basis index -> gamma element
    std::vector<std::vector<Elt>> mul;  // mul[i][j] = e_i e_j, dense
    std::vector<Elt> c_gens;
    std::vector<Elt> p_rows;            // P(e_i); empty when no P is given
  };

  /// Checks table shapes, associativity on every basis triple, that each
  /// structure product lands in the right degree fiber, and that the span
  /// of c_gens is a commutative subalgebra. Throws SchemaError on malformed
  /// input and AxiomViolation (tags "grading", "associativity",
  /// "subalgebra") on substantive failures.
  static StructuredAlgebra validate(Data d, const Caps& caps = {});

  int dim() const { return static_cast<int>(d_.basis.size()); }
  const Ring& ring() const { return *d_.ring; }
  std::shared_ptr<const Ring> ring_ptr() const { return d_.ring; }
  const Group& gamma() const { return *d_.gamma; }
  std::shared_ptr<const Group> gamma_ptr() const { return d_.gamma; }
  const Caps& caps() const { return caps_; }
  const std::string& basis_name(int i) const { return d_.basis[i]; }
  int basis_degree(int i) const { return d_.deg[i]; }
  const std::vector<Elt>& c_gens() const { return d_.c_gens; }
  bool has_expectation() const { return !d_.p_rows.empty(); }

  Elt zero() const { return Elt(dim(), d_.ring->zero()); }
  Elt basis_elt(int i) const;
  bool is_zero(const Elt& a) const;
  Elt add(const Elt& a, const Elt& b) const;
  Elt sub(const Elt& a, const Elt& b) const;
  Elt neg(const Elt& a) const;
  Elt scale(int t, const Elt& a) const;
  Elt mul(const Elt& a, const Elt& b) const;
  /// P extended linearly; precondition: has_expectation().
  Elt apply_p(const Elt& a) const;

  /// Component of a in the degree-g fiber.
  Elt component(const Elt& a, int g) const;
  /// Degrees with a nonzero component, ascending.
  std::vector<int> support_degrees(const Elt& a) const;
  /// Degree of a nonzero homogeneous element; identity for zero; nullopt
  /// when the support meets two fibers.
  std::optional<int> homogeneous_degree(const Elt& a) const;
  /// Basis indices of the degree-g fiber, ascending.
  std::vector<int> fiber_basis(int g) const;

  const RowSpan& c_span() const { return *c_span_; }
  bool in_c(const Elt& a) const { return c_span_->contains(a); }
  /// Every element of C, sorted; capped by caps.budget.
  const std::vector<Elt>& c_elements() const;

  /// Renders an element against basis names: "x + 2*y", "0".
  std::string show(const Elt& a) const;

 private:
  StructuredAlgebra() = default;

  Data d_;
  Caps caps_;
  std::shared_ptr<const RowSpan> c_span_;
  mutable std::shared_ptr<const std::vector<Elt>> c_elems_;
};

}  // namespace stein
