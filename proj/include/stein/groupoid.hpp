#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stein/errors.hpp"

namespace stein {

/// Finite group given by a multiplication table; used as the grading group.
///
/// Integer gradings with degrees in [-m, m] are encoded by `integer_window`:
/// the cyclic group of order 4m+1 with labels "-2m".."2m". Products of two
/// realised degrees stay inside the label window, so no realised product
/// wraps and all fiber/grading computations agree with the Z-grading.
class Group {
 public:
  static std::shared_ptr<const Group> from_table(std::vector<std::string> labels,
                                                 const std::vector<std::vector<int>>& mul,
                                                 const std::string& identity_label);
  static std::shared_ptr<const Group> trivial();
  static std::shared_ptr<const Group> integer_window(int bound);

  int size() const { return n_; }
  int identity() const { return id_; }
  int mul(int a, int b) const { return mul_[a * n_ + b]; }
  int inv(int a) const { return inv_[a]; }
  const std::string& label(int a) const { return labels_[a]; }
  std::optional<int> find(const std::string& label) const;
  /// Set when built via integer_window.
  std::optional<int> int_bound() const { return int_bound_; }
  std::string describe() const;

 private:
  Group() = default;
  void finish();

  int n_ = 0, id_ = -1;
  std::vector<int> mul_, inv_;
  std::vector<std::string> labels_;
  std::optional<int> int_bound_;
};

/// Finite discrete groupoid with a grading homomorphism into a Group.
///
/// Arrows are indexed by input order; all set-valued outputs are sorted by
/// that order. Composition is a partial operation: compose(a,b) is defined
/// exactly when src(a) == rng(b). Units are the arrows in the image of
/// src/rng. Construction validates every groupoid axiom exhaustively and
/// the grading as a homomorphism (degree of every unit is the identity).
class Groupoid {
 public:
  struct Data {
    std::vector<std::string> arrows;
    std::vector<int> src, rng;                 // arrow -> unit arrow
    std::vector<std::array<int, 3>> compose;   // (a, b, ab); exhaustive list
    std::vector<int> degree;                   // arrow -> Group element
  };

  static std::shared_ptr<const Groupoid> validate(Data d, std::shared_ptr<const Group> gamma);

  int size() const { return n_; }
  const std::vector<int>& units() const { return units_; }
  bool is_unit(int a) const { return src_[a] == a; }
  int src(int a) const { return src_[a]; }
  int rng(int a) const { return rng_[a]; }
  /// Composite ab, or -1 when src(a) != rng(b).
  int compose(int a, int b) const { return comp_[a * n_ + b]; }
  int inv(int a) const { return inv_[a]; }
  int degree(int a) const { return deg_[a]; }
  const Group& gamma() const { return *gamma_; }
  std::shared_ptr<const Group> gamma_ptr() const { return gamma_; }
  const std::string& label(int a) const { return labels_[a]; }
  std::optional<int> find(const std::string& label) const;

  /// Arrows with src == rng, sorted.
  std::vector<int> isotropy() const;
  /// True iff the isotropy is exactly the unit space.
  bool is_principal() const;
  /// In the finite discrete model the interior of the isotropy is the
  /// isotropy itself, so effective coincides with principal.
  bool is_effective() const { return is_principal(); }
  /// Arrows of the given degree, sorted.
  std::vector<int> degree_fiber(int g) const;
  /// The identity-degree subgroupoid (contains every unit). `arrow_map`,
  /// when non-null, receives old-index -> new-index (-1 if dropped).
  std::shared_ptr<const Groupoid> epsilon_subgroupoid(std::vector<int>* arrow_map = nullptr) const;

 private:
  Groupoid() = default;

  int n_ = 0;
  std::vector<std::string> labels_;
  std::vector<int> src_, rng_, inv_, deg_, comp_;
  std::vector<int> units_;
  std::shared_ptr<const Group> gamma_;
};

/// True iff src and rng are both injective on the arrow set B.
bool is_bisection(const Groupoid& g, const std::vector<int>& B);
/// Pointwise product {ab : a in B, b in D, composable}; a bisection whenever
/// B and D are.
std::vector<int> bisection_product(const Groupoid& g, const std::vector<int>& B,
                                   const std::vector<int>& D);
std::vector<int> bisection_inverse(const Groupoid& g, const std::vector<int>& B);
/// Singleton homogeneous bisections plus closure under product and inverse,
/// capped by caps.budget. (Unions are not taken; see all_homogeneous_bisections.)
std::vector<std::vector<int>> homogeneous_bisection_closure(const Groupoid& g, const Caps& caps = {});
/// Every nonempty bisection contained in a single degree fiber, by
/// backtracking over each fiber; capped by caps.budget.
std::vector<std::vector<int>> all_homogeneous_bisections(const Groupoid& g, const Caps& caps = {});

}  // namespace stein
