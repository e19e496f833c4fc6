#pragma once

#include <string>
#include <vector>

#include "stein/algebra.hpp"
#include "stein/oracle.hpp"

namespace stein {

/// Outcome of one verified property. `decided` drops to false when a scan
/// was cut short by caps (the verdict then means "no violation found").
/// `witness` is a human-readable counterexample line, empty on success.
struct Check {
  bool ok = false;
  bool decided = true;
  std::string witness;
};

/// Idempotent elements of C, ascending.
std::vector<StructuredAlgebra::Elt> idempotents_of_c(const StructuredAlgebra& a);

/// Minimal nonzero idempotents of C under e <= f iff ef = e.
std::vector<StructuredAlgebra::Elt> atoms_of_c(const StructuredAlgebra& a);

/// No nonzero ring scalar kills a nonzero idempotent of C: t e = 0 forces
/// t = 0. Scans t ascending, then e ascending.
Check check_wt(const StructuredAlgebra& a);

/// Some idempotent of C is a two-sided unit for every identity-fiber basis
/// element; with a finite basis this is exactly the local-unit property for
/// the fiber, and it extends to all of A whenever the homogeneous
/// normalisers span A.
Check check_local_units(const StructuredAlgebra& a);

/// C sits inside the identity fiber and coincides with the span of its
/// idempotents.
Check check_c_spanned(const StructuredAlgebra& a);

/// The homogeneous normalisers of C: elements n supported on one degree
/// fiber admitting a partner m in the inverse fiber with mnm = m, nmn = n
/// and nCm, mCn inside C. Zero is always a member. Elements are sorted
/// ascending; indices below refer to that order.
class NormaliserSemigroup {
 public:
  using Elt = StructuredAlgebra::Elt;

  NormaliserSemigroup(StructuredAlgebra a, std::vector<Elt> elements);

  const StructuredAlgebra& algebra() const { return a_; }
  int size() const { return static_cast<int>(elts_.size()); }
  const Elt& elt(int i) const { return elts_[i]; }
  int index_of(const Elt& e) const;  // -1 when absent
  int zero_index() const { return zero_; }
  /// Degree of element i (gamma identity for zero).
  int degree(int i) const { return deg_[i]; }
  /// Index of elt(i) elt(j), or -1 when the product escapes the set.
  int mul(int i, int j) const { return mul_[i][j]; }
  /// All partners of element i found inside the set.
  const std::vector<int>& partners(int i) const { return partners_[i]; }
  /// First partner; the partner is unique whenever verify_laws passes.
  int dagger(int i) const { return partners_[i].empty() ? -1 : partners_[i][0]; }
  /// Natural partial order: i <= j iff elt(i) = elt(j) elt(i)~ elt(i),
  /// computed in the algebra.
  bool leq(int i, int j) const;
  bool is_idempotent(int i) const;
  std::vector<int> idempotent_indices() const;
  /// Elements of identity degree (the normalisers of the fiber pair).
  std::vector<int> epsilon_indices() const;
  /// Nonzero elements with nothing strictly below; ultrafilter generators.
  std::vector<int> minimal_nonzero() const;
  /// Plain tables for the filter oracle.
  SemigroupTables tables() const;

  /// Closure under products, unique partners, partner involution and
  /// product rule, idempotents = idempotents of C, idempotents commuting.
  Check verify_laws() const;

 private:
  StructuredAlgebra a_;
  std::vector<Elt> elts_;
  std::vector<int> deg_;
  std::vector<std::vector<int>> partners_;
  std::vector<std::vector<int>> mul_;
  int zero_ = -1;
};

/// Engine enumeration: per degree fiber, every coefficient vector on the
/// fiber is tested with partners scanned over the inverse fiber. Fiber
/// pair sizes are bounded by caps.budget.
NormaliserSemigroup normalisers_of(const StructuredAlgebra& a);

/// The identity-degree fiber as a trivially graded algebra with the same
/// C and P. Basis order follows the fiber.
StructuredAlgebra epsilon_subalgebra(const StructuredAlgebra& a);

/// Classification of the pair (A, C) against the diagonal / Cartan /
/// quasi-Cartan axioms, in the fiber form: the underlying conditions are
/// checked for the identity-fiber pair, and the graded forms additionally
/// require the homogeneous normalisers to span all of A.
struct PairReport {
  Check wt;              // scalars act faithfully on idempotents
  Check local_units;     // idempotents of C give local units
  Check c_spanned;       // C = span of its idempotents
  Check eps_spanned;     // identity fiber spanned by its normalisers
  Check expectation;     // supplied P is a conditional expectation onto C
  Check faithful;        // P detects every nonzero identity-fiber element
  Check semigroup_laws;  // homogeneous normalisers form an inverse semigroup
  Check graded_span;     // homogeneous normalisers span A
  Check diagonal;        // identity fiber spanned by free normalisers
  Check cartan;          // C is maximal commutative in the identity fiber
  Check quasi_cartan;    // P implemented by idempotents on normalisers

  int n_star_size = 0;
  int n_eps_size = 0;
  int idempotent_count = 0;
  int atom_count = 0;

  bool pair_ok() const {
    return wt.ok && local_units.ok && c_spanned.ok && eps_spanned.ok && expectation.ok &&
           faithful.ok;
  }
  bool is_diagonal_pair() const { return pair_ok() && diagonal.ok; }
  bool is_cartan_pair() const { return pair_ok() && cartan.ok; }
  bool is_quasi_cartan_pair() const { return pair_ok() && quasi_cartan.ok; }
  bool is_graded_diagonal_pair() const { return is_diagonal_pair() && graded_span.ok; }
  bool is_graded_cartan_pair() const { return is_cartan_pair() && graded_span.ok; }
  bool is_graded_quasi_cartan_pair() const { return is_quasi_cartan_pair() && graded_span.ok; }
};

PairReport classify_pair(const StructuredAlgebra& a);
/// Same, reusing an already computed normaliser semigroup of a.
PairReport classify_pair(const StructuredAlgebra& a, const NormaliserSemigroup& ns);

}  // namespace stein
