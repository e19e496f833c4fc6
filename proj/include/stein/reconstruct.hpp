#pragma once

#include <string>
#include <vector>

#include "stein/pairs.hpp"
#include "stein/steinberg.hpp"
#include "stein/twist.hpp"

namespace stein {

/// The ultrafilter twist of an algebra pair. In the finite model every
/// filter on the nonzero homogeneous normalisers is the up-set of its least
/// element, so ultrafilter arrows are indexed by the minimal nonzero
/// semigroup elements. Ring units act freely by rescaling generators; the
/// base groupoid is the orbit space of that action.
class Reconstruction {
 public:
  using Elt = StructuredAlgebra::Elt;

  const StructuredAlgebra& algebra() const { return a_; }
  const NormaliserSemigroup& normalisers() const { return ns_; }
  const ExplicitTwist& twist() const { return twist_; }
  /// Coordinate section: base arrow -> ultrafilter arrow.
  const std::vector<int>& section() const { return canon_; }

  /// Semigroup index of the generator of ultrafilter arrow u, and back
  /// (-1 when the element is not minimal nonzero).
  int generator_of(int u) const { return gens_[u]; }
  int arrow_of_generator(int i) const { return arrow_of_[i]; }

  /// Value of c in C at a unit ultrafilter: the unique scalar t with
  /// c e = t e on the generating atom e.
  int phi_value(const Elt& c, int unit_arrow) const;
  /// Coordinate of x at an ultrafilter arrow with generator g: the value of
  /// P(n~ x_d) at the source unit, for the degree d of the arrow, checked
  /// over every member n of the filter. Needs the expectation.
  int hat_value(const Elt& x, int arrow) const;
  /// Coordinates of x over the base arrows, taken along section().
  Elt hat(const Elt& x) const;

 private:
  friend Reconstruction reconstruct_twist(const StructuredAlgebra& a);
  Reconstruction(StructuredAlgebra a, NormaliserSemigroup ns);

  StructuredAlgebra a_;
  NormaliserSemigroup ns_;
  ExplicitTwist twist_;
  std::vector<int> gens_;      // arrow -> semigroup index
  std::vector<int> arrow_of_;  // semigroup index -> arrow, -1 off the minimals
  std::vector<int> canon_;
};

/// Builds the ultrafilter twist of (A, C). Requires weak torsion freeness,
/// local units, C spanned by its idempotents, the inverse semigroup laws
/// and the homogeneous normalisers spanning A; throws AxiomViolation("pair")
/// otherwise. Composability of ultrafilters is cross-checked against the
/// all-products-nonzero criterion and the result passes the full twist
/// validation.
Reconstruction reconstruct_twist(const StructuredAlgebra& a);

/// Certificate that x -> hat(x) is a graded isomorphism onto the
/// convolution algebra of the reconstructed twist.
struct IsoCertificate {
  SteinbergAlgebra target;  // convolution algebra along section()
  Mat matrix;               // row i = hat of basis element i
};

/// Checks hat exactly: consistent with the matrix on basis sums, scalar
/// multiples and seeded random vectors, bijective, multiplicative on every
/// basis pair, degree preserving, carrying C onto the diagonal and
/// intertwining P with the diagonal restriction. Requires the graded
/// quasi-Cartan property (AxiomViolation otherwise); failed checks throw
/// TheoremViolation.
IsoCertificate certify_graded_iso(const StructuredAlgebra& a, const Reconstruction& rec);

/// The comparison map from a twist into the reconstruction of its own
/// convolution algebra: an arrow goes to the up-set of its coefficient
/// times the point mass at its base arrow.
struct EmbeddingReport {
  std::vector<int> sigma_map;  // twist arrow -> ultrafilter arrow
  std::vector<int> base_map;   // base arrow -> orbit arrow
  bool surjective = false;     // the maps are bijective iff true
};

/// Computes the comparison map for a validated twist and verifies it is
/// injective, independent of the representing normaliser, unit equivariant,
/// a graded groupoid morphism at both levels, compatible with the bundle
/// maps, and bijective on unit spaces. Violations throw TheoremViolation.
/// `rec` must be the reconstruction of the convolution algebra of t along
/// its canonical section.
EmbeddingReport embed_into_reconstruction(const ExplicitTwist& t, const Reconstruction& rec);

/// Bisection support on the identity fiber: every identity-degree
/// normaliser of the convolution pair is supported on a bisection of the
/// underlying groupoid. When that holds, the supports of all homogeneous
/// normalisers are checked to be bisections as well.
Check check_lbh(const SteinbergAlgebra& alg);
Check check_lbh(const SteinbergAlgebra& alg, const NormaliserSemigroup& ns);

/// Round trip of a twist through its convolution algebra.
struct UniquenessCertificate {
  PairReport pair;            // classification of the convolution pair
  Check lbh;                  // bisection supports on the identity fiber
  bool quasi_cartan = false;  // graded quasi-Cartan property of the pair
  bool surjective = false;    // comparison map is onto
  bool holds = false;         // all three agree and are true
  int sigma_star_size = 0;
  int g_star_size = 0;
  std::string missed_arrow;   // an ultrafilter arrow outside the image, when not onto
};

/// Certifies the equivalence: graded quasi-Cartan pair <=> identity-fiber
/// bisection supports <=> comparison map onto. The three verdicts must
/// agree (TheoremViolation otherwise). When they hold, the comparison map
/// is verified to be a twist isomorphism, the graded algebra isomorphism
/// certificate is produced, and effectiveness / principality of the
/// reconstructed identity-degree base are matched against the Cartan /
/// diagonal refinements. The identity-fiber reconstruction is always
/// compared with the identity-degree part of the full one.
UniquenessCertificate certify_uniqueness(const ExplicitTwist& t, const Caps& caps = {});

}  // namespace stein
