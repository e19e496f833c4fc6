#pragma once

#include <memory>
#include <vector>

#include "stein/groupoid.hpp"
#include "stein/ring.hpp"

namespace stein {

/// Canonical internal form of a discrete twist over a graded groupoid: a
/// normalised R^x-valued 2-cocycle on composable pairs of G. The extension
/// it encodes is Sigma = G x R^x with (a,s)(b,t) = (ab, s t w(a,b)).
struct CocycleTwist {
  std::shared_ptr<const Ring> ring;
  std::shared_ptr<const Groupoid> gpd;
  std::vector<int> omega;  // |G| x |G| flat; meaningful on composable pairs

  int w(int a, int b) const { return omega[static_cast<size_t>(a) * gpd->size() + b]; }

  /// Checks values are units, normalisation w(r(a),a) = w(a,s(a)) = 1, and
  /// the cocycle identity w(a,b) w(ab,c) = w(b,c) w(a,bc) on all composable
  /// triples. Entries on non-composable pairs are forced to 1.
  static CocycleTwist validate(std::shared_ptr<const Ring> ring,
                               std::shared_ptr<const Groupoid> gpd, std::vector<int> omega);
  static CocycleTwist trivial(std::shared_ptr<const Ring> ring,
                              std::shared_ptr<const Groupoid> gpd);

  /// Restriction to the identity-degree subgroupoid. `arrow_map`, when
  /// non-null, receives old-arrow -> new-arrow (-1 if dropped).
  CocycleTwist epsilon_subtwist(std::vector<int>* arrow_map = nullptr) const;
};

/// A twist presented as an explicit central extension
///   G^(0) x R^x  -i->  Sigma  -q->  G
/// of finite discrete graded groupoids over the same grading group.
struct ExplicitTwist {
  std::shared_ptr<const Ring> ring;
  std::shared_ptr<const Groupoid> sigma;
  std::shared_ptr<const Groupoid> base;
  /// i_tab[u][k] = Sigma arrow for (unit u of base, k-th ring unit); rows
  /// only for base units (others empty).
  std::vector<std::vector<int>> i_tab;
  /// q_tab[s] = base arrow under q.
  std::vector<int> q_tab;

  int i_of(int base_unit, int ring_unit) const;
  int q_of(int s) const { return q_tab[s]; }
  /// The action t . s = i(r(s), t) s of a ring unit on a Sigma arrow.
  int action(int t, int s) const;
};

/// Verifies the exactness, fiber size / free action, centrality and graded
/// compatibility axioms, plus all bundle structure. Throws AxiomViolation
/// with tag DT1/DT2/DT3/graded/structure and a witness message.
void validate_twist(const ExplicitTwist& t);

/// A section of q: per base arrow one Sigma preimage, mapping every unit u
/// to i(u, 1). canonical_section picks the least Sigma index per fiber.
std::vector<int> canonical_section(const ExplicitTwist& t);

/// Extracts the normalised 2-cocycle of a section: w(a,b) is the unique unit
/// with S(a) S(b) = w(a,b) . S(ab).
CocycleTwist to_cocycle(const ExplicitTwist& t, const std::vector<int>& section);

/// Materialises Sigma = G x R^x with arrows "(a|t)". The result always
/// passes validate_twist.
ExplicitTwist from_cocycle(const CocycleTwist& c);

/// An isomorphism of explicit twists: arrow bijections at both levels.
struct TwistIso {
  std::vector<int> sigma_map;  // t1.sigma arrow -> t2.sigma arrow
  std::vector<int> base_map;   // t1.base arrow -> t2.base arrow
};

/// Checks the pair of maps is a graded twist isomorphism: level-wise
/// groupoid isomorphisms commuting with i, q and both gradings. Throws
/// TheoremViolation with a witness on failure.
void verify_twist_isomorphism(const ExplicitTwist& t1, const ExplicitTwist& t2,
                              const TwistIso& iso);

}  // namespace stein
