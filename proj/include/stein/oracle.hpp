#pragma once

#include <vector>

#include "stein/algebra.hpp"
#include "stein/twist.hpp"

namespace stein {

/// Reference implementations that follow the defining formulas with no
/// shortcuts. They scan whole spaces and are meant to arbitrate the
/// optimised engines on small instances; each throws CapExceeded when the
/// literal scan would pass its cap.

/// Homogeneous elements n for which some m anywhere in the algebra
/// satisfies mnm = m, nmn = n, nCm and mCn inside C. Scans every element of
/// the algebra for n and for m; |R|^dim is capped by
/// caps.oracle_normaliser_max. Sorted ascending.
std::vector<StructuredAlgebra::Elt> oracle_normalisers(const StructuredAlgebra& a,
                                                       const Caps& caps = {});

/// A finite inverse semigroup with zero given by plain tables; indices into
/// an external element list.
struct SemigroupTables {
  int n = 0;
  int zero = -1;
  std::vector<int> dagger;        // per element
  std::vector<std::vector<int>> mul;
};

/// i <= j in the natural partial order, i = j (dagger(i) i).
bool tables_leq(const SemigroupTables& s, int i, int j);

/// Every filter: subsets of the nonzero elements that are upward closed and
/// downward directed, by literal enumeration of all 2^(n-1) subsets (capped
/// by caps.oracle_filter_max on n-1). Each filter is a sorted index list;
/// the list of filters is sorted.
std::vector<std::vector<int>> oracle_filters(const SemigroupTables& s, const Caps& caps = {});

/// The maximal elements of oracle_filters under inclusion.
std::vector<std::vector<int>> oracle_ultrafilters(const SemigroupTables& s, const Caps& caps = {});

/// Convolution computed from the section formula over the materialised
/// extension: f and g are coefficient vectors over the base arrows relative
/// to the canonical section; sec is any section of q (one Sigma arrow per
/// base arrow, no unit normalisation required); the result is read back in
/// canonical coordinates. The formula sums f(S(a)) g(S(a)^{-1} s) over base
/// arrows a with r(a) = r(q(s)), where both functions extend contravariantly.
std::vector<int> oracle_convolution(const ExplicitTwist& t, const std::vector<int>& f,
                                    const std::vector<int>& g, const std::vector<int>& sec);

}  // namespace stein
