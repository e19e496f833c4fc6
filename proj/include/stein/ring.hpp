#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stein/errors.hpp"

namespace stein {

/// Finite commutative unital ring on elements {0, ..., size-1}.
///
/// Two backends share one interface: Z/n (element i is the residue i) and
/// an explicit operation table. All ring axioms are checked exhaustively at
/// construction; units, inverses, idempotents and indecomposability are
/// precomputed. Rings larger than 256 elements are rejected.
class Ring {
 public:
  static constexpr int kMaxSize = 256;

  static std::shared_ptr<const Ring> modular(int n);
  static std::shared_ptr<const Ring> from_tables(std::vector<std::string> labels,
                                                 const std::vector<std::vector<int>>& add,
                                                 const std::vector<std::vector<int>>& mul);

  int size() const { return n_; }
  bool is_modular() const { return mod_ != 0; }
  int modulus() const { return mod_; }

  int zero() const { return zero_; }
  int one() const { return one_; }
  int add(int a, int b) const { return add_[a * n_ + b]; }
  int mul(int a, int b) const { return mul_[a * n_ + b]; }
  int neg(int a) const { return neg_[a]; }
  int sub(int a, int b) const { return add(a, neg(b)); }

  bool is_unit(int a) const { return inv_[a] >= 0; }
  /// Multiplicative inverse; precondition: is_unit(a).
  int inv(int a) const;
  /// Units in ascending element order. one() is always present.
  const std::vector<int>& units() const { return units_; }
  /// Idempotents in ascending element order (always contains 0 and 1).
  const std::vector<int>& idempotents() const { return idempotents_; }
  /// True iff 0 and 1 are the only idempotents.
  bool is_indecomposable() const { return idempotents_.size() == 2; }

  const std::string& label(int a) const { return labels_[a]; }
  std::optional<int> find(const std::string& label) const;
  /// One-line description for reports, e.g. "Z/6" or "table ring".
  std::string describe() const;

 private:
  Ring() = default;
  void finish();  // derives zero/one/units/idempotents, checks axioms

  int n_ = 0;
  int mod_ = 0;  // 0 for table rings
  int zero_ = -1, one_ = -1;
  std::vector<int> add_, mul_, neg_, inv_;
  std::vector<int> units_, idempotents_;
  std::vector<std::string> labels_;
};

/// Dense matrix over a Ring; entries are ring element indices, row-major.
struct Mat {
  int rows = 0, cols = 0;
  std::vector<int> a;

  Mat() = default;
  Mat(int r, int c, int fill) : rows(r), cols(c), a(static_cast<size_t>(r) * c, fill) {}
  int& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  int at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
  std::vector<int> row(int r) const {
    return {a.begin() + static_cast<size_t>(r) * cols, a.begin() + static_cast<size_t>(r + 1) * cols};
  }
};

/// Row-span of a set of vectors over a Ring, with membership and equality
/// tests that are exact for any backend.
///
/// Over Z/n the span is held as the Howell normal form of the generators:
/// a canonical echelon basis valid over non-fields (pivots divide n, entries
/// above a pivot are reduced modulo it, and the span is closed under the
/// annihilator rows that make membership testable column by column).
/// Over table rings the span is materialised as an explicit set by closure
/// under addition and scalar multiplication, bounded by `caps.budget`.
class RowSpan {
 public:
  RowSpan(std::shared_ptr<const Ring> ring, int cols, const std::vector<std::vector<int>>& gens,
          const Caps& caps = {});

  bool contains(const std::vector<int>& v) const;
  bool equals(const RowSpan& other) const;
  /// True iff the span is all of R^cols.
  bool is_full() const;
  int cols() const { return cols_; }
  /// Canonical generating rows (Howell form over Z/n, sorted elements for
  /// table rings). Stable across runs.
  const std::vector<std::vector<int>>& canonical_rows() const { return canon_; }

 private:
  std::shared_ptr<const Ring> ring_;
  int cols_;
  std::vector<std::vector<int>> canon_;           // modular: Howell rows; table: sorted set
  std::vector<int> pivot_col_;                    // modular only, per canonical row
  bool modular_;
};

/// Result of solving M x = b over the ring (x, b columns).
struct SolveResult {
  bool solvable = false;
  std::vector<int> x;  // one solution when solvable
  /// Canonical basis of the row span of M (Howell form over Z/n).
  std::vector<std::vector<int>> row_span_basis;
};

/// Deterministic exact solver for M x = b. Over Z/n this runs on the Howell
/// form; over table rings it enumerates assignments (bounded by caps.budget).
SolveResult howell_solve(const std::shared_ptr<const Ring>& ring, const Mat& M,
                         const std::vector<int>& b, const Caps& caps = {});

/// All elements of the row span, sorted. Over Z/n enumerated from the
/// Howell basis, over table rings the materialised closure; throws
/// CapExceeded past caps.budget.
std::vector<std::vector<int>> enumerate_span(const std::shared_ptr<const Ring>& ring, int cols,
                                             const std::vector<std::vector<int>>& gens,
                                             const Caps& caps = {});

/// Basis of the left kernel {x : x M = 0}. Over Z/n derived from the Howell
/// form of (M | I); over table rings by bounded enumeration.
std::vector<std::vector<int>> left_kernel(const std::shared_ptr<const Ring>& ring, const Mat& M,
                                          const Caps& caps = {});

/// True iff the R-linear map x -> x M (rows of M are the generator images)
/// is injective / surjective onto R^cols.
bool left_mul_injective(const std::shared_ptr<const Ring>& ring, const Mat& M, const Caps& caps = {});
bool left_mul_surjective(const std::shared_ptr<const Ring>& ring, const Mat& M, const Caps& caps = {});

}  // namespace stein
