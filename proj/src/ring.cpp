#include "stein/ring.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace stein {

namespace {

int igcd(int a, int b) { return std::gcd(a, b); }

/// Extended gcd over Z: returns g and x, y with a x + b y = g.
long long egcd(long long a, long long b, long long& x, long long& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return a;
  }
  long long x1, y1;
  long long g = egcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

long long mod_pos(long long v, long long n) {
  v %= n;
  return v < 0 ? v + n : v;
}

}  // namespace

std::shared_ptr<const Ring> Ring::modular(int n) {
  if (n < 2 || n > kMaxSize) throw SchemaError("modular ring size out of range [2,256]: " + std::to_string(n));
  auto r = std::shared_ptr<Ring>(new Ring());
  r->n_ = n;
  r->mod_ = n;
  r->add_.resize(static_cast<size_t>(n) * n);
  r->mul_.resize(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      r->add_[a * n + b] = (a + b) % n;
      r->mul_[a * n + b] = (a * b) % n;
    }
  r->labels_.resize(n);
  for (int a = 0; a < n; ++a) r->labels_[a] = std::to_string(a);
  r->finish();
  return r;
}

std::shared_ptr<const Ring> Ring::from_tables(std::vector<std::string> labels,
                                              const std::vector<std::vector<int>>& add,
                                              const std::vector<std::vector<int>>& mul) {
  const int n = static_cast<int>(labels.size());
  if (n < 2 || n > kMaxSize) throw SchemaError("table ring size out of range [2,256]: " + std::to_string(n));
  std::set<std::string> seen(labels.begin(), labels.end());
  if (static_cast<int>(seen.size()) != n) throw SchemaError("table ring labels not distinct");
  auto check_table = [n](const std::vector<std::vector<int>>& t, const char* name) {
    if (static_cast<int>(t.size()) != n) throw SchemaError(std::string(name) + " table must have one row per element");
    for (const auto& row : t) {
      if (static_cast<int>(row.size()) != n) throw SchemaError(std::string(name) + " table row has wrong length");
      for (int v : row)
        if (v < 0 || v >= n) throw SchemaError(std::string(name) + " table entry out of range");
    }
  };
  check_table(add, "add");
  check_table(mul, "mul");
  auto r = std::shared_ptr<Ring>(new Ring());
  r->n_ = n;
  r->mod_ = 0;
  r->labels_ = std::move(labels);
  r->add_.resize(static_cast<size_t>(n) * n);
  r->mul_.resize(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      r->add_[a * n + b] = add[a][b];
      r->mul_[a * n + b] = mul[a][b];
    }
  r->finish();
  return r;
}

void Ring::finish() {
  const int n = n_;
  auto bad = [this](const std::string& law, int a, int b, int c) {
    std::string w = law + " fails at (" + labels_[a] + "," + labels_[b];
    if (c >= 0) w += "," + labels_[c];
    w += ")";
    throw AxiomViolation("ring", w);
  };

  // zero: the unique additive identity
  zero_ = -1;
  for (int z = 0; z < n; ++z) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = add(z, a) == a && add(a, z) == a;
    if (ok) {
      zero_ = z;
      break;
    }
  }
  if (zero_ < 0) throw AxiomViolation("ring", "no additive identity");

  // additive group: commutativity, associativity, inverses
  neg_.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (add(a, b) != add(b, a)) bad("additive commutativity", a, b, -1);
      if (add(a, b) == zero_) neg_[a] = b;
    }
  for (int a = 0; a < n; ++a)
    if (neg_[a] < 0) throw AxiomViolation("ring", "no additive inverse for " + labels_[a]);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (add(add(a, b), c) != add(a, add(b, c))) bad("additive associativity", a, b, c);

  // one: the unique multiplicative identity
  one_ = -1;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = mul(e, a) == a && mul(a, e) == a;
    if (ok) {
      one_ = e;
      break;
    }
  }
  if (one_ < 0) throw AxiomViolation("ring", "no multiplicative identity");
  if (one_ == zero_) throw AxiomViolation("ring", "1 = 0");

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (mul(a, b) != mul(b, a)) bad("multiplicative commutativity", a, b, -1);
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) bad("multiplicative associativity", a, b, c);
        if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c))) bad("distributivity", a, b, c);
      }

  inv_.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (mul(a, b) == one_) inv_[a] = b;
  units_.clear();
  idempotents_.clear();
  for (int a = 0; a < n; ++a) {
    if (inv_[a] >= 0) units_.push_back(a);
    if (mul(a, a) == a) idempotents_.push_back(a);
  }
}

int Ring::inv(int a) const {
  if (inv_[a] < 0) throw TheoremViolation("inverse of non-unit requested: " + labels_[a]);
  return inv_[a];
}

std::optional<int> Ring::find(const std::string& label) const {
  for (int a = 0; a < n_; ++a)
    if (labels_[a] == label) return a;
  return std::nullopt;
}

std::string Ring::describe() const {
  if (is_modular()) return "Z/" + std::to_string(mod_);
  return "table ring";
}

// ---------------------------------------------------------------------------
// Howell form over Z/n.
//
// Triangular working state: slot c holds a row whose leading nonzero entry
// sits in column c and equals a divisor of n. Insertion reduces an incoming
// row against the slots; pivot collisions are resolved with a Bezout
// combination so pivots only ever shrink (in divisibility). A closure pass
// inserts (n/p) * row for every pivot row, which is what makes column-wise
// membership reduction complete over a non-field Z/n.
// ---------------------------------------------------------------------------

namespace {

struct HowellState {
  int n, cols;
  std::vector<std::vector<int>> slot;  // size cols; empty vector = free slot

  explicit HowellState(int n_, int cols_) : n(n_), cols(cols_), slot(cols_) {}

  void scale_row(std::vector<int>& r, long long k) const {
    for (int& v : r) v = static_cast<int>(mod_pos(static_cast<long long>(v) * k, n));
  }
  void sub_scaled(std::vector<int>& r, const std::vector<int>& s, long long k) const {
    for (int c = 0; c < cols; ++c)
      r[c] = static_cast<int>(mod_pos(r[c] - static_cast<long long>(k) * s[c], n));
  }

  /// Multiply by the unit that turns r[c] into gcd(r[c], n).
  void normalise(std::vector<int>& r, int c) const {
    const int d = igcd(r[c], n);
    if (r[c] == d) return;
    // a/d is invertible mod n/d; lift to a unit mod n (classic: add multiples
    // of n/d until coprime with n). n <= 256 so the scan is trivial.
    const int a = r[c];
    for (int u = 1; u < n; ++u) {
      if (igcd(u, n) == 1 && static_cast<int>(mod_pos(static_cast<long long>(u) * a, n)) == d) {
        scale_row(r, u);
        return;
      }
    }
    throw TheoremViolation("howell: no unit normaliser found");
  }

  void insert(std::vector<int> r) {
    for (int c = 0; c < cols; ++c) {
      if (r[c] == 0) continue;
      if (slot[c].empty()) {
        normalise(r, c);
        slot[c] = std::move(r);
        return;
      }
      const int p = slot[c][c];
      if (r[c] % p == 0) {
        sub_scaled(r, slot[c], r[c] / p);
      } else {
        long long x, y;
        const long long g = egcd(p, r[c], x, y);
        std::vector<int> combo(cols, 0);
        for (int k = 0; k < cols; ++k)
          combo[k] = static_cast<int>(
              mod_pos(x * slot[c][k] + y * static_cast<long long>(r[k]), n));
        // combo has entry g at column c with g | p | n
        std::vector<int> old = std::move(slot[c]);
        slot[c].clear();
        normalise(combo, c);
        const int newp = combo[c];
        slot[c] = std::move(combo);
        sub_scaled(old, slot[c], p / newp);
        sub_scaled(r, slot[c], r[c] / newp);
        insert(std::move(old));
      }
    }
  }

  void close_and_reduce() {
    // Howell closure: the annihilator multiple of each pivot row must lie in
    // the span of the later slots. Iterate to a fixed point.
    bool changed = true;
    while (changed) {
      changed = false;
      for (int c = 0; c < cols; ++c) {
        if (slot[c].empty()) continue;
        const int p = slot[c][c];
        if (p == 0 || n % p != 0) throw TheoremViolation("howell: pivot must divide modulus");
        std::vector<int> ann = slot[c];
        scale_row(ann, n / p);
        // ann[c] == 0; inserting may fill a free slot or be absorbed
        auto before = slot;
        insert(std::move(ann));
        if (slot != before) changed = true;
      }
    }
    // reduce entries above each pivot modulo the pivot
    for (int c = 0; c < cols; ++c) {
      if (slot[c].empty()) continue;
      const int p = slot[c][c];
      for (int c2 = 0; c2 < c; ++c2) {
        if (slot[c2].empty()) continue;
        sub_scaled(slot[c2], slot[c], slot[c2][c] / p);
        if (slot[c2][c] >= p) throw TheoremViolation("howell: reduction failed");
      }
    }
  }

  std::vector<std::vector<int>> rows() const {
    std::vector<std::vector<int>> out;
    for (int c = 0; c < cols; ++c)
      if (!slot[c].empty()) out.push_back(slot[c]);
    return out;
  }
  std::vector<int> pivots() const {
    std::vector<int> out;
    for (int c = 0; c < cols; ++c)
      if (!slot[c].empty()) out.push_back(c);
    return out;
  }

  /// Reduce v against the slots; returns true iff it reduces to zero.
  /// `trace` (optional, length cols) accumulates the coefficients used.
  bool reduces_to_zero(std::vector<int> v, std::vector<long long>* used_right = nullptr,
                       int left_cols = -1) const {
    if (left_cols < 0) left_cols = cols;
    for (int c = 0; c < left_cols; ++c) {
      if (v[c] == 0) continue;
      if (slot[c].empty()) return false;
      const int p = slot[c][c];
      if (v[c] % p != 0) return false;
      sub_scaled(v, slot[c], v[c] / p);
    }
    if (used_right) {
      for (int c = left_cols; c < cols; ++c) (*used_right)[c - left_cols] = v[c];
    }
    for (int c = 0; c < left_cols; ++c)
      if (v[c] != 0) return false;
    return true;
  }
};

std::vector<std::vector<int>> howell_rows(int n, int cols, const std::vector<std::vector<int>>& gens) {
  HowellState st(n, cols);
  for (const auto& g : gens) st.insert(g);
  st.close_and_reduce();
  return st.rows();
}

/// Full-module test: Howell form is exactly the identity rows.
bool howell_full(int n, int cols, const std::vector<std::vector<int>>& howell) {
  if (static_cast<int>(howell.size()) != cols) return false;
  for (int c = 0; c < cols; ++c) {
    for (int k = 0; k < cols; ++k)
      if (howell[c][k] != (k == c ? 1 : 0)) return false;
  }
  return true;
}

bool howell_contains(int n, int cols, const std::vector<std::vector<int>>& howell,
                     const std::vector<int>& v) {
  HowellState st(n, cols);
  for (const auto& r : howell) {
    int lead = 0;
    while (lead < cols && r[lead] == 0) ++lead;
    if (lead < cols) st.slot[lead] = r;
  }
  return st.reduces_to_zero(v);
}

/// Enumerate all vectors of length `len` over the ring; calls f on each.
/// Throws CapExceeded past caps.budget.
template <typename F>
void enumerate_vectors(const Ring& ring, int len, const Caps& caps, F&& f) {
  long long total = 1;
  for (int i = 0; i < len; ++i) {
    total *= ring.size();
    if (total > caps.budget)
      throw CapExceeded("vector enumeration " + std::to_string(len) + " coordinates over |R|=" +
                        std::to_string(ring.size()) + " exceeds budget");
  }
  std::vector<int> v(len, 0);
  for (long long k = 0; k < total; ++k) {
    f(v);
    for (int i = 0; i < len; ++i) {
      if (++v[i] < ring.size()) break;
      v[i] = 0;
    }
  }
}

}  // namespace

RowSpan::RowSpan(std::shared_ptr<const Ring> ring, int cols,
                 const std::vector<std::vector<int>>& gens, const Caps& caps)
    : ring_(std::move(ring)), cols_(cols), modular_(ring_->is_modular()) {
  for (const auto& g : gens)
    if (static_cast<int>(g.size()) != cols) throw TheoremViolation("row span: generator length mismatch");
  if (modular_) {
    canon_ = howell_rows(ring_->modulus(), cols_, gens);
    for (const auto& r : canon_) {
      int lead = 0;
      while (lead < cols_ && r[lead] == 0) ++lead;
      pivot_col_.push_back(lead);
    }
    return;
  }
  // table ring: materialise the span by closure under + and scalar action
  std::set<std::vector<int>> span;
  span.insert(std::vector<int>(cols_, ring_->zero()));
  std::vector<std::vector<int>> work(span.begin(), span.end());
  std::vector<std::vector<int>> scaled_gens;
  for (const auto& g : gens)
    for (int t = 0; t < ring_->size(); ++t) {
      std::vector<int> s(cols_);
      for (int c = 0; c < cols_; ++c) s[c] = ring_->mul(t, g[c]);
      scaled_gens.push_back(std::move(s));
    }
  while (!work.empty()) {
    auto v = std::move(work.back());
    work.pop_back();
    for (const auto& s : scaled_gens) {
      std::vector<int> w(cols_);
      for (int c = 0; c < cols_; ++c) w[c] = ring_->add(v[c], s[c]);
      if (span.insert(w).second) {
        if (static_cast<long long>(span.size()) > caps.budget)
          throw CapExceeded("table-ring span closure exceeds budget");
        work.push_back(std::move(w));
      }
    }
  }
  canon_.assign(span.begin(), span.end());
}

bool RowSpan::contains(const std::vector<int>& v) const {
  if (static_cast<int>(v.size()) != cols_) throw TheoremViolation("row span: query length mismatch");
  if (modular_) return howell_contains(ring_->modulus(), cols_, canon_, v);
  return std::binary_search(canon_.begin(), canon_.end(), v);
}

bool RowSpan::equals(const RowSpan& other) const {
  return cols_ == other.cols_ && canon_ == other.canon_;
}

bool RowSpan::is_full() const {
  if (modular_) return howell_full(ring_->modulus(), cols_, canon_);
  long long want = 1;
  for (int c = 0; c < cols_; ++c) {
    want *= ring_->size();
    if (want > static_cast<long long>(canon_.size())) break;
  }
  return static_cast<long long>(canon_.size()) == want;
}

SolveResult howell_solve(const std::shared_ptr<const Ring>& ring, const Mat& M,
                         const std::vector<int>& b, const Caps& caps) {
  if (static_cast<int>(b.size()) != M.rows) throw TheoremViolation("howell_solve: b length != rows");
  SolveResult res;
  {
    std::vector<std::vector<int>> rows;
    for (int r = 0; r < M.rows; ++r) rows.push_back(M.row(r));
    RowSpan span(ring, M.cols, rows, caps);
    res.row_span_basis = span.canonical_rows();
  }
  if (ring->is_modular()) {
    // Solve M x = b as a row problem over M^T augmented with I:
    // rows (col_j(M), e_j); reduce (b | 0); x = -(right residue).
    const int n = ring->modulus();
    const int lc = M.rows, rc = M.cols;
    HowellState st(n, lc + rc);
    for (int j = 0; j < M.cols; ++j) {
      std::vector<int> row(lc + rc, 0);
      for (int r = 0; r < M.rows; ++r) row[r] = M.at(r, j);
      row[lc + j] = 1;
      st.insert(std::move(row));
    }
    st.close_and_reduce();
    std::vector<int> v(lc + rc, 0);
    for (int r = 0; r < M.rows; ++r) v[r] = b[r];
    std::vector<long long> right(rc, 0);
    if (st.reduces_to_zero(v, &right, lc)) {
      res.solvable = true;
      res.x.resize(rc);
      for (int j = 0; j < rc; ++j) res.x[j] = static_cast<int>(mod_pos(-right[j], n));
    }
    return res;
  }
  // table ring: bounded enumeration of x
  bool found = false;
  std::vector<int> sol;
  enumerate_vectors(*ring, M.cols, caps, [&](const std::vector<int>& x) {
    if (found) return;
    for (int r = 0; r < M.rows; ++r) {
      int acc = ring->zero();
      for (int c = 0; c < M.cols; ++c) acc = ring->add(acc, ring->mul(M.at(r, c), x[c]));
      if (acc != b[r]) return;
    }
    found = true;
    sol = x;
  });
  res.solvable = found;
  res.x = sol;
  return res;
}

std::vector<std::vector<int>> enumerate_span(const std::shared_ptr<const Ring>& ring, int cols,
                                             const std::vector<std::vector<int>>& gens,
                                             const Caps& caps) {
  RowSpan span(ring, cols, gens, caps);
  if (!ring->is_modular()) return span.canonical_rows();
  const auto& rows = span.canonical_rows();
  long long count = 1;
  for (size_t i = 0; i < rows.size(); ++i) {
    count *= ring->size();
    if (count > caps.budget) throw CapExceeded("span enumeration exceeds budget");
  }
  std::set<std::vector<int>> out;
  std::vector<int> t(rows.size(), 0);
  while (true) {
    std::vector<int> v(cols, 0);
    for (size_t r = 0; r < rows.size(); ++r)
      for (int c = 0; c < cols; ++c) v[c] = ring->add(v[c], ring->mul(t[r], rows[r][c]));
    out.insert(std::move(v));
    size_t k = 0;
    while (k < rows.size() && ++t[k] == ring->size()) t[k++] = 0;
    if (k == rows.size()) break;
  }
  return {out.begin(), out.end()};
}

std::vector<std::vector<int>> left_kernel(const std::shared_ptr<const Ring>& ring, const Mat& M,
                                          const Caps& caps) {
  std::vector<std::vector<int>> out;
  if (ring->is_modular()) {
    const int n = ring->modulus();
    const int lc = M.cols, rc = M.rows;
    HowellState st(n, lc + rc);
    for (int r = 0; r < M.rows; ++r) {
      std::vector<int> row(lc + rc, 0);
      for (int c = 0; c < M.cols; ++c) row[c] = M.at(r, c);
      row[lc + r] = 1;
      st.insert(std::move(row));
    }
    st.close_and_reduce();
    for (const auto& row : st.rows()) {
      bool left_zero = true;
      for (int c = 0; c < lc; ++c)
        if (row[c] != 0) {
          left_zero = false;
          break;
        }
      if (left_zero) out.emplace_back(row.begin() + lc, row.end());
    }
    return out;
  }
  enumerate_vectors(*ring, M.rows, caps, [&](const std::vector<int>& x) {
    for (int c = 0; c < M.cols; ++c) {
      int acc = ring->zero();
      for (int r = 0; r < M.rows; ++r) acc = ring->add(acc, ring->mul(x[r], M.at(r, c)));
      if (acc != ring->zero()) return;
    }
    bool zero = std::all_of(x.begin(), x.end(), [&](int v) { return v == ring->zero(); });
    if (!zero) out.push_back(x);
  });
  return out;
}

bool left_mul_injective(const std::shared_ptr<const Ring>& ring, const Mat& M, const Caps& caps) {
  return left_kernel(ring, M, caps).empty();
}

bool left_mul_surjective(const std::shared_ptr<const Ring>& ring, const Mat& M, const Caps& caps) {
  std::vector<std::vector<int>> rows;
  for (int r = 0; r < M.rows; ++r) rows.push_back(M.row(r));
  return RowSpan(ring, M.cols, rows, caps).is_full();
}

}  // namespace stein
