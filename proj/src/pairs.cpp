#include "stein/pairs.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace stein {

namespace {

using Elt = StructuredAlgebra::Elt;

// Whether m certifies n as a normaliser: mnm = m, nmn = n, and both nCm and
// mCn stay inside C (checked on the module generators of C).
bool is_partner(const StructuredAlgebra& a, const Elt& n, const Elt& m) {
  if (a.mul(a.mul(m, n), m) != m) return false;
  if (a.mul(a.mul(n, m), n) != n) return false;
  for (const Elt& c : a.c_gens())
    if (!a.in_c(a.mul(a.mul(n, c), m)) || !a.in_c(a.mul(a.mul(m, c), n))) return false;
  return true;
}

// Coefficient vectors supported on the given coordinates, in odometer
// order; includes the zero vector.
std::vector<Elt> vectors_on(const StructuredAlgebra& a, const std::vector<int>& coords) {
  long long total = 1;
  for (size_t i = 0; i < coords.size(); ++i) total *= a.ring().size();
  std::vector<Elt> out;
  out.reserve(static_cast<size_t>(total));
  for (long long v = 0; v < total; ++v) {
    Elt e = a.zero();
    long long x = v;
    for (size_t i = coords.size(); i-- > 0;) {
      e[coords[i]] = static_cast<int>(x % a.ring().size());
      x /= a.ring().size();
    }
    out.push_back(std::move(e));
  }
  return out;
}

long long pow_capped(long long base, int exp, long long cap) {
  long long r = 1;
  for (int i = 0; i < exp; ++i) {
    r *= base;
    if (r > cap) return cap + 1;
  }
  return r;
}

}  // namespace

std::vector<Elt> idempotents_of_c(const StructuredAlgebra& a) {
  std::vector<Elt> out;
  for (const Elt& e : a.c_elements())
    if (a.mul(e, e) == e) out.push_back(e);
  return out;
}

std::vector<Elt> atoms_of_c(const StructuredAlgebra& a) {
  const auto idem = idempotents_of_c(a);
  std::vector<Elt> out;
  for (const Elt& e : idem) {
    if (a.is_zero(e)) continue;
    bool minimal = true;
    for (const Elt& f : idem) {
      if (a.is_zero(f) || f == e) continue;
      if (a.mul(f, e) == f) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(e);
  }
  return out;
}

Check check_wt(const StructuredAlgebra& a) {
  const auto idem = idempotents_of_c(a);
  for (int t = 0; t < a.ring().size(); ++t) {
    if (t == a.ring().zero()) continue;
    for (const Elt& e : idem) {
      if (a.is_zero(e)) continue;
      if (a.is_zero(a.scale(t, e)))
        return {false, true,
                "scalar " + a.ring().label(t) + " kills the idempotent " + a.show(e)};
    }
  }
  return {true, true, ""};
}

Check check_local_units(const StructuredAlgebra& a) {
  const auto fib = a.fiber_basis(a.gamma().identity());
  for (const Elt& e : idempotents_of_c(a)) {
    bool unit = true;
    for (int b : fib) {
      const Elt eb = a.basis_elt(b);
      if (a.mul(e, eb) != eb || a.mul(eb, e) != eb) {
        unit = false;
        break;
      }
    }
    if (unit) return {true, true, ""};
  }
  return {false, true, "no idempotent of C is a two-sided unit for the identity fiber"};
}

Check check_c_spanned(const StructuredAlgebra& a) {
  const int eps = a.gamma().identity();
  for (const Elt& c : a.c_gens()) {
    const auto deg = a.homogeneous_degree(c);
    if (!deg || *deg != eps)
      return {false, true, "generator " + a.show(c) + " of C leaves the identity fiber"};
  }
  std::vector<std::vector<int>> gens;
  for (const Elt& e : idempotents_of_c(a)) gens.push_back(e);
  RowSpan span(a.ring_ptr(), a.dim(), gens, a.caps());
  if (!span.equals(a.c_span()))
    return {false, true, "C is not spanned by its idempotents"};
  return {true, true, ""};
}

NormaliserSemigroup::NormaliserSemigroup(StructuredAlgebra a, std::vector<Elt> elements)
    : a_(std::move(a)), elts_(std::move(elements)) {
  std::sort(elts_.begin(), elts_.end());
  elts_.erase(std::unique(elts_.begin(), elts_.end()), elts_.end());
  const int n = size();
  deg_.resize(n);
  for (int i = 0; i < n; ++i) {
    if (a_.is_zero(elts_[i])) zero_ = i;
    const auto d = a_.homogeneous_degree(elts_[i]);
    if (!d) throw TheoremViolation("normaliser set holds an inhomogeneous element");
    deg_[i] = *d;
  }
  if (zero_ < 0) throw TheoremViolation("normaliser set misses zero");
  mul_.assign(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) mul_[i][j] = index_of(a_.mul(elts_[i], elts_[j]));
  partners_.assign(n, {});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (is_partner(a_, elts_[i], elts_[j])) partners_[i].push_back(j);
}

int NormaliserSemigroup::index_of(const Elt& e) const {
  auto it = std::lower_bound(elts_.begin(), elts_.end(), e);
  if (it == elts_.end() || *it != e) return -1;
  return static_cast<int>(it - elts_.begin());
}

bool NormaliserSemigroup::leq(int i, int j) const {
  const int d = dagger(i);
  if (d < 0) return false;
  return elts_[i] == a_.mul(elts_[j], a_.mul(elts_[d], elts_[i]));
}

bool NormaliserSemigroup::is_idempotent(int i) const { return mul_[i][i] == i; }

std::vector<int> NormaliserSemigroup::idempotent_indices() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (is_idempotent(i)) out.push_back(i);
  return out;
}

std::vector<int> NormaliserSemigroup::epsilon_indices() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (deg_[i] == a_.gamma().identity()) out.push_back(i);
  return out;
}

std::vector<int> NormaliserSemigroup::minimal_nonzero() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i) {
    if (i == zero_) continue;
    bool minimal = true;
    for (int j = 0; j < size(); ++j) {
      if (j == zero_ || j == i) continue;
      if (leq(j, i)) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(i);
  }
  return out;
}

SemigroupTables NormaliserSemigroup::tables() const {
  SemigroupTables t;
  t.n = size();
  t.zero = zero_;
  t.mul = mul_;
  t.dagger.resize(t.n);
  for (int i = 0; i < t.n; ++i) t.dagger[i] = dagger(i);
  return t;
}

Check NormaliserSemigroup::verify_laws() const {
  const int n = size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (mul_[i][j] < 0)
        return {false, true,
                "product " + a_.show(a_.mul(elts_[i], elts_[j])) + " of " + a_.show(elts_[i]) +
                    " and " + a_.show(elts_[j]) + " leaves the set"};
  for (int i = 0; i < n; ++i)
    if (partners_[i].size() != 1)
      return {false, true,
              a_.show(elts_[i]) + " has " + std::to_string(partners_[i].size()) + " partners"};
  for (int i = 0; i < n; ++i)
    if (dagger(dagger(i)) != i)
      return {false, true, "partner involution breaks at " + a_.show(elts_[i])};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (dagger(mul_[i][j]) != mul_[dagger(j)][dagger(i)])
        return {false, true,
                "partner of a product differs from the reversed partner product at " +
                    a_.show(elts_[i]) + ", " + a_.show(elts_[j])};
  std::vector<Elt> sg_idem;
  for (int i : idempotent_indices()) sg_idem.push_back(elts_[i]);
  if (sg_idem != idempotents_of_c(a_))
    return {false, true, "semigroup idempotents differ from the idempotents of C"};
  for (const Elt& e : sg_idem)
    for (const Elt& f : sg_idem)
      if (a_.mul(e, f) != a_.mul(f, e))
        return {false, true, "idempotents " + a_.show(e) + " and " + a_.show(f) + " do not commute"};
  return {true, true, ""};
}

NormaliserSemigroup normalisers_of(const StructuredAlgebra& a) {
  std::set<Elt> found;
  found.insert(a.zero());
  for (int g = 0; g < a.gamma().size(); ++g) {
    const auto fib = a.fiber_basis(g);
    if (fib.empty()) continue;
    const auto fib_inv = a.fiber_basis(a.gamma().inv(g));
    if (fib_inv.empty()) continue;
    const long long cand = pow_capped(a.ring().size(), static_cast<int>(fib.size()), a.caps().budget);
    const long long part =
        pow_capped(a.ring().size(), static_cast<int>(fib_inv.size()), a.caps().budget);
    if (cand > a.caps().budget || part > a.caps().budget || cand * part > a.caps().budget)
      throw CapExceeded("normaliser fiber scan");
    const auto candidates = vectors_on(a, fib);
    const auto partners = vectors_on(a, fib_inv);
    for (const Elt& n : candidates) {
      if (a.is_zero(n)) continue;
      for (const Elt& m : partners) {
        if (is_partner(a, n, m)) {
          found.insert(n);
          break;
        }
      }
    }
  }
  return NormaliserSemigroup(a, std::vector<Elt>(found.begin(), found.end()));
}

StructuredAlgebra epsilon_subalgebra(const StructuredAlgebra& a) {
  const int eps = a.gamma().identity();
  const auto fib = a.fiber_basis(eps);
  auto restrict_elt = [&](const Elt& v, const char* what) {
    Elt out(fib.size(), a.ring().zero());
    Elt check = a.zero();
    for (size_t i = 0; i < fib.size(); ++i) {
      out[i] = v[fib[i]];
      check[fib[i]] = v[fib[i]];
    }
    if (check != v) throw SchemaError(std::string(what) + " leaves the identity fiber");
    return out;
  };
  StructuredAlgebra::Data d;
  d.ring = a.ring_ptr();
  d.gamma = Group::trivial();
  d.deg.assign(fib.size(), d.gamma->identity());
  d.mul.assign(fib.size(), std::vector<Elt>(fib.size()));
  for (size_t i = 0; i < fib.size(); ++i) {
    d.basis.push_back(a.basis_name(fib[i]));
    for (size_t j = 0; j < fib.size(); ++j)
      d.mul[i][j] =
          restrict_elt(a.mul(a.basis_elt(fib[i]), a.basis_elt(fib[j])), "a basis product");
  }
  for (const Elt& c : a.c_gens()) d.c_gens.push_back(restrict_elt(c, "a generator of C"));
  if (a.has_expectation())
    for (int b : fib) d.p_rows.push_back(restrict_elt(a.apply_p(a.basis_elt(b)), "P of the fiber"));
  return StructuredAlgebra::validate(d, a.caps());
}

namespace {

// Checks that need no normaliser enumeration.
PairReport base_report(const StructuredAlgebra& a) {
  PairReport r;
  r.wt = check_wt(a);
  r.local_units = check_local_units(a);
  r.c_spanned = check_c_spanned(a);
  const auto idem = idempotents_of_c(a);
  r.idempotent_count = static_cast<int>(idem.size());
  r.atom_count = static_cast<int>(atoms_of_c(a).size());
  const int eps = a.gamma().identity();
  const auto fib = a.fiber_basis(eps);

  if (!a.has_expectation()) {
    r.expectation = {false, false, "no expectation supplied"};
  } else {
    r.expectation = {true, true, ""};
    for (int i = 0; i < a.dim() && r.expectation.ok; ++i)
      if (!a.in_c(a.apply_p(a.basis_elt(i))))
        r.expectation = {false, true, "P(" + a.basis_name(i) + ") leaves C"};
    for (const Elt& c : a.c_gens())
      if (r.expectation.ok && a.apply_p(c) != c)
        r.expectation = {false, true, "P moves " + a.show(c)};
    for (const Elt& c : a.c_gens())
      for (int b : fib)
        for (const Elt& cc : a.c_gens()) {
          if (!r.expectation.ok) break;
          const Elt x = a.mul(a.mul(c, a.basis_elt(b)), cc);
          const Elt y = a.mul(a.mul(c, a.apply_p(a.basis_elt(b))), cc);
          if (a.apply_p(x) != y)
            r.expectation = {false, true,
                             "bimodule law fails at (" + a.show(c) + ", " + a.basis_name(b) +
                                 ", " + a.show(cc) + ")"};
        }
  }

  // Maximal commutativity of C in the identity fiber: the centraliser is
  // the left kernel of the stacked commutator matrix over the fiber basis.
  try {
    Mat M(static_cast<int>(fib.size()), a.dim() * static_cast<int>(a.c_gens().size()),
          a.ring().zero());
    for (size_t bi = 0; bi < fib.size(); ++bi)
      for (size_t j = 0; j < a.c_gens().size(); ++j) {
        const Elt eb = a.basis_elt(fib[bi]);
        const Elt comm = a.sub(a.mul(eb, a.c_gens()[j]), a.mul(a.c_gens()[j], eb));
        for (int k = 0; k < a.dim(); ++k)
          M.at(static_cast<int>(bi), static_cast<int>(j) * a.dim() + k) = comm[k];
      }
    std::vector<std::vector<int>> embedded;
    for (const auto& row : left_kernel(a.ring_ptr(), M, a.caps())) {
      Elt full = a.zero();
      for (size_t bi = 0; bi < fib.size(); ++bi) full[fib[bi]] = row[bi];
      embedded.push_back(full);
    }
    RowSpan cent(a.ring_ptr(), a.dim(), embedded, a.caps());
    if (cent.equals(a.c_span())) {
      r.cartan = {true, true, ""};
    } else {
      r.cartan = {false, true, "C is not maximal commutative in the identity fiber"};
      for (const auto& v : embedded)
        if (!a.in_c(v)) {
          r.cartan.witness = a.show(v) + " centralises C but lies outside it";
          break;
        }
    }
  } catch (const CapExceeded& e) {
    r.cartan = {false, false, e.what()};
  }

  return r;
}

}  // namespace

PairReport classify_pair(const StructuredAlgebra& a, const NormaliserSemigroup& ns) {
  PairReport r = base_report(a);
  const auto idem = idempotents_of_c(a);
  const auto fib = a.fiber_basis(a.gamma().identity());

  try {
    r.n_star_size = ns.size();
    r.semigroup_laws = ns.verify_laws();
    const auto eps_idx = ns.epsilon_indices();
    r.n_eps_size = static_cast<int>(eps_idx.size());

    r.eps_spanned = {true, true, ""};
    {
      std::vector<std::vector<int>> gens;
      for (int i : eps_idx) gens.push_back(ns.elt(i));
      RowSpan span(a.ring_ptr(), a.dim(), gens, a.caps());
      for (int b : fib)
        if (!span.contains(a.basis_elt(b))) {
          r.eps_spanned = {false, true,
                           a.basis_name(b) + " is outside the span of the fiber normalisers"};
          break;
        }
    }

    {
      std::vector<std::vector<int>> gens;
      for (int i = 0; i < ns.size(); ++i) gens.push_back(ns.elt(i));
      RowSpan span(a.ring_ptr(), a.dim(), gens, a.caps());
      r.graded_span =
          span.is_full()
              ? Check{true, true, ""}
              : Check{false, true, "homogeneous normalisers span a proper submodule"};
    }

    if (!r.expectation.ok) {
      r.faithful = {false, r.expectation.decided, "expectation unavailable"};
      r.quasi_cartan = {false, r.expectation.decided, "expectation unavailable"};
    } else {
      r.faithful = {true, true, ""};
      const long long count =
          pow_capped(a.ring().size(), static_cast<int>(fib.size()), a.caps().budget);
      auto detected = [&](const Elt& v) {
        for (int i : eps_idx)
          if (!a.is_zero(a.apply_p(a.mul(ns.elt(i), v)))) return true;
        return false;
      };
      if (count <= a.caps().budget) {
        for (const Elt& v : vectors_on(a, fib)) {
          if (a.is_zero(v)) continue;
          if (!detected(v)) {
            r.faithful = {false, true, "P misses " + a.show(v)};
            break;
          }
        }
      } else {
        std::mt19937 rng(24251);
        std::uniform_int_distribution<int> coeff(0, a.ring().size() - 1);
        for (int trial = 0; trial < 2000 && r.faithful.ok; ++trial) {
          Elt v = a.zero();
          for (int b : fib) v[b] = coeff(rng);
          if (a.is_zero(v)) continue;
          if (!detected(v)) r.faithful = {false, true, "P misses " + a.show(v)};
        }
        r.faithful.decided = false;
      }

      r.quasi_cartan = {true, true, ""};
      for (int i : eps_idx) {
        const Elt n = ns.elt(i);
        const Elt p = a.apply_p(n);
        bool implemented = false;
        for (const Elt& e : idem)
          if (a.mul(n, e) == p && a.mul(e, n) == p) {
            implemented = true;
            break;
          }
        if (!implemented) {
          r.quasi_cartan = {false, true, "no idempotent of C implements P at " + a.show(n)};
          break;
        }
      }
    }

    r.diagonal = {true, true, ""};
    {
      std::vector<std::vector<int>> free;
      for (int i : eps_idx) {
        const Elt n = ns.elt(i);
        bool is_free = a.in_c(n);
        if (!is_free) {
          const int d = ns.dagger(i);
          if (d >= 0)
            is_free = a.is_zero(a.mul(a.mul(ns.elt(d), n), a.mul(n, ns.elt(d))));
        }
        if (r.semigroup_laws.ok) {
          const bool square_zero = a.in_c(n) || a.is_zero(a.mul(n, n));
          if (is_free != square_zero)
            throw TheoremViolation("free normaliser criteria disagree at " + a.show(n));
        }
        if (is_free) free.push_back(n);
      }
      RowSpan span(a.ring_ptr(), a.dim(), free, a.caps());
      for (int b : fib)
        if (!span.contains(a.basis_elt(b))) {
          r.diagonal = {false, true,
                        a.basis_name(b) + " is outside the span of the free normalisers"};
          break;
        }
    }
  } catch (const CapExceeded& e) {
    const Check undecided{false, false, e.what()};
    r.semigroup_laws = undecided;
    r.eps_spanned = undecided;
    r.graded_span = undecided;
    r.faithful = undecided;
    r.quasi_cartan = undecided;
    r.diagonal = undecided;
  }

  return r;
}

PairReport classify_pair(const StructuredAlgebra& a) {
  try {
    return classify_pair(a, normalisers_of(a));
  } catch (const CapExceeded& e) {
    PairReport r = base_report(a);
    const Check undecided{false, false, e.what()};
    r.semigroup_laws = undecided;
    r.eps_spanned = undecided;
    r.graded_span = undecided;
    r.faithful = undecided;
    r.quasi_cartan = undecided;
    r.diagonal = undecided;
    return r;
  }
}

}  // namespace stein
