#include "stein/algebra.hpp"

#include <algorithm>

namespace stein {

StructuredAlgebra StructuredAlgebra::validate(Data d, const Caps& caps) {
  if (!d.ring || !d.gamma) throw SchemaError("algebra needs a ring and a grading group");
  const int n = static_cast<int>(d.basis.size());
  if (n <= 0) throw SchemaError("algebra basis is empty");
  const Ring& R = *d.ring;
  if (static_cast<int>(d.deg.size()) != n) throw SchemaError("degree list length mismatch");
  for (int g : d.deg)
    if (g < 0 || g >= d.gamma->size()) throw SchemaError("basis degree out of range");
  if (static_cast<int>(d.mul.size()) != n) throw SchemaError("structure table has wrong shape");
  for (const auto& row : d.mul) {
    if (static_cast<int>(row.size()) != n) throw SchemaError("structure table has wrong shape");
    for (const auto& e : row) {
      if (static_cast<int>(e.size()) != n) throw SchemaError("structure entry has wrong length");
      for (int v : e)
        if (v < 0 || v >= R.size()) throw SchemaError("structure coefficient out of range");
    }
  }
  for (const auto& g : d.c_gens) {
    if (static_cast<int>(g.size()) != n) throw SchemaError("subalgebra generator has wrong length");
    for (int v : g)
      if (v < 0 || v >= R.size()) throw SchemaError("subalgebra coefficient out of range");
  }
  if (!d.p_rows.empty()) {
    if (static_cast<int>(d.p_rows.size()) != n) throw SchemaError("expectation table has wrong shape");
    for (const auto& r : d.p_rows) {
      if (static_cast<int>(r.size()) != n) throw SchemaError("expectation row has wrong length");
      for (int v : r)
        if (v < 0 || v >= R.size()) throw SchemaError("expectation coefficient out of range");
    }
  }

  StructuredAlgebra a;
  a.d_ = std::move(d);
  a.caps_ = caps;

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int dij = a.d_.gamma->mul(a.d_.deg[i], a.d_.deg[j]);
      for (int k = 0; k < n; ++k)
        if (a.d_.mul[i][j][k] != R.zero() && a.d_.deg[k] != dij)
          throw AxiomViolation("grading", "product " + a.d_.basis[i] + "*" + a.d_.basis[j] +
                                              " leaves the degree fiber at " + a.d_.basis[k]);
    }

  // bilinearity makes basis triples decisive
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (a.mul(a.d_.mul[i][j], a.basis_elt(k)) != a.mul(a.basis_elt(i), a.d_.mul[j][k]))
          throw AxiomViolation("associativity", "(" + a.d_.basis[i] + "*" + a.d_.basis[j] + ")*" +
                                                    a.d_.basis[k] + " differs from " + a.d_.basis[i] +
                                                    "*(" + a.d_.basis[j] + "*" + a.d_.basis[k] + ")");

  a.c_span_ = std::make_shared<RowSpan>(a.d_.ring, n, a.d_.c_gens, caps);
  for (const auto& x : a.d_.c_gens)
    for (const auto& y : a.d_.c_gens) {
      if (a.mul(x, y) != a.mul(y, x))
        throw AxiomViolation("subalgebra", "generators " + a.show(x) + " and " + a.show(y) +
                                               " of C do not commute");
      if (!a.c_span_->contains(a.mul(x, y)))
        throw AxiomViolation("subalgebra", "C is not closed under multiplication at " + a.show(x) +
                                               " * " + a.show(y));
    }
  return a;
}

StructuredAlgebra::Elt StructuredAlgebra::basis_elt(int i) const {
  Elt e(dim(), d_.ring->zero());
  e[i] = d_.ring->one();
  return e;
}

bool StructuredAlgebra::is_zero(const Elt& a) const {
  for (int v : a)
    if (v != d_.ring->zero()) return false;
  return true;
}

StructuredAlgebra::Elt StructuredAlgebra::add(const Elt& a, const Elt& b) const {
  Elt r(dim());
  for (int i = 0; i < dim(); ++i) r[i] = d_.ring->add(a[i], b[i]);
  return r;
}

StructuredAlgebra::Elt StructuredAlgebra::sub(const Elt& a, const Elt& b) const {
  Elt r(dim());
  for (int i = 0; i < dim(); ++i) r[i] = d_.ring->sub(a[i], b[i]);
  return r;
}

StructuredAlgebra::Elt StructuredAlgebra::neg(const Elt& a) const {
  Elt r(dim());
  for (int i = 0; i < dim(); ++i) r[i] = d_.ring->neg(a[i]);
  return r;
}

StructuredAlgebra::Elt StructuredAlgebra::scale(int t, const Elt& a) const {
  Elt r(dim());
  for (int i = 0; i < dim(); ++i) r[i] = d_.ring->mul(t, a[i]);
  return r;
}

StructuredAlgebra::Elt StructuredAlgebra::mul(const Elt& a, const Elt& b) const {
  const Ring& R = *d_.ring;
  Elt r(dim(), R.zero());
  for (int i = 0; i < dim(); ++i) {
    if (a[i] == R.zero()) continue;
    for (int j = 0; j < dim(); ++j) {
      if (b[j] == R.zero()) continue;
      const int c = R.mul(a[i], b[j]);
      const Elt& sij = d_.mul[i][j];
      for (int k = 0; k < dim(); ++k)
        if (sij[k] != R.zero()) r[k] = R.add(r[k], R.mul(c, sij[k]));
    }
  }
  return r;
}

StructuredAlgebra::Elt StructuredAlgebra::apply_p(const Elt& a) const {
  if (!has_expectation()) throw TheoremViolation("no expectation attached to this algebra");
  const Ring& R = *d_.ring;
  Elt r(dim(), R.zero());
  for (int i = 0; i < dim(); ++i) {
    if (a[i] == R.zero()) continue;
    for (int k = 0; k < dim(); ++k)
      if (d_.p_rows[i][k] != R.zero()) r[k] = R.add(r[k], R.mul(a[i], d_.p_rows[i][k]));
  }
  return r;
}

StructuredAlgebra::Elt StructuredAlgebra::component(const Elt& a, int g) const {
  Elt r(dim(), d_.ring->zero());
  for (int i = 0; i < dim(); ++i)
    if (d_.deg[i] == g) r[i] = a[i];
  return r;
}

std::vector<int> StructuredAlgebra::support_degrees(const Elt& a) const {
  std::vector<int> out;
  for (int g = 0; g < d_.gamma->size(); ++g) {
    bool hit = false;
    for (int i = 0; i < dim() && !hit; ++i)
      if (d_.deg[i] == g && a[i] != d_.ring->zero()) hit = true;
    if (hit) out.push_back(g);
  }
  return out;
}

std::optional<int> StructuredAlgebra::homogeneous_degree(const Elt& a) const {
  auto degs = support_degrees(a);
  if (degs.empty()) return d_.gamma->identity();
  if (degs.size() == 1) return degs.front();
  return std::nullopt;
}

std::vector<int> StructuredAlgebra::fiber_basis(int g) const {
  std::vector<int> out;
  for (int i = 0; i < dim(); ++i)
    if (d_.deg[i] == g) out.push_back(i);
  return out;
}

const std::vector<StructuredAlgebra::Elt>& StructuredAlgebra::c_elements() const {
  if (!c_elems_)
    c_elems_ = std::make_shared<const std::vector<Elt>>(
        enumerate_span(d_.ring, dim(), d_.c_gens, caps_));
  return *c_elems_;
}

std::string StructuredAlgebra::show(const Elt& a) const {
  std::string out;
  for (int i = 0; i < dim(); ++i) {
    if (a[i] == d_.ring->zero()) continue;
    if (!out.empty()) out += " + ";
    if (a[i] == d_.ring->one())
      out += d_.basis[i];
    else
      out += d_.ring->label(a[i]) + "*" + d_.basis[i];
  }
  return out.empty() ? "0" : out;
}

}  // namespace stein
