#include "stein/steinberg.hpp"

namespace stein {

SteinbergAlgebra::SteinbergAlgebra(CocycleTwist twist, const Caps& caps)
    : twist_(std::move(twist)), caps_(caps) {}

SteinbergAlgebra::Elt SteinbergAlgebra::delta(int arrow) const {
  return delta(arrow, twist_.ring->one());
}

SteinbergAlgebra::Elt SteinbergAlgebra::delta(int arrow, int coeff) const {
  Elt e = zero();
  e[arrow] = coeff;
  return e;
}

SteinbergAlgebra::Elt SteinbergAlgebra::identity() const {
  Elt e = zero();
  for (int u : twist_.gpd->units()) e[u] = twist_.ring->one();
  return e;
}

SteinbergAlgebra::Elt SteinbergAlgebra::indicator(const std::vector<int>& arrows) const {
  Elt e = zero();
  for (int a : arrows) e[a] = twist_.ring->one();
  return e;
}

SteinbergAlgebra::Elt SteinbergAlgebra::add(const Elt& a, const Elt& b) const {
  Elt r(dim());
  for (int i = 0; i < dim(); ++i) r[i] = twist_.ring->add(a[i], b[i]);
  return r;
}

SteinbergAlgebra::Elt SteinbergAlgebra::sub(const Elt& a, const Elt& b) const {
  Elt r(dim());
  for (int i = 0; i < dim(); ++i) r[i] = twist_.ring->sub(a[i], b[i]);
  return r;
}

SteinbergAlgebra::Elt SteinbergAlgebra::neg(const Elt& a) const {
  Elt r(dim());
  for (int i = 0; i < dim(); ++i) r[i] = twist_.ring->neg(a[i]);
  return r;
}

SteinbergAlgebra::Elt SteinbergAlgebra::scale(int t, const Elt& a) const {
  Elt r(dim());
  for (int i = 0; i < dim(); ++i) r[i] = twist_.ring->mul(t, a[i]);
  return r;
}

SteinbergAlgebra::Elt SteinbergAlgebra::convolve(const Elt& a, const Elt& b) const {
  const Ring& R = *twist_.ring;
  const Groupoid& G = *twist_.gpd;
  Elt r = zero();
  for (int x = 0; x < dim(); ++x) {
    if (a[x] == R.zero()) continue;
    for (int y = 0; y < dim(); ++y) {
      if (b[y] == R.zero()) continue;
      const int xy = G.compose(x, y);
      if (xy < 0) continue;
      r[xy] = R.add(r[xy], R.mul(R.mul(a[x], b[y]), twist_.w(x, y)));
    }
  }
  return r;
}

bool SteinbergAlgebra::is_zero(const Elt& a) const {
  for (int v : a)
    if (v != twist_.ring->zero()) return false;
  return true;
}

std::vector<int> SteinbergAlgebra::support(const Elt& a) const {
  std::vector<int> out;
  for (int i = 0; i < dim(); ++i)
    if (a[i] != twist_.ring->zero()) out.push_back(i);
  return out;
}

SteinbergAlgebra::Elt SteinbergAlgebra::component(const Elt& a, int g) const {
  Elt r = zero();
  for (int i = 0; i < dim(); ++i)
    if (twist_.gpd->degree(i) == g) r[i] = a[i];
  return r;
}

std::optional<int> SteinbergAlgebra::homogeneous_degree(const Elt& a) const {
  std::optional<int> deg;
  for (int i = 0; i < dim(); ++i) {
    if (a[i] == twist_.ring->zero()) continue;
    const int g = twist_.gpd->degree(i);
    if (deg && *deg != g) return std::nullopt;
    deg = g;
  }
  return deg ? deg : std::optional<int>(twist_.gpd->gamma().identity());
}

SteinbergAlgebra::Elt SteinbergAlgebra::diagonal_part(const Elt& a) const {
  Elt r = zero();
  for (int u : twist_.gpd->units()) r[u] = a[u];
  return r;
}

bool SteinbergAlgebra::in_diagonal(const Elt& a) const {
  return a == diagonal_part(a);
}

std::string SteinbergAlgebra::show(const Elt& a) const {
  return to_structured().show(a);
}

const StructuredAlgebra& SteinbergAlgebra::to_structured() const {
  if (structured_) return *structured_;
  const Groupoid& G = *twist_.gpd;
  StructuredAlgebra::Data d;
  d.ring = twist_.ring;
  d.gamma = G.gamma_ptr();
  d.deg.resize(dim());
  d.mul.assign(dim(), std::vector<Elt>(dim()));
  for (int i = 0; i < dim(); ++i) {
    d.basis.push_back(G.label(i));
    d.deg[i] = G.degree(i);
    for (int j = 0; j < dim(); ++j) d.mul[i][j] = convolve(delta(i), delta(j));
  }
  for (int u : G.units()) {
    d.c_gens.push_back(delta(u));
  }
  d.p_rows.resize(dim());
  for (int i = 0; i < dim(); ++i) d.p_rows[i] = diagonal_part(delta(i));
  structured_ = std::make_shared<const StructuredAlgebra>(
      StructuredAlgebra::validate(std::move(d), caps_));
  return *structured_;
}

}  // namespace stein
