#include "stein/twist.hpp"

#include <algorithm>
#include <set>

namespace stein {

CocycleTwist CocycleTwist::validate(std::shared_ptr<const Ring> ring,
                                    std::shared_ptr<const Groupoid> gpd,
                                    std::vector<int> omega) {
  const int n = gpd->size();
  if (static_cast<int>(omega.size()) != n * n) throw SchemaError("omega table has wrong size");
  const Ring& R = *ring;
  const Groupoid& G = *gpd;
  auto lbl = [&](int a) { return G.label(a); };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (G.compose(a, b) < 0) {
        omega[a * n + b] = R.one();
        continue;
      }
      const int v = omega[a * n + b];
      if (v < 0 || v >= R.size()) throw SchemaError("omega entry out of range");
      if (!R.is_unit(v))
        throw AxiomViolation("cocycle", "omega(" + lbl(a) + "," + lbl(b) + ") = " + R.label(v) + " is not a unit");
    }
  CocycleTwist t{std::move(ring), std::move(gpd), std::move(omega)};
  for (int a = 0; a < n; ++a) {
    if (t.w(G.rng(a), a) != R.one())
      throw AxiomViolation("cocycle", "normalisation fails at (r(" + lbl(a) + ")," + lbl(a) + ")");
    if (t.w(a, G.src(a)) != R.one())
      throw AxiomViolation("cocycle", "normalisation fails at (" + lbl(a) + ",s(" + lbl(a) + "))");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (G.src(a) != G.rng(b)) continue;
      const int ab = G.compose(a, b);
      for (int c = 0; c < n; ++c) {
        if (G.src(b) != G.rng(c)) continue;
        const int bc = G.compose(b, c);
        if (R.mul(t.w(a, b), t.w(ab, c)) != R.mul(t.w(b, c), t.w(a, bc)))
          throw AxiomViolation("cocycle", "cocycle identity fails at (" + lbl(a) + "," + lbl(b) + "," + lbl(c) + ")");
      }
    }
  return t;
}

CocycleTwist CocycleTwist::trivial(std::shared_ptr<const Ring> ring,
                                   std::shared_ptr<const Groupoid> gpd) {
  const int n = gpd->size();
  std::vector<int> omega(static_cast<size_t>(n) * n, ring->one());
  return validate(std::move(ring), std::move(gpd), std::move(omega));
}

CocycleTwist CocycleTwist::epsilon_subtwist(std::vector<int>* arrow_map) const {
  std::vector<int> old2new;
  auto sub = gpd->epsilon_subgroupoid(&old2new);
  const int m = sub->size();
  std::vector<int> om(static_cast<size_t>(m) * m, ring->one());
  for (int a = 0; a < gpd->size(); ++a)
    for (int b = 0; b < gpd->size(); ++b) {
      if (old2new[a] < 0 || old2new[b] < 0 || gpd->compose(a, b) < 0) continue;
      om[old2new[a] * m + old2new[b]] = w(a, b);
    }
  if (arrow_map) *arrow_map = old2new;
  return validate(ring, std::move(sub), std::move(om));
}

int ExplicitTwist::i_of(int base_unit, int ring_unit) const {
  const auto& units = ring->units();
  const auto it = std::find(units.begin(), units.end(), ring_unit);
  if (it == units.end()) throw TheoremViolation("i applied to non-unit scalar");
  const auto& row = i_tab[base_unit];
  if (row.empty()) throw TheoremViolation("i applied to non-unit arrow");
  return row[it - units.begin()];
}

int ExplicitTwist::action(int t, int s) const {
  const int r_unit = q_tab[sigma->rng(s)];
  const int res = sigma->compose(i_of(r_unit, t), s);
  if (res < 0) throw TheoremViolation("scalar action not composable");
  return res;
}

void validate_twist(const ExplicitTwist& t) {
  const Ring& R = *t.ring;
  const Groupoid& S = *t.sigma;
  const Groupoid& G = *t.base;
  const auto& units = R.units();
  const int nu = static_cast<int>(units.size());

  // structure: q totally defined, i rows exactly on base units
  if (static_cast<int>(t.q_tab.size()) != S.size())
    throw AxiomViolation("structure", "q must be defined on every Sigma arrow");
  for (int s = 0; s < S.size(); ++s)
    if (t.q_tab[s] < 0 || t.q_tab[s] >= G.size())
      throw AxiomViolation("structure", "q out of range at " + S.label(s));
  if (static_cast<int>(t.i_tab.size()) != G.size())
    throw AxiomViolation("structure", "i table must have one row per base arrow");
  for (int u = 0; u < G.size(); ++u) {
    const bool is_unit = G.is_unit(u);
    if (is_unit && static_cast<int>(t.i_tab[u].size()) != nu)
      throw AxiomViolation("structure", "i row at unit " + G.label(u) + " must list one arrow per ring unit");
    if (!is_unit && !t.i_tab[u].empty())
      throw AxiomViolation("structure", "i row present at non-unit " + G.label(u));
  }
  {
    const Group& A = S.gamma();
    const Group& B = G.gamma();
    bool same = &A == &B;
    if (!same && A.size() == B.size() && A.identity() == B.identity()) {
      same = true;
      for (int x = 0; same && x < A.size(); ++x) {
        if (A.label(x) != B.label(x)) same = false;
        for (int y = 0; same && y < A.size(); ++y)
          if (A.mul(x, y) != B.mul(x, y)) same = false;
      }
    }
    if (!same) throw AxiomViolation("structure", "Sigma and G must share the grading group");
  }

  // q is a homomorphism preserving src/rng and composability
  for (int s = 0; s < S.size(); ++s) {
    if (t.q_tab[S.src(s)] != G.src(t.q_tab[s]) || t.q_tab[S.rng(s)] != G.rng(t.q_tab[s]))
      throw AxiomViolation("structure", "q does not intertwine src/rng at " + S.label(s));
  }
  for (int a = 0; a < S.size(); ++a)
    for (int b = 0; b < S.size(); ++b) {
      const int ab = S.compose(a, b);
      if (ab < 0) continue;
      const int qq = G.compose(t.q_tab[a], t.q_tab[b]);
      if (qq < 0 || qq != t.q_tab[ab])
        throw AxiomViolation("structure", "q not multiplicative at (" + S.label(a) + "," + S.label(b) + ")");
    }

  // q restricts to a bijection of unit spaces
  {
    std::set<int> image;
    for (int u : S.units()) {
      if (!G.is_unit(t.q_tab[u]))
        throw AxiomViolation("structure", "q image of unit " + S.label(u) + " is not a unit");
      image.insert(t.q_tab[u]);
    }
    if (image.size() != S.units().size() || static_cast<int>(image.size()) != static_cast<int>(G.units().size()))
      throw AxiomViolation("structure", "q is not a bijection on unit spaces");
  }

  // i is injective, lands in isotropy over its unit, and is a bundle
  // homomorphism with i(u, 1) the Sigma unit over u
  {
    std::set<int> image;
    for (int u : G.units()) {
      for (int k = 0; k < nu; ++k) {
        const int s = t.i_tab[u][k];
        if (s < 0 || s >= S.size()) throw AxiomViolation("structure", "i entry out of range");
        if (!image.insert(s).second)
          throw AxiomViolation("DT1", "i is not injective (repeated arrow " + S.label(s) + ")");
        if (t.q_tab[s] != u)
          throw AxiomViolation("structure", "q(i(" + G.label(u) + "," + R.label(units[k]) + ")) != " + G.label(u));
      }
      const int at_one = t.i_of(u, R.one());
      if (!S.is_unit(at_one))
        throw AxiomViolation("structure", "i(" + G.label(u) + ",1) is not a unit of Sigma");
      for (int k = 0; k < nu; ++k)
        for (int k2 = 0; k2 < nu; ++k2) {
          const int prod = S.compose(t.i_tab[u][k], t.i_tab[u][k2]);
          if (prod < 0 || prod != t.i_of(u, R.mul(units[k], units[k2])))
            throw AxiomViolation("structure", "i not multiplicative at unit " + G.label(u));
        }
    }
    // Sigma units are exactly i(G^(0) x {1})
    for (int u : S.units()) {
      if (t.i_of(t.q_tab[u], R.one()) != u)
        throw AxiomViolation("structure", "Sigma unit " + S.label(u) + " is not i(u,1)");
    }
  }

  // DT1 exactness: the fiber over each base unit is exactly the i-image
  for (int u : G.units()) {
    std::set<int> fiber, image;
    for (int s = 0; s < S.size(); ++s)
      if (t.q_tab[s] == u) fiber.insert(s);
    for (int k = 0; k < nu; ++k) image.insert(t.i_tab[u][k]);
    if (fiber != image)
      throw AxiomViolation("DT1", "exactness fails over unit " + G.label(u) +
                                      ": q-fiber and i-image differ");
  }

  // DT2 (finite form): every fiber has |R^x| elements and the action is free
  for (int a = 0; a < G.size(); ++a) {
    int count = 0;
    for (int s = 0; s < S.size(); ++s)
      if (t.q_tab[s] == a) ++count;
    if (count != nu)
      throw AxiomViolation("DT2", "fiber over " + G.label(a) + " has " + std::to_string(count) +
                                      " arrows, expected " + std::to_string(nu));
  }
  for (int s = 0; s < S.size(); ++s)
    for (int k = 0; k < nu; ++k) {
      if (units[k] == R.one()) continue;
      if (t.action(units[k], s) == s)
        throw AxiomViolation("DT2", "action of " + R.label(units[k]) + " fixes " + S.label(s));
    }

  // DT3 centrality
  for (int s = 0; s < S.size(); ++s)
    for (int k = 0; k < nu; ++k) {
      const int tu = units[k];
      const int left = S.compose(t.i_of(t.q_tab[S.rng(s)], tu), s);
      const int right = S.compose(s, t.i_of(t.q_tab[S.src(s)], tu));
      if (left < 0 || right < 0 || left != right)
        throw AxiomViolation("DT3", "centrality: i(r(sigma),t)*sigma != sigma*i(s(sigma),t) for sigma=" +
                                        S.label(s) + " t=" + R.label(tu));
    }

  // graded compatibility: c_Sigma = c_G o q
  for (int s = 0; s < S.size(); ++s)
    if (S.degree(s) != G.degree(t.q_tab[s]))
      throw AxiomViolation("graded", "degree of " + S.label(s) + " differs from degree of q(" +
                                         S.label(s) + ")");
}

std::vector<int> canonical_section(const ExplicitTwist& t) {
  std::vector<int> sec(t.base->size(), -1);
  for (int a = 0; a < t.base->size(); ++a) {
    if (t.base->is_unit(a)) {
      sec[a] = t.i_of(a, t.ring->one());
      continue;
    }
    for (int s = 0; s < t.sigma->size(); ++s)
      if (t.q_tab[s] == a) {
        sec[a] = s;
        break;
      }
    if (sec[a] < 0) throw TheoremViolation("section: empty fiber over " + t.base->label(a));
  }
  return sec;
}

CocycleTwist to_cocycle(const ExplicitTwist& t, const std::vector<int>& section) {
  const Ring& R = *t.ring;
  const Groupoid& G = *t.base;
  const Groupoid& S = *t.sigma;
  if (static_cast<int>(section.size()) != G.size()) throw SchemaError("section has wrong length");
  for (int a = 0; a < G.size(); ++a) {
    if (t.q_tab[section[a]] != a) throw TheoremViolation("section does not split q at " + G.label(a));
    if (G.is_unit(a) && section[a] != t.i_of(a, R.one()))
      throw TheoremViolation("section must map units to Sigma units");
  }
  const int n = G.size();
  std::vector<int> omega(static_cast<size_t>(n) * n, R.one());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int ab = G.compose(a, b);
      if (ab < 0) continue;
      const int prod = S.compose(section[a], section[b]);
      if (prod < 0) throw TheoremViolation("section images fail to compose");
      // unique unit with S(a)S(b) = w . S(ab)
      int found = -1;
      for (int u : R.units())
        if (t.action(u, section[ab]) == prod) {
          found = u;
          break;
        }
      if (found < 0) throw TheoremViolation("no unit relates section product at (" + G.label(a) + "," + G.label(b) + ")");
      omega[a * n + b] = found;
    }
  return CocycleTwist::validate(t.ring, t.base, std::move(omega));
}

ExplicitTwist from_cocycle(const CocycleTwist& c) {
  const Ring& R = *c.ring;
  const Groupoid& G = *c.gpd;
  const auto& units = R.units();
  const int nu = static_cast<int>(units.size());
  const int n = G.size();
  auto pos_of_unit = [&](int t) {
    return static_cast<int>(std::find(units.begin(), units.end(), t) - units.begin());
  };
  auto id = [&](int a, int k) { return a * nu + k; };

  Groupoid::Data d;
  d.arrows.resize(static_cast<size_t>(n) * nu);
  d.src.resize(d.arrows.size());
  d.rng.resize(d.arrows.size());
  d.degree.resize(d.arrows.size());
  const int one_pos = pos_of_unit(R.one());
  for (int a = 0; a < n; ++a)
    for (int k = 0; k < nu; ++k) {
      d.arrows[id(a, k)] = "(" + G.label(a) + "|" + R.label(units[k]) + ")";
      d.src[id(a, k)] = id(G.src(a), one_pos);
      d.rng[id(a, k)] = id(G.rng(a), one_pos);
      d.degree[id(a, k)] = G.degree(a);
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int ab = G.compose(a, b);
      if (ab < 0) continue;
      for (int k = 0; k < nu; ++k)
        for (int k2 = 0; k2 < nu; ++k2) {
          const int scalar = R.mul(R.mul(units[k], units[k2]), c.w(a, b));
          d.compose.push_back({id(a, k), id(b, k2), id(ab, pos_of_unit(scalar))});
        }
    }
  auto sigma = Groupoid::validate(std::move(d), G.gamma_ptr());

  ExplicitTwist t;
  t.ring = c.ring;
  t.base = c.gpd;
  t.sigma = std::move(sigma);
  t.q_tab.resize(static_cast<size_t>(n) * nu);
  for (int a = 0; a < n; ++a)
    for (int k = 0; k < nu; ++k) t.q_tab[id(a, k)] = a;
  t.i_tab.assign(n, {});
  for (int u : G.units()) {
    t.i_tab[u].resize(nu);
    for (int k = 0; k < nu; ++k) t.i_tab[u][k] = id(u, k);
  }
  validate_twist(t);
  return t;
}

void verify_twist_isomorphism(const ExplicitTwist& t1, const ExplicitTwist& t2,
                              const TwistIso& iso) {
  const Groupoid& S1 = *t1.sigma;
  const Groupoid& S2 = *t2.sigma;
  const Groupoid& G1 = *t1.base;
  const Groupoid& G2 = *t2.base;
  auto fail = [](const std::string& w) { throw TheoremViolation("twist isomorphism: " + w); };

  {
    const Ring& R1 = *t1.ring;
    const Ring& R2 = *t2.ring;
    if (R1.size() != R2.size()) fail("ring size mismatch");
    for (int x = 0; x < R1.size(); ++x)
      for (int y = 0; y < R1.size(); ++y)
        if (R1.add(x, y) != R2.add(x, y) || R1.mul(x, y) != R2.mul(x, y))
          fail("coefficient rings differ");
  }
  auto check_level = [&](const Groupoid& A, const Groupoid& B, const std::vector<int>& f,
                         const char* name) {
    if (static_cast<int>(f.size()) != A.size() || A.size() != B.size())
      fail(std::string(name) + " map is not a bijection (size)");
    std::set<int> img(f.begin(), f.end());
    if (static_cast<int>(img.size()) != B.size()) fail(std::string(name) + " map is not injective");
    for (int a = 0; a < A.size(); ++a) {
      if (B.src(f[a]) != f[A.src(a)] || B.rng(f[a]) != f[A.rng(a)])
        fail(std::string(name) + " map breaks src/rng at " + A.label(a));
      if (A.degree(a) != B.degree(f[a])) fail(std::string(name) + " map breaks grading at " + A.label(a));
    }
    for (int a = 0; a < A.size(); ++a)
      for (int b = 0; b < A.size(); ++b) {
        const int ab = A.compose(a, b);
        const int fab = B.compose(f[a], f[b]);
        if ((ab >= 0) != (fab >= 0)) fail(std::string(name) + " map breaks composability");
        if (ab >= 0 && f[ab] != fab) fail(std::string(name) + " map not multiplicative");
      }
  };
  check_level(S1, S2, iso.sigma_map, "Sigma");
  check_level(G1, G2, iso.base_map, "base");

  // commuting square with q
  for (int s = 0; s < S1.size(); ++s)
    if (t2.q_tab[iso.sigma_map[s]] != iso.base_map[t1.q_tab[s]])
      fail("square with q fails at " + S1.label(s));
  // commuting square with i
  for (int u : G1.units())
    for (int t : t1.ring->units())
      if (iso.sigma_map[t1.i_of(u, t)] != t2.i_of(iso.base_map[u], t))
        fail("square with i fails at unit " + G1.label(u));
}

}  // namespace stein
