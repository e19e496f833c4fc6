#include "stein/reconstruct.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "stein/errors.hpp"

namespace stein {

namespace {

using Elt = StructuredAlgebra::Elt;

// Members of the ultrafilter generated at semigroup index g: every nonzero
// element above it, ascending.
std::vector<int> filter_members(const NormaliserSemigroup& ns, int g) {
  std::vector<int> out;
  for (int m = 0; m < ns.size(); ++m)
    if (m != ns.zero_index() && ns.leq(g, m)) out.push_back(m);
  return out;
}

}  // namespace

Reconstruction::Reconstruction(StructuredAlgebra a, NormaliserSemigroup ns)
    : a_(std::move(a)), ns_(std::move(ns)) {
  const Ring& R = a_.ring();
  gens_ = ns_.minimal_nonzero();
  const int n = static_cast<int>(gens_.size());
  arrow_of_.assign(ns_.size(), -1);
  for (int u = 0; u < n; ++u) arrow_of_[gens_[u]] = u;

  auto arrow_at = [&](int idx, const std::string& what) {
    if (idx < 0 || arrow_of_[idx] < 0)
      throw TheoremViolation(what + " is not an ultrafilter generator");
    return arrow_of_[idx];
  };

  Groupoid::Data sd;
  sd.arrows.resize(n);
  sd.src.resize(n);
  sd.rng.resize(n);
  sd.degree.resize(n);
  for (int u = 0; u < n; ++u) {
    const int g = gens_[u];
    const int d = ns_.dagger(g);
    sd.arrows[u] = "[" + a_.show(ns_.elt(g)) + "]";
    sd.src[u] = arrow_at(ns_.mul(d, g), "the source projection of " + sd.arrows[u]);
    sd.rng[u] = arrow_at(ns_.mul(g, d), "the range projection of " + sd.arrows[u]);
    sd.degree[u] = ns_.degree(g);
  }
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (sd.src[u] == sd.rng[v])
        sd.compose.push_back(
            {u, v, arrow_at(ns_.mul(gens_[u], gens_[v]), sd.arrows[u] + " " + sd.arrows[v])});

  // Composability must agree with the product criterion: matching units iff
  // every member of one filter times every member of the other is nonzero.
  {
    std::vector<std::vector<int>> members(n);
    for (int u = 0; u < n; ++u) members[u] = filter_members(ns_, gens_[u]);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        bool all_nonzero = true;
        for (int m : members[u]) {
          for (int k : members[v]) {
            const int p = ns_.mul(m, k);
            const bool zero = p >= 0 ? p == ns_.zero_index()
                                     : a_.is_zero(a_.mul(ns_.elt(m), ns_.elt(k)));
            if (zero) {
              all_nonzero = false;
              break;
            }
          }
          if (!all_nonzero) break;
        }
        if (all_nonzero != (sd.src[u] == sd.rng[v]))
          throw TheoremViolation("composability disagrees with the product criterion at " +
                                 sd.arrows[u] + ", " + sd.arrows[v]);
      }
  }
  auto sigma = Groupoid::validate(std::move(sd), a_.gamma_ptr());

  // Orbits of the scalar action. The representative is the idempotent
  // generator when the orbit has one (it is then unique), else the least.
  const auto& units = R.units();
  std::vector<int> orbit_of(n, -1);
  std::vector<int> reps;
  for (int u = 0; u < n; ++u) {
    if (orbit_of[u] >= 0) continue;
    std::set<int> orb;
    for (int t : units) {
      const int idx = ns_.index_of(a_.scale(t, ns_.elt(gens_[u])));
      orb.insert(arrow_at(idx, "a scalar multiple of " + sigma->label(u)));
    }
    int rep = -1;
    for (int w : orb)
      if (ns_.is_idempotent(gens_[w])) {
        rep = w;
        break;
      }
    if (rep < 0) rep = *orb.begin();
    const int b = static_cast<int>(reps.size());
    reps.push_back(rep);
    for (int w : orb) orbit_of[w] = b;
  }
  const int nb = static_cast<int>(reps.size());

  Groupoid::Data bd;
  bd.arrows.resize(nb);
  bd.src.resize(nb);
  bd.rng.resize(nb);
  bd.degree.resize(nb);
  for (int b = 0; b < nb; ++b) {
    bd.arrows[b] = "q" + sigma->label(reps[b]);
    bd.src[b] = orbit_of[sigma->src(reps[b])];
    bd.rng[b] = orbit_of[sigma->rng(reps[b])];
    bd.degree[b] = sigma->degree(reps[b]);
  }
  for (int b1 = 0; b1 < nb; ++b1)
    for (int b2 = 0; b2 < nb; ++b2)
      if (bd.src[b1] == bd.rng[b2]) {
        // Unit ultrafilters are fixed by the action, so matching orbits of
        // units means the representatives compose as they stand.
        const int c = sigma->compose(reps[b1], reps[b2]);
        if (c < 0)
          throw TheoremViolation("orbit representatives at " + bd.arrows[b1] + ", " +
                                 bd.arrows[b2] + " do not compose");
        bd.compose.push_back({b1, b2, orbit_of[c]});
      }
  auto base = Groupoid::validate(std::move(bd), a_.gamma_ptr());

  std::vector<int> q_tab(orbit_of);
  std::vector<std::vector<int>> i_tab(nb);
  for (int b : base->units()) {
    const int g = gens_[reps[b]];
    if (!ns_.is_idempotent(g))
      throw TheoremViolation("unit orbit " + base->label(b) +
                             " has no idempotent representative");
    for (int t : units)
      i_tab[b].push_back(
          arrow_at(ns_.index_of(a_.scale(t, ns_.elt(g))), "a scalar multiple of an atom"));
  }
  twist_ = ExplicitTwist{a_.ring_ptr(), sigma, base, std::move(i_tab), std::move(q_tab)};
  validate_twist(twist_);
  canon_ = canonical_section(twist_);
}

int Reconstruction::phi_value(const Elt& c, int unit_arrow) const {
  const Elt& e = ns_.elt(gens_[unit_arrow]);
  const Elt ce = a_.mul(c, e);
  for (int t = 0; t < a_.ring().size(); ++t)
    if (a_.scale(t, e) == ce) return t;
  throw TheoremViolation("C does not act by scalars on the atom " + a_.show(e));
}

int Reconstruction::hat_value(const Elt& x, int arrow) const {
  const Elt comp = a_.component(x, twist_.sigma->degree(arrow));
  const int unit_arrow = twist_.sigma->src(arrow);
  int value = a_.ring().zero();
  bool first = true;
  for (int m : filter_members(ns_, gens_[arrow])) {
    const Elt nd = ns_.elt(ns_.dagger(m));
    const int t = phi_value(a_.apply_p(a_.mul(nd, comp)), unit_arrow);
    if (first) {
      value = t;
      first = false;
    } else if (t != value) {
      throw TheoremViolation("coordinate at " + twist_.sigma->label(arrow) +
                             " depends on the member choice");
    }
  }
  return value;
}

Reconstruction::Elt Reconstruction::hat(const Elt& x) const {
  Elt out(twist_.base->size(), a_.ring().zero());
  for (int b = 0; b < twist_.base->size(); ++b) out[b] = hat_value(x, canon_[b]);
  return out;
}

Reconstruction reconstruct_twist(const StructuredAlgebra& a) {
  NormaliserSemigroup ns = normalisers_of(a);
  auto gate = [](const Check& c, const std::string& what) {
    if (!c.ok) throw AxiomViolation("pair", what + ": " + c.witness);
  };
  gate(check_wt(a), "weak torsion freeness fails");
  gate(check_local_units(a), "local units are missing");
  gate(check_c_spanned(a), "C is not spanned by its idempotents");
  gate(ns.verify_laws(), "the normalisers do not form an inverse semigroup");
  {
    std::vector<Elt> gens;
    for (int i = 0; i < ns.size(); ++i) gens.push_back(ns.elt(i));
    RowSpan span(a.ring_ptr(), a.dim(), gens, a.caps());
    if (!span.is_full())
      throw AxiomViolation("pair", "the homogeneous normalisers do not span the algebra");
  }
  return Reconstruction(a, std::move(ns));
}

IsoCertificate certify_graded_iso(const StructuredAlgebra& a, const Reconstruction& rec) {
  const PairReport rep = classify_pair(a, rec.normalisers());
  if (!rep.is_graded_quasi_cartan_pair()) {
    std::string why = "the pair is not graded quasi-Cartan";
    for (const Check* c : {&rep.wt, &rep.local_units, &rep.c_spanned, &rep.eps_spanned,
                           &rep.expectation, &rep.faithful, &rep.quasi_cartan, &rep.graded_span})
      if (!c->ok && !c->witness.empty()) {
        why += ": " + c->witness;
        break;
      }
    throw AxiomViolation("pair", why);
  }

  SteinbergAlgebra target(to_cocycle(rec.twist(), rec.section()), a.caps());
  const int n = a.dim();
  const int m = target.dim();

  std::vector<Elt> rows(n);
  Mat M(n, m, a.ring().zero());
  for (int i = 0; i < n; ++i) {
    rows[i] = rec.hat(a.basis_elt(i));
    for (int j = 0; j < m; ++j) M.at(i, j) = rows[i][j];
  }

  auto through_matrix = [&](const Elt& v) {
    Elt out = target.zero();
    for (int i = 0; i < n; ++i) out = target.add(out, target.scale(v[i], rows[i]));
    return out;
  };
  auto check_linear = [&](const Elt& v, const char* what) {
    if (rec.hat(v) != through_matrix(v))
      throw TheoremViolation(std::string("coordinates are not linear on ") + what + " " +
                             a.show(v));
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      check_linear(a.add(a.basis_elt(i), a.basis_elt(j)), "the basis sum");
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < a.ring().size(); ++t)
      check_linear(a.scale(t, a.basis_elt(i)), "the scalar multiple");
  {
    std::mt19937 rng(4099);
    std::uniform_int_distribution<int> coeff(0, a.ring().size() - 1);
    for (int trial = 0; trial < 25; ++trial) {
      Elt v = a.zero();
      for (int i = 0; i < n; ++i) v[i] = coeff(rng);
      check_linear(v, "the sampled vector");
    }
  }

  if (!left_mul_injective(a.ring_ptr(), M, a.caps()))
    throw TheoremViolation("the coordinate map is not injective");
  if (!left_mul_surjective(a.ring_ptr(), M, a.caps()))
    throw TheoremViolation("the coordinate map is not surjective");

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (rec.hat(a.mul(a.basis_elt(i), a.basis_elt(j))) != target.convolve(rows[i], rows[j]))
        throw TheoremViolation("the coordinate map is not multiplicative at " + a.basis_name(i) +
                               ", " + a.basis_name(j));

  for (int i = 0; i < n; ++i) {
    const auto d = target.homogeneous_degree(rows[i]);
    if (!d || *d != a.basis_degree(i))
      throw TheoremViolation("the coordinate map breaks the grading at " + a.basis_name(i));
  }

  {
    std::vector<Elt> img;
    for (const Elt& c : a.c_gens()) img.push_back(rec.hat(c));
    std::vector<Elt> diag;
    for (int u : target.groupoid().units()) diag.push_back(target.delta(u));
    RowSpan img_span(a.ring_ptr(), m, img, a.caps());
    RowSpan diag_span(a.ring_ptr(), m, diag, a.caps());
    if (!img_span.equals(diag_span))
      throw TheoremViolation("C does not map onto the diagonal");
  }

  for (int i = 0; i < n; ++i)
    if (rec.hat(a.apply_p(a.basis_elt(i))) != target.diagonal_part(rows[i]))
      throw TheoremViolation("the expectation does not match the diagonal restriction at " +
                             a.basis_name(i));

  return {std::move(target), std::move(M)};
}

EmbeddingReport embed_into_reconstruction(const ExplicitTwist& t, const Reconstruction& rec) {
  const StructuredAlgebra& a = rec.algebra();
  const NormaliserSemigroup& ns = rec.normalisers();
  const Groupoid& S = *t.sigma;
  const Groupoid& G = *t.base;
  const ExplicitTwist& rt = rec.twist();
  if (G.size() != a.dim() || t.ring->size() != a.ring().size())
    throw SchemaError("the reconstruction does not belong to this twist's convolution algebra");
  const auto sec = canonical_section(t);
  const auto& units = t.ring->units();

  EmbeddingReport rep;
  rep.sigma_map.assign(S.size(), -1);
  std::vector<int> lam_of(S.size(), -1);
  for (int s = 0; s < S.size(); ++s) {
    const int b = t.q_of(s);
    for (int u : units)
      if (t.action(u, sec[b]) == s) {
        lam_of[s] = u;
        break;
      }
    if (lam_of[s] < 0)
      throw TheoremViolation("no unit carries the section to " + S.label(s));
    const int idx = ns.index_of(a.scale(lam_of[s], a.basis_elt(b)));
    const int arrow = idx >= 0 ? rec.arrow_of_generator(idx) : -1;
    if (arrow < 0)
      throw TheoremViolation("the point mass under " + S.label(s) +
                             " is not an ultrafilter generator");
    rep.sigma_map[s] = arrow;
  }
  {
    std::set<int> img(rep.sigma_map.begin(), rep.sigma_map.end());
    if (static_cast<int>(img.size()) != S.size())
      throw TheoremViolation("the comparison map is not injective");
  }

  // Independence of the representing normaliser: any unit-coefficient
  // normaliser supported on a bisection through the arrow generates the
  // same ultrafilter after cutting down to the source atom.
  for (int i = 0; i < ns.size(); ++i) {
    if (i == ns.zero_index()) continue;
    const Elt& nv = ns.elt(i);
    std::vector<int> supp;
    bool unit_coeffs = true;
    for (int k = 0; k < a.dim(); ++k)
      if (nv[k] != a.ring().zero()) {
        supp.push_back(k);
        unit_coeffs = unit_coeffs && a.ring().is_unit(nv[k]);
      }
    if (!unit_coeffs || !is_bisection(G, supp)) continue;
    for (int s = 0; s < S.size(); ++s) {
      const int b = t.q_of(s);
      if (nv[b] != lam_of[s]) continue;
      const int e_idx = ns.index_of(a.basis_elt(G.src(b)));
      if (ns.mul(i, e_idx) != rec.generator_of(rep.sigma_map[s]))
        throw TheoremViolation("the comparison map depends on the representing normaliser at " +
                               S.label(s));
    }
  }

  for (int s = 0; s < S.size(); ++s)
    for (int u : units)
      if (rep.sigma_map[t.action(u, s)] != rt.action(u, rep.sigma_map[s]))
        throw TheoremViolation("the comparison map is not unit equivariant at " + S.label(s));

  const Groupoid& RS = *rt.sigma;
  for (int s = 0; s < S.size(); ++s) {
    if (RS.src(rep.sigma_map[s]) != rep.sigma_map[S.src(s)] ||
        RS.rng(rep.sigma_map[s]) != rep.sigma_map[S.rng(s)])
      throw TheoremViolation("the comparison map breaks src/rng at " + S.label(s));
    if (RS.degree(rep.sigma_map[s]) != S.degree(s))
      throw TheoremViolation("the comparison map breaks the grading at " + S.label(s));
    if (rep.sigma_map[S.inv(s)] != RS.inv(rep.sigma_map[s]))
      throw TheoremViolation("the comparison map breaks inverses at " + S.label(s));
  }
  for (int s1 = 0; s1 < S.size(); ++s1)
    for (int s2 = 0; s2 < S.size(); ++s2) {
      const int c = S.compose(s1, s2);
      if (c < 0) continue;
      if (RS.compose(rep.sigma_map[s1], rep.sigma_map[s2]) != rep.sigma_map[c])
        throw TheoremViolation("the comparison map is not multiplicative at " + S.label(s1) +
                               ", " + S.label(s2));
    }

  rep.base_map.assign(G.size(), -1);
  for (int s = 0; s < S.size(); ++s) {
    const int b = t.q_of(s);
    const int m = rt.q_of(rep.sigma_map[s]);
    if (rep.base_map[b] < 0)
      rep.base_map[b] = m;
    else if (rep.base_map[b] != m)
      throw TheoremViolation("the comparison map does not descend to the base at " + G.label(b));
  }
  const Groupoid& RG = *rt.base;
  {
    std::set<int> img;
    for (int b = 0; b < G.size(); ++b) {
      if (rep.base_map[b] < 0)
        throw TheoremViolation("a base arrow is missed by the quotient at " + G.label(b));
      img.insert(rep.base_map[b]);
    }
    if (static_cast<int>(img.size()) != G.size())
      throw TheoremViolation("the base comparison map is not injective");
  }
  for (int b = 0; b < G.size(); ++b) {
    if (RG.src(rep.base_map[b]) != rep.base_map[G.src(b)] ||
        RG.rng(rep.base_map[b]) != rep.base_map[G.rng(b)])
      throw TheoremViolation("the base comparison map breaks src/rng at " + G.label(b));
    if (RG.degree(rep.base_map[b]) != G.degree(b))
      throw TheoremViolation("the base comparison map breaks the grading at " + G.label(b));
  }
  for (int b1 = 0; b1 < G.size(); ++b1)
    for (int b2 = 0; b2 < G.size(); ++b2) {
      const int c = G.compose(b1, b2);
      if (c < 0) continue;
      if (RG.compose(rep.base_map[b1], rep.base_map[b2]) != rep.base_map[c])
        throw TheoremViolation("the base comparison map is not multiplicative at " +
                               G.label(b1) + ", " + G.label(b2));
    }

  {
    std::set<int> img;
    for (int u : G.units()) {
      if (!RG.is_unit(rep.base_map[u]))
        throw TheoremViolation("a unit is not carried to a unit at " + G.label(u));
      img.insert(rep.base_map[u]);
    }
    if (img.size() != RG.units().size())
      throw TheoremViolation("unit spaces do not correspond bijectively");
  }
  for (int u : G.units())
    for (int k : units)
      if (rep.sigma_map[t.i_of(u, k)] != rt.i_of(rep.base_map[u], k))
        throw TheoremViolation("the comparison map breaks the bundle inclusion at " +
                               G.label(u));

  rep.surjective = S.size() == RS.size();
  return rep;
}

Check check_lbh(const SteinbergAlgebra& alg, const NormaliserSemigroup& ns) {
  const Groupoid& G = alg.groupoid();
  Check r{true, true, ""};
  for (int i : ns.epsilon_indices()) {
    if (i == ns.zero_index()) continue;
    if (!is_bisection(G, alg.support(ns.elt(i)))) {
      r = {false, true, alg.show(ns.elt(i)) + " is supported off a bisection"};
      break;
    }
  }
  if (r.ok)
    for (int i = 0; i < ns.size(); ++i) {
      if (i == ns.zero_index()) continue;
      if (!is_bisection(G, alg.support(ns.elt(i))))
        throw TheoremViolation("the homogeneous normaliser " + alg.show(ns.elt(i)) +
                               " escapes bisection support");
    }
  return r;
}

Check check_lbh(const SteinbergAlgebra& alg) {
  return check_lbh(alg, normalisers_of(alg.to_structured()));
}

namespace {

// The identity-fiber pair reconstructs on its own; the result must be the
// identity-degree part of the full reconstruction, generator by generator.
void check_epsilon_consistency(const StructuredAlgebra& a, const Reconstruction& rec) {
  const StructuredAlgebra ae = epsilon_subalgebra(a);
  const Reconstruction rec_eps = reconstruct_twist(ae);
  const auto fib = a.fiber_basis(a.gamma().identity());
  const Groupoid& SE = *rec_eps.twist().sigma;
  const Groupoid& SF = *rec.twist().sigma;

  std::vector<int> match(SE.size(), -1);
  for (int u = 0; u < SE.size(); ++u) {
    const Elt ge = rec_eps.normalisers().elt(rec_eps.generator_of(u));
    Elt full = a.zero();
    for (size_t k = 0; k < fib.size(); ++k) full[fib[k]] = ge[k];
    const int idx = rec.normalisers().index_of(full);
    match[u] = idx >= 0 ? rec.arrow_of_generator(idx) : -1;
    if (match[u] < 0 || SF.degree(match[u]) != a.gamma().identity())
      throw TheoremViolation("an identity-fiber ultrafilter is missing from the full twist at " +
                             SE.label(u));
  }
  if (static_cast<int>(SF.degree_fiber(a.gamma().identity()).size()) != SE.size())
    throw TheoremViolation("identity-fiber ultrafilter counts disagree");
  for (int u = 0; u < SE.size(); ++u) {
    if (match[SE.src(u)] != SF.src(match[u]) || match[SE.rng(u)] != SF.rng(match[u]))
      throw TheoremViolation("identity-fiber src/rng disagree at " + SE.label(u));
    for (int v = 0; v < SE.size(); ++v) {
      const int c = SE.compose(u, v);
      const int cf = SF.compose(match[u], match[v]);
      if ((c >= 0) != (cf >= 0) || (c >= 0 && match[c] != cf))
        throw TheoremViolation("identity-fiber composition disagrees at " + SE.label(u) + ", " +
                               SE.label(v));
    }
    for (int t : a.ring().units())
      if (match[rec_eps.twist().action(t, u)] != rec.twist().action(t, match[u]))
        throw TheoremViolation("identity-fiber scalar action disagrees at " + SE.label(u));
  }
}

}  // namespace

UniquenessCertificate certify_uniqueness(const ExplicitTwist& t, const Caps& caps) {
  validate_twist(t);
  SteinbergAlgebra alg(to_cocycle(t, canonical_section(t)), caps);
  const StructuredAlgebra& a = alg.to_structured();

  UniquenessCertificate cert;
  const Reconstruction rec = reconstruct_twist(a);
  cert.pair = classify_pair(a, rec.normalisers());
  cert.quasi_cartan = cert.pair.is_graded_quasi_cartan_pair();
  cert.lbh = check_lbh(alg, rec.normalisers());
  cert.sigma_star_size = rec.twist().sigma->size();
  cert.g_star_size = rec.twist().base->size();
  const EmbeddingReport emb = embed_into_reconstruction(t, rec);
  cert.surjective = emb.surjective;
  if (!emb.surjective) {
    const std::set<int> image(emb.sigma_map.begin(), emb.sigma_map.end());
    for (int s = 0; s < rec.twist().sigma->size(); ++s)
      if (!image.count(s)) {
        cert.missed_arrow = rec.twist().sigma->label(s);
        break;
      }
  }

  auto yn = [](bool b) { return b ? std::string("yes") : std::string("no"); };
  if (cert.quasi_cartan != cert.lbh.ok || cert.lbh.ok != cert.surjective)
    throw TheoremViolation("the uniqueness equivalence fails: quasi-Cartan " +
                           yn(cert.quasi_cartan) + ", bisection supports " + yn(cert.lbh.ok) +
                           ", comparison onto " + yn(cert.surjective));
  cert.holds = cert.quasi_cartan;

  if (cert.holds) {
    verify_twist_isomorphism(t, rec.twist(), TwistIso{emb.sigma_map, emb.base_map});
    certify_graded_iso(a, rec);
    const auto geps = rec.twist().base->epsilon_subgroupoid();
    if (cert.pair.is_graded_cartan_pair() != geps->is_effective())
      throw TheoremViolation(
          "the Cartan refinement disagrees with effectiveness of the reconstructed base");
    if (cert.pair.is_graded_diagonal_pair() != geps->is_principal())
      throw TheoremViolation(
          "the diagonal refinement disagrees with principality of the reconstructed base");
  }

  check_epsilon_consistency(a, rec);
  return cert;
}

}  // namespace stein
