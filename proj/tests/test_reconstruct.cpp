#include <set>

#include "doctest.h"
#include "stein/reconstruct.hpp"

using namespace stein;

namespace {

using Elt = StructuredAlgebra::Elt;

std::shared_ptr<const Groupoid> rn_gpd(int n) {
  auto gamma = Group::integer_window(n - 1);
  Groupoid::Data d;
  auto id = [n](int i, int j) { return (i - 1) * n + (j - 1); };
  d.arrows.resize(static_cast<size_t>(n) * n);
  d.src.resize(d.arrows.size());
  d.rng.resize(d.arrows.size());
  d.degree.resize(d.arrows.size());
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      d.arrows[id(i, j)] = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
      d.src[id(i, j)] = id(j, j);
      d.rng[id(i, j)] = id(i, i);
      d.degree[id(i, j)] = *gamma->find(std::to_string(j - i));
    }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k) d.compose.push_back({id(i, j), id(j, k), id(i, k)});
  return Groupoid::validate(std::move(d), gamma);
}

std::shared_ptr<const Groupoid> z2_gpd(bool self_graded) {
  auto gamma = self_graded
                   ? Group::from_table({"0", "1"}, {{0, 1}, {1, 0}}, "0")
                   : Group::trivial();
  Groupoid::Data d;
  d.arrows = {"e", "x"};
  d.src = {0, 0};
  d.rng = {0, 0};
  d.compose = {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
  d.degree = self_graded ? std::vector<int>{0, 1} : std::vector<int>{0, 0};
  return Groupoid::validate(std::move(d), gamma);
}

// Indicator coordinates an ultrafilter twist assigns to a normaliser: the
// inverse of the unit that rescales it into the filter, if one does.
Elt expected_coordinates(const Reconstruction& rec, int n_idx) {
  const auto& a = rec.algebra();
  const auto& ns = rec.normalisers();
  Elt out(rec.twist().base->size(), a.ring().zero());
  for (int b = 0; b < rec.twist().base->size(); ++b) {
    const int g = rec.generator_of(rec.section()[b]);
    for (int t : a.ring().units()) {
      const int scaled = ns.index_of(a.scale(t, ns.elt(n_idx)));
      if (scaled >= 0 && ns.leq(g, scaled)) {
        out[b] = a.ring().inv(t);
        break;
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("matrix pairs round trip through their ultrafilter twist") {
  struct Case {
    int n, mod, sigma, base;
  };
  for (const Case c : {Case{2, 2, 4, 4}, Case{2, 3, 8, 4}, Case{3, 2, 9, 9},
                       Case{3, 3, 18, 9}, Case{2, 4, 8, 4}}) {
    CAPTURE(c.n);
    CAPTURE(c.mod);
    const auto ct = CocycleTwist::trivial(Ring::modular(c.mod), rn_gpd(c.n));
    const auto cert = certify_uniqueness(from_cocycle(ct));
    CHECK(cert.holds);
    CHECK(cert.quasi_cartan);
    CHECK(cert.lbh.ok);
    CHECK(cert.surjective);
    CHECK(cert.sigma_star_size == c.sigma);
    CHECK(cert.g_star_size == c.base);
    CHECK(cert.pair.is_graded_cartan_pair());
    CHECK(cert.pair.is_graded_diagonal_pair());
  }
}

TEST_CASE("point masses are carried to point masses over the matrix pair") {
  const auto a = SteinbergAlgebra(CocycleTwist::trivial(Ring::modular(3), rn_gpd(2)))
                     .to_structured();
  const auto rec = reconstruct_twist(a);
  const auto cert = certify_graded_iso(a, rec);
  CHECK(cert.matrix.rows == 4);
  CHECK(cert.matrix.cols == 4);
  for (int i = 0; i < a.dim(); ++i) {
    const auto b = cert.target.groupoid().find("q[" + a.basis_name(i) + "]");
    REQUIRE(b.has_value());
    CHECK(cert.matrix.row(i) == cert.target.delta(*b));
  }
}

TEST_CASE("ultrafilter generators agree with the subset oracle") {
  const auto a = SteinbergAlgebra(CocycleTwist::trivial(Ring::modular(3), rn_gpd(2)))
                     .to_structured();
  const auto rec = reconstruct_twist(a);
  const auto& ns = rec.normalisers();
  const auto ultra = oracle_ultrafilters(ns.tables());
  REQUIRE(static_cast<int>(ultra.size()) == rec.twist().sigma->size());
  std::set<int> from_oracle;
  for (const auto& u : ultra) {
    int least = -1;
    for (int m : u) {
      bool below_all = true;
      for (int k : u) below_all = below_all && ns.leq(m, k);
      if (below_all) least = m;
    }
    REQUIRE(least >= 0);
    from_oracle.insert(least);
  }
  std::set<int> from_twist;
  for (int s = 0; s < rec.twist().sigma->size(); ++s) from_twist.insert(rec.generator_of(s));
  CHECK(from_oracle == from_twist);
}

TEST_CASE("normaliser coordinates take the indicator form") {
  const auto m2 = SteinbergAlgebra(CocycleTwist::trivial(Ring::modular(3), rn_gpd(2)))
                      .to_structured();
  std::vector<int> omega(4, 1);
  omega[1 * 2 + 1] = 4;
  const auto z2t =
      SteinbergAlgebra(CocycleTwist::validate(Ring::modular(5), z2_gpd(true), omega))
          .to_structured();
  for (const auto& a : {m2, z2t}) {
    const auto rec = reconstruct_twist(a);
    const auto& ns = rec.normalisers();
    for (int i = 0; i < ns.size(); ++i) {
      if (i == ns.zero_index()) continue;
      CHECK(rec.hat(ns.elt(i)) == expected_coordinates(rec, i));
    }
  }
}

TEST_CASE("coordinates transform contravariantly under the scalar action") {
  const auto a = SteinbergAlgebra(CocycleTwist::trivial(Ring::modular(3), rn_gpd(2)))
                     .to_structured();
  const auto rec = reconstruct_twist(a);
  const auto& R = a.ring();
  const auto& S = *rec.twist().sigma;
  for (int i = 0; i < a.dim(); ++i)
    for (int s = 0; s < S.size(); ++s)
      for (int t : R.units())
        CHECK(rec.hat_value(a.basis_elt(i), rec.twist().action(t, s)) ==
              R.mul(R.inv(t), rec.hat_value(a.basis_elt(i), s)));
}

TEST_CASE("self graded group rings recover their cocycle") {
  for (const int w : {1, 4}) {
    CAPTURE(w);
    std::vector<int> omega(4, 1);
    omega[1 * 2 + 1] = w;
    const auto ct = CocycleTwist::validate(Ring::modular(5), z2_gpd(true), omega);
    const auto cert = certify_uniqueness(from_cocycle(ct));
    CHECK(cert.holds);
    CHECK(cert.sigma_star_size == 8);
    CHECK(cert.g_star_size == 2);

    const auto a = SteinbergAlgebra(ct).to_structured();
    const auto rec = reconstruct_twist(a);
    const auto cw = to_cocycle(rec.twist(), rec.section());
    const auto qe = rec.twist().base->find("q[e]");
    const auto qx = rec.twist().base->find("q[x]");
    REQUIRE(qe.has_value());
    REQUIRE(qx.has_value());
    CHECK(cw.w(*qx, *qx) == w);
    CHECK(cw.w(*qe, *qx) == 1);
    CHECK(cw.w(*qx, *qe) == 1);
  }
}

TEST_CASE("a coboundary twist on the two point groupoid certifies") {
  std::vector<int> omega(16, 1);
  omega[1 * 4 + 2] = 2;
  omega[2 * 4 + 1] = 2;
  const auto ct = CocycleTwist::validate(Ring::modular(5), rn_gpd(2), omega);
  const auto cert = certify_uniqueness(from_cocycle(ct));
  CHECK(cert.holds);
  CHECK(cert.sigma_star_size == 16);
  CHECK(cert.g_star_size == 4);
}

TEST_CASE("the trivially graded group ring reconstructs a bigger twist") {
  const auto ct = CocycleTwist::trivial(Ring::modular(5), z2_gpd(false));
  const auto t = from_cocycle(ct);
  const auto cert = certify_uniqueness(t);
  CHECK_FALSE(cert.holds);
  CHECK_FALSE(cert.quasi_cartan);
  CHECK_FALSE(cert.lbh.ok);
  CHECK_FALSE(cert.surjective);
  CHECK(cert.lbh.witness == "e + 2*x is supported off a bisection");
  CHECK(cert.sigma_star_size == 16);
  CHECK(cert.g_star_size == 4);

  const auto a = SteinbergAlgebra(ct).to_structured();
  const auto rec = reconstruct_twist(a);
  // The orbit groupoid is a group: a single unit with all isotropy.
  CHECK(rec.twist().base->units().size() == 1);
  CHECK_FALSE(rec.twist().base->is_principal());
  const auto emb = embed_into_reconstruction(t, rec);
  const std::set<int> image(emb.sigma_map.begin(), emb.sigma_map.end());
  CHECK(image.size() == 8);
  CHECK_FALSE(emb.surjective);
  CHECK_THROWS_AS(certify_graded_iso(a, rec), AxiomViolation);
}

TEST_CASE("reconstruction refuses pairs without the hypotheses") {
  StructuredAlgebra::Data d;
  d.ring = Ring::modular(6);
  d.gamma = Group::trivial();
  d.basis = {"u"};
  d.deg = {d.gamma->identity()};
  d.mul = {{{1}}};
  d.c_gens = {{1}};
  d.p_rows = {{1}};
  const auto a = StructuredAlgebra::validate(std::move(d));
  try {
    reconstruct_twist(a);
    FAIL("expected an axiom violation");
  } catch (const AxiomViolation& e) {
    CHECK(e.axiom == "pair");
    CHECK(std::string(e.what()) ==
          "weak torsion freeness fails: scalar 2 kills the idempotent 3*u");
  }
}
