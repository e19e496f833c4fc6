#include <memory>
#include <string>
#include <vector>

#include "doctest.h"
#include "stein/twist.hpp"

using namespace stein;

namespace {

std::shared_ptr<const Group> z2_gamma() {
  return Group::from_table({"0", "1"}, {{0, 1}, {1, 0}}, "0");
}

// Cyclic group Z/n as a one-unit groupoid with arrows "0".."n-1".
std::shared_ptr<const Groupoid> cyclic_gpd(int n, std::shared_ptr<const Group> gamma,
                                           std::vector<int> deg) {
  Groupoid::Data d;
  for (int i = 0; i < n; ++i) d.arrows.push_back(std::to_string(i));
  d.src.assign(n, 0);
  d.rng.assign(n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) d.compose.push_back({a, b, (a + b) % n});
  d.degree = std::move(deg);
  return Groupoid::validate(std::move(d), std::move(gamma));
}

// S_3 with arrows [e, (123), (132), (12), (13), (23)], graded by sign.
std::shared_ptr<const Groupoid> s3_gpd(std::shared_ptr<const Group> gamma) {
  Groupoid::Data d;
  d.arrows = {"e", "(123)", "(132)", "(12)", "(13)", "(23)"};
  d.src.assign(6, 0);
  d.rng.assign(6, 0);
  const int mul[6][6] = {{0, 1, 2, 3, 4, 5}, {1, 2, 0, 4, 5, 3}, {2, 0, 1, 5, 3, 4},
                         {3, 5, 4, 0, 2, 1}, {4, 3, 5, 1, 0, 2}, {5, 4, 3, 2, 1, 0}};
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) d.compose.push_back({a, b, mul[a][b]});
  d.degree = {0, 0, 0, 1, 1, 1};
  return Groupoid::validate(std::move(d), std::move(gamma));
}

// The full equivalence relation on {1,2} with arrows (i,j): j -> i.
std::shared_ptr<const Groupoid> r2_gpd(std::shared_ptr<const Group> gamma) {
  Groupoid::Data d;
  std::vector<std::pair<int, int>> ij = {{1, 1}, {1, 2}, {2, 1}, {2, 2}};
  auto idx = [&](int i, int j) { return (i - 1) * 2 + (j - 1); };
  for (auto [i, j] : ij) {
    d.arrows.push_back("(" + std::to_string(i) + "," + std::to_string(j) + ")");
    d.src.push_back(idx(j, j));
    d.rng.push_back(idx(i, i));
    d.degree.push_back(gamma->identity());
  }
  for (auto [i, j] : ij)
    for (auto [k, l] : ij)
      if (j == k) d.compose.push_back({idx(i, j), idx(k, l), idx(i, l)});
  return Groupoid::validate(std::move(d), std::move(gamma));
}

// Z/4 -> Z/2 doubling extension with fiber F_3^x: i sends {1,2} to {0,2}.
ExplicitTwist z4_over_z2(std::shared_ptr<const Group> gamma) {
  ExplicitTwist t;
  t.ring = Ring::modular(3);
  t.sigma = cyclic_gpd(4, gamma, {0, 1, 0, 1});
  t.base = cyclic_gpd(2, gamma, {0, 1});
  t.i_tab = {{0, 2}, {}};
  t.q_tab = {0, 1, 0, 1};
  return t;
}

// Maps each Sigma arrow of t1 to the t2 arrow labelled "(a|w)" where
// t1-arrow = w . section(a); valid against any from_cocycle materialisation.
TwistIso roundtrip_iso(const ExplicitTwist& t1, const ExplicitTwist& t2,
                       const std::vector<int>& sec) {
  TwistIso iso;
  iso.base_map.resize(t1.base->size());
  for (int a = 0; a < t1.base->size(); ++a) iso.base_map[a] = a;
  iso.sigma_map.assign(t1.sigma->size(), -1);
  for (int s = 0; s < t1.sigma->size(); ++s) {
    const int a = t1.q_of(s);
    for (int u : t1.ring->units())
      if (t1.action(u, sec[a]) == s) {
        auto found = t2.sigma->find("(" + t1.base->label(a) + "|" + t1.ring->label(u) + ")");
        REQUIRE(found.has_value());
        iso.sigma_map[s] = *found;
      }
  }
  return iso;
}

}  // namespace

TEST_CASE("cocycle validation accepts normalised cocycles and rejects the rest") {
  auto gamma = z2_gamma();
  auto g = cyclic_gpd(2, gamma, {0, 1});
  auto f3 = Ring::modular(3);

  CHECK(CocycleTwist::trivial(f3, g).w(1, 1) == 1);
  auto c = CocycleTwist::validate(f3, g, {1, 1, 1, 2});
  CHECK(c.w(1, 1) == 2);
  CHECK(c.w(0, 1) == 1);

  CHECK_THROWS_AS(CocycleTwist::validate(f3, g, {1, 1, 1, 0}), AxiomViolation);
  try {
    CocycleTwist::validate(f3, g, {1, 2, 1, 1});
    CHECK(false);
  } catch (const AxiomViolation& e) {
    CHECK(e.axiom == "cocycle");
    CHECK(std::string(e.what()).find("normalisation") != std::string::npos);
  }

  // On Z/3 the assignment w(g,g)=2, all else 1, breaks the cocycle identity.
  auto g3 = cyclic_gpd(3, Group::trivial(), {0, 0, 0});
  std::vector<int> bad(9, 1);
  bad[1 * 3 + 1] = 2;
  try {
    CocycleTwist::validate(Ring::modular(5), g3, bad);
    CHECK(false);
  } catch (const AxiomViolation& e) {
    CHECK(std::string(e.what()).find("cocycle identity") != std::string::npos);
  }
}

TEST_CASE("doubling extension Z/4 -> Z/2 with fiber F_3^x has omega(x,x) = -1") {
  auto gamma = z2_gamma();
  auto t = z4_over_z2(gamma);
  validate_twist(t);

  CHECK(t.i_of(0, 1) == 0);
  CHECK(t.i_of(0, 2) == 2);
  CHECK_THROWS_AS(t.i_of(0, 0), TheoremViolation);
  CHECK(t.action(2, 1) == 3);

  auto sec = canonical_section(t);
  CHECK(sec == std::vector<int>{0, 1});
  auto c = to_cocycle(t, sec);
  CHECK(c.w(0, 0) == 1);
  CHECK(c.w(0, 1) == 1);
  CHECK(c.w(1, 0) == 1);
  CHECK(c.w(1, 1) == 2);

  // The other section over the nontrivial arrow yields the same cocycle here.
  auto c2 = to_cocycle(t, {0, 3});
  CHECK(c2.omega == c.omega);
}

TEST_CASE("S_3 over Z/2 with fiber F_4^x fails centrality") {
  auto gamma = z2_gamma();
  std::vector<std::vector<int>> add = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  std::vector<std::vector<int>> mul = {{0, 0, 0, 0}, {0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}};
  auto f4 = Ring::from_tables({"0", "1", "a", "b"}, add, mul);

  ExplicitTwist t;
  t.ring = f4;
  t.sigma = s3_gpd(gamma);
  t.base = cyclic_gpd(2, gamma, {0, 1});
  t.i_tab = {{0, 1, 2}, {}};
  t.q_tab = {0, 0, 0, 1, 1, 1};
  try {
    validate_twist(t);
    CHECK(false);
  } catch (const AxiomViolation& e) {
    CHECK(e.axiom == "DT3");
    std::string w = e.what();
    CHECK(w.find("sigma=(12)") != std::string::npos);
    CHECK(w.find("t=a") != std::string::npos);
  }
}

TEST_CASE("materialised extension of a cocycle is isomorphic to the source twist") {
  auto gamma = z2_gamma();
  auto t = z4_over_z2(gamma);
  auto sec = canonical_section(t);
  auto t2 = from_cocycle(to_cocycle(t, sec));
  CHECK(t2.sigma->size() == 4);
  CHECK(t2.sigma->find("(1|2)").has_value());

  auto iso = roundtrip_iso(t, t2, sec);
  CHECK(iso.sigma_map == std::vector<int>{0, 2, 1, 3});
  verify_twist_isomorphism(t, t2, iso);

  auto broken = iso;
  std::swap(broken.sigma_map[0], broken.sigma_map[2]);
  CHECK_THROWS_AS(verify_twist_isomorphism(t, t2, broken), TheoremViolation);
}

TEST_CASE("round trip through a principal base with a nontrivial coboundary") {
  auto g = r2_gpd(Group::trivial());
  auto f5 = Ring::modular(5);
  // w = df for f((1,2)) = 2: nontrivial exactly on (1,2)(2,1) and (2,1)(1,2).
  std::vector<int> omega(16, 1);
  omega[1 * 4 + 2] = 2;
  omega[2 * 4 + 1] = 2;
  auto c = CocycleTwist::validate(f5, g, omega);

  auto t = from_cocycle(c);
  CHECK(t.sigma->size() == 16);
  auto sec = canonical_section(t);
  auto c_back = to_cocycle(t, sec);
  CHECK(c_back.omega == c.omega);

  auto t2 = from_cocycle(c_back);
  verify_twist_isomorphism(t, t2, roundtrip_iso(t, t2, sec));
}

TEST_CASE("identity-degree subtwist restricts the cocycle") {
  auto gamma = z2_gamma();
  auto g = cyclic_gpd(2, gamma, {0, 1});
  auto f3 = Ring::modular(3);
  auto c = CocycleTwist::validate(f3, g, {1, 1, 1, 2});

  std::vector<int> amap;
  auto eps = c.epsilon_subtwist(&amap);
  CHECK(eps.gpd->size() == 1);
  CHECK(amap == std::vector<int>{0, -1});

  // Under the trivial grading the subtwist is the whole twist.
  auto g0 = cyclic_gpd(2, gamma, {0, 0});
  auto c0 = CocycleTwist::validate(f3, g0, {1, 1, 1, 2});
  auto eps0 = c0.epsilon_subtwist(&amap);
  CHECK(eps0.gpd->size() == 2);
  CHECK(eps0.w(1, 1) == 2);
  CHECK(amap == std::vector<int>{0, 1});
}

TEST_CASE("bundle structure and graded compatibility are enforced") {
  auto gamma = z2_gamma();

  auto bad_q = z4_over_z2(gamma);
  bad_q.q_tab = {0, 1, 0, 0};
  try {
    validate_twist(bad_q);
    CHECK(false);
  } catch (const AxiomViolation& e) {
    CHECK(e.axiom == "structure");
  }

  auto bad_i = z4_over_z2(gamma);
  bad_i.i_tab = {{0, 0}, {}};
  try {
    validate_twist(bad_i);
    CHECK(false);
  } catch (const AxiomViolation& e) {
    CHECK(e.axiom == "DT1");
  }

  // Sigma graded mod 2 but the base graded trivially: q no longer
  // intertwines the gradings.
  ExplicitTwist mixed = z4_over_z2(gamma);
  mixed.base = cyclic_gpd(2, gamma, {0, 0});
  try {
    validate_twist(mixed);
    CHECK(false);
  } catch (const AxiomViolation& e) {
    CHECK(e.axiom == "graded");
  }

  // Degenerate base: Sigma = R^x over a point is a valid twist.
  ExplicitTwist pt;
  pt.ring = Ring::modular(3);
  pt.sigma = cyclic_gpd(2, Group::trivial(), {0, 0});
  pt.base = cyclic_gpd(1, Group::trivial(), {0});
  pt.i_tab = {{0, 1}};
  pt.q_tab = {0, 0};
  validate_twist(pt);
  auto c = to_cocycle(pt, canonical_section(pt));
  CHECK(c.w(0, 0) == 1);
  CHECK(from_cocycle(c).sigma->size() == 2);
}
