#include <set>

#include "doctest.h"
#include "stein/groupoid.hpp"

using namespace stein;

namespace {

// Full equivalence relation on n points, graded over an integer window by
// j - i. Arrow (i,j) goes from unit (j,j) to unit (i,i).
std::shared_ptr<const Groupoid> make_rn(int n) {
  auto gamma = Group::integer_window(n - 1);
  Groupoid::Data d;
  auto id = [n](int i, int j) { return (i - 1) * n + (j - 1); };
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      d.arrows.push_back("(" + std::to_string(i) + "," + std::to_string(j) + ")");
      d.src.push_back(id(j, j));
      d.rng.push_back(id(i, i));
      d.degree.push_back(*gamma->find(std::to_string(j - i)));
    }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k) d.compose.push_back({id(i, j), id(j, k), id(i, k)});
  return Groupoid::validate(std::move(d), gamma);
}

std::shared_ptr<const Groupoid> make_z2_group(bool self_graded) {
  auto gamma = Group::from_table({"0", "1"}, {{0, 1}, {1, 0}}, "0");
  Groupoid::Data d;
  d.arrows = {"e", "x"};
  d.src = {0, 0};
  d.rng = {0, 0};
  d.compose = {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
  d.degree = self_graded ? std::vector<int>{0, 1} : std::vector<int>{0, 0};
  return Groupoid::validate(std::move(d), gamma);
}

}  // namespace

TEST_CASE("integer window group") {
  auto g = Group::integer_window(1);
  CHECK(g->size() == 5);
  CHECK(g->label(g->identity()) == "0");
  const int one = *g->find("1");
  CHECK(g->label(g->mul(one, one)) == "2");
  CHECK(g->label(g->inv(one)) == "-1");
  CHECK(g->int_bound() == 1);
  CHECK(Group::trivial()->size() == 1);
}

TEST_CASE("full equivalence relation R_2") {
  auto g = make_rn(2);
  CHECK(g->size() == 4);
  CHECK(g->units() == std::vector<int>{0, 3});
  CHECK(g->is_principal());
  CHECK(g->is_effective());

  const int a12 = *g->find("(1,2)");
  const int a21 = *g->find("(2,1)");
  const int a11 = *g->find("(1,1)");
  CHECK(g->compose(a12, a21) == a11);
  CHECK(g->compose(a12, a12) == -1);
  CHECK(g->inv(a12) == a21);
  CHECK(g->gamma().label(g->degree(a12)) == "1");

  CHECK(g->degree_fiber(g->gamma().identity()) == std::vector<int>{0, 3});
  auto eps = g->epsilon_subgroupoid();
  CHECK(eps->size() == 2);
  CHECK(eps->is_principal());
}

TEST_CASE("group groupoid Z/2 is not principal") {
  auto g = make_z2_group(true);
  CHECK(g->size() == 2);
  CHECK(g->units() == std::vector<int>{0});
  CHECK(g->isotropy() == std::vector<int>{0, 1});
  CHECK_FALSE(g->is_principal());
  auto eps = g->epsilon_subgroupoid();
  CHECK(eps->size() == 1);  // self-graded: only the unit survives

  auto t = make_z2_group(false);
  CHECK(t->epsilon_subgroupoid()->size() == 2);  // trivially graded
}

TEST_CASE("disjoint union of R_2 and Z/2") {
  auto gamma = Group::integer_window(1);
  Groupoid::Data d;
  d.arrows = {"(1,1)", "(1,2)", "(2,1)", "(2,2)", "e", "x"};
  d.src = {0, 3, 0, 3, 4, 4};
  d.rng = {0, 0, 3, 3, 4, 4};
  const int z = gamma->identity();
  const int p1 = *gamma->find("1");
  const int m1 = *gamma->find("-1");
  d.degree = {z, p1, m1, z, z, z};
  d.compose = {{0, 0, 0}, {0, 1, 1}, {1, 3, 1}, {3, 3, 3}, {3, 2, 2}, {2, 0, 2},
               {1, 2, 0}, {2, 1, 3}, {4, 4, 4}, {4, 5, 5}, {5, 4, 5}, {5, 5, 4}};
  auto g = Groupoid::validate(std::move(d), gamma);
  CHECK(g->units().size() == 3);
  CHECK_FALSE(g->is_principal());  // x is non-unit isotropy
  CHECK(g->degree_fiber(p1) == std::vector<int>{1});
}

TEST_CASE("groupoid axiom violations carry witnesses") {
  auto gamma = Group::trivial();
  // missing composite (e,e)
  Groupoid::Data d1;
  d1.arrows = {"e"};
  d1.src = {0};
  d1.rng = {0};
  d1.degree = {0};
  CHECK_THROWS_AS(Groupoid::validate(std::move(d1), gamma), AxiomViolation);

  // grading fails to be a homomorphism: Z-window degree 1 on an involution
  auto w = Group::integer_window(1);
  Groupoid::Data d2;
  d2.arrows = {"e", "x"};
  d2.src = {0, 0};
  d2.rng = {0, 0};
  d2.compose = {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
  d2.degree = {w->identity(), *w->find("1")};
  try {
    Groupoid::validate(std::move(d2), w);
    FAIL("expected grading violation");
  } catch (const AxiomViolation& e) {
    CHECK(e.axiom == "grading");
  }
}

TEST_CASE("bisections of R_2") {
  auto g = make_rn(2);
  const int a11 = 0, a12 = 1, a21 = 2, a22 = 3;
  CHECK(is_bisection(*g, {a11, a22}));
  CHECK(is_bisection(*g, {a12, a21}));
  CHECK_FALSE(is_bisection(*g, {a11, a12}));  // shared range (1,1)

  CHECK(bisection_product(*g, {a12}, {a21}) == std::vector<int>{a11});
  CHECK(bisection_inverse(*g, {a12}) == std::vector<int>{a21});

  auto all = all_homogeneous_bisections(*g);
  // fibers: {-1}: one singleton, {0}: three nonempty subsets, {1}: one
  CHECK(all.size() == 5);
  std::set<std::vector<int>> s(all.begin(), all.end());
  CHECK(s.count({a11, a22}) == 1);
  CHECK(s.count({a12}) == 1);

  auto closure = homogeneous_bisection_closure(*g);
  // closure of singletons under product/inverse stays singletons
  for (const auto& b : closure) CHECK(b.size() == 1);
}

TEST_CASE("R_3 fiber structure") {
  auto g = make_rn(3);
  CHECK(g->size() == 9);
  CHECK(g->units().size() == 3);
  const int p2 = *g->gamma().find("2");
  CHECK(g->degree_fiber(p2).size() == 1);  // only (1,3)
  auto all = all_homogeneous_bisections(*g);
  // per fiber sizes 1,2,3,2,1 -> 1 + 3 + 7 + 3 + 1 nonempty injective subsets
  CHECK(all.size() == 15);
}
