#include <memory>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "stein/steinberg.hpp"

using namespace stein;

namespace {

// Full equivalence relation on {1..n}; arrow (i,j): j -> i at flat index
// (i-1)*n + (j-1), graded by j - i in an integer window.
std::shared_ptr<const Groupoid> rn_gpd(int n) {
  auto gamma = Group::integer_window(n - 1);
  Groupoid::Data d;
  auto idx = [&](int i, int j) { return (i - 1) * n + (j - 1); };
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      d.arrows.push_back("(" + std::to_string(i) + "," + std::to_string(j) + ")");
      d.src.push_back(idx(j, j));
      d.rng.push_back(idx(i, i));
      d.degree.push_back(*gamma->find(std::to_string(j - i)));
    }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int l = 1; l <= n; ++l) d.compose.push_back({idx(i, j), idx(j, l), idx(i, l)});
  return Groupoid::validate(std::move(d), gamma);
}

std::shared_ptr<const Groupoid> z2_gpd() {
  auto gamma = Group::from_table({"0", "1"}, {{0, 1}, {1, 0}}, "0");
  Groupoid::Data d;
  d.arrows = {"e", "x"};
  d.src = {0, 0};
  d.rng = {0, 0};
  d.compose = {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
  d.degree = {0, 1};
  return Groupoid::validate(std::move(d), gamma);
}

std::vector<int> mat_mul(const Ring& R, int n, const std::vector<int>& A,
                         const std::vector<int>& B) {
  std::vector<int> C(static_cast<size_t>(n) * n, R.zero());
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < n; ++k) {
      if (A[r * n + k] == R.zero()) continue;
      for (int c = 0; c < n; ++c)
        C[r * n + c] = R.add(C[r * n + c], R.mul(A[r * n + k], B[k * n + c]));
    }
  return C;
}

std::vector<int> random_elt(std::mt19937& rng, const Ring& R, int dim) {
  std::uniform_int_distribution<int> pick(0, R.size() - 1);
  std::vector<int> v(dim);
  for (int& x : v) x = pick(rng);
  return v;
}

}  // namespace

TEST_CASE("convolution on a full equivalence relation is matrix multiplication") {
  for (int n : {2, 3})
    for (int mod : {2, 3}) {
      auto A = SteinbergAlgebra(CocycleTwist::trivial(Ring::modular(mod), rn_gpd(n)));
      const Ring& R = A.ring();

      // arrow (i,j) sits at the row-major slot of the matrix unit E_ij
      for (int a = 0; a < A.dim(); ++a)
        for (int b = 0; b < A.dim(); ++b)
          CHECK(A.convolve(A.delta(a), A.delta(b)) == mat_mul(R, n, A.delta(a), A.delta(b)));

      std::vector<int> eye(static_cast<size_t>(n) * n, R.zero());
      for (int i = 0; i < n; ++i) eye[i * n + i] = R.one();
      CHECK(A.identity() == eye);

      std::mt19937 rng(920511u + static_cast<unsigned>(10 * n + mod));
      for (int trial = 0; trial < 30; ++trial) {
        auto f = random_elt(rng, R, A.dim());
        auto g = random_elt(rng, R, A.dim());
        CHECK(A.convolve(f, g) == mat_mul(R, n, f, g));
        CHECK(A.convolve(A.identity(), f) == f);
        CHECK(A.convolve(f, A.identity()) == f);
      }
    }
}

TEST_CASE("twisted group algebra of Z/2 over F_5: d_x * d_x = 4 d_e") {
  auto c = CocycleTwist::validate(Ring::modular(5), z2_gpd(), {1, 1, 1, 4});
  SteinbergAlgebra A(c);
  CHECK(A.convolve(A.delta(1), A.delta(1)) == A.delta(0, 4));
  CHECK(A.identity() == A.delta(0));

  // (e + x)(e - x) = e - x^2 = e - 4e = 2e with the twist in force
  auto s = A.add(A.delta(0), A.delta(1));
  auto d = A.sub(A.delta(0), A.delta(1));
  CHECK(A.convolve(s, d) == A.delta(0, 2));

  CHECK(A.homogeneous_degree(A.delta(1)) == 1);
  CHECK(A.homogeneous_degree(A.convolve(A.delta(1), A.delta(1))) == 0);
  CHECK(!A.homogeneous_degree(s).has_value());

  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        CHECK(A.convolve(A.convolve(A.delta(i), A.delta(j)), A.delta(k)) ==
              A.convolve(A.delta(i), A.convolve(A.delta(j), A.delta(k))));
}

TEST_CASE("convolution is associative and distributive") {
  auto A = SteinbergAlgebra(CocycleTwist::trivial(Ring::modular(4), rn_gpd(3)));
  for (int i = 0; i < A.dim(); ++i)
    for (int j = 0; j < A.dim(); ++j)
      for (int k = 0; k < A.dim(); ++k)
        CHECK(A.convolve(A.convolve(A.delta(i), A.delta(j)), A.delta(k)) ==
              A.convolve(A.delta(i), A.convolve(A.delta(j), A.delta(k))));

  std::mt19937 rng(441u);
  for (int trial = 0; trial < 25; ++trial) {
    auto f = random_elt(rng, A.ring(), A.dim());
    auto g = random_elt(rng, A.ring(), A.dim());
    auto h = random_elt(rng, A.ring(), A.dim());
    CHECK(A.convolve(A.convolve(f, g), h) == A.convolve(f, A.convolve(g, h)));
    CHECK(A.convolve(A.add(f, g), h) == A.add(A.convolve(f, h), A.convolve(g, h)));
    CHECK(A.convolve(f, A.add(g, h)) == A.add(A.convolve(f, g), A.convolve(f, h)));
  }
}

TEST_CASE("indicators of bisections multiply to the indicator of the product") {
  auto g = rn_gpd(2);
  auto A = SteinbergAlgebra(CocycleTwist::trivial(Ring::modular(3), g));
  std::vector<int> X = {1};  // {(1,2)}
  std::vector<int> Y = {2};  // {(2,1)}
  auto XY = bisection_product(*g, X, Y);
  CHECK(XY == std::vector<int>{0});
  CHECK(A.convolve(A.indicator(X), A.indicator(Y)) == A.indicator(XY));

  auto full = bisection_product(*g, {1, 2}, {1, 2});
  CHECK(A.convolve(A.indicator({1, 2}), A.indicator({1, 2})) == A.indicator(full));
}

TEST_CASE("graded components multiply into the product fiber") {
  auto A = SteinbergAlgebra(CocycleTwist::trivial(Ring::modular(3), rn_gpd(2)));
  const Group& gamma = A.groupoid().gamma();
  const int d0 = gamma.identity();
  const int d1 = *gamma.find("1");
  auto mixed = A.add(A.delta(0), A.delta(1, 2));
  CHECK(A.component(mixed, d0) == A.delta(0));
  CHECK(A.component(mixed, d1) == A.delta(1, 2));
  CHECK(A.homogeneous_degree(A.zero()) == gamma.identity());
  CHECK(!A.homogeneous_degree(mixed).has_value());
  CHECK(A.support(mixed) == std::vector<int>{0, 1});

  auto prod = A.convolve(A.component(mixed, d1), A.delta(2));
  CHECK(prod == A.delta(0, 2));
  CHECK(A.homogeneous_degree(prod) == d0);
}

TEST_CASE("structured view agrees with direct convolution") {
  auto A = SteinbergAlgebra(CocycleTwist::trivial(Ring::modular(3), rn_gpd(2)));
  const auto& S = A.to_structured();
  CHECK(S.dim() == 4);
  CHECK(S.in_c(A.identity()));
  CHECK(!S.in_c(A.delta(1)));
  CHECK(S.show(A.add(A.delta(0), A.delta(1, 2))) == "(1,1) + 2*(1,2)");
  CHECK(S.show(A.zero()) == "0");

  std::mt19937 rng(77u);
  for (int trial = 0; trial < 20; ++trial) {
    auto f = random_elt(rng, A.ring(), A.dim());
    auto g = random_elt(rng, A.ring(), A.dim());
    CHECK(S.mul(f, g) == A.convolve(f, g));
    CHECK(S.apply_p(f) == A.diagonal_part(f));
  }

  CHECK(S.apply_p(A.delta(1)) == A.zero());
  CHECK(A.in_diagonal(A.identity()));
  CHECK(!A.in_diagonal(A.delta(1)));
  CHECK(S.homogeneous_degree(A.delta(1)) == A.homogeneous_degree(A.delta(1)));

  // the expectation is a C-bimodule map
  std::mt19937 rng2(78u);
  for (int trial = 0; trial < 10; ++trial) {
    auto f = random_elt(rng2, A.ring(), A.dim());
    auto c = A.add(A.delta(0, 2), A.delta(3));
    CHECK(S.apply_p(A.convolve(A.convolve(c, f), c)) ==
          A.convolve(A.convolve(c, S.apply_p(f)), c));
  }
}
