#include "stein/groupoid.hpp"

#include <algorithm>
#include <set>

namespace stein {

std::shared_ptr<const Group> Group::from_table(std::vector<std::string> labels,
                                               const std::vector<std::vector<int>>& mul,
                                               const std::string& identity_label) {
  const int n = static_cast<int>(labels.size());
  if (n < 1) throw SchemaError("group needs at least one element");
  std::set<std::string> seen(labels.begin(), labels.end());
  if (static_cast<int>(seen.size()) != n) throw SchemaError("group labels not distinct");
  if (static_cast<int>(mul.size()) != n) throw SchemaError("group table must have one row per element");
  auto g = std::shared_ptr<Group>(new Group());
  g->n_ = n;
  g->labels_ = std::move(labels);
  g->mul_.resize(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(mul[a].size()) != n) throw SchemaError("group table row has wrong length");
    for (int b = 0; b < n; ++b) {
      if (mul[a][b] < 0 || mul[a][b] >= n) throw SchemaError("group table entry out of range");
      g->mul_[a * n + b] = mul[a][b];
    }
  }
  auto id = g->find(identity_label);
  if (!id) throw SchemaError("group identity label not found: " + identity_label);
  g->id_ = *id;
  g->finish();
  return g;
}

std::shared_ptr<const Group> Group::trivial() {
  return from_table({"e"}, {{0}}, "e");
}

std::shared_ptr<const Group> Group::integer_window(int bound) {
  if (bound < 0 || bound > 15) throw SchemaError("integer grading bound out of range [0,15]");
  const int n = 4 * bound + 1;  // no product of two in-window degrees wraps
  std::vector<std::string> labels(n);
  for (int k = 0; k < n; ++k) labels[k] = std::to_string(k - 2 * bound);
  // element index k holds integer value k-2m; (x)+(y) lands on the index of
  // x+y mod n, which for |x|,|y| <= 2m never leaves the window unexpectedly
  // when both are realised degrees (|x|,|y| <= m).
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  auto idx = [&](long long v) { return static_cast<int>(((v + 2 * bound) % n + n) % n); };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) mul[a][b] = idx(static_cast<long long>(a - 2 * bound) + (b - 2 * bound));
  auto g = from_table(std::move(labels), mul, "0");
  // freshly built object; record the window it encodes
  const_cast<Group*>(g.get())->int_bound_ = bound;
  return g;
}

void Group::finish() {
  const int n = n_;
  for (int a = 0; a < n; ++a)
    if (mul(id_, a) != a || mul(a, id_) != a)
      throw AxiomViolation("group", "identity law fails at " + labels_[a]);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
          throw AxiomViolation("group", "associativity fails at (" + labels_[a] + "," + labels_[b] + "," + labels_[c] + ")");
  inv_.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (mul(a, b) == id_ && mul(b, a) == id_) inv_[a] = b;
  for (int a = 0; a < n; ++a)
    if (inv_[a] < 0) throw AxiomViolation("group", "no inverse for " + labels_[a]);
}

std::optional<int> Group::find(const std::string& label) const {
  for (int a = 0; a < n_; ++a)
    if (labels_[a] == label) return a;
  return std::nullopt;
}

std::string Group::describe() const {
  if (int_bound_) return "Z-window bound=" + std::to_string(*int_bound_) + " (cyclic order " + std::to_string(n_) + ")";
  if (n_ == 1) return "trivial (order 1)";
  return "table group (order " + std::to_string(n_) + ")";
}

std::shared_ptr<const Groupoid> Groupoid::validate(Data d, std::shared_ptr<const Group> gamma) {
  const int n = static_cast<int>(d.arrows.size());
  if (n < 1) throw SchemaError("groupoid needs at least one arrow");
  std::set<std::string> seen(d.arrows.begin(), d.arrows.end());
  if (static_cast<int>(seen.size()) != n) throw SchemaError("groupoid arrow labels not distinct");
  if (static_cast<int>(d.src.size()) != n || static_cast<int>(d.rng.size()) != n)
    throw SchemaError("groupoid src/rng must cover every arrow");
  if (static_cast<int>(d.degree.size()) != n) throw SchemaError("groupoid grading must cover every arrow");
  for (int a = 0; a < n; ++a) {
    if (d.src[a] < 0 || d.src[a] >= n || d.rng[a] < 0 || d.rng[a] >= n)
      throw SchemaError("groupoid src/rng out of range");
    if (d.degree[a] < 0 || d.degree[a] >= gamma->size()) throw SchemaError("groupoid degree out of range");
  }

  auto g = std::shared_ptr<Groupoid>(new Groupoid());
  g->n_ = n;
  g->labels_ = std::move(d.arrows);
  g->src_ = d.src;
  g->rng_ = d.rng;
  g->deg_ = d.degree;
  g->gamma_ = std::move(gamma);
  g->comp_.assign(static_cast<size_t>(n) * n, -1);
  for (const auto& t : d.compose) {
    for (int v : t)
      if (v < 0 || v >= n) throw SchemaError("compose triple index out of range");
    int& slot = g->comp_[t[0] * n + t[1]];
    if (slot >= 0 && slot != t[2]) throw AxiomViolation("groupoid", "composition not well defined at (" + g->labels_[t[0]] + "," + g->labels_[t[1]] + ")");
    slot = t[2];
  }

  auto lbl = [&](int a) { return g->labels_[a]; };

  // units: arrows named by src/rng; they must be their own src and rng
  std::set<int> unit_set;
  for (int a = 0; a < n; ++a) {
    unit_set.insert(g->src_[a]);
    unit_set.insert(g->rng_[a]);
  }
  for (int u : unit_set)
    if (g->src_[u] != u || g->rng_[u] != u)
      throw AxiomViolation("groupoid", "src/rng image " + lbl(u) + " is not a unit");
  g->units_.assign(unit_set.begin(), unit_set.end());

  // composability: defined exactly when src(a) == rng(b)
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int ab = g->comp_[a * n + b];
      if ((g->src_[a] == g->rng_[b]) != (ab >= 0))
        throw AxiomViolation("groupoid", std::string("composition ") + (ab >= 0 ? "defined" : "missing") +
                                             " at (" + lbl(a) + "," + lbl(b) + ")");
      if (ab >= 0) {
        if (g->rng_[ab] != g->rng_[a] || g->src_[ab] != g->src_[b])
          throw AxiomViolation("groupoid", "src/rng of composite wrong at (" + lbl(a) + "," + lbl(b) + ")");
      }
    }

  // unit laws
  for (int a = 0; a < n; ++a) {
    if (g->comp_[g->rng_[a] * n + a] != a)
      throw AxiomViolation("groupoid", "left unit law fails at " + lbl(a));
    if (g->comp_[a * n + g->src_[a]] != a)
      throw AxiomViolation("groupoid", "right unit law fails at " + lbl(a));
  }

  // associativity on all composable triples
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (g->src_[a] != g->rng_[b]) continue;
      const int ab = g->comp_[a * n + b];
      for (int c = 0; c < n; ++c) {
        if (g->src_[b] != g->rng_[c]) continue;
        const int bc = g->comp_[b * n + c];
        if (g->comp_[ab * n + c] != g->comp_[a * n + bc])
          throw AxiomViolation("groupoid", "associativity fails at (" + lbl(a) + "," + lbl(b) + "," + lbl(c) + ")");
      }
    }

  // inverses: unique two-sided
  g->inv_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (g->comp_[a * n + b] == g->rng_[a] && g->comp_[b * n + a] == g->src_[a]) {
        if (g->inv_[a] >= 0 && g->inv_[a] != b)
          throw AxiomViolation("groupoid", "inverse not unique for " + lbl(a));
        g->inv_[a] = b;
      }
    }
    if (g->inv_[a] < 0) throw AxiomViolation("groupoid", "no inverse for " + lbl(a));
  }

  // grading: homomorphism into gamma
  const Group& gam = *g->gamma_;
  for (int u : g->units_)
    if (g->deg_[u] != gam.identity())
      throw AxiomViolation("grading", "unit " + lbl(u) + " has non-identity degree");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int ab = g->comp_[a * n + b];
      if (ab >= 0 && g->deg_[ab] != gam.mul(g->deg_[a], g->deg_[b]))
        throw AxiomViolation("grading", "degree not multiplicative at (" + lbl(a) + "," + lbl(b) + ")");
    }
  for (int a = 0; a < n; ++a)
    if (g->deg_[g->inv_[a]] != gam.inv(g->deg_[a]))
      throw AxiomViolation("grading", "degree of inverse wrong at " + lbl(a));

  return g;
}

std::optional<int> Groupoid::find(const std::string& label) const {
  for (int a = 0; a < n_; ++a)
    if (labels_[a] == label) return a;
  return std::nullopt;
}

std::vector<int> Groupoid::isotropy() const {
  std::vector<int> out;
  for (int a = 0; a < n_; ++a)
    if (src_[a] == rng_[a]) out.push_back(a);
  return out;
}

bool Groupoid::is_principal() const {
  for (int a = 0; a < n_; ++a)
    if (src_[a] == rng_[a] && !is_unit(a)) return false;
  return true;
}

std::vector<int> Groupoid::degree_fiber(int g) const {
  std::vector<int> out;
  for (int a = 0; a < n_; ++a)
    if (deg_[a] == g) out.push_back(a);
  return out;
}

std::shared_ptr<const Groupoid> Groupoid::epsilon_subgroupoid(std::vector<int>* arrow_map) const {
  const int eps = gamma_->identity();
  std::vector<int> keep = degree_fiber(eps);
  std::vector<int> old2new(n_, -1);
  for (size_t i = 0; i < keep.size(); ++i) old2new[keep[i]] = static_cast<int>(i);
  Data d;
  for (int a : keep) {
    d.arrows.push_back(labels_[a]);
    d.src.push_back(old2new[src_[a]]);   // units have degree eps, so they survive
    d.rng.push_back(old2new[rng_[a]]);
    d.degree.push_back(eps);
  }
  for (int a : keep)
    for (int b : keep) {
      const int ab = compose(a, b);
      if (ab >= 0) d.compose.push_back({old2new[a], old2new[b], old2new[ab]});
    }
  if (arrow_map) *arrow_map = old2new;
  return validate(std::move(d), gamma_);
}

bool is_bisection(const Groupoid& g, const std::vector<int>& B) {
  std::set<int> s, r;
  for (int a : B) {
    if (!s.insert(g.src(a)).second) return false;
    if (!r.insert(g.rng(a)).second) return false;
  }
  return true;
}

std::vector<int> bisection_product(const Groupoid& g, const std::vector<int>& B,
                                   const std::vector<int>& D) {
  std::set<int> out;
  for (int a : B)
    for (int b : D) {
      const int ab = g.compose(a, b);
      if (ab >= 0) out.insert(ab);
    }
  return {out.begin(), out.end()};
}

std::vector<int> bisection_inverse(const Groupoid& g, const std::vector<int>& B) {
  std::set<int> out;
  for (int a : B) out.insert(g.inv(a));
  return {out.begin(), out.end()};
}

std::vector<std::vector<int>> homogeneous_bisection_closure(const Groupoid& g, const Caps& caps) {
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> work;
  for (int a = 0; a < g.size(); ++a) {
    std::vector<int> s{a};
    if (seen.insert(s).second) work.push_back(s);
  }
  while (!work.empty()) {
    auto b = std::move(work.back());
    work.pop_back();
    std::vector<std::vector<int>> next;
    next.push_back(bisection_inverse(g, b));
    for (const auto& d : seen) {
      next.push_back(bisection_product(g, b, d));
      next.push_back(bisection_product(g, d, b));
    }
    for (auto& x : next) {
      if (x.empty()) continue;
      if (seen.insert(x).second) {
        if (static_cast<long long>(seen.size()) > caps.budget)
          throw CapExceeded("bisection closure exceeds budget");
        work.push_back(std::move(x));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

std::vector<std::vector<int>> all_homogeneous_bisections(const Groupoid& g, const Caps& caps) {
  std::vector<std::vector<int>> out;
  for (int d = 0; d < g.gamma().size(); ++d) {
    const std::vector<int> fiber = g.degree_fiber(d);
    if (fiber.empty()) continue;
    // backtracking over the fiber, keeping src/rng injective
    std::vector<int> cur;
    std::set<int> used_s, used_r;
    auto rec = [&](auto&& self, size_t i) -> void {
      if (!cur.empty()) {
        out.push_back(cur);
        if (static_cast<long long>(out.size()) > caps.budget)
          throw CapExceeded("homogeneous bisection enumeration exceeds budget");
      }
      for (size_t j = i; j < fiber.size(); ++j) {
        const int a = fiber[j];
        if (used_s.count(g.src(a)) || used_r.count(g.rng(a))) continue;
        cur.push_back(a);
        used_s.insert(g.src(a));
        used_r.insert(g.rng(a));
        self(self, j + 1);
        cur.pop_back();
        used_s.erase(g.src(a));
        used_r.erase(g.rng(a));
      }
    };
    rec(rec, 0);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace stein
