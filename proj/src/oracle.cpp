#include "stein/oracle.hpp"

#include <algorithm>

namespace stein {

namespace {

using Elt = StructuredAlgebra::Elt;

// Every coefficient vector, ascending in ring-index lex order.
std::vector<Elt> all_elements(const StructuredAlgebra& a, long long cap, const char* what) {
  long long total = 1;
  for (int i = 0; i < a.dim(); ++i) {
    total *= a.ring().size();
    if (total > cap) throw CapExceeded(what);
  }
  std::vector<Elt> all(static_cast<size_t>(total), Elt(a.dim(), 0));
  for (long long v = 0; v < total; ++v) {
    long long x = v;
    for (int i = a.dim() - 1; i >= 0; --i) {
      all[static_cast<size_t>(v)][i] = static_cast<int>(x % a.ring().size());
      x /= a.ring().size();
    }
  }
  return all;
}

}  // namespace

std::vector<Elt> oracle_normalisers(const StructuredAlgebra& a, const Caps& caps) {
  const auto all = all_elements(a, caps.oracle_normaliser_max, "normaliser oracle scan");
  std::vector<Elt> out;
  for (const Elt& n : all) {
    if (!a.homogeneous_degree(n)) continue;
    for (const Elt& m : all) {
      if (a.mul(a.mul(m, n), m) != m) continue;
      if (a.mul(a.mul(n, m), n) != n) continue;
      bool carries = true;
      for (const Elt& c : a.c_gens()) {
        if (!a.in_c(a.mul(a.mul(n, c), m)) || !a.in_c(a.mul(a.mul(m, c), n))) {
          carries = false;
          break;
        }
      }
      if (carries) {
        out.push_back(n);
        break;
      }
    }
  }
  return out;
}

bool tables_leq(const SemigroupTables& s, int i, int j) {
  const int ii = s.mul[s.dagger[i]][i];
  if (ii < 0) return false;
  return s.mul[j][ii] == i;
}

std::vector<std::vector<int>> oracle_filters(const SemigroupTables& s, const Caps& caps) {
  std::vector<int> nz;
  for (int i = 0; i < s.n; ++i)
    if (i != s.zero) nz.push_back(i);
  const int k = static_cast<int>(nz.size());
  if (k > caps.oracle_filter_max) throw CapExceeded("filter oracle subset scan");

  std::vector<std::vector<char>> leq(s.n, std::vector<char>(s.n, 0));
  for (int i = 0; i < s.n; ++i)
    for (int j = 0; j < s.n; ++j) leq[i][j] = tables_leq(s, i, j) ? 1 : 0;

  std::vector<std::vector<int>> out;
  for (unsigned long long mask = 1; mask < (1ull << k); ++mask) {
    std::vector<int> members;
    for (int b = 0; b < k; ++b)
      if (mask >> b & 1) members.push_back(nz[b]);

    bool up = true;
    for (int m : members) {
      for (int j : nz) {
        if (!leq[m][j]) continue;
        if (!std::binary_search(members.begin(), members.end(), j)) {
          up = false;
          break;
        }
      }
      if (!up) break;
    }
    if (!up) continue;

    bool directed = true;
    for (size_t x = 0; directed && x < members.size(); ++x) {
      for (size_t y = x; directed && y < members.size(); ++y) {
        bool found = false;
        for (int p : members)
          if (leq[p][members[x]] && leq[p][members[y]]) {
            found = true;
            break;
          }
        directed = found;
      }
    }
    if (directed) out.push_back(members);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> oracle_ultrafilters(const SemigroupTables& s, const Caps& caps) {
  const auto filters = oracle_filters(s, caps);
  std::vector<std::vector<int>> out;
  for (const auto& f : filters) {
    bool maximal = true;
    for (const auto& g : filters) {
      if (g.size() <= f.size()) continue;
      if (std::includes(g.begin(), g.end(), f.begin(), f.end())) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(f);
  }
  return out;
}

std::vector<int> oracle_convolution(const ExplicitTwist& t, const std::vector<int>& f,
                                    const std::vector<int>& g, const std::vector<int>& sec) {
  const Ring& R = *t.ring;
  const Groupoid& G = *t.base;
  const Groupoid& S = *t.sigma;
  if (static_cast<int>(f.size()) != G.size() || static_cast<int>(g.size()) != G.size() ||
      static_cast<int>(sec.size()) != G.size())
    throw SchemaError("convolution oracle: vector sizes");
  for (int a = 0; a < G.size(); ++a)
    if (sec[a] < 0 || sec[a] >= S.size() || t.q_of(sec[a]) != a)
      throw SchemaError("convolution oracle: sec is not a section");

  const auto canon = canonical_section(t);
  // Contravariant extension of canonical coordinates to the whole extension.
  auto value_at = [&](const std::vector<int>& v, int sarrow) -> int {
    const int a = t.q_of(sarrow);
    for (int u : R.units())
      if (t.action(u, canon[a]) == sarrow) return R.mul(R.inv(u), v[a]);
    throw TheoremViolation("convolution oracle: arrow misses its fiber");
  };

  std::vector<int> out(static_cast<size_t>(G.size()), R.zero());
  for (int c = 0; c < G.size(); ++c) {
    const int sigma = canon[c];
    int acc = R.zero();
    for (int a = 0; a < G.size(); ++a) {
      if (G.rng(a) != G.rng(c)) continue;
      if (f[a] == R.zero()) continue;
      const int rest = S.compose(S.inv(sec[a]), sigma);
      if (rest < 0) throw TheoremViolation("convolution oracle: fiber composition failed");
      acc = R.add(acc, R.mul(value_at(f, sec[a]), value_at(g, rest)));
    }
    out[c] = acc;
  }
  return out;
}

}  // namespace stein
