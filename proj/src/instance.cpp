#include "stein/instance.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "stein/errors.hpp"
#include "stein/oracle.hpp"
#include "stein/pairs.hpp"
#include "stein/reconstruct.hpp"
#include "stein/steinberg.hpp"

namespace stein {

namespace {

using nlohmann::json;
using Elt = StructuredAlgebra::Elt;

// ---------------------------------------------------------------------------
// Parsing.

const json& need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw SchemaError(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

int need_int(const json& j, const std::string& what) {
  if (!j.is_number_integer()) throw SchemaError(what + " must be an integer");
  return j.get<int>();
}

std::string need_str(const json& j, const std::string& what) {
  if (!j.is_string()) throw SchemaError(what + " must be a string");
  return j.get<std::string>();
}

std::vector<std::string> need_strings(const json& j, const std::string& what) {
  if (!j.is_array()) throw SchemaError(what + " must be an array");
  std::vector<std::string> out;
  for (const auto& x : j) out.push_back(need_str(x, what + " entry"));
  return out;
}

std::vector<std::vector<int>> need_table(const json& j, const std::string& what) {
  if (!j.is_array()) throw SchemaError(what + " must be an array of rows");
  std::vector<std::vector<int>> out;
  for (const auto& row : j) {
    if (!row.is_array()) throw SchemaError(what + " rows must be arrays");
    std::vector<int> r;
    for (const auto& x : row) r.push_back(need_int(x, what + " entry"));
    out.push_back(std::move(r));
  }
  return out;
}

std::shared_ptr<const Ring> parse_ring(const json& j) {
  if (!j.is_object()) throw SchemaError("ring must be an object");
  if (j.contains("mod")) return Ring::modular(need_int(j.at("mod"), "ring.mod"));
  if (j.contains("table")) {
    const json& t = j.at("table");
    return Ring::from_tables(need_strings(need(t, "elements"), "ring.table.elements"),
                             need_table(need(t, "add"), "ring.table.add"),
                             need_table(need(t, "mul"), "ring.table.mul"));
  }
  throw SchemaError("ring needs \"mod\" or \"table\"");
}

std::shared_ptr<const Group> parse_gamma(const json& j) {
  if (!j.is_object()) throw SchemaError("gamma must be an object");
  if (j.contains("trivial")) return Group::trivial();
  if (j.contains("int_bound"))
    return Group::integer_window(need_int(j.at("int_bound"), "gamma.int_bound"));
  if (j.contains("labels"))
    return Group::from_table(need_strings(need(j, "labels"), "gamma.labels"),
                             need_table(need(j, "mul"), "gamma.mul"),
                             need_str(need(j, "identity"), "gamma.identity"));
  throw SchemaError("gamma needs \"trivial\", \"int_bound\" or \"labels\"/\"mul\"/\"identity\"");
}

int ring_elt(const Ring& r, const json& v, const std::string& what) {
  const int x = need_int(v, what);
  if (x < 0 || x >= r.size()) throw SchemaError(what + ": ring element out of range");
  return x;
}

// Arrows plus src/rng maps and compose triples. Degrees are filled by the
// caller: the base groupoid reads the grading block, an extension groupoid
// inherits degrees along its projection.
struct RawGroupoid {
  Groupoid::Data d;
  std::map<std::string, int> idx;

  int arrow(const json& v, const std::string& what) const {
    const std::string s = need_str(v, what);
    const auto it = idx.find(s);
    if (it == idx.end()) throw SchemaError(what + ": unknown arrow \"" + s + "\"");
    return it->second;
  }
};

RawGroupoid parse_groupoid_data(const json& j, const std::string& what) {
  if (!j.is_object()) throw SchemaError(what + " must be an object");
  RawGroupoid raw;
  raw.d.arrows = need_strings(need(j, "arrows"), what + ".arrows");
  const int n = static_cast<int>(raw.d.arrows.size());
  for (int i = 0; i < n; ++i)
    if (!raw.idx.emplace(raw.d.arrows[i], i).second)
      throw SchemaError(what + ": duplicate arrow \"" + raw.d.arrows[i] + "\"");
  auto fill_map = [&](const char* key, std::vector<int>& out) {
    const json& mj = need(j, key);
    if (!mj.is_object())
      throw SchemaError(what + "." + key + " must be a map from arrows to arrows");
    out.assign(n, -1);
    for (const auto& [k, v] : mj.items())
      out[raw.arrow(json(k), what + "." + key)] = raw.arrow(v, what + "." + key);
    for (int i = 0; i < n; ++i)
      if (out[i] < 0)
        throw SchemaError(what + "." + key + " misses arrow \"" + raw.d.arrows[i] + "\"");
  };
  fill_map("src", raw.d.src);
  fill_map("rng", raw.d.rng);
  const json& comp = need(j, "compose");
  if (!comp.is_array()) throw SchemaError(what + ".compose must be an array");
  for (const auto& tr : comp) {
    if (!tr.is_array() || tr.size() != 3)
      throw SchemaError(what + ".compose entries must be [a, b, ab]");
    raw.d.compose.push_back({raw.arrow(tr[0], what + ".compose"),
                             raw.arrow(tr[1], what + ".compose"),
                             raw.arrow(tr[2], what + ".compose")});
  }
  return raw;
}

// The grading block maps arrows to degree labels; omitted arrows sit in the
// identity fiber, an omitted block grades everything trivially.
std::vector<int> parse_grading_map(const json& j, const RawGroupoid& raw, const Group& gamma) {
  std::vector<int> deg(raw.d.arrows.size(), gamma.identity());
  if (j.is_null()) return deg;
  if (!j.is_object()) throw SchemaError("grading must be a map from arrows to degrees");
  for (const auto& [k, v] : j.items()) {
    const int a = raw.arrow(json(k), "grading");
    const std::string s = need_str(v, "grading");
    const auto g = gamma.find(s);
    if (!g) throw SchemaError("grading: unknown degree label \"" + s + "\"");
    deg[a] = *g;
  }
  return deg;
}

std::shared_ptr<const Groupoid> parse_base_groupoid(const json& gj, const json& grading,
                                                    std::shared_ptr<const Group> gamma) {
  RawGroupoid raw = parse_groupoid_data(gj, "groupoid");
  raw.d.degree = parse_grading_map(grading, raw, *gamma);
  return Groupoid::validate(std::move(raw.d), std::move(gamma));
}

ExplicitTwist parse_explicit_twist(const json& j, std::shared_ptr<const Ring> ring,
                                   std::shared_ptr<const Groupoid> base) {
  RawGroupoid raw = parse_groupoid_data(need(j, "sigma"), "twist.sigma");
  const int n = static_cast<int>(raw.d.arrows.size());
  const json& qj = need(j, "q");
  if (!qj.is_object()) throw SchemaError("twist.q must be a map from sigma arrows to base arrows");
  std::vector<int> q_tab(n, -1);
  for (const auto& [k, v] : qj.items()) {
    const int s = raw.arrow(json(k), "twist.q");
    const std::string bs = need_str(v, "twist.q");
    const auto b = base->find(bs);
    if (!b) throw SchemaError("twist.q: unknown base arrow \"" + bs + "\"");
    q_tab[s] = *b;
  }
  for (int s = 0; s < n; ++s)
    if (q_tab[s] < 0)
      throw SchemaError("twist.q misses arrow \"" + raw.d.arrows[s] + "\"");
  // Degrees are inherited along the projection, never declared separately.
  raw.d.degree.resize(n);
  for (int s = 0; s < n; ++s) raw.d.degree[s] = base->degree(q_tab[s]);
  auto sigma = Groupoid::validate(std::move(raw.d), base->gamma_ptr());
  const auto& units = ring->units();
  std::vector<std::vector<int>> i_tab(base->size());
  for (int u : base->units()) i_tab[u].assign(units.size(), -1);
  const json& ij = need(j, "i");
  if (!ij.is_array()) throw SchemaError("twist.i must be an array");
  for (const auto& tr : ij) {
    if (!tr.is_array() || tr.size() != 3)
      throw SchemaError("twist.i entries must be [unit, scalar, arrow]");
    const std::string us = need_str(tr[0], "twist.i unit");
    const auto u = base->find(us);
    if (!u || !base->is_unit(*u))
      throw SchemaError("twist.i: \"" + us + "\" is not a base unit");
    const int t = ring_elt(*ring, tr[1], "twist.i scalar");
    const auto kit = std::find(units.begin(), units.end(), t);
    if (kit == units.end()) throw SchemaError("twist.i scalar must be a unit");
    const std::string ss = need_str(tr[2], "twist.i arrow");
    const auto s = sigma->find(ss);
    if (!s) throw SchemaError("twist.i: unknown sigma arrow \"" + ss + "\"");
    i_tab[*u][kit - units.begin()] = *s;
  }
  for (int u : base->units())
    for (size_t k = 0; k < units.size(); ++k)
      if (i_tab[u][k] < 0)
        throw SchemaError("twist.i misses unit " + base->label(u) + " at scalar " +
                          std::to_string(units[k]));
  ExplicitTwist t{std::move(ring), std::move(sigma), std::move(base), std::move(i_tab),
                  std::move(q_tab)};
  validate_twist(t);
  return t;
}

Elt parse_vec(const json& j, const std::map<std::string, int>& idx, const Ring& r, int dim,
              const std::string& what) {
  if (!j.is_object()) throw SchemaError(what + " must be an object of coefficients");
  Elt v(dim, r.zero());
  for (const auto& [key, val] : j.items()) {
    const auto it = idx.find(key);
    if (it == idx.end()) throw SchemaError(what + ": unknown basis element \"" + key + "\"");
    v[it->second] = ring_elt(r, val, what + "[" + key + "]");
  }
  return v;
}

StructuredAlgebra parse_algebra(const json& j, std::shared_ptr<const Ring> ring,
                                std::shared_ptr<const Group> gamma, const Caps& caps) {
  if (!j.is_object()) throw SchemaError("algebra must be an object");
  StructuredAlgebra::Data d;
  d.ring = ring;
  d.gamma = gamma;
  d.basis = need_strings(need(j, "basis"), "algebra.basis");
  const int n = static_cast<int>(d.basis.size());
  std::map<std::string, int> idx;
  for (int i = 0; i < n; ++i)
    if (!idx.emplace(d.basis[i], i).second)
      throw SchemaError("algebra: duplicate basis element \"" + d.basis[i] + "\"");
  for (const auto& v : need(j, "deg")) {
    const std::string s = need_str(v, "algebra.deg");
    const auto g = gamma->find(s);
    if (!g) throw SchemaError("algebra.deg: unknown grading label \"" + s + "\"");
    d.deg.push_back(*g);
  }
  if (d.deg.size() != static_cast<size_t>(n))
    throw SchemaError("algebra.deg must match the basis count");
  d.mul.assign(n, std::vector<Elt>(n, Elt(n, ring->zero())));
  const json& mj = need(j, "mul");
  if (!mj.is_array()) throw SchemaError("algebra.mul must be an array");
  for (const auto& tr : mj) {
    if (!tr.is_array() || tr.size() != 3)
      throw SchemaError("algebra.mul entries must be [a, b, product]");
    const std::string as = need_str(tr[0], "algebra.mul"), bs = need_str(tr[1], "algebra.mul");
    const auto ai = idx.find(as), bi = idx.find(bs);
    if (ai == idx.end() || bi == idx.end())
      throw SchemaError("algebra.mul: unknown basis element in [" + as + ", " + bs + "]");
    d.mul[ai->second][bi->second] =
        parse_vec(tr[2], idx, *ring, n, "algebra.mul[" + as + "," + bs + "]");
  }
  for (const auto& v : need(j, "C")) d.c_gens.push_back(parse_vec(v, idx, *ring, n, "algebra.C"));
  if (j.contains("P")) {
    d.p_rows.assign(n, Elt(n, ring->zero()));
    const json& pj = j.at("P");
    if (!pj.is_array()) throw SchemaError("algebra.P must be an array");
    for (const auto& tr : pj) {
      if (!tr.is_array() || tr.size() != 2)
        throw SchemaError("algebra.P entries must be [element, value]");
      const std::string s = need_str(tr[0], "algebra.P");
      const auto it = idx.find(s);
      if (it == idx.end()) throw SchemaError("algebra.P: unknown basis element \"" + s + "\"");
      d.p_rows[it->second] = parse_vec(tr[1], idx, *ring, n, "algebra.P[" + s + "]");
    }
  }
  return StructuredAlgebra::validate(std::move(d), caps);
}

// ---------------------------------------------------------------------------
// Rendering.

json render_ring(const Ring& r) {
  json j;
  if (r.is_modular()) {
    j["mod"] = r.modulus();
    return j;
  }
  std::vector<std::string> elements;
  std::vector<std::vector<int>> add, mul;
  for (int a = 0; a < r.size(); ++a) {
    elements.push_back(r.label(a));
    std::vector<int> ra, rm;
    for (int b = 0; b < r.size(); ++b) {
      ra.push_back(r.add(a, b));
      rm.push_back(r.mul(a, b));
    }
    add.push_back(std::move(ra));
    mul.push_back(std::move(rm));
  }
  j["table"] = {{"elements", elements}, {"add", add}, {"mul", mul}};
  return j;
}

json render_gamma(const Group& g) {
  json j;
  if (g.int_bound()) {
    j["int_bound"] = *g.int_bound();
    return j;
  }
  if (g.size() == 1) {
    j["trivial"] = true;
    return j;
  }
  std::vector<std::string> labels;
  std::vector<std::vector<int>> mul;
  for (int a = 0; a < g.size(); ++a) {
    labels.push_back(g.label(a));
    std::vector<int> row;
    for (int b = 0; b < g.size(); ++b) row.push_back(g.mul(a, b));
    mul.push_back(std::move(row));
  }
  j["labels"] = labels;
  j["mul"] = mul;
  j["identity"] = g.label(g.identity());
  return j;
}

json render_groupoid(const Groupoid& g) {
  json j;
  std::vector<std::string> arrows;
  json src = json::object(), rng = json::object();
  for (int a = 0; a < g.size(); ++a) {
    arrows.push_back(g.label(a));
    src[g.label(a)] = g.label(g.src(a));
    rng[g.label(a)] = g.label(g.rng(a));
  }
  json comp = json::array();
  for (int a = 0; a < g.size(); ++a)
    for (int b = 0; b < g.size(); ++b)
      if (g.compose(a, b) >= 0)
        comp.push_back({g.label(a), g.label(b), g.label(g.compose(a, b))});
  j["arrows"] = arrows;
  j["src"] = src;
  j["rng"] = rng;
  j["compose"] = comp;
  return j;
}

// Non-identity degrees only; an empty map means the trivial grading.
json render_grading(const Groupoid& g) {
  json j = json::object();
  for (int a = 0; a < g.size(); ++a)
    if (g.degree(a) != g.gamma().identity()) j[g.label(a)] = g.gamma().label(g.degree(a));
  return j;
}

json render_vec(const StructuredAlgebra& a, const Elt& v) {
  json j = json::object();
  for (int i = 0; i < a.dim(); ++i)
    if (v[i] != a.ring().zero()) j[a.basis_name(i)] = v[i];
  return j;
}

// ---------------------------------------------------------------------------
// Shared report pieces.

std::string check_line(const Check& c) {
  if (c.ok && c.decided) return "ok";
  if (c.ok) return "no violation found (sampled)";
  if (!c.decided) return "undecided: " + c.witness;
  return "FAIL: " + c.witness;
}

std::string yn(bool b) { return b ? "yes" : "no"; }

bool check_undecided(const Check& c) { return !c.ok && !c.decided; }

// The pair axioms the cap can leave open.
bool pair_undecided(const PairReport& r) {
  return check_undecided(r.eps_spanned) || check_undecided(r.faithful) ||
         check_undecided(r.semigroup_laws);
}

std::string pair_line(const PairReport& r) {
  if (r.pair_ok()) return "ok";
  if (check_undecided(r.wt) || check_undecided(r.local_units) || check_undecided(r.c_spanned) ||
      check_undecided(r.expectation) || pair_undecided(r))
    return "undecided(cap)";
  return "FAIL";
}

// Three-state verdict for one pair family: the graded property, its
// identity-fiber weakening, or a cap that left the deciding scan open.
std::string verdict(const PairReport& r, bool graded, bool fiber, const Check& deciding) {
  if (graded) return "yes (graded)";
  if (fiber) return "yes (identity fiber only)";
  if (pair_undecided(r) || check_undecided(deciding) || check_undecided(r.graded_span))
    return "undecided(cap)";
  return "no";
}

// The same under a trivial grading, where graded and fiber forms coincide.
std::string flat_verdict(const PairReport& r, bool pred, const Check& deciding) {
  if (pred) return "yes";
  if (pair_undecided(r) || check_undecided(deciding)) return "undecided(cap)";
  return "no";
}

// The algebra pair a command works on: the input algebra, or the
// convolution algebra of the input twist along its canonical section.
struct WorkingPair {
  std::optional<SteinbergAlgebra> conv;
  const StructuredAlgebra* a = nullptr;
};

CocycleTwist instance_cocycle(const Instance& inst) {
  return inst.cocycle_form ? *inst.cocycle
                           : to_cocycle(*inst.twist, canonical_section(*inst.twist));
}

WorkingPair working_pair(const Instance& inst, const Caps& caps) {
  WorkingPair w;
  if (inst.is_twist()) {
    w.conv.emplace(instance_cocycle(inst), caps);
    w.a = &w.conv->to_structured();
  } else {
    w.a = &*inst.algebra;
  }
  return w;
}

// The same pair with the grading forgotten: every basis element moves to
// the identity fiber and the whole algebra becomes that fiber.
StructuredAlgebra forget_grading(const StructuredAlgebra& a) {
  StructuredAlgebra::Data d;
  d.ring = a.ring_ptr();
  d.gamma = Group::trivial();
  const int n = a.dim();
  for (int i = 0; i < n; ++i) d.basis.push_back(a.basis_name(i));
  d.deg.assign(n, d.gamma->identity());
  d.mul.assign(n, std::vector<Elt>(n));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) d.mul[i][k] = a.mul(a.basis_elt(i), a.basis_elt(k));
  d.c_gens = a.c_gens();
  if (a.has_expectation()) {
    d.p_rows.reserve(n);
    for (int i = 0; i < n; ++i) d.p_rows.push_back(a.apply_p(a.basis_elt(i)));
  }
  return StructuredAlgebra::validate(std::move(d), a.caps());
}

bool ring_indecomposable(const Ring& r) {
  int idempotents = 0;
  for (int t = 0; t < r.size(); ++t)
    if (r.mul(t, t) == t) ++idempotents;
  return idempotents == 2;
}

void describe_instance(std::ostringstream& out, json& data, const Instance& inst) {
  out << "ring: " << inst.ring->describe() << " (" << inst.ring->size() << " elements)\n";
  out << "grading: " << inst.gamma->describe() << "\n";
  data["ring"] = inst.ring->describe();
  data["gamma"] = inst.gamma->describe();
  if (inst.is_twist()) {
    const auto& t = *inst.twist;
    data["kind"] = "twist";
    data["sigma_size"] = t.sigma->size();
    data["base_size"] = t.base->size();
    out << "kind: twist (" << (inst.cocycle_form ? "cocycle form" : "explicit extension")
        << ")\n";
    out << "base: " << t.base->size() << " arrows, " << t.base->units().size() << " units\n";
    out << "sigma: " << t.sigma->size() << " arrows\n";
  } else {
    const auto& a = *inst.algebra;
    data["kind"] = "algebra";
    data["dim"] = a.dim();
    data["c_generators"] = static_cast<int>(a.c_gens().size());
    data["expectation"] = a.has_expectation();
    out << "kind: algebra\n";
    out << "pair: dim " << a.dim() << ", C generators " << a.c_gens().size()
        << ", expectation " << (a.has_expectation() ? "supplied" : "missing") << "\n";
  }
}

long long scan_size(const StructuredAlgebra& a, long long cap) {
  long long total = 1;
  for (int i = 0; i < a.dim(); ++i) {
    total *= a.ring().size();
    if (total > cap) return cap + 1;
  }
  return total;
}

void oracle_convolution_block(std::ostringstream& out, json& data, const Instance& inst,
                              const Caps& caps) {
  const auto& t = *inst.twist;
  const SteinbergAlgebra alg(instance_cocycle(inst), caps);
  const auto sec = canonical_section(t);
  int checked = 0;
  for (int i = 0; i < alg.dim(); ++i)
    for (int j = 0; j < alg.dim(); ++j) {
      const auto da = alg.delta(i), db = alg.delta(j);
      if (oracle_convolution(t, da, db, sec) != alg.convolve(da, db))
        throw TheoremViolation("oracle convolution disagrees at " +
                               alg.groupoid().label(i) + ", " + alg.groupoid().label(j));
      ++checked;
    }
  out << "oracle convolution: agree (" << checked << " products)\n";
  data["oracle_convolution"] = checked;
}

void oracle_pair_block(std::ostringstream& out, json& data, const StructuredAlgebra& a,
                       const NormaliserSemigroup& ns, const Caps& caps) {
  if (scan_size(a, caps.oracle_normaliser_max) <= caps.oracle_normaliser_max) {
    const auto literal = oracle_normalisers(a, caps);
    std::vector<Elt> engine;
    for (int i = 0; i < ns.size(); ++i) engine.push_back(ns.elt(i));
    if (literal != engine)
      throw TheoremViolation("oracle normalisers disagree with the fiber engine");
    out << "oracle normalisers: agree (" << literal.size() << ")\n";
    data["oracle_normalisers"] = static_cast<int>(literal.size());
  } else {
    out << "oracle normalisers: skipped (scan exceeds the cap)\n";
    data["oracle_normalisers"] = nullptr;
  }
  if (ns.size() <= caps.oracle_filter_max) {
    const auto tables = ns.tables();
    const auto filters = oracle_filters(tables, caps);
    const auto ultra = oracle_ultrafilters(tables, caps);
    std::set<int> least;
    for (const auto& u : ultra)
      for (int m : u) {
        bool below = true;
        for (int k : u) below = below && ns.leq(m, k);
        if (below) least.insert(m);
      }
    const auto mins = ns.minimal_nonzero();
    if (least != std::set<int>(mins.begin(), mins.end()))
      throw TheoremViolation("oracle ultrafilters disagree with the minimal elements");
    out << "oracle filters: agree (" << filters.size() << " filters, " << ultra.size()
        << " ultrafilters)\n";
    data["oracle_filters"] = static_cast<int>(filters.size());
    data["oracle_ultrafilters"] = static_cast<int>(ultra.size());
  } else {
    out << "oracle filters: skipped (semigroup exceeds the cap)\n";
    data["oracle_filters"] = nullptr;
  }
}

json checks_json(const PairReport& r) {
  json j;
  auto put = [&](const char* name, const Check& c) {
    j[name] = {{"ok", c.ok}, {"decided", c.decided}, {"witness", c.witness}};
  };
  put("wt", r.wt);
  put("local_units", r.local_units);
  put("c_spanned", r.c_spanned);
  put("eps_spanned", r.eps_spanned);
  put("expectation", r.expectation);
  put("faithful", r.faithful);
  put("semigroup_laws", r.semigroup_laws);
  put("graded_span", r.graded_span);
  put("diagonal", r.diagonal);
  put("cartan", r.cartan);
  put("quasi_cartan", r.quasi_cartan);
  return j;
}

void classification_block(std::ostringstream& out, json& data, const PairReport& r) {
  out << "checks:\n";
  out << "  weak torsion freeness: " << check_line(r.wt) << "\n";
  out << "  local units: " << check_line(r.local_units) << "\n";
  out << "  C spanned by idempotents: " << check_line(r.c_spanned) << "\n";
  out << "  fiber spanned by normalisers: " << check_line(r.eps_spanned) << "\n";
  out << "  expectation axioms: " << check_line(r.expectation) << "\n";
  out << "  expectation faithful: " << check_line(r.faithful) << "\n";
  out << "  inverse semigroup laws: " << check_line(r.semigroup_laws) << "\n";
  out << "  normalisers span the algebra: " << check_line(r.graded_span) << "\n";
  out << "  free normalisers span the fiber: " << check_line(r.diagonal) << "\n";
  out << "  C maximal commutative: " << check_line(r.cartan) << "\n";
  out << "  expectation implemented by idempotents: " << check_line(r.quasi_cartan) << "\n";
  out << "counts: N* " << r.n_star_size << ", identity degree " << r.n_eps_size
      << ", C idempotents " << r.idempotent_count << ", atoms " << r.atom_count << "\n";
  out << "pair: " << pair_line(r) << "\n";
  const std::string diag = verdict(r, r.is_graded_diagonal_pair(), r.is_diagonal_pair(),
                                   r.diagonal);
  const std::string cart = verdict(r, r.is_graded_cartan_pair(), r.is_cartan_pair(), r.cartan);
  const std::string quasi = verdict(r, r.is_graded_quasi_cartan_pair(),
                                    r.is_quasi_cartan_pair(), r.quasi_cartan);
  out << "diagonal: " << diag << "\n";
  out << "Cartan: " << cart << "\n";
  out << "quasi-Cartan: " << quasi << "\n";
  data["checks"] = checks_json(r);
  data["counts"] = {{"n_star", r.n_star_size},
                    {"n_eps", r.n_eps_size},
                    {"idempotents", r.idempotent_count},
                    {"atoms", r.atom_count}};
  data["pair"] = pair_line(r);
  data["diagonal"] = diag;
  data["cartan"] = cart;
  data["quasi_cartan"] = quasi;
}

// Verdicts with the grading forgotten. A pair already graded trivially is
// its own ungraded form, so the main report is reused.
void ungraded_block(std::ostringstream& out, json& data, const StructuredAlgebra& a,
                    const PairReport& graded_report) {
  const bool trivial = a.gamma().size() == 1;
  const PairReport r = trivial ? graded_report : classify_pair(forget_grading(a));
  const std::string diag = flat_verdict(r, r.is_graded_diagonal_pair(), r.diagonal);
  const std::string cart = flat_verdict(r, r.is_graded_cartan_pair(), r.cartan);
  const std::string quasi = flat_verdict(r, r.is_graded_quasi_cartan_pair(), r.quasi_cartan);
  out << "ungraded verdicts (grading forgotten):\n";
  out << "  diagonal: " << diag << "\n";
  out << "  Cartan: " << cart << "\n";
  out << "  quasi-Cartan: " << quasi << "\n";
  if (!r.is_graded_quasi_cartan_pair() && r.quasi_cartan.decided && !r.quasi_cartan.ok)
    out << "  witness: " << r.quasi_cartan.witness << "\n";
  data["ungraded"] = {{"diagonal", diag},
                      {"cartan", cart},
                      {"quasi_cartan", quasi},
                      {"quasi_cartan_witness", r.quasi_cartan.witness}};
}

// Twist-backed classification ends with the structure facts the identity
// fiber forces on the pair: bisection supports, and the implications from
// principality and effectiveness of the identity-degree base part. The
// implications hold over an indecomposable coefficient ring, so any
// disagreement there is an internal fault, not an input property.
void twist_cross_checks(std::ostringstream& out, json& data, const Instance& inst,
                        const WorkingPair& w, const NormaliserSemigroup& ns,
                        const PairReport& r) {
  const Check lbh = check_lbh(*w.conv, ns);
  out << "identity-fiber bisection supports: " << check_line(lbh) << "\n";
  data["lbh"] = {{"ok", lbh.ok}, {"decided", lbh.decided}, {"witness", lbh.witness}};
  const auto geps = inst.twist->base->epsilon_subgroupoid();
  out << "input base identity part: effective " << yn(geps->is_effective()) << ", principal "
      << yn(geps->is_principal()) << "\n";
  data["base_epsilon_effective"] = geps->is_effective();
  data["base_epsilon_principal"] = geps->is_principal();
  if (!ring_indecomposable(*inst.ring)) {
    out << "cross-check: skipped (the coefficient ring is decomposable)\n";
    data["cross_check"] = "skipped";
    return;
  }
  if (!r.pair_ok() || pair_undecided(r) || check_undecided(r.graded_span) ||
      check_undecided(r.diagonal) || check_undecided(r.cartan) ||
      check_undecided(r.quasi_cartan)) {
    out << "cross-check: skipped (pair verdicts unavailable)\n";
    data["cross_check"] = "skipped";
    return;
  }
  if (geps->is_principal() && !r.is_graded_diagonal_pair())
    throw TheoremViolation("principal identity part without a graded diagonal pair");
  if (geps->is_effective() && !r.is_graded_cartan_pair())
    throw TheoremViolation("effective identity part without a graded Cartan pair");
  if (lbh.ok != r.is_graded_quasi_cartan_pair())
    throw TheoremViolation("bisection supports disagree with the graded quasi-Cartan verdict");
  out << "cross-check: principal/effective/bisection implications hold\n";
  data["cross_check"] = "ok";
}

}  // namespace

Instance parse_instance(const json& j, const Caps& caps) {
  if (!j.is_object()) throw SchemaError("top level must be an object");
  if (need_int(need(j, "schema"), "schema") != 1)
    throw SchemaError("unsupported schema version");
  Instance inst;
  inst.ring = parse_ring(need(j, "ring"));
  inst.gamma = parse_gamma(need(j, "gamma"));
  const std::string kind = need_str(need(j, "kind"), "kind");
  if (kind == "twist") {
    auto base = parse_base_groupoid(need(j, "groupoid"),
                                    j.contains("grading") ? j.at("grading") : json(),
                                    inst.gamma);
    const json tw = j.contains("twist") ? j.at("twist") : json::object();
    if (tw.contains("sigma")) {
      inst.twist = parse_explicit_twist(tw, inst.ring, base);
    } else {
      std::vector<int> omega(static_cast<size_t>(base->size()) * base->size(),
                             inst.ring->one());
      if (tw.contains("omega")) {
        const json& oj = tw.at("omega");
        if (!oj.is_array()) throw SchemaError("twist.omega must be an array");
        for (const auto& tr : oj) {
          if (!tr.is_array() || tr.size() != 3)
            throw SchemaError("twist.omega entries must be [a, b, value]");
          const std::string as = need_str(tr[0], "twist.omega"),
                            bs = need_str(tr[1], "twist.omega");
          const auto a = base->find(as), b = base->find(bs);
          if (!a || !b)
            throw SchemaError("twist.omega: unknown arrow in [" + as + ", " + bs + "]");
          omega[static_cast<size_t>(*a) * base->size() + *b] =
              ring_elt(*inst.ring, tr[2], "twist.omega value");
        }
      }
      inst.cocycle = CocycleTwist::validate(inst.ring, base, std::move(omega));
      inst.cocycle_form = true;
      inst.twist = from_cocycle(*inst.cocycle);
    }
  } else if (kind == "algebra") {
    inst.algebra = parse_algebra(need(j, "algebra"), inst.ring, inst.gamma, caps);
  } else {
    throw SchemaError("kind must be \"twist\" or \"algebra\"");
  }
  return inst;
}

Instance load_instance(const std::string& path, const Caps& caps) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot read " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw SchemaError("bad JSON in " + path + ": " + e.what());
  } catch (const std::exception& e) {
    // directories and mid-read I/O errors surface as iostream failures
    throw SchemaError("cannot read " + path + ": " + e.what());
  }
  return parse_instance(j, caps);
}

json render_instance(const Instance& inst) {
  json j;
  j["schema"] = 1;
  j["ring"] = render_ring(*inst.ring);
  j["gamma"] = render_gamma(*inst.gamma);
  if (inst.is_twist()) {
    j["kind"] = "twist";
    const auto& t = *inst.twist;
    j["groupoid"] = render_groupoid(*t.base);
    const json grading = render_grading(*t.base);
    if (!grading.empty()) j["grading"] = grading;
    if (inst.cocycle_form) {
      const auto& c = *inst.cocycle;
      json entries = json::array();
      for (int a = 0; a < t.base->size(); ++a)
        for (int b = 0; b < t.base->size(); ++b)
          if (t.base->compose(a, b) >= 0 && c.w(a, b) != inst.ring->one())
            entries.push_back({t.base->label(a), t.base->label(b), c.w(a, b)});
      j["twist"] = {{"omega", entries}};
    } else {
      json tw;
      tw["sigma"] = render_groupoid(*t.sigma);
      json q = json::object();
      for (int s = 0; s < t.sigma->size(); ++s)
        q[t.sigma->label(s)] = t.base->label(t.q_of(s));
      tw["q"] = q;
      json itab = json::array();
      for (int u : t.base->units())
        for (size_t k = 0; k < inst.ring->units().size(); ++k)
          itab.push_back({t.base->label(u), inst.ring->units()[k],
                          t.sigma->label(t.i_tab[u][k])});
      tw["i"] = itab;
      j["twist"] = tw;
    }
  } else {
    j["kind"] = "algebra";
    const auto& a = *inst.algebra;
    json aj;
    std::vector<std::string> basis, deg;
    for (int i = 0; i < a.dim(); ++i) {
      basis.push_back(a.basis_name(i));
      deg.push_back(a.gamma().label(a.basis_degree(i)));
    }
    aj["basis"] = basis;
    aj["deg"] = deg;
    json mul = json::array();
    for (int i = 0; i < a.dim(); ++i)
      for (int k = 0; k < a.dim(); ++k) {
        const Elt p = a.mul(a.basis_elt(i), a.basis_elt(k));
        if (!a.is_zero(p)) mul.push_back({a.basis_name(i), a.basis_name(k), render_vec(a, p)});
      }
    aj["mul"] = mul;
    json c = json::array();
    for (const Elt& g : a.c_gens()) c.push_back(render_vec(a, g));
    aj["C"] = c;
    if (a.has_expectation()) {
      json p = json::array();
      for (int i = 0; i < a.dim(); ++i) {
        const Elt row = a.apply_p(a.basis_elt(i));
        if (!a.is_zero(row)) p.push_back({a.basis_name(i), render_vec(a, row)});
      }
      aj["P"] = p;
    }
    j["algebra"] = aj;
  }
  return j;
}

RunOutput run_validate(const Instance& inst, const Caps& caps, bool oracle) {
  std::ostringstream out;
  json data;
  out << "VALID\n";
  data["valid"] = true;
  describe_instance(out, data, inst);
  if (oracle && inst.is_twist()) oracle_convolution_block(out, data, inst, caps);
  return {out.str(), std::move(data), render_instance(inst)};
}

RunOutput run_classify(const Instance& inst, const Caps& caps, bool oracle) {
  std::ostringstream out;
  json data;
  describe_instance(out, data, inst);
  const WorkingPair w = working_pair(inst, caps);
  if (inst.is_twist()) out << "pair: convolution algebra, dim " << w.a->dim() << "\n";
  try {
    const NormaliserSemigroup ns = normalisers_of(*w.a);
    const PairReport r = classify_pair(*w.a, ns);
    classification_block(out, data, r);
    ungraded_block(out, data, *w.a, r);
    if (inst.is_twist()) twist_cross_checks(out, data, inst, w, ns, r);
    if (oracle) oracle_pair_block(out, data, *w.a, ns, caps);
  } catch (const CapExceeded&) {
    const PairReport r = classify_pair(*w.a);
    classification_block(out, data, r);
    ungraded_block(out, data, *w.a, r);
  }
  return {out.str(), std::move(data), render_instance(inst)};
}

RunOutput run_reconstruct(const Instance& inst, const Caps& caps, bool oracle) {
  std::ostringstream out;
  json data;
  describe_instance(out, data, inst);
  const WorkingPair w = working_pair(inst, caps);
  const Reconstruction rec = reconstruct_twist(*w.a);
  const auto& t = rec.twist();
  out << "ultrafilter twist constructed\n";
  out << "sigma*: " << t.sigma->size() << " arrows\n";
  out << "base*: " << t.base->size() << " arrows, " << t.base->units().size() << " units\n";
  const auto geps = t.base->epsilon_subgroupoid();
  out << "identity-degree base: effective " << yn(geps->is_effective()) << ", principal "
      << yn(geps->is_principal()) << "\n";
  data["sigma_star"] = t.sigma->size();
  data["g_star"] = t.base->size();
  data["effective"] = geps->is_effective();
  data["principal"] = geps->is_principal();
  std::vector<std::string> sl, bl;
  for (int s = 0; s < t.sigma->size(); ++s) sl.push_back(t.sigma->label(s));
  for (int b = 0; b < t.base->size(); ++b) bl.push_back(t.base->label(b));
  data["sigma_labels"] = sl;
  data["base_labels"] = bl;
  const PairReport r = classify_pair(*w.a, rec.normalisers());
  if (r.is_graded_quasi_cartan_pair()) {
    const IsoCertificate cert = certify_graded_iso(*w.a, rec);
    out << "graded isomorphism: certified (coordinate matrix " << cert.matrix.rows << " x "
        << cert.matrix.cols << ")\n";
    data["iso_certified"] = true;
  } else {
    out << "graded isomorphism: not available (the pair is not graded quasi-Cartan)\n";
    data["iso_certified"] = false;
  }
  if (oracle) oracle_pair_block(out, data, *w.a, rec.normalisers(), caps);

  // The reconstructed twist, re-emitted in cocycle form along the section
  // the coordinates use. Re-ingesting it reproduces the same reports.
  Instance emitted;
  emitted.ring = w.a->ring_ptr();
  emitted.gamma = w.a->gamma_ptr();
  emitted.cocycle = to_cocycle(t, rec.section());
  emitted.cocycle_form = true;
  emitted.twist = t;
  return {out.str(), std::move(data), render_instance(emitted)};
}

RunOutput run_roundtrip(const Instance& inst, const Caps& caps, bool oracle) {
  if (!inst.is_twist()) throw SchemaError("roundtrip needs a twist input");
  std::ostringstream out;
  json data;
  describe_instance(out, data, inst);
  const UniquenessCertificate cert = certify_uniqueness(*inst.twist, caps);
  out << "pair: graded quasi-Cartan " << yn(cert.quasi_cartan) << "\n";
  out << "identity-fiber bisection supports: " << check_line(cert.lbh) << "\n";
  out << "comparison map onto: " << yn(cert.surjective) << "\n";
  out << "sigma*: " << cert.sigma_star_size << " arrows (input "
      << inst.twist->sigma->size() << ")\n";
  out << "base*: " << cert.g_star_size << " arrows (input " << inst.twist->base->size()
      << ")\n";
  if (cert.holds) {
    out << "round trip: twist recovered up to isomorphism\n";
  } else {
    out << "round trip: proper embedding; the criteria fail together\n";
    out << "comparison map misses " << cert.missed_arrow << "\n";
  }
  data["quasi_cartan"] = cert.quasi_cartan;
  data["lbh"] = cert.lbh.ok;
  data["surjective"] = cert.surjective;
  data["holds"] = cert.holds;
  data["sigma_star"] = cert.sigma_star_size;
  data["g_star"] = cert.g_star_size;
  data["missed_arrow"] = cert.missed_arrow;
  if (oracle) oracle_convolution_block(out, data, inst, caps);
  return {out.str(), std::move(data), render_instance(inst)};
}

}  // namespace stein
