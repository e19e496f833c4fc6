// Acceptance suite: one line per criterion, PASS or FAIL, exit code equal
// to the number of failures. Drives both the library and the built CLI on
// the shipped fixture corpus.
#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "stein/errors.hpp"
#include "stein/instance.hpp"
#include "stein/oracle.hpp"
#include "stein/pairs.hpp"
#include "stein/reconstruct.hpp"
#include "stein/steinberg.hpp"

using namespace stein;

namespace {

const std::vector<std::string> kValidTwists = {
    "m2_f2", "m2_f3", "m3_f2", "m3_f3", "r2_z4",
    "grouping_f5_z2_graded", "grouping_f5_z2_trivial", "z2_cocycle_f5"};
const std::vector<std::string> kAllFixtures = {
    "m2_f2", "m2_f3", "m3_f2", "m3_f3", "r2_z4",
    "grouping_f5_z2_graded", "grouping_f5_z2_trivial", "z2_cocycle_f5",
    "s3_dt3_fail", "z6_wt_fail"};

std::string fixture(const std::string& name) {
  return std::string(FIXTURE_DIR) + "/" + name + ".json";
}

struct CliResult {
  int exit_code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(STEIN_CLI) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("cannot run " + cmd);
  CliResult r;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

bool contains(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

CocycleTwist instance_cocycle(const Instance& inst) {
  return inst.cocycle_form ? *inst.cocycle
                           : to_cocycle(*inst.twist, canonical_section(*inst.twist));
}

// One criterion: runs the body, reports the first complaint or an exception.
bool criterion(int number, const std::string& title,
               const std::function<std::string()>& body) {
  std::string complaint;
  try {
    complaint = body();
  } catch (const std::exception& e) {
    complaint = std::string("exception: ") + e.what();
  }
  if (complaint.empty()) {
    std::cout << "PASS " << number << ": " << title << "\n";
    return true;
  }
  std::cout << "FAIL " << number << ": " << title << " -- " << complaint << "\n";
  return false;
}

// --- 1: matrix pairs over small fields ------------------------------------

std::string matrix_pairs() {
  for (const std::string name : {"m2_f2", "m2_f3", "m3_f2", "m3_f3"}) {
    const int n = name[1] - '0';
    const Instance inst = load_instance(fixture(name));
    const SteinbergAlgebra alg(instance_cocycle(inst));
    const StructuredAlgebra& a = alg.to_structured();
    const Reconstruction rec = reconstruct_twist(a);
    if (!classify_pair(a, rec.normalisers()).is_graded_diagonal_pair())
      return name + " is not a graded diagonal pair";
    const auto& base = *rec.twist().base;
    if (base.size() != n * n || static_cast<int>(base.units().size()) != n)
      return name + " does not rebuild the full relation on " + std::to_string(n) + " points";
    for (int x = 0; x < base.size(); ++x)
      if (base.src(x) == base.rng(x) && !base.is_unit(x))
        return name + " rebuilt base has nontrivial isotropy at " + base.label(x);
    std::set<std::pair<int, int>> seen;
    for (int x = 0; x < base.size(); ++x) seen.insert({base.src(x), base.rng(x)});
    if (static_cast<int>(seen.size()) != n * n)
      return name + " rebuilt base misses a pair of points";
    const CocycleTwist c = to_cocycle(rec.twist(), rec.section());
    for (int x = 0; x < base.size(); ++x)
      for (int y = 0; y < base.size(); ++y)
        if (base.compose(x, y) >= 0 && c.w(x, y) != c.ring->one())
          return name + " rebuilt twist is not trivial at (" + base.label(x) + "," +
                 base.label(y) + ")";
    certify_graded_iso(a, rec);
    const UniquenessCertificate cert = certify_uniqueness(*inst.twist);
    if (!cert.holds) return name + " does not certify its own recovery";
  }
  return "";
}

// --- 2: the group ring dichotomy -------------------------------------------

std::string group_ring_dichotomy() {
  const Instance flat = load_instance(fixture("grouping_f5_z2_trivial"));
  const SteinbergAlgebra alg(instance_cocycle(flat));
  const StructuredAlgebra& a = alg.to_structured();
  const PairReport r = classify_pair(a);
  if (r.is_quasi_cartan_pair()) return "the trivially graded pair passes quasi-Cartan";
  if (r.quasi_cartan.witness != "no idempotent of C implements P at e + 2*x")
    return "unexpected witness: " + r.quasi_cartan.witness;

  // The witness element is a nontrivial unit, confirmed by literal scans.
  const SteinbergAlgebra::Elt w = {1, 2};
  const auto one = alg.identity();
  bool invertible = false;
  SteinbergAlgebra::Elt m(2, 0);
  for (m[0] = 0; m[0] < 5 && !invertible; ++m[0])
    for (m[1] = 0; m[1] < 5 && !invertible; ++m[1])
      invertible = alg.convolve(w, m) == one && alg.convolve(m, w) == one;
  if (!invertible) return "the witness element is not a unit";
  for (int t = 0; t < 5; ++t)
    if (w == alg.scale(t, one)) return "the witness element lies in C";
  const auto literal = oracle_normalisers(a);
  bool witness_normalises = false;
  for (const auto& x : literal) witness_normalises = witness_normalises || x == w;
  if (!witness_normalises) return "the witness element is not in the normaliser scan";
  for (const auto& x : literal) {
    if (alg.is_zero(x)) continue;
    bool unit = false;
    SteinbergAlgebra::Elt y(2, 0);
    for (y[0] = 0; y[0] < 5 && !unit; ++y[0])
      for (y[1] = 0; y[1] < 5 && !unit; ++y[1]) unit = alg.convolve(x, y) == one;
    if (!unit) return "a non-unit appears in the trivial-grading normaliser scan";
  }
  // No idempotent of C implements P at the witness: C is spanned by the
  // identity, so its idempotents are exactly 0 and 1.
  const auto pw = alg.diagonal_part(w);
  if (alg.convolve(w, alg.zero()) == pw || alg.convolve(w, one) == pw)
    return "an idempotent of C implements P at the witness after all";

  const Instance graded = load_instance(fixture("grouping_f5_z2_graded"));
  const SteinbergAlgebra galg(instance_cocycle(graded));
  if (!classify_pair(galg.to_structured()).is_graded_quasi_cartan_pair())
    return "the self-graded pair fails graded quasi-Cartan";

  const CliResult ct = run_cli("roundtrip " + fixture("grouping_f5_z2_trivial"));
  if (ct.exit_code != 0) return "roundtrip on the trivial grading exits nonzero";
  if (!contains(ct.out, "proper embedding")) return "all-false agreement not reported";
  const CliResult cg = run_cli("roundtrip " + fixture("grouping_f5_z2_graded"));
  if (cg.exit_code != 0) return "roundtrip on the self-grading exits nonzero";
  if (!contains(cg.out, "twist recovered up to isomorphism"))
    return "all-true agreement not reported";
  return "";
}

// --- 3: the three-way recovery equivalence ---------------------------------

std::string recovery_equivalence() {
  if (kValidTwists.size() < 8) return "fewer than eight valid twist fixtures";
  for (const std::string& name : kValidTwists) {
    const Instance inst = load_instance(fixture(name));
    const UniquenessCertificate cert = certify_uniqueness(*inst.twist);
    if (cert.quasi_cartan != cert.lbh.ok || cert.lbh.ok != cert.surjective)
      return name + " verdicts disagree";
    const CliResult r = run_cli("roundtrip " + fixture(name));
    if (r.exit_code != 0)
      return name + " roundtrip exit " + std::to_string(r.exit_code);
  }
  return "";
}

// --- 4: oracle agreement ----------------------------------------------------

std::string oracle_agreement() {
  const Caps caps;
  int filter_runs = 0, normaliser_runs = 0;
  for (const std::string& name : kValidTwists) {
    const Instance inst = load_instance(fixture(name));
    const SteinbergAlgebra alg(instance_cocycle(inst));
    const StructuredAlgebra& a = alg.to_structured();
    const ExplicitTwist& t = *inst.twist;
    const NormaliserSemigroup ns = normalisers_of(a);

    if (ns.size() <= caps.oracle_filter_max) {
      ++filter_runs;
      const auto tables = ns.tables();
      const auto ultra = oracle_ultrafilters(tables);
      const Reconstruction rec = reconstruct_twist(a);
      if (static_cast<int>(ultra.size()) != rec.twist().sigma->size())
        return name + " ultrafilter count disagrees with the literal enumeration";
      std::set<int> least;
      for (const auto& u : ultra)
        for (int x : u) {
          bool below = true;
          for (int k : u) below = below && ns.leq(x, k);
          if (below) least.insert(x);
        }
      const auto mins = ns.minimal_nonzero();
      if (least != std::set<int>(mins.begin(), mins.end()))
        return name + " ultrafilter generators disagree with the minimal elements";
    }

    // Convolution against the literal section formula: the canonical
    // section and two random ones.
    std::vector<std::vector<int>> fibers(t.base->size());
    for (int s = 0; s < t.sigma->size(); ++s) fibers[t.q_of(s)].push_back(s);
    std::mt19937 rng(7321);
    std::vector<std::vector<int>> sections = {canonical_section(t)};
    for (int k = 0; k < 2; ++k) {
      std::vector<int> sec(t.base->size());
      for (int b = 0; b < t.base->size(); ++b)
        sec[b] = fibers[b][rng() % fibers[b].size()];
      sections.push_back(std::move(sec));
    }
    for (int i = 0; i < alg.dim(); ++i)
      for (int j = 0; j < alg.dim(); ++j) {
        const auto da = alg.delta(i), db = alg.delta(j);
        const auto want = alg.convolve(da, db);
        for (const auto& sec : sections)
          if (oracle_convolution(t, da, db, sec) != want)
            return name + " convolution disagrees with the section formula";
      }

    long long scan = 1;
    bool small = true;
    for (int i = 0; i < a.dim() && small; ++i) {
      scan *= a.ring().size();
      small = scan <= caps.oracle_normaliser_max;
    }
    if (small) {
      ++normaliser_runs;
      const auto literal = oracle_normalisers(a);
      std::vector<StructuredAlgebra::Elt> engine;
      for (int i = 0; i < ns.size(); ++i) engine.push_back(ns.elt(i));
      if (literal != engine) return name + " normaliser scan disagrees with the engine";
    }
  }
  if (filter_runs == 0) return "no fixture small enough for the filter oracle";
  if (normaliser_runs == 0) return "no fixture small enough for the normaliser oracle";
  return "";
}

// --- 5: algebraic law suites ------------------------------------------------

std::string algebraic_laws() {
  for (const std::string& name : kValidTwists) {
    const Instance inst = load_instance(fixture(name));
    const SteinbergAlgebra alg(instance_cocycle(inst));
    const StructuredAlgebra& a = alg.to_structured();
    const Group& gamma = a.gamma();

    if (alg.dim() <= 8) {
      for (int i = 0; i < alg.dim(); ++i)
        for (int j = 0; j < alg.dim(); ++j)
          for (int k = 0; k < alg.dim(); ++k) {
            const auto di = alg.delta(i), dj = alg.delta(j), dk = alg.delta(k);
            if (alg.convolve(alg.convolve(di, dj), dk) !=
                alg.convolve(di, alg.convolve(dj, dk)))
              return name + " convolution is not associative";
          }
    }

    const NormaliserSemigroup ns = normalisers_of(a);
    const Check laws = ns.verify_laws();
    if (!laws.ok) return name + " semigroup laws: " + laws.witness;

    for (int i = 0; i < alg.dim(); ++i)
      for (int j = 0; j < alg.dim(); ++j) {
        const auto p = alg.convolve(alg.delta(i), alg.delta(j));
        const int g = gamma.mul(alg.groupoid().degree(i), alg.groupoid().degree(j));
        if (alg.component(p, g) != p) return name + " grading law fails on a basis pair";
      }

    std::mt19937 rng(24251);
    for (int trial = 0; trial < 100; ++trial) {
      SteinbergAlgebra::Elt v(alg.dim());
      for (int i = 0; i < alg.dim(); ++i) v[i] = static_cast<int>(rng() % a.ring().size());
      auto sum = alg.zero();
      for (int g = 0; g < gamma.size(); ++g) {
        const auto comp = alg.component(v, g);
        if (!alg.is_zero(comp) && alg.homogeneous_degree(comp) != g)
          return name + " component is not homogeneous";
        sum = alg.add(sum, comp);
      }
      if (sum != v) return name + " components do not sum back";
    }
  }
  return "";
}

// --- 6: expected reports ----------------------------------------------------

std::string expected_reports() {
  struct Golden {
    const char* file;
    const char* command;
    const char* fixture_name;
    int exit_code;
  };
  const std::vector<Golden> goldens = {
      {"m2_f2_validate.txt", "validate", "m2_f2", 0},
      {"s3_dt3_fail_validate.txt", "validate", "s3_dt3_fail", 2},
      {"z6_wt_fail_reconstruct.txt", "reconstruct", "z6_wt_fail", 2},
      {"grouping_f5_z2_graded_classify.txt", "classify", "grouping_f5_z2_graded", 0},
      {"grouping_f5_z2_trivial_classify.txt", "classify", "grouping_f5_z2_trivial", 0},
      {"grouping_f5_z2_graded_roundtrip.txt", "roundtrip", "grouping_f5_z2_graded", 0},
      {"grouping_f5_z2_trivial_roundtrip.txt", "roundtrip", "grouping_f5_z2_trivial", 0},
      {"m2_f2_reconstruct.txt", "reconstruct", "m2_f2", 0},
      {"z2_cocycle_f5_roundtrip.txt", "roundtrip", "z2_cocycle_f5", 0},
  };
  for (const Golden& g : goldens) {
    std::ifstream in(std::string(GOLDEN_DIR) + "/" + g.file);
    if (!in) return std::string("missing golden ") + g.file;
    std::stringstream want;
    want << in.rdbuf();
    const CliResult r = run_cli(std::string(g.command) + " " + fixture(g.fixture_name));
    if (r.exit_code != g.exit_code)
      return std::string(g.fixture_name) + " " + g.command + " exit " +
             std::to_string(r.exit_code) + ", expected " + std::to_string(g.exit_code);
    if (r.out != want.str()) return std::string("report differs from ") + g.file;
  }
  const std::string dt3 = std::string(GOLDEN_DIR) + "/s3_dt3_fail_validate.txt";
  std::ifstream in(dt3);
  std::stringstream s;
  s << in.rdbuf();
  if (!contains(s.str(), "DT3")) return "the rejection report does not cite DT3";
  return "";
}

// --- 7: determinism ----------------------------------------------------------

std::string full_pipeline() {
  std::ostringstream all;
  for (const std::string& name : kAllFixtures)
    for (const char* cmd : {"validate", "classify", "reconstruct", "roundtrip"}) {
      const CliResult r = run_cli(std::string(cmd) + " " + fixture(name));
      all << "== " << cmd << " " << name << " (" << r.exit_code << ")\n" << r.out;
      const CliResult j = run_cli(std::string(cmd) + " --json " + fixture(name));
      all << j.out;
    }
  return all.str();
}

std::string determinism() {
  const std::string once = full_pipeline();
  const std::string twice = full_pipeline();
  if (once != twice) return "two pipeline runs differ";
  if (once.empty()) return "pipeline produced no output";
  return "";
}

}  // namespace

int main() {
  int failures = 0;
  failures += !criterion(1, "matrix pairs rebuild their relation groupoid", matrix_pairs);
  failures += !criterion(2, "group ring dichotomy with a unit witness", group_ring_dichotomy);
  failures += !criterion(3, "three-way recovery equivalence on the corpus", recovery_equivalence);
  failures += !criterion(4, "engines agree with the literal oracles", oracle_agreement);
  failures += !criterion(5, "algebraic law suites hold exhaustively", algebraic_laws);
  failures += !criterion(6, "reports match the committed expectations", expected_reports);
  failures += !criterion(7, "the full pipeline is deterministic", determinism);
  return failures;
}
