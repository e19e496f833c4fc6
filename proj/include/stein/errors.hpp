#pragma once

#include <stdexcept>
#include <string>

namespace stein {

/// Input file is malformed: bad JSON, missing keys, out-of-range indices,
/// unknown labels. Maps to CLI exit code 1.
struct SchemaError : std::runtime_error {
  explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

/// A structural axiom of the input fails (ring law, groupoid law, twist
/// axiom, pair precondition). `axiom` is a short stable tag such as "DT3"
/// or "WT"; the message carries the witness. Maps to CLI exit code 2.
struct AxiomViolation : std::runtime_error {
  std::string axiom;
  AxiomViolation(std::string tag, const std::string& what)
      : std::runtime_error(what), axiom(std::move(tag)) {}
};

/// A certified theorem failed on a concrete instance, or an internal
/// consistency assertion broke. Either way something is wrong that no
/// valid input should be able to trigger. Maps to CLI exit code 3.
struct TheoremViolation : std::runtime_error {
  explicit TheoremViolation(const std::string& what) : std::runtime_error(what) {}
};

/// An enumeration exceeded its configured budget; the caller downgrades
/// the corresponding verdict to "undecided" instead of guessing.
struct CapExceeded : std::runtime_error {
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Enumeration budgets. `budget` bounds element enumerations (vectors over
/// a ring); the oracle caps are fixed preconditions of the literal oracles.
struct Caps {
  long long budget = 1'000'000;
  int oracle_filter_max = 24;           // semigroup size for subset-scan filters
  long long oracle_normaliser_max = 10'000;  // |R|^dim for whole-algebra scans
};

}  // namespace stein
