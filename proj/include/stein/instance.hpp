#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "stein/algebra.hpp"
#include "stein/twist.hpp"

namespace stein {

/// One input file: a coefficient ring, a grading group and either a twist
/// (cocycle form over a base groupoid, or an explicit extension) or a
/// structure-constant algebra pair. Parsing validates everything it builds,
/// so holding an Instance means the input passed all structural axioms.
struct Instance {
  std::shared_ptr<const Ring> ring;
  std::shared_ptr<const Group> gamma;
  std::optional<ExplicitTwist> twist;
  std::optional<StructuredAlgebra> algebra;
  bool cocycle_form = false;            // twist was given by omega entries
  std::optional<CocycleTwist> cocycle;  // set when cocycle_form

  bool is_twist() const { return twist.has_value(); }
};

/// Malformed JSON or references throw SchemaError; axiom failures inside
/// the referenced structures propagate as AxiomViolation.
Instance parse_instance(const nlohmann::json& j, const Caps& caps = {});
Instance load_instance(const std::string& path, const Caps& caps = {});

/// Canonical re-emission of a parsed instance. Parsing the result yields
/// the same instance, and rendering is byte-stable.
nlohmann::json render_instance(const Instance& inst);

/// Output of one command: a human report, its machine form, and the
/// instance the command offers for re-emission. validate, classify and
/// roundtrip re-emit their input canonically; reconstruct emits the
/// ultrafilter twist it built.
struct RunOutput {
  std::string text;
  nlohmann::json data;
  nlohmann::json emitted;
};

/// validate: restate what was built. classify: the pair classification of
/// the algebra (a twist contributes its convolution pair). reconstruct:
/// build the ultrafilter twist of the pair and certify the coordinate
/// isomorphism when the pair is graded quasi-Cartan. roundtrip: the full
/// equivalence certificate for a twist input. `oracle` adds literal
/// cross-checks where the oracle caps allow them.
RunOutput run_validate(const Instance& inst, const Caps& caps = {}, bool oracle = false);
RunOutput run_classify(const Instance& inst, const Caps& caps = {}, bool oracle = false);
RunOutput run_reconstruct(const Instance& inst, const Caps& caps = {}, bool oracle = false);
RunOutput run_roundtrip(const Instance& inst, const Caps& caps = {}, bool oracle = false);

}  // namespace stein
