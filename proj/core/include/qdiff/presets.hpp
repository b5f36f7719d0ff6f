#ifndef QDIFF_PRESETS_HPP
#define QDIFF_PRESETS_HPP

#include <optional>
#include <string>
#include <vector>

#include "qdiff/algebra.hpp"

namespace qdiff {

struct UnknownPresetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SpecializationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The shipped algebras: six calculi on the quantum (super) plane, the
/// derived one-parameter plane calculus, and three (super) matrix groups.
enum class PresetId {
  PlanePQD2,   // two-parameter plane, d^2 = 0
  PlanePQD3,   // two-parameter plane, d^3 = 0
  PlaneQD2,    // one-parameter plane, d^2 = 0 (p = q limit)
  SplaneQD2,   // one-parameter superplane, d^2 = 0
  SplaneQD3,   // one-parameter superplane, d^3 = 0
  SplanePQD2,  // two-parameter superplane, d^2 = 0
  SplanePQD3,  // two-parameter superplane, d^3 = 0
  GlPQ2,       // two-parameter 2x2 quantum group
  GlQ11,       // one-parameter quantum supergroup
  GlPQ11,      // two-parameter quantum supergroup
};

std::string preset_name(PresetId id);
std::optional<PresetId> preset_from_name(const std::string& name);
const std::vector<PresetId>& all_presets();
bool is_calculus_preset(PresetId id);
bool is_group_preset(PresetId id);
bool is_super_preset(PresetId id);
int preset_nilpotency(PresetId id);  // 2 or 3 for calculus presets, 0 otherwise

/// Validated presentation for a shipped algebra (built once, cached).
const Presentation& preset(PresetId id);
const Presentation& preset(const std::string& name);

/// One displayed defining relation L = R of the source algebra.  Relations
/// imported from the partial-derivative realization (the cube nilpotencies
/// of the first differentials) are marked: they belong to the relation
/// closure and differential suites but not to the covariant block.
struct SourceRelation {
  Element lhs;
  Element rhs;
  std::string label;
  bool covariant_block = true;
};
const std::vector<SourceRelation>& source_relations(PresetId id);

/// New presentation with every rule coefficient substituted and
/// re-canonicalized; re-validated.  A coefficient pole raises
/// SpecializationError naming the offending rule.
Presentation specialize(const Presentation& P, const Bindings& bindings);

/// Descriptions of out-of-order generator pairs lacking a reordering rule;
/// empty for every shipped preset.
std::vector<std::string> missing_pair_rules(const Presentation& P);

}  // namespace qdiff

#endif
