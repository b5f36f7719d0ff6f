#ifndef QDIFF_COVARIANCE_HPP
#define QDIFF_COVARIANCE_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qdiff/differential.hpp"
#include "qdiff/presets.hpp"

namespace qdiff {

/// Commutation coefficients between plane generators and group entries:
/// u * g = entry(u, g) * g * u.  Entries for differentials are derived from
/// the coordinate entries by flipping the sign once per d-level when the
/// group entry is fermionic.
struct CrossTable {
  std::map<std::pair<std::string, std::string>, Scalar> entries;

  const Scalar& at(const std::string& plane_gen, const std::string& group_gen) const;
  void set(const std::string& plane_gen, const std::string& group_gen, Scalar v);
};

/// Coordinate-level cross tables of the shipped pairings.
CrossTable cross_plane_gl2_symbolic();  // entries in q, q', p, k (qbar = q)
CrossTable cross_plane_gl2();           // after q' = q, k = q/p
CrossTable cross_splane_gl11();         // one-parameter +/-1 table
CrossTable cross_splane_gl11_pq_symbolic();  // entries in q, q', p, k
CrossTable cross_splane_gl11_pq();           // after q' = q, k = q/p

/// Extends a coordinate-level table to all generators of `plane`.
CrossTable extend_cross(const CrossTable& coords, const Presentation& plane,
                        const Presentation& group);

/// Merged group x plane presentation: group entries first, then the plane
/// generators, with every (plane, group) pair reordered by the cross table.
Presentation build_combined(const Presentation& plane, const Presentation& group,
                            const CrossTable& cross);

enum class TransformVariant { T, TransposeT, SuperTransposeT };

/// Images of the plane generators in the combined algebra under one matrix
/// coaction.  Differentials transform as the formal d of the coordinate
/// images with the group entries treated as d-constants, which introduces a
/// sign per d-level on fermionic entries.
struct TransformationSpec {
  TransformVariant variant;
  std::map<int, Element> images;  // plane-generator rank -> image in combined
};

TransformationSpec make_transform(const Presentation& combined,
                                  const Presentation& plane,
                                  TransformVariant variant);

/// Rewrites a relation over the plane generators into the combined algebra
/// by replacing every plane generator with its image (left-to-right fold).
Element apply_transform(const Element& e, const Presentation& plane,
                        const TransformationSpec& t,
                        const Presentation& combined);

struct CovarianceReport {
  bool covariant = true;
  std::vector<std::pair<std::string, Element>> residuals;  // label -> residual
};

CovarianceReport check_covariance(const Presentation& combined,
                                  const Presentation& plane,
                                  const TransformationSpec& t,
                                  const std::vector<SourceRelation>& relations);

/// Everything needed to run the covariance suite of one calculus preset:
/// the matching group, cross table, combined algebra, and both coactions.
struct CovarianceSetup {
  Presentation plane;
  Presentation group;
  CrossTable cross;  // extended to all plane generators
  Presentation combined;
  std::vector<TransformationSpec> transforms;  // T and (super)transpose
};
CovarianceSetup covariance_setup(PresetId calculus_preset);

// --- first-order-calculus derivation ----------------------------------------

/// One linear equation sum_i coeff[i] * C_i + constant = 0 over the
/// parameter function field.
struct LinearEquation {
  std::array<Scalar, 16> coeff;
  Scalar constant;
  std::string origin;
};

/// The 16 unknown coefficients writing x dx, x dy, y dx, y dy in terms of
/// dx x, dy x, dx y, dy y, plus the linear system that fixes them.
struct AnsatzSystem {
  Presentation combined;               // symbolic q', k cross table
  std::vector<LinearEquation> equations;  // covariance + differentiation rows
};

AnsatzSystem build_ansatz_system();

struct AnsatzSolution {
  std::map<std::string, Scalar> coefficients;  // C1..C16
  int rank = 0;                                // of the linear stage
  std::vector<Scalar> residual_constraints;    // numerators that must vanish
  std::string free_unknown;                    // name of the line parameter
  std::vector<Scalar> associativity_roots;     // admissible parameter values
  Scalar selected_root;

  std::string to_json() const;
};

/// Exact elimination over the function field.  With `with_associativity` the
/// remaining line parameter is fixed by requiring the overlap x dx dy to
/// reduce unambiguously; among the admissible roots the branch keeping the
/// x dy relation diagonal is returned.
AnsatzSolution solve_ansatz(bool with_associativity = true);

}  // namespace qdiff

#endif
