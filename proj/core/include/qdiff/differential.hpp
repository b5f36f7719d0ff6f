#ifndef QDIFF_DIFFERENTIAL_HPP
#define QDIFF_DIFFERENTIAL_HPP

#include <optional>
#include <string>
#include <vector>

#include "qdiff/presets.hpp"

namespace qdiff {

/// Exterior differential data for one calculus: the generator images of d,
/// the nilpotency order, and the grading base of the Leibniz sign
/// (-1 for d^2 = 0 calculi, j for d^3 = 0 calculi).
struct CalculusSpec {
  Presentation pres;
  int nilpotency = 2;
  CycloRat signbase{-1};
  std::vector<Element> dmap;  // by generator rank; zero element means d(g) = 0

  /// Leibniz sign of a single generator: (-1)^parity * signbase^degree.
  CycloRat sign_of(int rank) const;
  /// Leibniz sign of a word (parities and degrees add).
  CycloRat sign_of(const Word& w) const;
};

/// Calculus for one of the seven shipped calculus presets.
CalculusSpec calculus(PresetId id);

/// Same calculus with parameters substituted in all rule coefficients.
CalculusSpec specialize(const CalculusSpec& C, const Bindings& bindings);

/// The graded differential: linear, and on words
///   d(g . w) = d(g) . w + sign(g) g . d(w),
/// evaluated left to right and normalized.
Element d(const Element& e, const CalculusSpec& C);

/// n-fold differential: the Leibniz expansion is iterated on free words and
/// reduced once at the end, so d^n probes the grading itself rather than the
/// word problem of the presentation.
Element d_times(const Element& e, const CalculusSpec& C, int n);

struct CheckReport {
  bool pass = true;
  int checked = 0;
  std::optional<Element> witness;       // nondegeneracy witness, d^(n-1) != 0
  std::vector<Element> counterexamples;
  std::vector<std::string> details;

  std::string to_json(const Presentation& P) const;
};

/// Applies d `nilpotency` times to every normal word of length <= max_len and
/// to `samples` random words of length <= 6; reports the first counterexample
/// if any, plus a witness element with d^(nilpotency-1) != 0.
CheckReport check_nilpotency(const CalculusSpec& C, int max_len, int samples,
                             uint64_t seed = 0xd1ffULL);

/// Samples random word pairs (u, v) and compares d(u v) against
/// (du) v + sign(u) u (dv); failures are reported per sample.
CheckReport check_leibniz(const CalculusSpec& C, int samples,
                          uint64_t seed = 0x1e1bULL);

/// Leibniz comparison for one explicit pair; returns the difference
/// normalize(d(u v)) - normalize((du) v + sign(u) u (dv)).
Element leibniz_defect(const Element& u, const Element& v,
                       const CalculusSpec& C);

}  // namespace qdiff

#endif
