#ifndef QDIFF_ALGEBRA_HPP
#define QDIFF_ALGEBRA_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qdiff/scalar.hpp"

namespace qdiff {

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Graded symbol.  `degree` is the form degree (0 for coordinates and group
/// entries, 1 and 2 for first and second differentials); `parity` is the
/// super parity entering the Leibniz sign, constant along d-chains
/// (x, dx, d2x are even; theta, dtheta, d2theta are odd).
struct Generator {
  std::string name;
  int degree = 0;
  int parity = 0;

  /// Commutation parity (parity + degree mod 2); this is the sign grading
  /// that governs moves past fermionic group entries.
  int total_parity() const { return (parity + degree) & 1; }
};

/// Word over generator ranks; the empty word is the unit.
using Word = std::vector<uint8_t>;

/// Degree-lexicographic word order: shorter first, then lex by rank sequence.
struct WordDegLexLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

bool word_deglex_less(const Word& a, const Word& b);

/// Finite linear combination of words; no stored coefficient is zero.
class Element {
public:
  using TermMap = std::map<Word, Scalar, WordDegLexLess>;

  Element() = default;
  static Element zero() { return Element(); }
  static Element from_word(Word w, Scalar c = Scalar::one());
  static Element from_scalar(Scalar c) { return from_word({}, std::move(c)); }

  const TermMap& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  size_t size() const { return t_.size(); }

  void add(const Word& w, const Scalar& c);

  friend Element operator+(const Element& a, const Element& b);
  friend Element operator-(const Element& a, const Element& b);
  friend Element operator-(const Element& a);
  Element scaled(const Scalar& c) const;

  /// Free product: concatenates words termwise, no rewriting.
  friend Element concat(const Element& a, const Element& b);

  friend bool operator==(const Element& a, const Element& b) {
    return a.t_ == b.t_;
  }
  friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

private:
  TermMap t_;
};

/// Oriented rewrite rule; every word of rhs is deg-lex smaller than lhs.
struct RewriteRule {
  Word lhs;  // length 2 or 3
  Element rhs;
};

/// Ordered generators + oriented rules + the parameters they mention.
class Presentation {
public:
  Presentation() = default;
  Presentation(std::vector<Generator> gens, std::vector<RewriteRule> rules,
               std::vector<int> params, std::vector<std::string> notes = {});

  const std::vector<Generator>& generators() const { return gens_; }
  const std::vector<RewriteRule>& rules() const { return rules_; }
  const std::vector<int>& params() const { return params_; }
  const std::vector<std::string>& notes() const { return notes_; }

  int rank_of(const std::string& name) const;  // -1 if unknown
  const Generator& gen(int rank) const { return gens_[rank]; }
  size_t num_generators() const { return gens_.size(); }

  /// Rule matching at a word position: pair rules first, then triples.
  const RewriteRule* match_at(const Word& w, size_t pos) const;

  int word_degree(const Word& w) const;
  int word_parity(const Word& w) const;

  Word word_from_names(const std::vector<std::string>& names) const;
  std::string word_str(const Word& w) const;
  std::string element_str(const Element& e) const;

private:
  void validate() const;
  void index();

  std::vector<Generator> gens_;
  std::vector<RewriteRule> rules_;
  std::vector<int> params_;
  std::vector<std::string> notes_;
  std::map<std::string, int> name2rank_;
  std::map<uint16_t, int> pair_rule_;    // (a<<8|b) -> rule index
  std::map<uint32_t, int> triple_rule_;  // (a<<16|b<<8|c) -> rule index
};

enum class Strategy { Leftmost, Rightmost };

/// Fixpoint of innermost rule application; deterministic, terminating.
Element normalize(const Element& e, const Presentation& P,
                  Strategy strategy = Strategy::Leftmost);

/// Termwise concatenation followed by normalization; bilinear.
Element multiply(const Element& a, const Element& b, const Presentation& P);

/// An overlap word whose two reduction paths disagree.
struct Obstruction {
  Word overlap;
  Element difference;  // normal form of path A minus path B, nonzero
};

/// All critical pairs (2/2, 2/3, 3/3 overlaps and factor inclusions); empty
/// result means the rewriting system is locally confluent, hence (rules being
/// terminating) the presented algebra is associative with the normal words
/// as a basis.
std::vector<Obstruction> critical_pairs(const Presentation& P);

// --- JSON (de)serialization -------------------------------------------------

std::string presentation_to_json(const Presentation& P);
Presentation presentation_from_json(const std::string& text);
std::string element_to_json(const Element& e, const Presentation& P);
Element element_from_json(const std::string& text, const Presentation& P);

}  // namespace qdiff

#endif
