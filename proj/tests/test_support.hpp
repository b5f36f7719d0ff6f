#ifndef QDIFF_TEST_SUPPORT_HPP
#define QDIFF_TEST_SUPPORT_HPP

#include <random>
#include <string>

#include "qdiff/parser.hpp"
#include "qdiff/presets.hpp"

namespace qdiff::test {

inline Scalar S(const std::string& text) { return parse_scalar(text); }

inline Scalar random_scalar(std::mt19937_64& rng, int depth = 2) {
  std::uniform_int_distribution<int> pick(0, 5);
  std::uniform_int_distribution<int> var(0, 3);
  std::uniform_int_distribution<int> small(-4, 4);
  if (depth == 0) {
    switch (pick(rng) % 3) {
      case 0: return Scalar::var(var(rng));
      case 1: return Scalar(small(rng));
      default: return Scalar::j();
    }
  }
  Scalar a = random_scalar(rng, depth - 1);
  Scalar b = random_scalar(rng, depth - 1);
  switch (pick(rng)) {
    case 0: return a + b;
    case 1: return a - b;
    case 2: case 3: return a * b;
    case 4: return b.is_zero() ? a : a / b;
    default: return -a;
  }
}

inline Word random_word(const Presentation& P, int max_len,
                        std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len(1, max_len);
  std::uniform_int_distribution<int> gen(0, static_cast<int>(P.num_generators()) - 1);
  Word w(len(rng));
  for (auto& g : w) g = static_cast<uint8_t>(gen(rng));
  return w;
}

inline Element random_element(const Presentation& P, std::mt19937_64& rng,
                              int terms = 3, int max_len = 4) {
  Element e;
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (int i = 0; i < terms; ++i) {
    int c = coeff(rng);
    if (c == 0) c = 1;
    e.add(random_word(P, max_len, rng), Scalar(c) * (i % 3 == 0 ? Scalar::j() : Scalar::one()));
  }
  return e;
}

/// Rule-set equality: same generators and the same oriented rules with
/// scalar-equal coefficients.
inline bool same_presentation(const Presentation& A, const Presentation& B) {
  if (A.num_generators() != B.num_generators()) return false;
  for (size_t i = 0; i < A.num_generators(); ++i) {
    if (A.gen(static_cast<int>(i)).name != B.gen(static_cast<int>(i)).name ||
        A.gen(static_cast<int>(i)).degree != B.gen(static_cast<int>(i)).degree ||
        A.gen(static_cast<int>(i)).parity != B.gen(static_cast<int>(i)).parity)
      return false;
  }
  if (A.rules().size() != B.rules().size()) return false;
  for (const auto& ra : A.rules()) {
    bool found = false;
    for (const auto& rb : B.rules())
      if (ra.lhs == rb.lhs && ra.rhs == rb.rhs) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

}  // namespace qdiff::test

#endif
