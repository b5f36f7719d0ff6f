#ifndef QDIFF_SCALAR_HPP
#define QDIFF_SCALAR_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qdiff/cyclo.hpp"

namespace qdiff {

/// Fixed, ordered variable universe of the coefficient field.
/// The first four are the deformation parameters; the remaining sixteen
/// are the first-order-calculus unknowns used by the covariance module.
inline constexpr int kNumVars = 20;
inline constexpr int kVarQ = 0;
inline constexpr int kVarP = 1;
inline constexpr int kVarQPrime = 2;
inline constexpr int kVarK = 3;
inline constexpr int kVarC1 = 4;  // C1..C16 occupy indices 4..19

const std::array<std::string, kNumVars>& var_names();
int var_index(const std::string& name);  // -1 if not a variable

struct MalformedScalarError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PoleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Monomial over the fixed variable set, exponents >= 0.
struct Mono {
  std::array<uint16_t, kNumVars> e{};

  bool is_one() const {
    for (auto x : e)
      if (x != 0) return false;
    return true;
  }
  friend Mono operator*(const Mono& a, const Mono& b) {
    Mono r;
    for (int i = 0; i < kNumVars; ++i) r.e[i] = a.e[i] + b.e[i];
    return r;
  }
  bool divides(const Mono& m) const {
    for (int i = 0; i < kNumVars; ++i)
      if (e[i] > m.e[i]) return false;
    return true;
  }
  friend Mono operator/(const Mono& a, const Mono& b) {
    Mono r;
    for (int i = 0; i < kNumVars; ++i) r.e[i] = a.e[i] - b.e[i];
    return r;
  }
  friend bool operator==(const Mono& a, const Mono& b) { return a.e == b.e; }
};

/// Lexicographic order over the fixed variable order q < p < q' < k < C1..C16.
struct MonoLexGreater {
  bool operator()(const Mono& a, const Mono& b) const { return b.e < a.e; }
};

/// Multivariate polynomial over Q(j), sparse, terms kept in descending lex
/// order so begin() is the leading term.
class Poly {
public:
  using TermMap = std::map<Mono, CycloRat, MonoLexGreater>;

  Poly() = default;
  explicit Poly(CycloRat c) {
    if (!c.is_zero()) t_[Mono{}] = std::move(c);
  }
  static Poly zero() { return Poly(); }
  static Poly one() { return Poly(CycloRat(1)); }
  static Poly var(int v, int exp = 1);
  static Poly term(CycloRat c, Mono m);

  const TermMap& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const {
    return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_one());
  }
  CycloRat constant_value() const {
    return t_.empty() ? CycloRat(0) : t_.begin()->second;
  }
  size_t size() const { return t_.size(); }

  const Mono& leading_mono() const { return t_.begin()->first; }
  const CycloRat& leading_coeff() const { return t_.begin()->second; }

  void add_term(const Mono& m, const CycloRat& c);

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(const CycloRat& c) const;
  Poly times_mono(const Mono& m) const;

  friend bool operator==(const Poly& a, const Poly& b) { return a.t_ == b.t_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  int deg_in(int v) const;
  bool uses(int v) const;
  uint32_t used_vars_mask() const;

  /// Coefficients of v^0, v^1, ... with v struck out.
  std::map<int, Poly> coeffs_in(int v) const;

  CycloRat eval(const std::array<CycloRat, kNumVars>& point) const;

  std::string str() const;

private:
  TermMap t_;
};

Poly pow(const Poly& a, int e);

/// Exact division; throws std::logic_error if d does not divide p.
Poly divexact(const Poly& p, const Poly& d);

/// Monic multivariate gcd over Q(j) (primitive PRS).
Poly poly_gcd(Poly a, Poly b);

/// Exact square root of a perfect-square polynomial with rational
/// coefficients; nullopt when p is not a perfect square over Q.
std::optional<Poly> poly_sqrt(const Poly& p);

class Scalar;
using Bindings = std::vector<std::pair<int, Scalar>>;

/// Element of the rational function field Q(j)(q, p, q', k, C1..C16),
/// kept canonical: gcd(num, den) = 1, den monic in the fixed lex order.
class Scalar {
public:
  Scalar() : num_(), den_(Poly::one()) {}
  Scalar(long n) : num_(Poly(CycloRat(n))), den_(Poly::one()) {}
  Scalar(CycloRat c) : num_(Poly(std::move(c))), den_(Poly::one()) {}
  explicit Scalar(Poly p) : num_(std::move(p)), den_(Poly::one()) {}
  Scalar(Poly n, Poly d);  // canonicalizes; throws MalformedScalarError if d = 0

  static Scalar zero() { return Scalar(); }
  static Scalar one() { return Scalar(1); }
  static Scalar j() { return Scalar(CycloRat::j()); }
  static Scalar var(int v) { return Scalar(Poly::var(v)); }
  static Scalar q() { return var(kVarQ); }
  static Scalar p() { return var(kVarP); }
  static Scalar qprime() { return var(kVarQPrime); }
  static Scalar k() { return var(kVarK); }
  static Scalar rational(Rat r) { return Scalar(CycloRat(std::move(r))); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_ == den_; }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  CycloRat constant_value() const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  Scalar& operator/=(const Scalar& b) { return *this = *this / b; }

  Scalar inverse() const;
  Scalar pow(int e) const;

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
  /// Arbitrary strict order for use as a map key.
  friend bool operator<(const Scalar& a, const Scalar& b);

  bool uses(int v) const { return num_.uses(v) || den_.uses(v); }

  /// Sequential substitution, bindings applied in list order.
  /// Throws PoleError if a substitution makes the denominator vanish.
  Scalar substitute(const Bindings& bindings) const;

  /// Evaluate at a rational point; nullopt if the denominator vanishes there.
  std::optional<CycloRat> eval(const std::array<CycloRat, kNumVars>& point) const;

  std::string str() const;

private:
  void canonicalize();

  Poly num_;
  Poly den_;
};

/// Exact square root of a perfect-square scalar; nullopt otherwise.
std::optional<Scalar> scalar_sqrt(const Scalar& s);

/// Independent equality oracle: substitutes `trials` random rational tuples
/// (numerators and denominators drawn from 1..97, redrawing on denominator
/// poles) and reports whether every evaluation is zero.  Canonical-form
/// equality stays authoritative; this is a cross-check only.
bool is_zero_randomized(const Scalar& s, int trials,
                        uint64_t seed = 0x5eed5eedULL);

}  // namespace qdiff

#endif
