#include "qdiff/scalar.hpp"

#include <algorithm>
#include <sstream>

namespace qdiff {

const std::array<std::string, kNumVars>& var_names() {
  static const std::array<std::string, kNumVars> names = {
      "q",  "p",  "q'", "k",  "C1",  "C2",  "C3",  "C4",  "C5",  "C6",
      "C7", "C8", "C9", "C10", "C11", "C12", "C13", "C14", "C15", "C16"};
  return names;
}

int var_index(const std::string& name) {
  const auto& names = var_names();
  for (int i = 0; i < kNumVars; ++i)
    if (names[i] == name) return i;
  return -1;
}

// ---------------------------------------------------------------------------
// Poly

Poly Poly::var(int v, int exp) {
  Poly p;
  if (exp < 0) throw std::logic_error("Poly::var: negative exponent");
  Mono m;
  m.e[v] = static_cast<uint16_t>(exp);
  p.t_[m] = CycloRat(1);
  return p;
}

Poly Poly::term(CycloRat c, Mono m) {
  Poly p;
  if (!c.is_zero()) p.t_[m] = std::move(c);
  return p;
}

void Poly::add_term(const Mono& m, const CycloRat& c) {
  if (c.is_zero()) return;
  auto it = t_.find(m);
  if (it == t_.end()) {
    t_[m] = c;
  } else {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly r = a;
  for (const auto& [m, c] : b.t_) r.add_term(m, c);
  return r;
}

Poly operator-(const Poly& a, const Poly& b) {
  Poly r = a;
  for (const auto& [m, c] : b.t_) r.add_term(m, -c);
  return r;
}

Poly operator-(const Poly& a) {
  Poly r;
  for (const auto& [m, c] : a.t_) r.t_[m] = -c;
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ma, ca] : a.t_)
    for (const auto& [mb, cb] : b.t_) r.add_term(ma * mb, ca * cb);
  return r;
}

Poly Poly::scaled(const CycloRat& c) const {
  Poly r;
  if (c.is_zero()) return r;
  for (const auto& [m, x] : t_) r.t_[m] = x * c;
  return r;
}

Poly Poly::times_mono(const Mono& m) const {
  Poly r;
  for (const auto& [mm, c] : t_) r.t_[mm * m] = c;
  return r;
}

int Poly::deg_in(int v) const {
  int d = 0;
  for (const auto& [m, c] : t_) d = std::max(d, static_cast<int>(m.e[v]));
  return d;
}

bool Poly::uses(int v) const {
  for (const auto& [m, c] : t_)
    if (m.e[v] != 0) return true;
  return false;
}

uint32_t Poly::used_vars_mask() const {
  uint32_t mask = 0;
  for (const auto& [m, c] : t_)
    for (int i = 0; i < kNumVars; ++i)
      if (m.e[i] != 0) mask |= (1u << i);
  return mask;
}

std::map<int, Poly> Poly::coeffs_in(int v) const {
  std::map<int, Poly> out;
  for (const auto& [m, c] : t_) {
    Mono rest = m;
    int d = rest.e[v];
    rest.e[v] = 0;
    out[d].add_term(rest, c);
  }
  return out;
}

CycloRat Poly::eval(const std::array<CycloRat, kNumVars>& point) const {
  CycloRat acc(0);
  for (const auto& [m, c] : t_) {
    CycloRat v = c;
    for (int i = 0; i < kNumVars; ++i)
      if (m.e[i] != 0) v *= point[i].pow(m.e[i]);
    acc += v;
  }
  return acc;
}

Poly pow(const Poly& a, int e) {
  if (e < 0) throw std::logic_error("pow(Poly): negative exponent");
  Poly acc = Poly::one();
  Poly base = a;
  unsigned n = static_cast<unsigned>(e);
  while (n > 0) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

Poly divexact(const Poly& p, const Poly& d) {
  if (d.is_zero()) throw std::logic_error("divexact: division by zero");
  if (d.is_constant()) return p.scaled(d.constant_value().inverse());
  Poly rem = p;
  Poly quot;
  while (!rem.is_zero()) {
    const Mono& lm = rem.leading_mono();
    const Mono& dm = d.leading_mono();
    if (!dm.divides(lm)) throw std::logic_error("divexact: not divisible");
    Mono qm = lm / dm;
    CycloRat qc = rem.leading_coeff() / d.leading_coeff();
    Poly t = Poly::term(qc, qm);
    quot = quot + t;
    rem = rem - d.times_mono(qm).scaled(qc);
  }
  return quot;
}

namespace {

// Pseudo-remainder of a by b in variable v (both must use v, deg_a >= deg_b).
Poly prem(Poly a, const Poly& b, int v) {
  int db = b.deg_in(v);
  auto bc = b.coeffs_in(v);
  Poly lcb = bc.rbegin()->second;
  while (!a.is_zero()) {
    int da = a.deg_in(v);
    if (da < db) break;
    auto ac = a.coeffs_in(v);
    Poly lca = ac.rbegin()->second;
    // a <- lcb*a - lca*v^(da-db)*b
    a = lcb * a - (lca * b).times_mono([&] {
          Mono m;
          m.e[v] = static_cast<uint16_t>(da - db);
          return m;
        }());
  }
  return a;
}

// gcd of the v-coefficients of p.
Poly content_in(const Poly& p, int v) {
  Poly g;
  for (const auto& [d, c] : p.coeffs_in(v)) {
    g = poly_gcd(g, c);
    if (g.is_constant() && !g.is_zero()) return Poly::one();
  }
  return g;
}

Poly make_monic(Poly p) {
  if (p.is_zero()) return p;
  CycloRat lc = p.leading_coeff();
  if (lc.is_one()) return p;
  return p.scaled(lc.inverse());
}

}  // namespace

Poly poly_gcd(Poly a, Poly b) {
  if (a.is_zero()) return make_monic(b);
  if (b.is_zero()) return make_monic(a);
  if (a.is_constant() || b.is_constant()) return Poly::one();

  uint32_t mask = a.used_vars_mask() | b.used_vars_mask();
  int v = -1;
  for (int i = kNumVars - 1; i >= 0; --i)
    if (mask & (1u << i)) {
      v = i;
      break;
    }
  if (v < 0) return Poly::one();

  Poly ca = content_in(a, v);
  Poly cb = content_in(b, v);
  Poly cg = poly_gcd(ca, cb);
  a = divexact(a, ca);
  b = divexact(b, cb);

  if (a.deg_in(v) < b.deg_in(v)) std::swap(a, b);
  while (!b.is_zero()) {
    Poly r = prem(a, b, v);
    a = std::move(b);
    if (r.is_zero()) {
      b = Poly::zero();
    } else {
      b = divexact(r, content_in(r, v));
    }
  }
  if (!a.is_constant()) a = divexact(a, content_in(a, v));
  return make_monic(cg * a);
}

namespace {

std::optional<Rat> rat_sqrt(const Rat& r) {
  if (r < 0) return std::nullopt;
  mpz_class num = r.get_num(), den = r.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return std::nullopt;
  if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
  return Rat(sn, sd);
}

}  // namespace

std::optional<Poly> poly_sqrt(const Poly& p) {
  if (p.is_zero()) return Poly::zero();
  const Mono& lm = p.leading_mono();
  Mono half;
  for (int i = 0; i < kNumVars; ++i) {
    if (lm.e[i] % 2 != 0) return std::nullopt;
    half.e[i] = static_cast<uint16_t>(lm.e[i] / 2);
  }
  const CycloRat& lc = p.leading_coeff();
  if (!lc.is_rational()) return std::nullopt;
  auto slc = rat_sqrt(lc.re());
  if (!slc) return std::nullopt;
  Poly root = Poly::term(CycloRat(*slc), half);
  Poly rem = p - root * root;
  const CycloRat two_lc = CycloRat(2) * CycloRat(*slc);
  size_t guard = 4 * p.size() * p.size() + 16;
  while (!rem.is_zero()) {
    if (guard-- == 0) return std::nullopt;
    const Mono& rm = rem.leading_mono();
    if (!half.divides(rm)) return std::nullopt;
    Poly t = Poly::term(rem.leading_coeff() / two_lc, rm / half);
    root = root + t;
    rem = p - root * root;
  }
  return root;
}

std::optional<Scalar> scalar_sqrt(const Scalar& s) {
  auto n = poly_sqrt(s.num());
  if (!n) return std::nullopt;
  auto d = poly_sqrt(s.den());
  if (!d) return std::nullopt;
  return Scalar(*n, *d);
}

std::string Poly::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : t_) {
    std::string mono;
    for (int i = 0; i < kNumVars; ++i) {
      if (m.e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += var_names()[i];
      if (m.e[i] > 1) mono += "^" + std::to_string(m.e[i]);
    }
    std::string cs;
    if (mono.empty()) {
      cs = c.str();
    } else if (c.is_one()) {
      cs = mono;
    } else if (c == CycloRat(-1)) {
      cs = "-" + mono;
    } else {
      cs = c.str() + "*" + mono;
    }
    if (first) {
      os << cs;
      first = false;
    } else if (!cs.empty() && cs[0] == '-') {
      os << " - " << cs.substr(1);
    } else {
      os << " + " << cs;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Scalar

Scalar::Scalar(Poly n, Poly d) : num_(std::move(n)), den_(std::move(d)) {
  if (den_.is_zero()) throw MalformedScalarError("scalar with zero denominator");
  canonicalize();
}

void Scalar::canonicalize() {
  if (num_.is_zero()) {
    den_ = Poly::one();
    return;
  }
  if (den_.is_constant()) {
    CycloRat c = den_.constant_value();
    if (!c.is_one()) {
      num_ = num_.scaled(c.inverse());
      den_ = Poly::one();
    }
    return;
  }
  Poly g = poly_gcd(num_, den_);
  if (!g.is_constant()) {
    num_ = divexact(num_, g);
    den_ = divexact(den_, g);
  }
  CycloRat lc = den_.leading_coeff();
  if (!lc.is_one()) {
    CycloRat inv = lc.inverse();
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

CycloRat Scalar::constant_value() const {
  if (!is_constant()) throw std::logic_error("Scalar::constant_value: not constant");
  if (num_.is_zero()) return CycloRat(0);
  return num_.constant_value() / den_.constant_value();
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return Scalar(a.num_ + b.num_, a.den_);
  return Scalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return -b;
  if (a.den_ == b.den_) return Scalar(a.num_ - b.num_, a.den_);
  return Scalar(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Scalar operator-(const Scalar& a) {
  Scalar r = a;
  r.num_ = -r.num_;
  return r;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.is_zero() || b.is_zero()) return Scalar::zero();
  return Scalar(a.num_ * b.num_, a.den_ * b.den_);
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (b.is_zero()) throw MalformedScalarError("scalar division by zero");
  if (a.is_zero()) return Scalar::zero();
  return Scalar(a.num_ * b.den_, a.den_ * b.num_);
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw MalformedScalarError("inverse of zero scalar");
  return Scalar(den_, num_);
}

Scalar Scalar::pow(int e) const {
  if (e == 0) return Scalar::one();
  const Scalar base = e < 0 ? inverse() : *this;
  unsigned n = e < 0 ? -static_cast<unsigned>(e) : static_cast<unsigned>(e);
  Scalar acc = Scalar::one();
  Scalar b2 = base;
  while (n > 0) {
    if (n & 1) acc = acc * b2;
    b2 = b2 * b2;
    n >>= 1;
  }
  return acc;
}

bool operator<(const Scalar& a, const Scalar& b) {
  auto cmp_rat = [](const Rat& x, const Rat& y) { return cmp(x, y); };
  auto cmp_poly = [&](const Poly& x, const Poly& y) -> int {
    auto ix = x.terms().begin(), iy = y.terms().begin();
    for (; ix != x.terms().end() && iy != y.terms().end(); ++ix, ++iy) {
      if (ix->first.e != iy->first.e) return ix->first.e < iy->first.e ? -1 : 1;
      if (int c = cmp_rat(ix->second.re(), iy->second.re())) return c;
      if (int c = cmp_rat(ix->second.jc(), iy->second.jc())) return c;
    }
    if (ix != x.terms().end()) return 1;
    if (iy != y.terms().end()) return -1;
    return 0;
  };
  if (int c = cmp_poly(a.num(), b.num())) return c < 0;
  return cmp_poly(a.den(), b.den()) < 0;
}

namespace {

Scalar eval_poly_symbolic(const Poly& p, const std::array<Scalar, kNumVars>& images,
                          uint32_t bound_mask) {
  Scalar acc = Scalar::zero();
  for (const auto& [m, c] : p.terms()) {
    Mono rest;
    Scalar factor = Scalar::one();
    bool have_factor = false;
    for (int i = 0; i < kNumVars; ++i) {
      if (m.e[i] == 0) continue;
      if (bound_mask & (1u << i)) {
        factor = factor * images[i].pow(m.e[i]);
        have_factor = true;
      } else {
        rest.e[i] = m.e[i];
      }
    }
    Scalar term(Poly::term(c, rest));
    acc += have_factor ? term * factor : term;
  }
  return acc;
}

}  // namespace

Scalar Scalar::substitute(const Bindings& bindings) const {
  Scalar cur = *this;
  for (const auto& [v, image] : bindings) {
    if (v < 0 || v >= kNumVars) throw std::logic_error("substitute: bad variable");
    if (!cur.uses(v)) continue;
    std::array<Scalar, kNumVars> images;
    images[v] = image;
    uint32_t mask = 1u << v;
    Scalar n = eval_poly_symbolic(cur.num_, images, mask);
    Scalar d = eval_poly_symbolic(cur.den_, images, mask);
    if (d.is_zero())
      throw PoleError("substitution makes denominator vanish: " + cur.str());
    cur = n / d;
  }
  return cur;
}

std::optional<CycloRat> Scalar::eval(
    const std::array<CycloRat, kNumVars>& point) const {
  CycloRat d = den_.eval(point);
  if (d.is_zero()) return std::nullopt;
  return num_.eval(point) / d;
}

std::string Scalar::str() const {
  if (num_.is_zero()) return "0";
  auto wrap = [](const Poly& p) {
    bool simple = p.size() == 1;
    if (simple) {
      const auto& [m, c] = *p.terms().begin();
      int nvars = 0;
      for (int i = 0; i < kNumVars; ++i)
        if (m.e[i]) ++nvars;
      // a lone variable power or plain coefficient stays bare
      simple = (nvars == 0 && c.is_rational() && c.re() >= 0) ||
               (nvars == 1 && c.is_one());
    }
    return simple ? p.str() : "(" + p.str() + ")";
  };
  if (den_ == Poly::one()) return num_.str();
  return wrap(num_) + "/" + wrap(den_);
}

bool is_zero_randomized(const Scalar& s, int trials, uint64_t seed) {
  if (trials < 1) throw std::logic_error("is_zero_randomized: trials >= 1 required");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(1, 97);
  for (int t = 0; t < trials; ++t) {
    for (int attempt = 0;; ++attempt) {
      if (attempt > 10000)
        throw std::logic_error("is_zero_randomized: cannot avoid poles");
      std::array<CycloRat, kNumVars> point;
      for (int i = 0; i < kNumVars; ++i) {
        Rat r(dist(rng), dist(rng));
        r.canonicalize();
        point[i] = CycloRat(std::move(r));
      }
      auto val = s.eval(point);
      if (!val) continue;  // denominator pole: redraw
      if (!val->is_zero()) return false;
      break;
    }
  }
  return true;
}

}  // namespace qdiff
