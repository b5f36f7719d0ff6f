#ifndef QDIFF_CYCLO_HPP
#define QDIFF_CYCLO_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>

namespace qdiff {

using Rat = mpq_class;

/// Element a + b*j of Q(j), where j is the primitive cube root of unity.
/// Products are reduced with j^2 = -1 - j, so the (a, b) pair is canonical
/// and equality of pairs is field equality.
class CycloRat {
public:
  CycloRat() = default;
  CycloRat(long n) : a_(n) {}
  CycloRat(Rat r) : a_(std::move(r)) {}
  CycloRat(Rat re, Rat jc) : a_(std::move(re)), b_(std::move(jc)) {}

  static CycloRat j() { return CycloRat(Rat(0), Rat(1)); }

  const Rat& re() const { return a_; }
  const Rat& jc() const { return b_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_one() const { return a_ == 1 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }

  friend CycloRat operator+(const CycloRat& x, const CycloRat& y) {
    return {x.a_ + y.a_, x.b_ + y.b_};
  }
  friend CycloRat operator-(const CycloRat& x, const CycloRat& y) {
    return {x.a_ - y.a_, x.b_ - y.b_};
  }
  friend CycloRat operator-(const CycloRat& x) { return {-x.a_, -x.b_}; }
  friend CycloRat operator*(const CycloRat& x, const CycloRat& y) {
    Rat bb = x.b_ * y.b_;
    return {x.a_ * y.a_ - bb, x.a_ * y.b_ + x.b_ * y.a_ - bb};
  }
  friend CycloRat operator/(const CycloRat& x, const CycloRat& y) {
    return x * y.inverse();
  }

  CycloRat& operator+=(const CycloRat& y) { return *this = *this + y; }
  CycloRat& operator-=(const CycloRat& y) { return *this = *this - y; }
  CycloRat& operator*=(const CycloRat& y) { return *this = *this * y; }

  /// 1/(a + b j) = ((a - b) - b j) / (a^2 - a b + b^2).
  CycloRat inverse() const;

  CycloRat pow(long e) const;

  friend bool operator==(const CycloRat& x, const CycloRat& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const CycloRat& x, const CycloRat& y) {
    return !(x == y);
  }

  std::string str() const;

private:
  Rat a_{0};
  Rat b_{0};
};

}  // namespace qdiff

#endif
