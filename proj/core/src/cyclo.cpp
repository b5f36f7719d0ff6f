#include "qdiff/cyclo.hpp"

#include <stdexcept>

namespace qdiff {

CycloRat CycloRat::inverse() const {
  Rat n = a_ * a_ - a_ * b_ + b_ * b_;
  if (n == 0) throw std::domain_error("division by zero in Q(j)");
  return {(a_ - b_) / n, -b_ / n};
}

CycloRat CycloRat::pow(long e) const {
  CycloRat base = e < 0 ? inverse() : *this;
  unsigned long n = e < 0 ? -static_cast<unsigned long>(e) : e;
  CycloRat acc(1);
  while (n > 0) {
    if (n & 1) acc *= base;
    base *= base;
    n >>= 1;
  }
  return acc;
}

std::string CycloRat::str() const {
  if (b_ == 0) return a_.get_str();
  std::string s = "(" + a_.get_str();
  if (b_ < 0) {
    Rat nb = -b_;
    s += "-" + nb.get_str();
  } else {
    s += "+" + b_.get_str();
  }
  s += "*j)";
  return s;
}

}  // namespace qdiff
