#ifndef MULTINORM_RATIONAL_HPP
#define MULTINORM_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <stdexcept>

namespace multinorm {

using Rational = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<boost::multiprecision::backends::cpp_int_backend<>>,
    boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::backends::cpp_int_backend<>,
                                              boost::multiprecision::et_off>;

inline double to_double(Rational const& r) {
  return static_cast<double>(r);
}

// Integral power, exponent may be negative.
inline Rational rat_pow(Rational const& base, long e) {
  if (e == 0) return Rational(1);
  bool neg = e < 0;
  unsigned long k = neg ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  Rational acc(1), b = base;
  while (k) {
    if (k & 1) acc *= b;
    b *= b;
    k >>= 1;
  }
  if (neg) {
    if (acc == 0) throw std::domain_error("rat_pow: zero base with negative exponent");
    acc = Rational(1) / acc;
  }
  return acc;
}

// Compare a^p vs b^q for a,b >= 0 and positive rational exponents p,q:
// raise both sides to the common denominator and compare integer powers.
inline int cmp_pow(Rational const& a, Rational const& p, Rational const& b, Rational const& q) {
  Integer pn = numerator(p), pd = denominator(p);
  Integer qn = numerator(q), qd = denominator(q);
  // a^(pn/pd) vs b^(qn/qd)  <=>  a^(pn*qd) vs b^(qn*pd)
  Integer ea = pn * qd, eb = qn * pd;
  Rational lhs = rat_pow(a, static_cast<long>(ea));
  Rational rhs = rat_pow(b, static_cast<long>(eb));
  if (lhs < rhs) return -1;
  if (lhs > rhs) return 1;
  return 0;
}

// Entry of a partial matrix: a positive rational or +infinity.
class ExtRational {
public:
  ExtRational() : inf_(true) {}
  ExtRational(Rational v) : inf_(false), v_(std::move(v)) {}
  static ExtRational infinity() { return ExtRational(); }

  bool is_inf() const { return inf_; }
  Rational const& value() const {
    if (inf_) throw std::logic_error("ExtRational: value() on infinity");
    return v_;
  }

  friend ExtRational operator*(ExtRational const& a, ExtRational const& b) {
    if (a.inf_ || b.inf_) return infinity();
    return ExtRational(a.v_ * b.v_);
  }
  friend bool operator<(ExtRational const& a, ExtRational const& b) {
    if (b.inf_) return !a.inf_;
    if (a.inf_) return false;
    return a.v_ < b.v_;
  }
  friend bool operator==(ExtRational const& a, ExtRational const& b) {
    if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
    return a.v_ == b.v_;
  }

private:
  bool inf_;
  Rational v_;
};

// Parse "p/q" or "p"; Serialize losslessly.
Rational parse_rational(std::string const& s);
std::string to_string(Rational const& r);

}  // namespace multinorm

#endif
