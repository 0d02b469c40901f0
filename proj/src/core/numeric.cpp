#include "llab/numeric.hpp"

#include <stdexcept>

namespace llab {

std::string rational_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational parse_rational(const std::string& s) {
  auto digits = [&](const std::string& t) {
    if (t.empty()) throw std::invalid_argument("bad number: " + s);
    std::size_t start = (t[0] == '-') ? 1 : 0;
    if (start == t.size()) throw std::invalid_argument("bad number: " + s);
    for (std::size_t i = start; i < t.size(); ++i) {
      if (t[i] < '0' || t[i] > '9') throw std::invalid_argument("bad number: " + s);
    }
    return BigInt(t);
  };
  if (auto slash = s.find('/'); slash != std::string::npos) {
    BigInt den = digits(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + s);
    return Rational(digits(s.substr(0, slash)), den);
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string frac = s.substr(dot + 1);
    std::string whole = s.substr(0, dot);
    if (whole.empty() || whole == "-") whole += "0";
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
    BigInt w = digits(whole);
    BigInt f = frac.empty() ? BigInt(0) : digits(frac);
    BigInt num = w * scale;
    if (whole[0] == '-') {
      num -= f;
    } else {
      num += f;
    }
    return Rational(num, scale);
  }
  return Rational(digits(s));
}

}  // namespace llab
