#include "gms/field.hpp"

#include <ostream>
#include <sstream>

namespace gms {

int FieldElement::sign() const {
  // a + b*phi = (u + v*sqrt5)/2 with u = 2a+b, v = b.
  Rational u = 2 * a_ + b_;
  const Rational& v = b_;
  int su = u.sign();
  int sv = v.sign();
  if (su >= 0 && sv >= 0) return (su == 0 && sv == 0) ? 0 : 1;
  if (su <= 0 && sv <= 0) return -1;
  // Mixed signs: compare u^2 with 5 v^2.
  Rational d = u * u - 5 * v * v;
  if (su > 0) return d.sign();  // v < 0
  return -d.sign();             // u < 0, v > 0
}

BigFloat FieldElement::to_bigfloat(int bits) const {
  precision::ensure_initialized();
  precision::Guard g(bits + 64);
  BigFloat r5 = sqrt(BigFloat(5));
  BigFloat val = BigFloat(a_) + BigFloat(b_) * (1 + r5) / 2;
  precision::Guard g2(bits);
  BigFloat out = val;  // assignment rounds to the active precision
  return out;
}

BigFloat FieldElement::to_bigfloat() const { return to_bigfloat(precision::default_bits()); }

double FieldElement::to_double() const { return to_bigfloat(64).convert_to<double>(); }

namespace {
std::string rational_str(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}
}  // namespace

std::string FieldElement::str() const {
  if (b_ == 0) return rational_str(a_);
  std::string out = rational_str(a_);
  out += b_ < 0 ? " - " : " + ";
  Rational babs = b_ < 0 ? Rational(-b_) : b_;
  out += rational_str(babs);
  out += "·phi";
  return out;
}

FieldElement FieldElement::parse(const std::string& text) {
  // Accepts "p/q", "p/q + r/s·phi", "p/q - r/s*phi"; whitespace tolerant.
  std::string s;
  s.reserve(text.size());
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  // Strip a trailing "phi" term if present.
  auto phi_pos = s.find("phi");
  if (phi_pos == std::string::npos) return FieldElement(Rational(s));
  // Walk back over the multiplication glyph ("*" or UTF-8 "·").
  std::string head = s.substr(0, phi_pos);
  if (!head.empty() && head.back() == '*') {
    head.pop_back();
  } else if (head.size() >= 2 && static_cast<unsigned char>(head[head.size() - 2]) == 0xC2 &&
             static_cast<unsigned char>(head[head.size() - 1]) == 0xB7) {
    head.erase(head.size() - 2);
  }
  // Split the remaining "a±b" at the last top-level +/- (not a leading sign,
  // not the sign of a numerator after '/').
  std::size_t split = std::string::npos;
  for (std::size_t i = 1; i < head.size(); ++i) {
    if ((head[i] == '+' || head[i] == '-') && head[i - 1] != '/' && head[i - 1] != '+' &&
        head[i - 1] != '-')
      split = i;
  }
  if (split == std::string::npos) {
    // Pure phi multiple, e.g. "3/2·phi" or "-phi".
    if (head.empty() || head == "+") return FieldElement(Rational(0), Rational(1));
    if (head == "-") return FieldElement(Rational(0), Rational(-1));
    return FieldElement(Rational(0), Rational(head));
  }
  Rational a(head.substr(0, split));
  std::string btxt = head.substr(split);  // includes the sign
  if (btxt == "+") btxt = "1";
  if (btxt == "-") btxt = "-1";
  return FieldElement(a, Rational(btxt));
}

std::ostream& operator<<(std::ostream& os, const FieldElement& x) { return os << x.str(); }

}  // namespace gms
