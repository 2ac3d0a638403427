#include "tcnorm/rational.hpp"

#include <cctype>

#include "tcnorm/error.hpp"

namespace tcnorm {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rat rat_from_string(const std::string& text) {
  std::string s = text;
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s = s.substr(1);
  }

  Int num, den(1);
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string p = s.substr(0, slash), q = s.substr(slash + 1);
    if (!all_digits(p) || !all_digits(q)) fail(Errc::ParseError, "bad rational '" + text + "'");
    num = Int(p);
    den = Int(q);
    if (den == 0) fail(Errc::ParseError, "zero denominator in '" + text + "'");
  } else if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (!all_digits(whole) || !all_digits(frac)) fail(Errc::ParseError, "bad decimal '" + text + "'");
    num = Int(whole + frac);
    for (size_t i = 0; i < frac.size(); ++i) den *= 10;
  } else {
    if (!all_digits(s)) fail(Errc::ParseError, "bad number '" + text + "'");
    num = Int(s);
  }

  Rat value(num, den);
  value.canonicalize();
  return negative ? Rat(-value) : value;
}

std::string rat_to_string(const Rat& value) {
  Rat v = value;
  v.canonicalize();
  return v.get_str();
}

}  // namespace tcnorm
