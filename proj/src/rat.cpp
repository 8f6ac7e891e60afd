#include "discrim/rat.hpp"

#include <cctype>

namespace discrim {

std::optional<Rat> parse_rat(const std::string& s) {
  // ^[+-]?[0-9]+(/[0-9]+)?$ with a nonzero denominator.
  std::size_t i = 0;
  const std::size_t n = s.size();
  if (i < n && (s[i] == '+' || s[i] == '-')) ++i;
  std::size_t num_begin = i;
  while (i < n && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i == num_begin) return std::nullopt;  // no numerator digits
  std::string den;
  if (i < n) {
    if (s[i] != '/') return std::nullopt;
    ++i;
    std::size_t den_begin = i;
    while (i < n && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == den_begin || i != n) return std::nullopt;
    den = s.substr(den_begin);
  }
  if (!den.empty() && den.find_first_not_of('0') == std::string::npos)
    return std::nullopt;  // division by zero
  // mpq_set_str rejects an explicit leading '+'
  Rat r(s[0] == '+' ? s.substr(1) : s, 10);
  r.canonicalize();
  return r;
}

std::string format_rat(const Rat& x) {
  // mpq_class::get_str emits "p/q", or just "p" when the denominator is 1;
  // values are already canonical.
  return x.get_str();
}

}  // namespace discrim
