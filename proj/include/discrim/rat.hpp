#pragma once
// Exact rational scalars backed by GMP (gmpxx).  Every computation in this
// toolkit happens over Q: mpq_class keeps values canonical (gcd(num, den) = 1,
// den > 0) after each operation, so equality is structural and the string
// round-trip below is stable.
#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace discrim {

using Rat = mpq_class;
using Int = mpz_class;
using Vec = std::vector<Rat>;

// Error with a machine-readable kind ("arity", "not generic", "undecided", ...)
// plus a human-readable message.
struct error : std::runtime_error {
  std::string kind;
  error(std::string kind_, const std::string& message)
      : std::runtime_error(kind_ + ": " + message), kind(std::move(kind_)) {}
};

// Strict rational literal: optional sign, digits, optionally "/digits".
// No whitespace, no empty parts, denominator nonzero.  Returns nothing on any
// violation instead of guessing.
std::optional<Rat> parse_rat(const std::string& s);

// Canonical form "p/q", or just "p" when q = 1.
std::string format_rat(const Rat& x);

inline Rat dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw error("shape", "dot of unequal lengths");
  Rat acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

inline Vec vadd(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw error("shape", "sum of unequal lengths");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec vsub(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw error("shape", "difference of unequal lengths");
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec vscale(const Rat& c, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

inline bool is_zero(const Vec& a) {
  for (const Rat& x : a)
    if (x != 0) return false;
  return true;
}

}  // namespace discrim
