#pragma once

// Independent re-implementations used as oracles by the tests.  These are
// deliberately written with different algorithms than the library (cofactor
// expansion and minor search instead of fraction-free elimination) so that
// agreement is meaningful.

#include <cstdint>
#include <map>
#include <vector>

#include "discrim/arrangement.hpp"
#include "discrim/linalg.hpp"
#include "discrim/rng.hpp"

namespace oracle {

using discrim::Arrangement;
using discrim::IndexSet;
using discrim::Rat;
using discrim::Vec;

// Determinant by expansion along rows, memoized on the set of unused columns.
inline Rat det_masked(const std::vector<Vec>& rows, std::uint32_t mask,
                      std::size_t row, std::map<std::uint32_t, Rat>& memo) {
  if (row == rows.size()) return Rat(1);
  auto it = memo.find(mask);
  if (it != memo.end()) return it->second;
  Rat acc(0);
  int sign = 1;
  for (std::size_t c = 0; c < rows[row].size(); ++c) {
    if (!(mask & (1u << c))) continue;
    if (rows[row][c] != 0) {
      Rat sub = det_masked(rows, mask & ~(1u << c), row + 1, memo);
      acc += Rat(sign) * rows[row][c] * sub;
    }
    sign = -sign;
  }
  memo.emplace(mask, acc);
  return acc;
}

inline Rat det(const std::vector<Vec>& rows) {
  if (rows.empty()) return Rat(1);
  std::map<std::uint32_t, Rat> memo;
  return det_masked(rows, (1u << rows[0].size()) - 1u, 0, memo);
}

// Rank as the size of the largest nonsingular square minor.
inline std::size_t rank_minors(const std::vector<Vec>& rows) {
  if (rows.empty()) return 0;
  const std::size_t R = rows.size(), C = rows[0].size();
  std::size_t best = 0;
  for (std::size_t s = 1; s <= std::min(R, C); ++s) {
    bool found = false;
    std::vector<std::size_t> ri(s), ci(s);
    for (std::size_t i = 0; i < s; ++i) ri[i] = i;
    auto advance = [](std::vector<std::size_t>& idx, std::size_t limit) {
      std::size_t s2 = idx.size();
      for (std::size_t pos = s2; pos-- > 0;) {
        if (idx[pos] + 1 <= limit - (s2 - pos)) {
          ++idx[pos];
          for (std::size_t q = pos + 1; q < s2; ++q) idx[q] = idx[q - 1] + 1;
          return true;
        }
      }
      return false;
    };
    do {
      for (std::size_t i = 0; i < s; ++i) ci[i] = i;
      do {
        std::vector<Vec> sub;
        for (std::size_t i : ri) {
          Vec r;
          for (std::size_t c : ci) r.push_back(rows[i][c]);
          sub.push_back(std::move(r));
        }
        if (det(sub) != 0) {
          found = true;
          break;
        }
      } while (!found && advance(ci, C));
      if (found) break;
    } while (advance(ri, R));
    if (found)
      best = s;
    else
      break;
  }
  return best;
}

// Cofactor formula for the normal of D_L: on the (k+1) x k stack M of the
// normals indexed by L, w_j = (-1)^(j+1) det(M with row j removed).
inline Vec disc_normal_cofactor(const Arrangement& A, const IndexSet& L) {
  std::vector<Vec> M;
  for (int p : L) M.push_back(A.normal(p));
  Vec w(A.n, Rat(0));
  int sign = 1;
  for (std::size_t j = 0; j < M.size(); ++j) {
    std::vector<Vec> minor;
    for (std::size_t i = 0; i < M.size(); ++i)
      if (i != j) minor.push_back(M[i]);
    w[static_cast<std::size_t>(L[j] - 1)] = Rat(sign) * det(minor);
    sign = -sign;
  }
  return discrim::canonical_scaled(w);
}

// Seeded random arrangement with every k normals independent.
inline Arrangement random_generic_arrangement(std::size_t n, std::size_t k,
                                              discrim::Rng& rng,
                                              std::int64_t bound = 9) {
  Arrangement A;
  A.k = k;
  A.n = n;
  for (;;) {
    A.normals.clear();
    for (std::size_t i = 0; i < n; ++i) {
      Vec v(k);
      bool zero = true;
      for (std::size_t c = 0; c < k; ++c) {
        v[c] = Rat(rng.uniform(-bound, bound));
        if (v[c] != 0) zero = false;
      }
      if (zero) v[0] = 1;
      A.normals.push_back(std::move(v));
    }
    if (discrim::is_central_generic(A).generic) return A;
  }
}

}  // namespace oracle
