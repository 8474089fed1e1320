#pragma once

// Stand-alone recomputation of the diag(2,2,1/2) / J-block fixture used by the
// dependence suite. Deliberately shares no code with the library beyond the
// Rational scalar type: the two builds are written out from their defining
// formulas, all 81 quadruple values are enumerated directly, and the
// nullspace comes from a fresh Gaussian elimination. Agreement between this
// and the library is evidence, not tautology.

#include <array>
#include <vector>

#include "curvtensor/scalar.hpp"

namespace oracle {

using curv::Rational;

struct RemarkNullspace {
  int nullity = 0;
  std::vector<Rational> coefficients;  // normalized so the first nonzero is 1
};

namespace detail {

using Mat3 = std::array<std::array<Rational, 3>, 3>;

// phi = identity here, so phi(Ae_x, e_w) is just column x of A read at row w.
inline Rational pair_entry(const Mat3& a, int x, int w) { return a[w][x]; }

inline Rational sym_build(const Mat3& a, int x, int y, int z, int w) {
  return pair_entry(a, x, w) * pair_entry(a, y, z) -
         pair_entry(a, x, z) * pair_entry(a, y, w);
}

inline Rational alt_build(const Mat3& a, int x, int y, int z, int w) {
  return sym_build(a, x, y, z, w) -
         Rational(2) * pair_entry(a, x, y) * pair_entry(a, z, w);
}

}  // namespace detail

// Rows: all 81 quadruples in lexicographic order. Columns: the symmetric
// builds of I and diag(2,2,1/2) and the alternating build of the J block.
inline RemarkNullspace remark_fixture_nullspace() {
  using detail::Mat3;
  const Rational h(1, 2);
  const Mat3 identity{{{Rational(1), 0, 0}, {0, Rational(1), 0}, {0, 0, Rational(1)}}};
  const Mat3 b{{{Rational(2), 0, 0}, {0, Rational(2), 0}, {0, 0, h}}};
  const Mat3 c{{{0, Rational(1), 0}, {Rational(-1), 0, 0}, {0, 0, 0}}};

  std::vector<std::array<Rational, 3>> rows;
  rows.reserve(81);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      for (int z = 0; z < 3; ++z)
        for (int w = 0; w < 3; ++w)
          rows.push_back({detail::sym_build(identity, x, y, z, w),
                          detail::sym_build(b, x, y, z, w),
                          detail::alt_build(c, x, y, z, w)});

  // Gaussian elimination over the rationals, three columns wide.
  int rank = 0;
  std::array<bool, 3> pivot_col{false, false, false};
  std::vector<std::array<Rational, 3>> reduced;
  for (auto row : rows) {
    for (const auto& p : reduced) {
      int pc = 0;
      while (pc < 3 && p[pc] == 0) ++pc;
      if (pc < 3 && row[pc] != 0) {
        const Rational f = row[pc] / p[pc];
        for (int j = 0; j < 3; ++j) row[j] -= f * p[j];
      }
    }
    int lead = 0;
    while (lead < 3 && row[lead] == 0) ++lead;
    if (lead < 3) {
      reduced.push_back(row);
      pivot_col[lead] = true;
      if (++rank == 3) break;
    }
  }

  RemarkNullspace out;
  out.nullity = 3 - rank;
  if (out.nullity != 1) return out;

  // Back-substitute with the single free column set to 1.
  int free_col = 0;
  while (pivot_col[free_col]) ++free_col;
  std::array<Rational, 3> v{Rational(0), Rational(0), Rational(0)};
  v[free_col] = Rational(1);
  for (auto it = reduced.rbegin(); it != reduced.rend(); ++it) {
    int pc = 0;
    while (pc < 3 && (*it)[pc] == 0) ++pc;
    Rational acc(0);
    for (int j = pc + 1; j < 3; ++j) acc += (*it)[j] * v[j];
    v[pc] = -acc / (*it)[pc];
  }
  int first = 0;
  while (first < 3 && v[first] == 0) ++first;
  const Rational lead = v[first];
  out.coefficients.assign(v.begin(), v.end());
  for (auto& c0 : out.coefficients) c0 /= lead;
  return out;
}

}  // namespace oracle
