#ifndef MULTINORM_TEST_HELPERS_HPP
#define MULTINORM_TEST_HELPERS_HPP

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "multinorm/matrix.hpp"

namespace multinorm::testing {

inline ExponentMatrix mat(std::vector<std::vector<std::string>> const& rows) {
  int n = static_cast<int>(rows.size());
  ExponentMatrix E(n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) E(j, k) = parse_rational(rows[j][k]);
  return E;
}

inline std::vector<Rational> rats(std::vector<std::string> const& xs) {
  std::vector<Rational> out;
  for (auto const& x : xs) out.push_back(parse_rational(x));
  return out;
}

inline Rational random_positive_rational(std::mt19937_64& rng) {
  static const int nums[] = {1, 1, 1, 2, 2, 3, 3, 4, 5, 8};
  static const int dens[] = {1, 1, 2, 2, 3, 3, 4, 1, 2, 1};
  std::uniform_int_distribution<int> pick(0, 9);
  return Rational(nums[pick(rng)], dens[pick(rng)]);
}

inline PartialExponentMatrix random_partial(std::mt19937_64& rng, int n, double inf_prob) {
  PartialExponentMatrix B(n);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      if (j == k) continue;
      if (U(rng) < inf_prob)
        B(j, k) = ExtRational::infinity();
      else
        B(j, k) = ExtRational(random_positive_rational(rng));
    }
  return B;
}

// a random matrix that satisfies the basic hypothesis
inline ExponentMatrix random_closed(std::mt19937_64& rng, int n) {
  for (;;) {
    PartialExponentMatrix B = random_partial(rng, n, 0.0);
    Closure c = close(B);
    if (!c.empty) return c.closed.as_full();
  }
}

// doubly monotone basic matrix: envelope of non-increasing homogeneities
inline ExponentMatrix random_doubly_monotone(std::mt19937_64& rng, int n, bool want_interior) {
  for (;;) {
    std::vector<std::vector<Rational>> homs;
    int p = 2 + static_cast<int>(rng() % 2);
    for (int l = 0; l < p; ++l) {
      std::vector<Rational> a(n);
      a[0] = random_positive_rational(rng) + 1;
      for (int j = 1; j < n; ++j) {
        Rational step = Rational(1) + random_positive_rational(rng);
        a[j] = a[j - 1] / step;
      }
      homs.push_back(a);
    }
    ExponentMatrix E = envelope_matrix(homs);
    if (!is_doubly_monotone(E)) continue;
    if (want_interior) {
      bool interior = true;
      for (int j = 0; j < n && interior; ++j)
        for (int k = 0; k < n && interior; ++k)
          if (j != k && E(j, k) * E(k, j) <= 1) interior = false;
      if (!interior) continue;
    }
    return E;
  }
}

// min over simple paths of the entry products, by exhaustive enumeration
inline ExtRational oracle_min_path(PartialExponentMatrix const& B, int from, int to) {
  int n = B.n();
  ExtRational best = ExtRational::infinity();
  std::vector<int> path{from};
  std::vector<bool> used(n, false);
  used[from] = true;
  auto rec = [&](auto&& self, int at, ExtRational prod) -> void {
    if (at == to && path.size() > 1) {
      if (prod < best) best = prod;
      return;
    }
    for (int next = 0; next < n; ++next) {
      if (used[next] && next != to) continue;
      if (next == to && at == to) continue;
      if (B(at, next).is_inf()) continue;
      if (next == to) {
        ExtRational p = prod * B(at, next);
        if (p < best) best = p;
        continue;
      }
      used[next] = true;
      path.push_back(next);
      self(self, next, prod * B(at, next));
      path.pop_back();
      used[next] = false;
    }
  };
  rec(rec, from, ExtRational(Rational(1)));
  return best;
}

// is there a simple cycle with product < 1?
inline std::optional<std::vector<int>> oracle_bad_cycle(PartialExponentMatrix const& B) {
  int n = B.n();
  std::vector<int> cyc;
  std::vector<bool> used(n, false);
  std::optional<std::vector<int>> found;
  auto rec = [&](auto&& self, int start, int at, Rational prod) -> bool {
    for (int next = 0; next < n; ++next) {
      if (B(at, next).is_inf()) continue;
      Rational p = prod * B(at, next).value();
      if (next == start) {
        if (p < 1) {
          found = cyc;
          return true;
        }
        continue;
      }
      if (used[next] || next < start) continue;
      used[next] = true;
      cyc.push_back(next);
      if (self(self, start, next, p)) return true;
      cyc.pop_back();
      used[next] = false;
    }
    return false;
  };
  for (int start = 0; start < n; ++start) {
    std::fill(used.begin(), used.end(), false);
    used[start] = true;
    cyc = {start};
    if (rec(rec, start, start, Rational(1))) return found;
  }
  return std::nullopt;
}

}  // namespace multinorm::testing

#endif
