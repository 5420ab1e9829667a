#include "multinorm/matrix.hpp"

#include <algorithm>
#include <numeric>

namespace multinorm {

ExponentMatrix::ExponentMatrix(int n, std::vector<Rational> entries) : n_(n), e_(std::move(entries)) {
  if (e_.size() != static_cast<size_t>(n) * n)
    throw DimensionMismatch("ExponentMatrix: entry count does not match n*n");
}

bool PartialExponentMatrix::complete() const {
  for (auto const& x : e_)
    if (x.is_inf()) return false;
  return true;
}

ExponentMatrix PartialExponentMatrix::as_full() const {
  ExponentMatrix m(n_);
  for (int j = 0; j < n_; ++j)
    for (int k = 0; k < n_; ++k) {
      if ((*this)(j, k).is_inf())
        throw InvalidEntry("as_full: infinite entry at (" + std::to_string(j + 1) + "," +
                           std::to_string(k + 1) + ")");
      m(j, k) = (*this)(j, k).value();
    }
  return m;
}

MatrixReport check_basic(ExponentMatrix const& E) {
  int n = E.n();
  MatrixReport rep;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      if (E(j, k) <= 0)
        throw InvalidEntry("check_basic: non-positive entry at (" + std::to_string(j + 1) + "," +
                           std::to_string(k + 1) + ")");
  rep.basic_ok = true;
  for (int j = 0; j < n; ++j)
    if (E(j, j) != 1) {
      rep.basic_ok = false;
      rep.violations.push_back({j + 1, j + 1, j + 1});
    }
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l)
        if (E(j, l) > E(j, k) * E(k, l)) {
          rep.basic_ok = false;
          rep.violations.push_back({j + 1, k + 1, l + 1});
        }
  return rep;
}

bool basic_ok(ExponentMatrix const& E) { return check_basic(E).basic_ok; }

bool is_doubly_monotone(ExponentMatrix const& E) {
  int n = E.n();
  bool direct = true;
  for (int j = 0; j < n && direct; ++j)
    for (int k = 0; k + 1 < n && direct; ++k)
      if (E(j, k) > E(j, k + 1)) direct = false;
  for (int j = 0; j + 1 < n && direct; ++j)
    for (int k = 0; k < n && direct; ++k)
      if (E(j, k) < E(j + 1, k)) direct = false;
  if (basic_ok(E)) {
    bool subdiag = true;
    for (int j = 0; j + 1 < n; ++j)
      if (E(j + 1, j) > 1) subdiag = false;
    if (subdiag != direct)
      throw std::logic_error("is_doubly_monotone: subdiagonal test disagrees with definition");
  }
  return direct;
}

int exact_rank(ExponentMatrix const& E) {
  int n = E.n();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) a[j][k] = E(j, k);
  int rank = 0;
  for (int col = 0; col < n && rank < n; ++col) {
    int piv = -1;
    for (int r = rank; r < n; ++r)
      if (a[r][col] != 0) { piv = r; break; }
    if (piv < 0) continue;
    std::swap(a[piv], a[rank]);
    for (int r = rank + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      Rational f = a[r][col] / a[rank][col];
      for (int c = col; c < n; ++c) a[r][c] -= f * a[rank][c];
    }
    ++rank;
  }
  return rank;
}

Rational exact_det(ExponentMatrix const& E) {
  int n = E.n();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) a[j][k] = E(j, k);
  Rational det(1);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (a[r][col] != 0) { piv = r; break; }
    if (piv < 0) return Rational(0);
    if (piv != col) { std::swap(a[piv], a[col]); det = -det; }
    det *= a[col][col];
    for (int r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      Rational f = a[r][col] / a[col][col];
      for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

namespace {

// A simple cycle with entry product < 1; must exist whenever some closed walk
// drops below 1, because a walk factors into simple cycles.
std::vector<int> find_bad_cycle(PartialExponentMatrix const& B) {
  int n = B.n();
  std::vector<int> cyc;
  std::vector<bool> used(n, false);
  std::vector<int> found;
  auto rec = [&](auto&& self, int start, int at, Rational const& prod) -> bool {
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
  throw std::logic_error("find_bad_cycle: relaxation claimed a cycle that does not exist");
}

std::vector<std::vector<int>> scc_of_finite(PartialExponentMatrix const& M) {
  int n = M.n();
  // Tiny n: reachability by repeated squaring of the boolean closure.
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) reach[j][k] = (j == k) || !M(j, k).is_inf();
  for (int m = 0; m < n; ++m)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (reach[j][m] && reach[m][k]) reach[j][k] = true;
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> comps;
  for (int j = 0; j < n; ++j) {
    if (comp[j] >= 0) continue;
    comps.emplace_back();
    for (int k = j; k < n; ++k)
      if (comp[k] < 0 && reach[j][k] && reach[k][j]) {
        comp[k] = static_cast<int>(comps.size()) - 1;
        comps.back().push_back(k);
      }
  }
  return comps;
}

}  // namespace

Closure close(PartialExponentMatrix const& B) {
  int n = B.n();
  Closure res;
  for (int j = 0; j < n; ++j) {
    if (B(j, j).is_inf() || B(j, j).value() != 1)
      throw InvalidEntry("close: diagonal must be 1");
    for (int k = 0; k < n; ++k)
      if (!B(j, k).is_inf() && B(j, k).value() <= 0)
        throw InvalidEntry("close: non-positive entry");
  }

  std::vector<std::vector<ExtRational>> d(n, std::vector<ExtRational>(n));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) d[j][k] = B(j, k);

  for (int m = 0; m < n; ++m)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        ExtRational cand = d[j][m] * d[m][k];
        if (cand < d[j][k]) d[j][k] = cand;
      }

  for (int j = 0; j < n; ++j) {
    if (d[j][j] < ExtRational(Rational(1))) {
      res.empty = true;
      res.witness_cycle = find_bad_cycle(B);
      return res;
    }
  }

  res.closed = PartialExponentMatrix(n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) res.closed(j, k) = (j == k) ? ExtRational(Rational(1)) : d[j][k];
  res.connected = res.closed.complete();
  res.components = scc_of_finite(res.closed);
  return res;
}

Closure close(ExponentMatrix const& E) { return close(PartialExponentMatrix(E)); }

ExponentMatrix close_full(PartialExponentMatrix const& B) {
  Closure c = close(B);
  if (c.empty) throw InvalidEntry("close_full: empty cone");
  return c.closed.as_full();
}

Reduction reduce(ExponentMatrix const& E) {
  if (!basic_ok(E)) throw InvalidEntry("reduce: matrix does not satisfy the basic hypothesis");
  int n = E.n();
  Reduction red;
  std::vector<int> cls(n, -1);
  for (int j = 0; j < n; ++j) {
    if (cls[j] >= 0) continue;
    int id = static_cast<int>(red.classes.size());
    red.classes.emplace_back();
    red.marks.push_back(j);
    for (int k = j; k < n; ++k)
      if (cls[k] < 0 && E(j, k) * E(k, j) == 1) {
        cls[k] = id;
        red.classes.back().push_back(k);
      }
  }
  int s = static_cast<int>(red.marks.size());
  red.flat = ExponentMatrix(s);
  for (int t = 0; t < s; ++t)
    for (int r = 0; r < s; ++r) red.flat(t, r) = E(red.marks[t], red.marks[r]);
  red.alpha.resize(n);
  for (int j = 0; j < n; ++j) red.alpha[j] = E(red.marks[cls[j]], j);
  return red;
}

ExponentMatrix sharpen(ExponentMatrix const& coarse, std::vector<std::vector<int>> const& blocks,
                       std::vector<Rational> const& alpha) {
  int s = coarse.n();
  if (static_cast<int>(blocks.size()) != s)
    throw DimensionMismatch("sharpen: block count does not match coarse size");
  size_t n = 0;
  for (auto const& b : blocks) n += b.size();
  if (alpha.size() != n) throw DimensionMismatch("sharpen: alpha length does not match");
  for (auto const& a : alpha)
    if (a <= 0) throw InvalidEntry("sharpen: alpha must be positive");

  std::vector<int> block_of(n, -1);
  for (int t = 0; t < s; ++t)
    for (int j : blocks[t]) {
      if (j < 0 || j >= static_cast<int>(n) || block_of[j] >= 0)
        throw DimensionMismatch("sharpen: blocks must partition the index set");
      block_of[j] = t;
    }
  ExponentMatrix out(static_cast<int>(n));
  for (int j = 0; j < static_cast<int>(n); ++j)
    for (int k = 0; k < static_cast<int>(n); ++k)
      out(j, k) = alpha[k] / alpha[j] * coarse(block_of[j], block_of[k]);
  return out;
}

bool includes(ExponentMatrix const& E, ExponentMatrix const& Eprime) {
  if (E.n() != Eprime.n()) throw DimensionMismatch("includes: size mismatch");
  for (int j = 0; j < E.n(); ++j)
    for (int k = 0; k < E.n(); ++k)
      if (E(j, k) > Eprime(j, k)) return false;
  return true;
}

ExponentMatrix cz_matrix(std::vector<Rational> const& a) {
  int n = static_cast<int>(a.size());
  for (auto const& x : a)
    if (x <= 0) throw InvalidEntry("cz_matrix: homogeneity must be positive");
  ExponentMatrix m(n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) m(j, k) = a[j] / a[k];
  return m;
}

ExponentMatrix envelope_matrix(std::vector<std::vector<Rational>> const& homs) {
  if (homs.empty()) throw DimensionMismatch("envelope_matrix: empty list");
  size_t n = homs[0].size();
  for (auto const& h : homs)
    if (h.size() != n) throw DimensionMismatch("envelope_matrix: length mismatch");
  ExponentMatrix m(static_cast<int>(n));
  for (int j = 0; j < static_cast<int>(n); ++j)
    for (int k = 0; k < static_cast<int>(n); ++k) {
      Rational best = homs[0][j] / homs[0][k];
      for (size_t l = 1; l < homs.size(); ++l) best = std::max(best, homs[l][j] / homs[l][k]);
      m(j, k) = best;
    }
  return m;
}

ExponentMatrix two_flag_matrix(std::vector<Rational> const& a, std::vector<Rational> const& b) {
  int n = static_cast<int>(a.size());
  if (b.size() != a.size()) throw DimensionMismatch("two_flag_matrix: length mismatch");
  for (int j = 0; j + 1 < n; ++j)
    if (a[j] / b[j] > a[j + 1] / b[j + 1])
      throw OrderingViolation("two_flag_matrix: a_j/b_j must be non-decreasing");
  ExponentMatrix m(n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) m(j, k) = (j <= k) ? b[j] / b[k] : a[j] / a[k];
  if (!(m == envelope_matrix({a, b})))
    throw std::logic_error("two_flag_matrix: disagrees with envelope under the ratio ordering");
  return m;
}

std::vector<int> ratio_order(std::vector<Rational> const& a, std::vector<Rational> const& b) {
  int n = static_cast<int>(a.size());
  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::stable_sort(sigma.begin(), sigma.end(),
                   [&](int x, int y) { return b[x] / a[x] < b[y] / a[y]; });
  return sigma;
}

std::vector<ExponentMatrix> cz_pair_family(std::vector<Rational> const& a,
                                           std::vector<Rational> const& b) {
  int n = static_cast<int>(a.size());
  if (b.size() != a.size()) throw DimensionMismatch("cz_pair_family: length mismatch");
  std::vector<int> sigma = ratio_order(a, b);
  std::vector<ExponentMatrix> family;
  family.reserve(n + 1);
  for (int m = 0; m <= n; ++m) {
    std::vector<bool> inA(n, false);
    for (int i = 0; i < m; ++i) inA[sigma[i]] = true;
    ExponentMatrix Em(n);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (inA[j] && inA[k])
          Em(j, k) = b[j] / b[k];
        else if (!inA[j] && !inA[k])
          Em(j, k) = a[j] / a[k];
        else if (inA[j] && !inA[k])
          // scale in the A directions is set by k-dyadics, in the B directions
          // by j-dyadics; the extreme ratio over the interval is at sigma(m).
          Em(j, k) = b[j] * a[sigma[m - 1]] / (a[k] * b[sigma[m - 1]]);
        else
          Em(j, k) = a[j] * b[sigma[m]] / (b[k] * a[sigma[m]]);
      }
    family.push_back(std::move(Em));
  }
  return family;
}

MatrixReport full_report(ExponentMatrix const& E) {
  MatrixReport rep = check_basic(E);
  if (rep.basic_ok) {
    rep.doubly_monotone = is_doubly_monotone(E);
    rep.numeric_rank = exact_rank(E);
    rep.reduced_rank = static_cast<int>(reduce(E).marks.size());
  }
  return rep;
}

}  // namespace multinorm
