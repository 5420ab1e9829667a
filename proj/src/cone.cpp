#include "multinorm/cone.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace multinorm {

ConeSpec cone_of(ExponentMatrix const& E, bool strict) {
  ConeSpec C;
  C.n = E.n();
  for (int j = 0; j < C.n; ++j)
    for (int k = 0; k < C.n; ++k)
      if (j != k) C.constraints.push_back({j, k, E(j, k), strict});
  return C;
}

ConeSpec cone_of(PartialExponentMatrix const& B, bool strict) {
  ConeSpec C;
  C.n = B.n();
  for (int j = 0; j < C.n; ++j)
    for (int k = 0; k < C.n; ++k)
      if (j != k && !B(j, k).is_inf()) C.constraints.push_back({j, k, B(j, k).value(), strict});
  return C;
}

template <class Num>
static bool member_impl(ConeSpec const& C, std::vector<Num> const& t) {
  if (static_cast<int>(t.size()) != C.n) throw DimensionMismatch("member: length mismatch");
  for (auto const& x : t)
    if (!(x < 0)) return false;
  for (auto const& c : C.constraints) {
    Rational lhs = c.coef * Rational(t[c.k]);
    Rational rhs = Rational(t[c.j]);
    if (c.strict ? !(lhs < rhs) : !(lhs <= rhs)) return false;
  }
  return true;
}

bool member(ConeSpec const& C, std::vector<Rational> const& t) { return member_impl(C, t); }
bool member(ConeSpec const& C, std::vector<long long> const& t) { return member_impl(C, t); }

std::vector<std::vector<Rational>> generators(ExponentMatrix const& E) {
  int n = E.n();
  std::vector<std::vector<Rational>> g;
  g.reserve(2 * static_cast<size_t>(n));
  for (int l = 0; l < n; ++l) {
    std::vector<Rational> v(n);
    for (int j = 0; j < n; ++j) v[j] = -E(j, l);
    g.push_back(std::move(v));
  }
  for (int l = 0; l < n; ++l) {
    std::vector<Rational> w(n);
    for (int j = 0; j < n; ++j) w[j] = -(Rational(1) / E(l, j));
    g.push_back(std::move(w));
  }
  return g;
}

static int rank_of_vectors(std::vector<std::vector<Rational>> vs) {
  if (vs.empty()) return 0;
  size_t n = vs[0].size();
  int rank = 0;
  for (size_t col = 0; col < n && rank < static_cast<int>(vs.size()); ++col) {
    int piv = -1;
    for (int r = rank; r < static_cast<int>(vs.size()); ++r)
      if (vs[r][col] != 0) { piv = r; break; }
    if (piv < 0) continue;
    std::swap(vs[piv], vs[rank]);
    for (int r = rank + 1; r < static_cast<int>(vs.size()); ++r) {
      if (vs[r][col] == 0) continue;
      Rational f = vs[r][col] / vs[rank][col];
      for (size_t c = col; c < n; ++c) vs[r][c] -= f * vs[rank][c];
    }
    ++rank;
  }
  return rank;
}

bool has_interior(ExponentMatrix const& E) { return dimension(E) == E.n(); }

int dimension(ExponentMatrix const& E) {
  int s = static_cast<int>(reduce(E).marks.size());
  int span = rank_of_vectors(generators(E));
  if (span != s) throw std::logic_error("dimension: generator span disagrees with reduced rank");
  return s;
}

std::vector<std::vector<long long>> enumerate_lattice(ConeSpec const& C, int depth) {
  if (depth < 1) throw DomainError("enumerate_lattice: depth must be >= 1");
  std::vector<std::vector<long long>> out;
  std::vector<long long> t(C.n);
  // Depth-first with per-prefix pruning against the constraints that are
  // already fully determined.
  auto prefix_ok = [&](int filled) {
    for (auto const& c : C.constraints) {
      if (c.j >= filled || c.k >= filled) continue;
      Rational lhs = c.coef * t[c.k];
      Rational rhs(t[c.j]);
      if (c.strict ? !(lhs < rhs) : !(lhs <= rhs)) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == C.n) {
      out.push_back(t);
      return;
    }
    for (long long v = -depth; v <= -1; ++v) {
      t[pos] = v;
      if (prefix_ok(pos + 1)) self(self, pos + 1);
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<Rational> extend_point(ExponentMatrix const& E, std::vector<Rational> const& u) {
  int n = E.n();
  int p = static_cast<int>(u.size());
  if (p < 1 || p > n) throw DimensionMismatch("extend_point: bad prefix length");
  std::vector<Rational> t = u;
  for (int i = p; i < n; ++i) {
    Rational lo = E(i, 0) * t[0];
    Rational hi = t[0] / E(0, i);
    for (int j = 1; j < i; ++j) {
      lo = std::max(lo, E(i, j) * t[j]);
      hi = std::min(hi, t[j] / E(j, i));
    }
    if (lo > hi) throw std::logic_error("extend_point: empty admissible interval");
    t.push_back((lo + hi) / 2);
  }
  return t;
}

// ---------------------------------------------------------------------------
// Fourier-Motzkin machinery.  Rows are affine inequalities
//   sum_i a_i t_i + b  (<|<=)  0
// over exact rationals.  All cone inputs are homogeneous; fixing values
// introduces the constant term.
// ---------------------------------------------------------------------------

namespace {

struct Row {
  std::vector<Rational> a;
  Rational b = Rational(0);
  bool strict = false;
};

// Scale so that coefficients are coprime integers; canonical form for dedup.
void normalize(Row& r) {
  Integer den(1), num(0);
  for (auto const& x : r.a) den = boost::multiprecision::lcm(den, denominator(x));
  den = boost::multiprecision::lcm(den, denominator(r.b));
  for (auto& x : r.a) x *= den;
  r.b *= den;
  for (auto const& x : r.a) num = boost::multiprecision::gcd(num, numerator(x));
  num = boost::multiprecision::gcd(num, numerator(r.b));
  if (num > 1) {
    for (auto& x : r.a) x /= num;
    r.b /= num;
  }
}

struct System {
  int n;
  std::vector<Row> rows;
  bool infeasible = false;

  void add(Row r) {
    bool all_zero = true;
    for (auto const& x : r.a)
      if (x != 0) { all_zero = false; break; }
    if (all_zero) {
      // constant row: b (<|<=) 0
      if (r.strict ? !(r.b < 0) : !(r.b <= 0)) infeasible = true;
      return;
    }
    normalize(r);
    rows.push_back(std::move(r));
  }

  void dedup() {
    std::sort(rows.begin(), rows.end(), [](Row const& x, Row const& y) {
      if (x.a != y.a) return x.a < y.a;
      if (x.b != y.b) return x.b < y.b;
      return x.strict > y.strict;
    });
    std::vector<Row> kept;
    for (auto& r : rows) {
      if (!kept.empty() && kept.back().a == r.a && kept.back().b == r.b) continue;  // strict kept
      kept.push_back(std::move(r));
    }
    rows = std::move(kept);
  }

  // Eliminate variable v exactly.
  void eliminate(int v) {
    std::vector<Row> lower, upper, rest;
    for (auto& r : rows) {
      if (r.a[v] > 0)
        upper.push_back(std::move(r));  // a_v t_v <= -(...)  => t_v bounded above
      else if (r.a[v] < 0)
        lower.push_back(std::move(r));
      else
        rest.push_back(std::move(r));
    }
    rows = std::move(rest);
    for (auto const& lo : lower)
      for (auto const& up : upper) {
        Row comb;
        comb.a.assign(a_size(), Rational(0));
        Rational cl = -lo.a[v];  // > 0
        Rational cu = up.a[v];   // > 0
        for (int i = 0; i < a_size(); ++i) comb.a[i] = cu * lo.a[i] + cl * up.a[i];
        comb.b = cu * lo.b + cl * up.b;
        comb.strict = lo.strict || up.strict;
        add(std::move(comb));
      }
    dedup();
  }

  int a_size() const { return n; }
};

System build_system(ConeSpec const& C, std::vector<FixedValue> const& fixed) {
  System s;
  s.n = C.n;
  std::vector<std::optional<Rational>> pin(C.n);
  for (auto const& f : fixed) pin[f.index] = f.value;

  auto add_pair = [&](int j, int k, Rational const& coef, bool strict) {
    // coef*t_k - t_j (<|<=) 0
    Row r;
    r.a.assign(C.n, Rational(0));
    if (pin[k])
      r.b += coef * *pin[k];
    else
      r.a[k] += coef;
    if (pin[j])
      r.b -= *pin[j];
    else
      r.a[j] -= 1;
    r.strict = strict;
    s.add(std::move(r));
  };

  for (auto const& c : C.constraints) add_pair(c.j, c.k, c.coef, c.strict);
  for (int j = 0; j < C.n; ++j) {
    Row r;
    r.a.assign(C.n, Rational(0));
    r.strict = true;
    if (pin[j])
      r.b = *pin[j];
    else
      r.a[j] = 1;
    s.add(std::move(r));  // t_j < 0
  }
  s.dedup();
  return s;
}

}  // namespace

bool feasible_with_fixed(ConeSpec const& C, std::vector<FixedValue> const& fixed) {
  System s = build_system(C, fixed);
  for (int v = 0; v < C.n && !s.infeasible; ++v) s.eliminate(v);
  return !s.infeasible;
}

bool feasible(ConeSpec const& C) { return feasible_with_fixed(C, {}); }

ConeSpec project(ConeSpec const& C, std::vector<int> const& keep) {
  if (keep.empty()) throw DomainError("project: keep must be nonempty");
  std::vector<bool> kept(C.n, false);
  for (int k : keep) kept[k] = true;

  System s = build_system(C, {});
  for (int v = 0; v < C.n && !s.infeasible; ++v)
    if (!kept[v]) s.eliminate(v);

  ConeSpec out;
  out.n = static_cast<int>(keep.size());
  if (s.infeasible) {
    // Encode the empty set: t_0 < t_0 is unsatisfiable.
    out.constraints.push_back({0, 0, Rational(1), true});
    return out;
  }
  std::vector<int> pos(C.n, -1);
  for (int i = 0; i < out.n; ++i) pos[keep[i]] = i;

  // Collect the tightest pairwise constraint for each ordered pair.
  std::map<std::pair<int, int>, std::pair<Rational, bool>> best;
  for (auto const& r : s.rows) {
    int neg = -1, posi = -1, extra = 0;
    for (int i = 0; i < C.n; ++i) {
      if (r.a[i] == 0) continue;
      if (r.a[i] > 0)
        posi = i;
      else
        neg = i;
      ++extra;
    }
    if (extra == 1 && neg >= 0) {
      // -t_i (<|<=) 0 contradicts negativity: empty projection
      out.constraints.push_back({0, 0, Rational(1), true});
      return out;
    }
    if (extra == 1) continue;  // plain negativity, implicit in ConeSpec
    if (extra != 2 || neg < 0 || posi < 0)
      throw std::logic_error("project: elimination left a non-pairwise row");
    // a_pos t_pos + a_neg t_neg (<|<=) 0  =>  (a_pos/-a_neg) t_pos (<|<=) t_neg
    Rational coef = r.a[posi] / (-r.a[neg]);
    int j = pos[neg], k = pos[posi];
    auto key = std::make_pair(j, k);
    auto it = best.find(key);
    // smaller coefficient is tighter; equal coefficient: strict is tighter
    if (it == best.end() || coef < it->second.first ||
        (coef == it->second.first && r.strict && !it->second.second))
      best[key] = {coef, r.strict};
  }
  for (auto const& [key, cv] : best)
    out.constraints.push_back({key.first, key.second, cv.first, cv.second});
  return out;
}

std::optional<std::vector<Rational>> rational_witness(ConeSpec const& C) {
  // Eliminate all variables, then back-substitute through the saved stages.
  std::vector<System> stages;
  System s = build_system(C, {});
  stages.push_back(s);
  for (int v = 0; v < C.n; ++v) {
    if (s.infeasible) return std::nullopt;
    s.eliminate(v);
    stages.push_back(s);
  }
  if (s.infeasible) return std::nullopt;

  std::vector<Rational> t(C.n, Rational(0));
  // stage[v] still contains variable v (vars >= v); choose values from last to first.
  for (int v = C.n - 1; v >= 0; --v) {
    System const& st = stages[v];
    // Bounds on t_v once variables > v take their chosen values.
    bool has_lo = false, has_hi = false;
    Rational lo, hi;
    bool lo_strict = false, hi_strict = false;
    for (auto const& r : st.rows) {
      if (r.a[v] == 0) continue;
      Rational rest = r.b;
      for (int i = v + 1; i < C.n; ++i) rest += r.a[i] * t[i];
      // a_v t_v + rest (<|<=) 0
      Rational bound = -rest / r.a[v];
      if (r.a[v] > 0) {
        if (!has_hi || bound < hi || (bound == hi && r.strict)) { hi = bound; hi_strict = r.strict; }
        has_hi = true;
      } else {
        if (!has_lo || bound > lo || (bound == lo && r.strict)) { lo = bound; lo_strict = r.strict; }
        has_lo = true;
      }
    }
    if (!has_hi) { hi = Rational(0); hi_strict = true; has_hi = true; }
    else hi = std::min(hi, Rational(0));
    Rational choice;
    if (has_lo) {
      if (lo > hi || (lo == hi && (lo_strict || hi_strict)))
        throw std::logic_error("rational_witness: back-substitution found an empty interval");
      choice = (lo == hi) ? lo : (lo + hi) / 2;
    } else {
      choice = (hi == 0) ? Rational(-1) : hi * 2;  // any point strictly below hi and below 0
      if (choice >= hi) choice = hi - 1;
    }
    t[v] = choice;
  }
  if (!member(C, t)) throw std::logic_error("rational_witness: constructed point fails membership");
  return t;
}

std::optional<std::vector<long long>> integer_witness(ConeSpec const& C) {
  auto w = rational_witness(C);
  if (!w) return std::nullopt;
  Integer den(1);
  for (auto const& x : *w) den = boost::multiprecision::lcm(den, denominator(x));
  std::vector<long long> out;
  out.reserve(w->size());
  for (auto const& x : *w) {
    Rational scaled = x * Rational(den);
    out.push_back(static_cast<long long>(numerator(scaled)));
  }
  if (!member(C, out)) throw std::logic_error("integer_witness: scaling broke membership");
  return out;
}

}  // namespace multinorm
