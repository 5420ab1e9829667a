#include "multinorm/partitions.hpp"

#include <algorithm>
#include <cmath>

#include "multinorm/cone.hpp"

namespace multinorm {

bool MarkedPartition::is_principal() const {
  for (auto const& b : blocks)
    if (b.size() != 1) return false;
  return true;
}

int MarkedPartition::block_of(int j) const {
  for (size_t r = 0; r < blocks.size(); ++r)
    if (std::binary_search(blocks[r].begin(), blocks[r].end(), j)) return static_cast<int>(r);
  throw DomainError("block_of: index not covered");
}

MarkedPartition principal_partition(int n) {
  MarkedPartition S;
  for (int j = 0; j < n; ++j) {
    S.blocks.push_back({j});
    S.marks.push_back(j);
  }
  return S;
}

std::vector<MarkedPartition> enumerate_partitions(int n) {
  if (n < 1) throw DomainError("enumerate_partitions: n must be >= 1");
  std::vector<MarkedPartition> out;
  // Restricted growth strings enumerate the set partitions.
  std::vector<int> rgs(n, 0);
  auto emit = [&](std::vector<int> const& g) {
    int s = *std::max_element(g.begin(), g.end()) + 1;
    std::vector<std::vector<int>> blocks(s);
    for (int j = 0; j < n; ++j) blocks[g[j]].push_back(j);
    std::vector<int> choice(s, 0);
    while (true) {
      MarkedPartition S;
      S.blocks = blocks;
      for (int r = 0; r < s; ++r) S.marks.push_back(blocks[r][choice[r]]);
      out.push_back(std::move(S));
      int r = s - 1;
      while (r >= 0 && choice[r] + 1 == static_cast<int>(blocks[r].size())) choice[r--] = 0;
      if (r < 0) break;
      ++choice[r];
    }
  };
  auto rec = [&](auto&& self, int pos, int maxv) -> void {
    if (pos == n) {
      emit(rgs);
      return;
    }
    for (int v = 0; v <= maxv + 1; ++v) {
      rgs[pos] = v;
      self(self, pos + 1, std::max(maxv, v));
    }
  };
  rec(rec, 0, -1);
  auto principal = principal_partition(n);
  std::stable_partition(out.begin(), out.end(),
                        [&](MarkedPartition const& S) { return S == principal; });
  return out;
}

namespace {

// Comparable term values on a logarithmic scale; -inf encodes a zero norm.
double log_term(double base, double expo) {
  if (base <= 0.0) return -std::numeric_limits<double>::infinity();
  return expo * std::log(base);
}

// exponent of the k-th summand in the j-th norm
double side_exponent(NormSystem const& sys, int j, int k) {
  return sys.side == Side::Space ? to_double(sys.E(j, k)) : 1.0 / to_double(sys.E(k, j));
}

Rational side_exponent_exact(NormSystem const& sys, int j, int k) {
  return sys.side == Side::Space ? sys.E(j, k) : Rational(1) / sys.E(k, j);
}

bool wrong_side(NormSystem const& sys, std::vector<double> const& nb) {
  bool in_ball = true;
  for (double v : nb)
    if (v >= 1.0) in_ball = false;
  return (sys.side == Side::Space) ? !in_ball : in_ball;
}

MarkedPartition partition_from_dominants(std::vector<int> const& kof) {
  int n = static_cast<int>(kof.size());
  MarkedPartition S;
  std::vector<int> seen;
  for (int j = 0; j < n; ++j) {
    int k = kof[j];
    auto it = std::find(seen.begin(), seen.end(), k);
    if (it == seen.end()) seen.push_back(k);
  }
  std::sort(seen.begin(), seen.end());
  std::vector<std::vector<int>> blocks(seen.size());
  for (int j = 0; j < n; ++j) {
    int r = static_cast<int>(std::find(seen.begin(), seen.end(), kof[j]) - seen.begin());
    blocks[r].push_back(j);
  }
  // order blocks by first member
  std::vector<int> order(seen.size());
  for (size_t r = 0; r < order.size(); ++r) order[r] = static_cast<int>(r);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return blocks[a][0] < blocks[b][0]; });
  for (int r : order) {
    S.blocks.push_back(blocks[r]);
    S.marks.push_back(seen[r]);
  }
  for (size_t r = 0; r < S.blocks.size(); ++r)
    if (!std::binary_search(S.blocks[r].begin(), S.blocks[r].end(), S.marks[r]))
      throw std::logic_error("classify: dominant index fell outside its own block");
  return S;
}

}  // namespace

ClassifyResult classify(NormSystem const& sys, std::vector<double> const& x, double rel_tol) {
  ClassifyResult res;
  auto nb = block_norms(sys.dec, x);
  int n = sys.E.n();
  if (wrong_side(sys, nb)) {
    res.status = ClassifyResult::WrongSide;
    return res;
  }
  std::vector<int> kof(n, -1);
  for (int j = 0; j < n; ++j) {
    int best = 0;
    double bestv = log_term(nb[0], side_exponent(sys, j, 0));
    for (int k = 1; k < n; ++k) {
      double v = log_term(nb[k], side_exponent(sys, j, k));
      if (v > bestv) { bestv = v; best = k; }
    }
    for (int k = 0; k < n; ++k) {
      if (k == best) continue;
      double v = log_term(nb[k], side_exponent(sys, j, k));
      bool tie = std::isinf(bestv) ? std::isinf(v)
                                   : std::abs(v - bestv) <= rel_tol * (std::abs(bestv) + 1.0);
      if (tie) {
        res.status = ClassifyResult::Tie;
        res.tied = {std::min(best, k), std::max(best, k)};
        return res;
      }
    }
    kof[j] = best;
  }
  res.S = partition_from_dominants(kof);
  return res;
}

ClassifyResult classify_exact(NormSystem const& sys, std::vector<Rational> const& x) {
  ClassifyResult res;
  auto nb = block_norms_exact(sys.dec, x);
  int n = sys.E.n();
  bool in_ball = true;
  for (auto const& v : nb)
    if (v >= 1) in_ball = false;
  if ((sys.side == Side::Space) ? !in_ball : in_ball) {
    res.status = ClassifyResult::WrongSide;
    return res;
  }
  std::vector<int> kof(n, -1);
  for (int j = 0; j < n; ++j) {
    int best = 0;
    for (int k = 1; k < n; ++k) {
      int c = cmp_pow(nb[k], side_exponent_exact(sys, j, k), nb[best],
                      side_exponent_exact(sys, j, best));
      if (c > 0) best = k;
    }
    for (int k = 0; k < n; ++k) {
      if (k == best) continue;
      if (cmp_pow(nb[k], side_exponent_exact(sys, j, k), nb[best],
                  side_exponent_exact(sys, j, best)) == 0) {
        res.status = ClassifyResult::Tie;
        res.tied = {std::min(best, k), std::max(best, k)};
        return res;
      }
    }
    kof[j] = best;
  }
  res.S = partition_from_dominants(kof);
  return res;
}

std::vector<MarkedPartition> classify_all(NormSystem const& sys, std::vector<double> const& x,
                                          double A) {
  std::vector<MarkedPartition> out;
  for (auto const& S : enumerate_partitions(sys.E.n()))
    if (member_es_full(sys, S, A, x)) out.push_back(S);
  return out;
}

bool member_es_full(NormSystem const& sys, MarkedPartition const& S, double A,
                    std::vector<double> const& x) {
  auto nb = block_norms(sys.dec, x);
  if (wrong_side(sys, nb)) return false;
  int n = sys.E.n();
  for (int r = 0; r < S.order(); ++r) {
    int kr = S.marks[r];
    for (int j : S.blocks[r])
      for (int l = 0; l < n; ++l) {
        if (l == kr) continue;
        double lhs = log_term(nb[l], side_exponent(sys, j, l));
        double rhs = log_term(A * nb[kr], 1.0) * side_exponent(sys, j, kr);
        if (!(lhs < rhs)) return false;
      }
  }
  return true;
}

bool member_es(NormSystem const& sys, MarkedPartition const& S, double A,
               std::vector<double> const& x) {
  auto nb = block_norms(sys.dec, x);
  if (wrong_side(sys, nb)) return false;
  auto st = sigma_tau(sys.E, S);
  int s = S.order();
  double invA = 1.0 / A;
  for (int r = 0; r < s; ++r) {
    int kr = S.marks[r];
    double lognk = nb[kr] > 0 ? std::log(nb[kr]) : -std::numeric_limits<double>::infinity();
    auto exceeds = [&](double base, double expo) {
      // n_{k_r} > invA * base^expo ?
      double rhs = base > 0 ? std::log(invA) + expo * std::log(base)
                            : -std::numeric_limits<double>::infinity();
      return lognk > rhs;
    };
    for (int j : S.blocks[r]) {
      if (j == kr) continue;
      double expo = (sys.side == Side::Space) ? to_double(st.sigma[r][j])
                                              : 1.0 / to_double(st.tau[j][r]);
      if (!exceeds(nb[j], expo)) return false;
    }
    for (int p = 0; p < s; ++p) {
      if (p == r) continue;
      int kp = S.marks[p];
      double expo = (sys.side == Side::Space) ? to_double(st.sigma[r][kp])
                                              : 1.0 / to_double(st.tau[kp][r]);
      if (!exceeds(nb[kp], expo)) return false;
    }
  }
  return true;
}

SigmaTauTable sigma_tau(ExponentMatrix const& E, MarkedPartition const& S) {
  int n = E.n();
  int s = S.order();
  SigmaTauTable t;
  t.sigma.assign(s, std::vector<Rational>(n));
  t.tau.assign(n, std::vector<Rational>(s));
  for (int r = 0; r < s; ++r) {
    int kr = S.marks[r];
    for (int l = 0; l < n; ++l) {
      Rational sg = E(S.blocks[r][0], l) / E(S.blocks[r][0], kr);
      Rational ta = E(l, S.blocks[r][0]) / E(kr, S.blocks[r][0]);
      for (size_t i = 1; i < S.blocks[r].size(); ++i) {
        int j = S.blocks[r][i];
        sg = std::min(sg, E(j, l) / E(j, kr));
        ta = std::min(ta, E(l, j) / E(kr, j));
      }
      t.sigma[r][l] = sg;
      t.tau[l][r] = ta;
    }
  }
  return t;
}

DerivedMatrix derived_matrix(ExponentMatrix const& E, MarkedPartition const& S) {
  DerivedMatrix dm;
  auto st = sigma_tau(E, S);
  int s = S.order();
  dm.raw = PartialExponentMatrix(s);
  for (int r = 0; r < s; ++r)
    for (int p = 0; p < s; ++p)
      if (r != p) dm.raw(r, p) = ExtRational(st.tau[S.marks[r]][p]);
  Closure c = close(dm.raw);
  if (c.empty) {
    dm.empty_cone = true;
    dm.active = false;
    return dm;
  }
  dm.ES = c.closed.as_full();
  dm.active = true;
  for (int r = 0; r < s && dm.active; ++r)
    for (int p = 0; p < s && dm.active; ++p)
      if (r != p && dm.ES(r, p) * dm.ES(p, r) <= 1) dm.active = false;
  return dm;
}

std::vector<MarkedPartition> active_partitions(ExponentMatrix const& E) {
  std::vector<MarkedPartition> out;
  for (auto const& S : enumerate_partitions(E.n()))
    if (derived_matrix(E, S).active) out.push_back(S);
  return out;
}

CoarseDims s_dims(ExponentMatrix const& E, MarkedPartition const& S,
                  BlockDecomposition const& dec) {
  CoarseDims cd;
  int s = S.order();
  cd.Q.assign(s, Rational(0));
  cd.Qhat.assign(s, Rational(0));
  for (int r = 0; r < s; ++r) {
    int kr = S.marks[r];
    for (int j : S.blocks[r]) {
      cd.Q[r] += dec.blocks[j].Q * E(j, kr);
      cd.Qhat[r] += dec.blocks[j].Q / E(kr, j);
    }
  }
  return cd;
}

GroupCompatReport group_compatibility(BlockDecomposition const& dec, ExponentMatrix const& E,
                                      int sample_depth) {
  GroupCompatReport rep;
  auto d = dec.coordinate_exponents();
  rep.d_nondecreasing = true;
  for (size_t l = 0; l + 1 < d.size(); ++l)
    if (d[l] > d[l + 1]) rep.d_nondecreasing = false;
  if (!rep.d_nondecreasing) rep.failures.push_back("coordinate exponents are not non-decreasing");

  rep.doubly_monotone = is_doubly_monotone(E);
  if (!rep.doubly_monotone) rep.failures.push_back("matrix is not doubly monotone");

  rep.lambda_monotone = true;
  for (auto const& I : enumerate_lattice(cone_of(E), sample_depth)) {
    for (size_t j = 0; j + 1 < I.size(); ++j)
      if (I[j] > I[j + 1]) rep.lambda_monotone = false;
    if (!rep.lambda_monotone) break;
  }
  if (!rep.lambda_monotone)
    rep.failures.push_back("expanded dilation tuple not ordered on some lattice point");

  rep.derived_doubly_monotone = true;
  for (auto const& S : active_partitions(E)) {
    // reorder blocks so the marks ascend
    MarkedPartition T = S;
    std::vector<int> ord(T.order());
    for (int i = 0; i < T.order(); ++i) ord[i] = i;
    std::sort(ord.begin(), ord.end(), [&](int a, int b) { return T.marks[a] < T.marks[b]; });
    MarkedPartition sorted;
    for (int i : ord) {
      sorted.blocks.push_back(T.blocks[i]);
      sorted.marks.push_back(T.marks[i]);
    }
    auto dm = derived_matrix(E, sorted);
    if (dm.active && !is_doubly_monotone(dm.ES)) {
      rep.derived_doubly_monotone = false;
      rep.failures.push_back("an active derived matrix is not doubly monotone");
      break;
    }
  }

  rep.all_ok = rep.d_nondecreasing && rep.doubly_monotone && rep.lambda_monotone &&
               rep.derived_doubly_monotone;
  return rep;
}

}  // namespace multinorm
