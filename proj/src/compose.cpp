#include "multinorm/compose.hpp"

#include <algorithm>
#include <numeric>

namespace multinorm {

int PairTable::pair_index(int r, int a) const {
  for (size_t p = 0; p < pairs.size(); ++p)
    if (pairs[p].r == r && pairs[p].a == a) return static_cast<int>(p);
  return -1;
}

PairTable pair_table(ExponentMatrix const& E, MarkedPartition const& S,
                     MarkedPartition const& T) {
  if (!derived_matrix(E, S).active || !derived_matrix(E, T).active)
    throw InactivePartition("pair_table: both marked partitions must be active");
  PairTable tab;
  tab.s = S.order();
  tab.q = T.order();
  auto stS = sigma_tau(E, S);
  auto stT = sigma_tau(E, T);
  for (int r = 0; r < tab.s; ++r)
    for (int a = 0; a < tab.q; ++a) {
      std::vector<int> inter;
      std::set_intersection(S.blocks[r].begin(), S.blocks[r].end(), T.blocks[a].begin(),
                            T.blocks[a].end(), std::back_inserter(inter));
      if (inter.empty()) continue;
      PairTable::Pair p;
      p.r = r;
      p.a = a;
      std::vector<std::pair<Rational, int>> keyed;
      for (int v : inter) keyed.emplace_back(stT.tau[v][a] / stS.tau[v][r], v);
      std::stable_sort(keyed.begin(), keyed.end(),
                       [](auto const& x, auto const& y) { return x.first < y.first; });
      for (auto const& [ratio, v] : keyed) {
        p.v.push_back(v);
        p.ratio.push_back(ratio);
      }
      tab.pairs.push_back(std::move(p));
    }
  return tab;
}

namespace {

ConeSpec gamma_w_spec(ExponentMatrix const& ES, ExponentMatrix const& ET, PairTable const& tab,
                      std::vector<int> const& w) {
  int s = ES.n(), q = ET.n();
  ConeSpec C;
  C.n = s + q;
  for (int p = 0; p < s; ++p)
    for (int r = 0; r < s; ++r)
      if (p != r) C.constraints.push_back({p, r, ES(p, r), false});
  for (int b = 0; b < q; ++b)
    for (int a = 0; a < q; ++a)
      if (b != a) C.constraints.push_back({s + b, s + a, ET(b, a), false});
  for (size_t p = 0; p < tab.pairs.size(); ++p) {
    auto const& pr = tab.pairs[p];
    int m = static_cast<int>(pr.v.size());
    int wp = w[p];
    if (wp < m) {
      // upper endpoint: ratio(v_{w+1}) * j_a < i_r
      C.constraints.push_back({pr.r, tab.s + pr.a, pr.ratio[wp], true});
    }
    if (wp > 0) {
      // lower endpoint: (1/ratio(v_w)) * i_r <= j_a
      C.constraints.push_back({tab.s + pr.a, pr.r, Rational(1) / pr.ratio[wp - 1], false});
    }
  }
  return C;
}

}  // namespace

CaseEnumeration enumerate_cases(ExponentMatrix const& E, MarkedPartition const& S,
                                MarkedPartition const& T) {
  CaseEnumeration en;
  en.table = pair_table(E, S, T);
  auto dmS = derived_matrix(E, S);
  auto dmT = derived_matrix(E, T);
  ExponentMatrix const& ES = dmS.ES;
  ExponentMatrix const& ET = dmT.ES;
  auto stS = sigma_tau(E, S);
  auto stT = sigma_tau(E, T);
  int s = S.order(), q = T.order();
  int npairs = static_cast<int>(en.table.pairs.size());

  std::vector<int> w(npairs, 0);
  while (true) {
    CompositionCase cse;
    cse.w = w;
    cse.gamma_w = gamma_w_spec(ES, ET, en.table, w);
    auto wit = integer_witness(cse.gamma_w);
    if (!wit) {
      ++en.dropped_empty;
    } else {
      cse.witness = *wit;

      // surviving indices per block from the interval choice
      cse.I_star.assign(s, {});
      cse.J_star.assign(q, {});
      for (int p = 0; p < npairs; ++p) {
        auto const& pr = en.table.pairs[p];
        for (size_t k = 0; k < pr.v.size(); ++k) {
          if (static_cast<int>(k) >= w[p])
            cse.I_star[pr.r].push_back(pr.v[k]);
          else
            cse.J_star[pr.a].push_back(pr.v[k]);
        }
      }
      for (auto& b : cse.I_star) std::sort(b.begin(), b.end());
      for (auto& b : cse.J_star) std::sort(b.begin(), b.end());
      {
        std::vector<int> all;
        for (auto const& b : cse.I_star) all.insert(all.end(), b.begin(), b.end());
        for (auto const& b : cse.J_star) all.insert(all.end(), b.begin(), b.end());
        std::sort(all.begin(), all.end());
        for (int j = 0; j < E.n(); ++j)
          if (all[j] != j)
            throw std::logic_error("enumerate_cases: surviving indices do not partition");
      }
      for (int r = 0; r < s; ++r)
        if (!cse.I_star[r].empty()) cse.S_star.push_back(r);
      for (int a = 0; a < q; ++a)
        if (!cse.J_star[a].empty()) cse.T_star.push_back(a);

      // display order: by marked index, S before T on ties
      for (int r : cse.S_star) cse.vorder.push_back({false, r});
      for (int a : cse.T_star) cse.vorder.push_back({true, a});
      std::stable_sort(cse.vorder.begin(), cse.vorder.end(), [&](auto const& x, auto const& y) {
        int mx = x.first ? T.marks[x.second] : S.marks[x.second];
        int my = y.first ? T.marks[y.second] : S.marks[y.second];
        if (mx != my) return mx < my;
        return x.first < y.first;
      });

      // assemble the bound matrix across the combined blocks
      int nv = static_cast<int>(cse.vorder.size());
      cse.B_W = PartialExponentMatrix(nv);
      auto lambda_upper = [&](int r, int a) -> ExtRational {
        int p = en.table.pair_index(r, a);
        if (p < 0) return ExtRational::infinity();
        auto const& pr = en.table.pairs[p];
        int wp = w[p], m = static_cast<int>(pr.v.size());
        if (wp == m) return ExtRational::infinity();
        return ExtRational(pr.ratio[wp]);
      };
      auto lambda_lower = [&](int a, int r) -> ExtRational {
        int p = en.table.pair_index(r, a);
        if (p < 0) return ExtRational::infinity();
        auto const& pr = en.table.pairs[p];
        int wp = w[p];
        if (wp == 0) return ExtRational::infinity();
        return ExtRational(Rational(1) / pr.ratio[wp - 1]);
      };
      for (int u = 0; u < nv; ++u)
        for (int v = 0; v < nv; ++v) {
          if (u == v) continue;
          auto [uT, ub] = cse.vorder[u];
          auto [vT, vb] = cse.vorder[v];
          if (!uT && !vT)
            cse.B_W(u, v) = ExtRational(ES(ub, vb));
          else if (uT && vT)
            cse.B_W(u, v) = ExtRational(ET(ub, vb));
          else if (!uT && vT)
            cse.B_W(u, v) = lambda_upper(ub, vb);
          else
            cse.B_W(u, v) = lambda_lower(ub, vb);
        }

      Closure cl = close(cse.B_W);
      if (cl.empty) {
        cse.empty_cone = true;
      } else {
        cse.E_STW = cl.closed;
        cse.connected = cl.connected;

        // sharpened comparison against E on the finite entries
        std::vector<int> blk(E.n(), -1);
        std::vector<Rational> alpha(E.n(), Rational(1));
        for (int u = 0; u < nv; ++u) {
          auto [uT, ub] = cse.vorder[u];
          auto const& members = uT ? cse.J_star[ub] : cse.I_star[ub];
          int mark = uT ? T.marks[ub] : S.marks[ub];
          for (int j : members) {
            blk[j] = u;
            alpha[j] = Rational(1) / (uT ? stT.tau[j][ub] : stS.tau[j][ub]);
            (void)mark;
          }
        }
        cse.inclusion_ok = true;
        for (int j = 0; j < E.n() && cse.inclusion_ok; ++j)
          for (int k = 0; k < E.n() && cse.inclusion_ok; ++k) {
            if (cse.E_STW(blk[j], blk[k]).is_inf()) continue;
            Rational sharp = alpha[k] / alpha[j] * cse.E_STW(blk[j], blk[k]).value();
            if (sharp > E(j, k)) cse.inclusion_ok = false;
          }

        // exact projection of the region onto the surviving dilation indices,
        // compared with the closure cone
        std::vector<int> keep;
        for (auto const& [uT, ub] : cse.vorder) keep.push_back(uT ? s + ub : ub);
        ConeSpec proj = project(cse.gamma_w, keep);
        ConeSpec closure_cone = cone_of(cse.E_STW);
        cse.projection_discrepancy = false;
        for (auto const& c : proj.constraints) {
          // is there a point of the closure cone violating this constraint?
          ConeSpec test = closure_cone;
          // negation: coef*t_k (>=|>) t_j  i.e.  (1/coef)*t_j (<=|<) t_k
          test.constraints.push_back({c.k, c.j, Rational(1) / c.coef, !c.strict});
          if (feasible(test)) {
            cse.projection_discrepancy = true;
            break;
          }
        }
      }
      en.cases.push_back(std::move(cse));
    }

    int p = npairs - 1;
    while (p >= 0 && w[p] == static_cast<int>(en.table.pairs[p].v.size())) w[p--] = 0;
    if (p < 0) break;
    ++w[p];
  }
  return en;
}

CoverReport cover_check(ExponentMatrix const& E, MarkedPartition const& S,
                        MarkedPartition const& T, int depth) {
  auto en = enumerate_cases(E, S, T);
  auto dmS = derived_matrix(E, S);
  auto dmT = derived_matrix(E, T);
  auto latS = enumerate_lattice(cone_of(dmS.ES), depth);
  auto latT = enumerate_lattice(cone_of(dmT.ES), depth);

  CoverReport rep;
  rep.per_case.assign(en.cases.size(), 0);
  rep.exact_partition = true;
  int s = S.order(), q = T.order();
  std::vector<long long> point(s + q);
  for (auto const& I : latS)
    for (auto const& J : latT) {
      ++rep.total_pairs;
      std::copy(I.begin(), I.end(), point.begin());
      std::copy(J.begin(), J.end(), point.begin() + s);
      int hits = 0, which = -1;
      for (size_t c = 0; c < en.cases.size(); ++c)
        if (member(en.cases[c].gamma_w, point)) {
          ++hits;
          which = static_cast<int>(c);
        }
      if (hits != 1) rep.exact_partition = false;
      if (which >= 0) ++rep.per_case[which];
    }
  return rep;
}

ScaleImage scale_map(std::vector<long long> const& I, std::vector<long long> const& J,
                     ExponentMatrix const& E, MarkedPartition const& S, MarkedPartition const& T,
                     CompositionCase const& cse) {
  auto stS = sigma_tau(E, S);
  auto stT = sigma_tau(E, T);
  int n = E.n();
  ScaleImage img;
  img.coordinate_scale.resize(n);
  for (int j = 0; j < n; ++j) {
    int r = S.block_of(j), a = T.block_of(j);
    Rational from_i = Rational(I[r]) * stS.tau[j][r];
    Rational from_j = Rational(J[a]) * stT.tau[j][a];
    img.coordinate_scale[j] = std::max(from_i, from_j);
  }
  for (auto const& [uT, ub] : cse.vorder) img.tuple.push_back(uT ? J[ub] : I[ub]);
  ConeSpec cc = cone_of(cse.E_STW);
  if (!member(cc, img.tuple))
    throw std::logic_error("scale_map: tuple fell outside the closure cone");
  return img;
}

ScaleAudit scale_audit(ExponentMatrix const& E, MarkedPartition const& S,
                       MarkedPartition const& T, CompositionCase const& cse, int depth) {
  ScaleAudit audit;
  int s = S.order(), q = T.order();
  // lattice points of the region restricted to the box
  ConeSpec region = cse.gamma_w;
  auto pts = enumerate_lattice(region, depth);
  std::vector<std::vector<long long>> images;
  for (auto const& pt : pts) {
    std::vector<long long> I(pt.begin(), pt.begin() + s);
    std::vector<long long> J(pt.begin() + s, pt.end());
    images.push_back(scale_map(I, J, E, S, T, cse).tuple);
  }
  std::sort(images.begin(), images.end());
  images.erase(std::unique(images.begin(), images.end()), images.end());
  audit.images = static_cast<long long>(images.size());

  // lattice of the surviving-index region: weak within S* and within T*,
  // strict on the upper cross bounds (matching the half-open intervals)
  ConeSpec target;
  target.n = static_cast<int>(cse.vorder.size());
  for (int u = 0; u < target.n; ++u)
    for (int v = 0; v < target.n; ++v) {
      if (u == v || cse.B_W(u, v).is_inf()) continue;
      bool cross_upper = !cse.vorder[u].first && cse.vorder[v].first;
      target.constraints.push_back({u, v, cse.B_W(u, v).value(), cross_upper});
    }
  auto conepts = enumerate_lattice(target, depth);
  audit.cone_points = static_cast<long long>(conepts.size());
  audit.image_inside = std::includes(conepts.begin(), conepts.end(), images.begin(), images.end());
  audit.onto_box = std::includes(images.begin(), images.end(), conepts.begin(), conepts.end());
  (void)q;
  return audit;
}

}  // namespace multinorm
