#include "multinorm/lab.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "multinorm/cone.hpp"
#include "multinorm/parallel.hpp"

namespace multinorm {

std::vector<MultiIndex> multi_indices_up_to(int N, int max_order) {
  std::vector<MultiIndex> out;
  MultiIndex g(N, 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == N) {
      out.push_back(g);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      g[pos] = v;
      self(self, pos + 1, left - v);
    }
    g[pos] = 0;
  };
  rec(rec, 0, max_order);
  std::sort(out.begin(), out.end(), [](MultiIndex const& x, MultiIndex const& y) {
    int ox = 0, oy = 0;
    for (int v : x) ox += v;
    for (int v : y) oy += v;
    if (ox != oy) return ox < oy;
    return x < y;
  });
  return out;
}

namespace {

int total_order(MultiIndex const& g) {
  int s = 0;
  for (int v : g) s += v;
  return s;
}

std::vector<double> gamma_weights(BlockDecomposition const& dec, MultiIndex const& g) {
  std::vector<double> w(dec.n(), 0.0);
  for (int j = 0; j < dec.n(); ++j)
    for (int l = 0; l < dec.blocks[j].size; ++l)
      w[j] += g[dec.blocks[j].offset + l] * to_double(dec.blocks[j].d[l]);
  return w;
}

// central finite difference for |gamma| <= 2
double finite_difference(GridField const& F, std::vector<long long> const& idx,
                         MultiIndex const& g) {
  int N = F.ndim();
  int order = total_order(g);
  if (order == 0) return F.values()[F.flat(idx)];
  std::vector<int> axes;
  for (int ax = 0; ax < N; ++ax)
    for (int r = 0; r < g[ax]; ++r) axes.push_back(ax);
  std::vector<long long> p = idx;
  if (order == 1) {
    int ax = axes[0];
    p[ax] = idx[ax] + 1;
    double fp = F.values()[F.flat(p)];
    p[ax] = idx[ax] - 1;
    double fm = F.values()[F.flat(p)];
    return (fp - fm) / (2.0 * F.spacing(ax));
  }
  if (order == 2 && axes[0] == axes[1]) {
    int ax = axes[0];
    double f0 = F.values()[F.flat(idx)];
    p[ax] = idx[ax] + 1;
    double fp = F.values()[F.flat(p)];
    p[ax] = idx[ax] - 1;
    double fm = F.values()[F.flat(p)];
    double h = F.spacing(ax);
    return (fp - 2.0 * f0 + fm) / (h * h);
  }
  if (order == 2) {
    int a = axes[0], b = axes[1];
    auto val = [&](int da, int db) {
      p = idx;
      p[a] += da;
      p[b] += db;
      return F.values()[F.flat(p)];
    };
    return (val(1, 1) - val(1, -1) - val(-1, 1) + val(-1, -1)) /
           (4.0 * F.spacing(a) * F.spacing(b));
  }
  throw ResolutionError("finite_difference: only total order <= 2 is supported");
}

void finish_report(ShellReport& rep) {
  rep.pass = true;
  for (auto& gr : rep.per_gamma) {
    std::vector<double> sups;
    for (auto const& row : gr.rows)
      if (row.samples > 0) sups.push_back(row.sup);
    if (sups.empty()) {
      gr.pass = false;
      rep.pass = false;
      continue;
    }
    gr.max_sup = *std::max_element(sups.begin(), sups.end());
    std::sort(sups.begin(), sups.end());
    gr.median_sup = sups[sups.size() / 2];
    gr.pass = gr.max_sup <= rep.threshold * gr.median_sup;
    if (!gr.pass) rep.pass = false;
  }
}

}  // namespace

ShellReport verify_kernel_bounds(GridField const& field, ExponentMatrix const& E,
                                 BlockDecomposition const& dec,
                                 std::vector<MultiIndex> const& gammas, int max_shell,
                                 double pass_threshold) {
  int N = field.ndim();
  if (dec.total_dim != N) throw DimensionMismatch("verify_kernel_bounds: dimension mismatch");
  double hmax = 0.0;
  for (int ax = 0; ax < N; ++ax) hmax = std::max(hmax, field.spacing(ax));

  ShellReport rep;
  rep.threshold = pass_threshold;
  int n = E.n();

  for (auto const& g : gammas) {
    // the finest shell must span a few stencil widths
    double cells = total_order(g) > 0 ? 6.0 : 2.0;
    int resolvable = static_cast<int>(std::floor(-std::log2(cells * hmax)));
    int kmax = std::min(max_shell, resolvable);
    if (kmax < 0)
      throw ResolutionError("verify_kernel_bounds: grid cannot resolve any shell");

    GammaShellReport gr;
    gr.gamma = g;
    gr.rows.resize(kmax + 1);
    for (int k = 0; k <= kmax; ++k) gr.rows[k].shell = k;
    auto w = gamma_weights(dec, g);
    std::vector<double> expo(n);
    for (int j = 0; j < n; ++j) expo[j] = to_double(dec.blocks[j].Q) + w[j];

    struct Local {
      std::vector<double> sup;
      std::vector<long long> cnt;
    };
    Local init;
    init.sup.assign(kmax + 1, 0.0);
    init.cnt.assign(kmax + 1, 0);

    GridField const* F = &field;
    auto folded = parallel_reduce(
        0, static_cast<long long>(field.size()), init,
        [&](Local& st, long long i) {
          thread_local std::vector<long long> idx;
          thread_local std::vector<double> x;
          F->unflat(static_cast<size_t>(i), idx);
          double r2 = 0.0;
          x.resize(N);
          for (int ax = 0; ax < N; ++ax) {
            x[ax] = F->coord(ax, idx[ax]);
            r2 += x[ax] * x[ax];
          }
          double r = std::sqrt(r2);
          if (r <= 0.0 || r >= 1.0) return;
          int shell = static_cast<int>(std::floor(-std::log2(r)));
          if (shell < 0 || shell >= static_cast<int>(st.cnt.size())) return;
          for (int ax = 0; ax < N; ++ax)
            if (idx[ax] < 2 || idx[ax] > F->dims()[ax] - 3) return;
          double der = finite_difference(*F, idx, gr.gamma);
          ++st.cnt[shell];
          if (der == 0.0) return;
          double logn = 0.0;
          for (int j = 0; j < n; ++j) {
            double Nj = 0.0;
            for (int k = 0; k < n; ++k)
              Nj += std::pow(block_norm(dec, k, x.data()), to_double(E(j, k)));
            logn += expo[j] * std::log(Nj);
          }
          double val = std::abs(der) * std::exp(logn);
          st.sup[shell] = std::max(st.sup[shell], val);
        },
        [&](Local& acc, Local const& st) {
          for (size_t k = 0; k < acc.sup.size(); ++k) {
            acc.sup[k] = std::max(acc.sup[k], st.sup[k]);
            acc.cnt[k] += st.cnt[k];
          }
        });
    for (int k = 0; k <= kmax; ++k) {
      gr.rows[k].sup = folded.sup[k];
      gr.rows[k].samples = folded.cnt[k];
    }
    rep.per_gamma.push_back(std::move(gr));
  }
  finish_report(rep);
  return rep;
}

ShellReport multiplier_check(GridField const& field, ExponentMatrix const& E,
                             BlockDecomposition const& dec, std::vector<MultiIndex> const& gammas,
                             double pass_threshold) {
  int N = field.ndim();
  auto m = dft(field);
  std::vector<int> dims = field.dims();
  int n = E.n();

  ShellReport rep;
  rep.threshold = pass_threshold;

  int minP = *std::min_element(dims.begin(), dims.end());
  int tmax = static_cast<int>(std::floor(std::log2(minP * 3.0 / 8.0))) - 1;
  if (tmax < 1) throw ResolutionError("multiplier_check: grid too small");

  // aliasing diagnostic: spectrum magnitude near the band edge
  double max_mag = 0.0, edge_mag = 0.0;
  for (size_t i = 0; i < m.size(); ++i) {
    double mag = std::abs(m[i]);
    max_mag = std::max(max_mag, mag);
    size_t rem = i;
    bool edge = false;
    for (int ax = N - 1; ax >= 0; --ax) {
      long long k = static_cast<long long>(rem % dims[ax]);
      rem /= dims[ax];
      long long kk = (k < dims[ax] / 2) ? k : k - dims[ax];
      if (std::abs(kk) > dims[ax] * 3 / 8) edge = true;
    }
    if (edge) edge_mag = std::max(edge_mag, mag);
  }
  rep.aliasing_warning = edge_mag > 0.05 * max_mag;

  long long lim = minP * 3 / 8;
  long long width = 2 * lim + 1;
  long long boxsize = 1;
  for (int ax = 0; ax < N; ++ax) boxsize *= width;

  auto value_at = [&](std::vector<long long> const& kk) -> std::complex<double> {
    size_t f = 0;
    for (int ax = 0; ax < N; ++ax) {
      long long k = kk[ax] >= 0 ? kk[ax] : kk[ax] + dims[ax];
      f = f * dims[ax] + static_cast<size_t>(k);
    }
    return m[f];
  };

  for (auto const& g : gammas) {
    GammaShellReport gr;
    gr.gamma = g;
    gr.rows.resize(tmax + 1);
    for (int t = 0; t <= tmax; ++t) gr.rows[t].shell = t;
    auto w = gamma_weights(dec, g);
    int order = total_order(g);
    std::vector<int> axes;
    for (int ax = 0; ax < N; ++ax)
      for (int r = 0; r < g[ax]; ++r) axes.push_back(ax);

    struct Local {
      std::vector<double> sup;
      std::vector<long long> cnt;
    };
    Local init;
    init.sup.assign(tmax + 1, 0.0);
    init.cnt.assign(tmax + 1, 0);

    auto folded = parallel_reduce(
        0, boxsize, init,
        [&](Local& st, long long flatk) {
          thread_local std::vector<long long> kk;
          thread_local std::vector<double> xi;
          kk.resize(N);
          xi.resize(N);
          long long rem = flatk;
          double r2 = 0.0;
          for (int ax = N - 1; ax >= 0; --ax) {
            kk[ax] = rem % width - lim;
            rem /= width;
            xi[ax] = dft_frequency(field, ax, kk[ax]);
            r2 += xi[ax] * xi[ax];
          }
          double r = std::sqrt(r2);
          if (r < 1.0) return;
          int t = static_cast<int>(std::floor(std::log2(r)));
          if (t < 0 || t >= static_cast<int>(st.cnt.size())) return;
          for (int ax = 0; ax < N; ++ax)
            if (std::abs(kk[ax]) + 2 > lim) return;

          std::complex<double> der;
          if (order == 0) {
            der = value_at(kk);
          } else if (order == 1) {
            double hstep = dft_frequency(field, axes[0], 1);
            std::vector<long long> q = kk;
            q[axes[0]] += 1;
            auto vp = value_at(q);
            q[axes[0]] -= 2;
            auto vm = value_at(q);
            der = (vp - vm) / (2.0 * hstep);
          } else if (axes[0] == axes[1]) {
            double hstep = dft_frequency(field, axes[0], 1);
            std::vector<long long> q = kk;
            q[axes[0]] += 1;
            auto vp = value_at(q);
            q[axes[0]] -= 2;
            auto vm = value_at(q);
            der = (vp - 2.0 * value_at(kk) + vm) / (hstep * hstep);
          } else {
            double h0 = dft_frequency(field, axes[0], 1);
            double h1 = dft_frequency(field, axes[1], 1);
            std::vector<long long> q = kk;
            auto val2 = [&](long long d0, long long d1) {
              q = kk;
              q[axes[0]] += d0;
              q[axes[1]] += d1;
              return value_at(q);
            };
            der = (val2(1, 1) - val2(1, -1) - val2(-1, 1) + val2(-1, -1)) / (4.0 * h0 * h1);
          }

          double logn = 0.0;
          for (int j = 0; j < n; ++j) {
            if (w[j] == 0.0) continue;
            double Nj = 0.0;
            for (int k = 0; k < n; ++k)
              Nj += std::pow(block_norm(dec, k, xi.data()), 1.0 / to_double(E(k, j)));
            logn += w[j] * std::log1p(Nj);
          }
          double val = std::abs(der) * std::exp(logn);
          st.sup[t] = std::max(st.sup[t], val);
          ++st.cnt[t];
        },
        [&](Local& acc, Local const& st) {
          for (size_t k = 0; k < acc.sup.size(); ++k) {
            acc.sup[k] = std::max(acc.sup[k], st.sup[k]);
            acc.cnt[k] += st.cnt[k];
          }
        });
    for (int t = 0; t <= tmax; ++t) {
      gr.rows[t].sup = folded.sup[t];
      gr.rows[t].samples = folded.cnt[t];
    }
    rep.per_gamma.push_back(std::move(gr));
  }
  finish_report(rep);
  return rep;
}

WeakTypeProfile weak_type_count(ExponentMatrix const& E, std::vector<Rational> const& Q, int tmin,
                                int tmax) {
  int n = E.n();
  if (static_cast<int>(Q.size()) != n) throw DimensionMismatch("weak_type_count: Q mismatch");
  WeakTypeProfile prof;
  Rational qmin = Q[0];
  for (auto const& q : Q) qmin = std::min(qmin, q);
  for (int t = tmin; t <= tmax; ++t) {
    long long bound = static_cast<long long>(std::ceil((t + 1) / to_double(qmin))) + 1;
    std::vector<long long> I(n);
    long long count = 0;
    auto rec = [&](auto&& self, int pos) -> void {
      if (pos == n) {
        Rational s(0);
        for (int j = 0; j < n; ++j) s += Q[j] * Rational(I[j]);
        s = -s;
        if (!(Rational(t) < s && s <= Rational(t + 1))) return;
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            if (j != k && E(j, k) * Rational(I[k]) > Rational(I[j])) return;
        ++count;
        return;
      }
      for (long long v = -bound; v <= -1; ++v) {
        I[pos] = v;
        self(self, pos + 1);
      }
    };
    rec(rec, 0);
    prof.t.push_back(t);
    prof.count.push_back(count);
    prof.normalized.push_back(static_cast<double>(count) / t);
  }
  return prof;
}

namespace {

double sphere_surface(int dim) {
  switch (dim) {
    case 1: return 2.0;
    case 2: return 2.0 * M_PI;
    case 3: return 4.0 * M_PI;
    case 4: return 2.0 * M_PI * M_PI;
    default: throw DomainError("sphere_surface: block dimension must be <= 4");
  }
}

// midpoint quadrature of F(rho) * prod rho_j^{dim_j-1} * prod surf_j over a
// box product in the radial variables
template <class F>
double radial_box_integral(BlockDecomposition const& dec, std::vector<double> const& lo,
                           std::vector<double> const& hi, std::vector<int> const& pts, F&& f) {
  int n = dec.n();
  double pref = 1.0;
  for (int j = 0; j < n; ++j) pref *= sphere_surface(dec.blocks[j].size);
  std::vector<int> idx(n, 0);
  std::vector<double> rho(n), h(n);
  for (int j = 0; j < n; ++j) h[j] = (hi[j] - lo[j]) / pts[j];
  double sum = 0.0;
  while (true) {
    double w = pref;
    for (int j = 0; j < n; ++j) {
      rho[j] = lo[j] + (idx[j] + 0.5) * h[j];
      w *= std::pow(rho[j], dec.blocks[j].size - 1) * h[j];
    }
    sum += w * f(rho);
    int j = n - 1;
    while (j >= 0 && idx[j] == pts[j] - 1) idx[j--] = 0;
    if (j < 0) break;
    ++idx[j];
  }
  return sum;
}

template <class F>
double radial_annulus_integral(BlockDecomposition const& dec, double A, double B, int pts,
                               F&& f) {
  int n = dec.n();
  double total = 0.0;
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::vector<double> lo(n), hi(n);
    for (int j = 0; j < n; ++j) {
      if (mask & (1 << j)) {
        lo[j] = A;
        hi[j] = B;
      } else {
        lo[j] = 0.0;
        hi[j] = A;
      }
    }
    total += radial_box_integral(dec, lo, hi, std::vector<int>(n, pts), f);
  }
  return total;
}

}  // namespace

MeasureReport measure_checks(ExponentMatrix const& E, BlockDecomposition const& dec,
                             std::vector<Rational> const& a, std::vector<double> const& ball_A,
                             int tail_kmax, int local_mmax, int damp_block, double damp_alpha,
                             int quad_points) {
  int n = E.n();
  MeasureReport rep;

  auto kernel_size = [&](std::vector<double> const& rho) {
    double v = 1.0;
    for (int j = 0; j < n; ++j) {
      double Nj = 0.0;
      for (int k = 0; k < n; ++k) Nj += std::pow(rho[k], to_double(E(j, k)));
      v *= std::pow(Nj, -to_double(dec.blocks[j].Q));
    }
    return v;
  };

  // Ball volumes on one fixed absolute lattice covering the largest ball, so
  // different dilations see genuinely different discretizations.
  if (!ball_A.empty()) {
    double Qa = 0.0;
    for (int j = 0; j < n; ++j) Qa += to_double(a[j]) * to_double(dec.blocks[j].Q);
    double Amax = *std::max_element(ball_A.begin(), ball_A.end());
    std::vector<double> lo(n, 0.0), hi(n);
    std::vector<int> pts(n);
    for (int j = 0; j < n; ++j) {
      hi[j] = std::pow(Amax, to_double(a[j]));
      pts[j] = quad_points * 16;  // indicator integrand needs a fine lattice
    }
    std::vector<double> vols(ball_A.size(), 0.0);
    // single sweep accumulating every threshold
    {
      double pref = 1.0;
      for (int j = 0; j < n; ++j) pref *= sphere_surface(dec.blocks[j].size);
      std::vector<int> idx(n, 0);
      std::vector<double> rho(n), h(n);
      for (int j = 0; j < n; ++j) h[j] = (hi[j] - lo[j]) / pts[j];
      while (true) {
        double w = pref;
        double s = 0.0;
        for (int j = 0; j < n; ++j) {
          rho[j] = lo[j] + (idx[j] + 0.5) * h[j];
          w *= std::pow(rho[j], dec.blocks[j].size - 1) * h[j];
          s += std::pow(rho[j], 1.0 / to_double(a[j]));
        }
        for (size_t i = 0; i < ball_A.size(); ++i)
          if (s <= ball_A[i]) vols[i] += w;
        int j = n - 1;
        while (j >= 0 && idx[j] == pts[j] - 1) idx[j--] = 0;
        if (j < 0) break;
        ++idx[j];
      }
    }
    for (size_t i = 0; i < ball_A.size(); ++i)
      rep.ball_ratio.push_back(vols[i] / std::pow(ball_A[i], Qa));
  }

  for (int k = 0; k <= tail_kmax; ++k)
    rep.tail_increment.push_back(
        radial_annulus_integral(dec, std::exp2(k), std::exp2(k + 1), quad_points, kernel_size));

  for (int m = 0; m <= local_mmax; ++m)
    rep.shell_increment.push_back(radial_annulus_integral(
        dec, std::exp2(-m - 1), std::exp2(-m), quad_points, kernel_size));

  for (int m = 0; m <= local_mmax; ++m)
    rep.damped_increment.push_back(radial_annulus_integral(
        dec, std::exp2(-m - 1), std::exp2(-m), quad_points, [&](std::vector<double> const& rho) {
          double Nk = 0.0;
          for (int k = 0; k < n; ++k) Nk += std::pow(rho[k], to_double(E(damp_block, k)));
          return kernel_size(rho) * std::pow(Nk, damp_alpha);
        }));

  return rep;
}

// ---------------------------------------------------------------------------
// Partition of unity
// ---------------------------------------------------------------------------

namespace {

// quintic smoothstep: 0 for t<=0, 1 for t>=1
double smoothstep(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

double cutoff_hi(double t, double a, double b) { return smoothstep((b - t) / (b - a)); }
double cutoff_lo(double t, double a, double b) { return smoothstep((t - a) / (b - a)); }

}  // namespace

PartitionOfUnity::PartitionOfUnity(ExponentMatrix const& E, BlockDecomposition const& dec)
    : E_(E), dec_(dec) {
  active_ = active_partitions(E_);
  int n = E_.n();
  double maxe = 0.0;
  for (auto const& S : active_)
    for (int r = 0; r < S.order(); ++r)
      for (int j : S.blocks[r]) maxe = std::max(maxe, to_double(E_(S.marks[r], j)));
  A_ = std::pow(4.0 * n, std::max(1.0, maxe)) * 2.0;
}

double PartitionOfUnity::raw_cutoff(MarkedPartition const& S, std::vector<double> const& nb,
                                    double euclid) const {
  int n = E_.n();
  // transition placed so a positive value forces a point outside the unit
  // block-norm ball: |xi| > sqrt(n) implies max_j n_j > 1
  double root = std::sqrt(static_cast<double>(n));
  double v = cutoff_lo(euclid, root * 1.0001, 2.0 * root);
  if (v == 0.0) return 0.0;
  for (int r = 0; r < S.order() && v > 0.0; ++r) {
    int kr = S.marks[r];
    if (nb[kr] <= 0.0) return 0.0;
    for (int j : S.blocks[r]) {
      double Nhat = 0.0;
      for (int l = 0; l < n; ++l) Nhat += std::pow(nb[l], 1.0 / to_double(E_(l, j)));
      double ratio = Nhat * std::pow(nb[kr], -1.0 / to_double(E_(kr, j)));
      v *= cutoff_hi(ratio, 2.0 * n, 4.0 * n);
      if (v == 0.0) break;
    }
  }
  return v;
}

std::vector<double> PartitionOfUnity::eval(std::vector<double> const& xi) const {
  auto nb = block_norms(dec_, xi);
  double euclid = 0.0;
  for (double v : xi) euclid += v * v;
  euclid = std::sqrt(euclid);
  double nmax = *std::max_element(nb.begin(), nb.end());
  std::vector<double> raw(active_.size() + 1, 0.0);
  raw[0] = cutoff_hi(nmax, 2.0, 4.0);
  for (size_t s = 0; s < active_.size(); ++s) raw[s + 1] = raw_cutoff(active_[s], nb, euclid);
  double denom = 0.0;
  for (double v : raw) denom += v;
  if (denom <= 0.0)
    throw std::logic_error("PartitionOfUnity: raw cutoffs vanish simultaneously");
  for (double& v : raw) v /= denom;
  return raw;
}

PartitionOfUnity::Check PartitionOfUnity::run_checks(double R, int samples, uint64_t seed) const {
  Check chk;
  chk.min_value = 1.0;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  int N = dec_.total_dim;
  NormSystem sys{E_, dec_, Side::Frequency};

  for (int it = 0; it < samples; ++it) {
    std::vector<double> xi(N);
    for (int j = 0; j < dec_.n(); ++j) {
      double mag = std::exp2(U(rng) * (std::log2(R) + 3.0) - 3.0);
      double norm2 = 0.0;
      std::vector<double> dir(dec_.blocks[j].size);
      for (auto& d : dir) {
        d = 2.0 * U(rng) - 1.0;
        norm2 += d * d;
      }
      double len = std::sqrt(norm2);
      if (len == 0.0) len = 1.0;
      for (int l = 0; l < dec_.blocks[j].size; ++l)
        xi[dec_.blocks[j].offset + l] = mag * dir[l] / len;
    }
    auto nb = block_norms(dec_, xi);
    double nmax = *std::max_element(nb.begin(), nb.end());
    if (nmax > R) continue;

    auto vals = eval(xi);
    ++chk.samples;
    double sum = 0.0;
    for (double v : vals) {
      sum += v;
      chk.min_value = std::min(chk.min_value, v);
      chk.max_value = std::max(chk.max_value, v);
    }
    chk.max_sum_deviation = std::max(chk.max_sum_deviation, std::abs(sum - 1.0));

    bool inside = true;
    for (double v : nb)
      if (v >= 1.0) inside = false;
    if (inside && std::abs(vals[0] - 1.0) > 1e-10) chk.psi0_inside_ok = false;

    for (size_t s = 0; s < active_.size(); ++s) {
      if (vals[s + 1] <= 1e-12) continue;
      if (!member_es_full(sys, active_[s], A_, xi)) ++chk.support_violations;
    }
  }
  return chk;
}

// ---------------------------------------------------------------------------
// Convolution experiments
// ---------------------------------------------------------------------------

bool gamma_split_exact(std::vector<Rational> const& a, std::vector<Rational> const& b, int depth) {
  int n = static_cast<int>(a.size());
  auto sigma = ratio_order(a, b);
  std::vector<Rational> thresh;
  for (int i = 0; i < n; ++i) thresh.push_back(b[sigma[i]] / a[sigma[i]]);
  for (long long j = -depth; j <= -1; ++j)
    for (long long k = -depth; k <= -1; ++k) {
      Rational ratio = Rational(j) / Rational(k);
      int hits = 0;
      for (int m = 0; m <= n; ++m) {
        bool lo_ok = (m == 0) || (thresh[m - 1] < ratio);
        bool hi_ok = (m == n) || (ratio <= thresh[m]);
        if (lo_ok && hi_ok) ++hits;
      }
      if (hits != 1) return false;
    }
  return true;
}

CzExperimentReport cz_experiments(std::vector<Rational> const& a, std::vector<Rational> const& b,
                                  ExponentMatrix const& deflated, int depth, int grid_points,
                                  double box_radius, int shell_lo, int shell_hi) {
  int n = static_cast<int>(a.size());
  auto dec = BlockDecomposition::isotropic(std::vector<int>(n, 1));
  std::vector<int> dims(n, grid_points);
  std::vector<double> radius(n, box_radius);
  auto bump = BumpSpec::strong_cancellation(n);

  GridField Ka = synthesize_one_parameter(a, dec, depth, bump, dims, radius);
  GridField Kb = synthesize_one_parameter(b, dec, depth, bump, dims, radius);
  auto law = GroupLaw::abelian_law(n, dec.coordinate_exponents());

  CzExperimentReport rep;
  rep.convolution = convolve(Ka, Kb, law);

  auto gammas = std::vector<MultiIndex>{MultiIndex(n, 0)};
  ExponentMatrix env = envelope_matrix({a, b});
  rep.envelope_bounds = verify_kernel_bounds(rep.convolution, env, dec, gammas, shell_hi, 10.0);
  rep.deflated_bounds = verify_kernel_bounds(rep.convolution, deflated, dec, gammas, shell_hi, 10.0);

  auto const& rows = rep.deflated_bounds.per_gamma[0].rows;
  double inner = shell_hi < static_cast<int>(rows.size()) ? rows[shell_hi].sup : 0.0;
  double outer = shell_lo < static_cast<int>(rows.size()) ? rows[shell_lo].sup : 0.0;
  rep.deflated_growth = outer > 0.0 ? inner / outer : 0.0;

  rep.index_split_exact = gamma_split_exact(a, b, depth);
  return rep;
}

}  // namespace multinorm
