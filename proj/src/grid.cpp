#include "multinorm/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <random>

#include "multinorm/errors.hpp"
#include "multinorm/parallel.hpp"

namespace multinorm {

GridField::GridField(std::vector<int> dims, std::vector<double> radius)
    : dims_(std::move(dims)), radius_(std::move(radius)) {
  if (dims_.size() != radius_.size()) throw DimensionMismatch("GridField: dims/radius mismatch");
  size_t total = 1;
  for (int d : dims_) {
    if (d < 4 || d % 2) throw DomainError("GridField: axis sizes must be even and >= 4");
    total *= static_cast<size_t>(d);
  }
  values_.assign(total, 0.0);
}

double GridField::cell_volume() const {
  double v = 1.0;
  for (int ax = 0; ax < ndim(); ++ax) v *= spacing(ax);
  return v;
}

size_t GridField::flat(std::vector<long long> const& idx) const {
  size_t f = 0;
  for (int ax = 0; ax < ndim(); ++ax) f = f * dims_[ax] + static_cast<size_t>(idx[ax]);
  return f;
}

void GridField::unflat(size_t f, std::vector<long long>& idx) const {
  idx.resize(dims_.size());
  for (int ax = ndim() - 1; ax >= 0; --ax) {
    idx[ax] = static_cast<long long>(f % dims_[ax]);
    f /= dims_[ax];
  }
}

void GridField::point(size_t f, std::vector<double>& x) const {
  x.resize(dims_.size());
  for (int ax = ndim() - 1; ax >= 0; --ax) {
    x[ax] = coord(ax, static_cast<long long>(f % dims_[ax]));
    f /= dims_[ax];
  }
}

double GridField::l1_norm() const {
  double s = 0.0;
  for (double v : values_) s += std::abs(v);
  return s * cell_volume();
}

std::vector<std::pair<double, double>> GridField::support_box(double threshold) const {
  std::vector<std::pair<double, double>> box(
      dims_.size(),
      {std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()});
  std::vector<long long> idx;
  for (size_t f = 0; f < values_.size(); ++f) {
    if (std::abs(values_[f]) <= threshold) continue;
    unflat(f, idx);
    for (int ax = 0; ax < ndim(); ++ax) {
      double c = coord(ax, idx[ax]);
      box[ax].first = std::min(box[ax].first, c);
      box[ax].second = std::max(box[ax].second, c);
    }
  }
  return box;
}

double profile_value(Profile p, double t) {
  if (std::abs(t) >= 1.0) return 0.0;
  double u = 1.0 - t * t;
  double u4 = u * u * u * u;
  if (p == Profile::Plain) return u4;
  return -10.0 * t * u4;  // derivative of u^5
}

BumpSpec BumpSpec::plain(int N) {
  BumpSpec s;
  s.profiles.assign(N, Profile::Plain);
  return s;
}

BumpSpec BumpSpec::strong_cancellation(int N) {
  BumpSpec s;
  s.profiles.assign(N, Profile::Cancel);
  return s;
}

BumpSpec BumpSpec::per_block(BlockDecomposition const& dec, std::vector<bool> const& cancel) {
  BumpSpec s = plain(dec.total_dim);
  for (int j = 0; j < dec.n(); ++j)
    if (cancel[j]) s.profiles[dec.blocks[j].offset] = Profile::Cancel;
  return s;
}

double bump_value(BumpSpec const& spec, std::vector<double> const& x) {
  double v = 1.0;
  for (size_t l = 0; l < x.size(); ++l) {
    v *= profile_value(spec.profiles[l], x[l]);
    if (v == 0.0) return 0.0;
  }
  return v;
}

namespace {

// Accumulate weight * phi(x_1/s_1, ..., x_N/s_N) over the cells meeting the
// support box |x_l| < s_l.
void add_dilate(GridField& F, BumpSpec const& bump, std::vector<double> const& per_axis_scale,
                double weight) {
  int N = F.ndim();
  std::vector<long long> lo(N), hi(N);
  for (int ax = 0; ax < N; ++ax) {
    double h = F.spacing(ax);
    double R = F.radius()[ax];
    lo[ax] = std::max<long long>(0, llround(std::floor((-per_axis_scale[ax] + R) / h)));
    hi[ax] = std::min<long long>(F.dims()[ax] - 1,
                                 llround(std::ceil((per_axis_scale[ax] + R) / h)));
    if (lo[ax] > hi[ax]) return;
  }
  std::vector<long long> idx = lo;
  std::vector<double> t(N);
  while (true) {
    bool ok = true;
    for (int ax = 0; ax < N; ++ax) {
      t[ax] = F.coord(ax, idx[ax]) / per_axis_scale[ax];
      if (std::abs(t[ax]) >= 1.0) { ok = false; break; }
    }
    if (ok) F.values()[F.flat(idx)] += weight * bump_value(bump, t);
    int ax = N - 1;
    while (ax >= 0 && idx[ax] == hi[ax]) idx[ax--] = lo[ax];
    if (ax < 0) break;
    ++idx[ax];
  }
}

}  // namespace

GridField synthesize(SynthesisPlan const& plan) {
  GridField F(plan.grid_dims, plan.grid_radius);
  if (plan.depth < 1) return F;
  for (int ax = 0; ax < F.ndim(); ++ax)
    if (F.spacing(ax) > std::exp2(-static_cast<double>(plan.depth) - 2.0))
      throw ResolutionError("synthesize: grid spacing coarser than 2^-depth-2");

  int n = plan.E.n();
  std::vector<long long> I(n);
  auto d = plan.dec.coordinate_exponents();
  std::function<void(int)> rec = [&](int pos) {
    if (pos == n) {
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          if (j != k && plan.E(j, k) * Rational(I[k]) > Rational(I[j])) return;
      double Qsum = 0.0;
      std::vector<double> per_axis(plan.dec.total_dim);
      for (int j = 0; j < n; ++j) {
        Qsum += static_cast<double>(I[j]) * to_double(plan.dec.blocks[j].Q);
        for (int l = 0; l < plan.dec.blocks[j].size; ++l) {
          int ax = plan.dec.blocks[j].offset + l;
          per_axis[ax] = std::exp2(static_cast<double>(I[j]) * to_double(d[ax]));
        }
      }
      add_dilate(F, plan.bump, per_axis, std::exp2(-Qsum));
      return;
    }
    for (long long v = -plan.depth; v <= -1; ++v) {
      I[pos] = v;
      rec(pos + 1);
    }
  };
  rec(0);
  return F;
}

GridField synthesize_one_parameter(std::vector<Rational> const& a, BlockDecomposition const& dec,
                                   int depth, BumpSpec const& bump, std::vector<int> const& dims,
                                   std::vector<double> const& radius) {
  GridField F(dims, radius);
  auto d = dec.coordinate_exponents();
  double Q = 0.0;
  for (int j = 0; j < dec.n(); ++j) Q += to_double(a[j]) * to_double(dec.blocks[j].Q);
  for (int s = -1; s >= -depth; --s) {
    std::vector<double> per_axis(dec.total_dim);
    for (int j = 0; j < dec.n(); ++j)
      for (int l = 0; l < dec.blocks[j].size; ++l) {
        int ax = dec.blocks[j].offset + l;
        per_axis[ax] = std::exp2(static_cast<double>(s) * to_double(a[j]) * to_double(d[ax]));
      }
    add_dilate(F, bump, per_axis, std::exp2(-static_cast<double>(s) * Q));
  }
  return F;
}

std::vector<double> GroupLaw::product(std::vector<double> const& x,
                                      std::vector<double> const& y) const {
  std::vector<double> z(N);
  for (int l = 0; l < N; ++l) z[l] = x[l] + y[l];
  for (auto const& t : terms) z[t.l] += t.c * x[t.u] * y[t.v];
  return z;
}

std::vector<double> GroupLaw::inverse(std::vector<double> const& y) const {
  std::vector<double> z(N);
  for (int l = 0; l < N; ++l) z[l] = -y[l];
  return z;
}

GroupLaw GroupLaw::abelian_law(int N, std::vector<Rational> d) {
  GroupLaw g;
  g.N = N;
  g.d = std::move(d);
  return g;
}

GroupLaw GroupLaw::heisenberg() {
  GroupLaw g;
  g.N = 3;
  g.d = {Rational(1), Rational(1), Rational(2)};
  g.terms.push_back({2, 0, 1, 0.5});
  g.terms.push_back({2, 1, 0, -0.5});
  return g;
}

GroupLawCheck check_group_law(GroupLaw const& law, int samples, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  GroupLawCheck chk;
  std::vector<double> x(law.N), y(law.N), z(law.N);
  for (int it = 0; it < samples; ++it) {
    for (int l = 0; l < law.N; ++l) {
      x[l] = U(rng);
      y[l] = U(rng);
      z[l] = U(rng);
    }
    auto left = law.product(law.product(x, y), z);
    auto right = law.product(x, law.product(y, z));
    for (int l = 0; l < law.N; ++l)
      chk.associativity = std::max(chk.associativity, std::abs(left[l] - right[l]));
    auto e = law.product(x, law.inverse(x));
    auto e2 = law.product(law.inverse(x), x);
    for (int l = 0; l < law.N; ++l)
      chk.inverse = std::max({chk.inverse, std::abs(e[l]), std::abs(e2[l])});
    double r = 0.5 + std::abs(U(rng));
    std::vector<double> xr(law.N), yr(law.N);
    for (int l = 0; l < law.N; ++l) {
      double p = std::pow(r, to_double(law.d[l]));
      xr[l] = p * x[l];
      yr[l] = p * y[l];
    }
    auto scaled = law.product(xr, yr);
    auto plain = law.product(x, y);
    for (int l = 0; l < law.N; ++l)
      chk.homogeneity = std::max(
          chk.homogeneity, std::abs(scaled[l] - std::pow(r, to_double(law.d[l])) * plain[l]));
  }
  return chk;
}

namespace {

std::mutex fftw_mutex;

struct FftPlan {
  fftw_plan plan = nullptr;
  ~FftPlan() {
    if (!plan) return;
    std::lock_guard<std::mutex> lk(fftw_mutex);
    fftw_destroy_plan(plan);
  }
};

std::vector<std::complex<double>> raw_fft(std::vector<std::complex<double>> data,
                                          std::vector<int> dims, int sign) {
  FftPlan p;
  {
    std::lock_guard<std::mutex> lk(fftw_mutex);
    p.plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(),
                           reinterpret_cast<fftw_complex*>(data.data()),
                           reinterpret_cast<fftw_complex*>(data.data()), sign, FFTW_ESTIMATE);
  }
  fftw_execute(p.plan);
  return data;
}

std::vector<std::complex<double>> to_complex(GridField const& f) {
  std::vector<std::complex<double>> data(f.size());
  for (size_t i = 0; i < data.size(); ++i) data[i] = f.values()[i];
  return data;
}

}  // namespace

double dft_frequency(GridField const& f, int axis, long long k) {
  return static_cast<double>(k) / (f.dims()[axis] * f.spacing(axis));
}

std::vector<std::complex<double>> dft(GridField const& f) {
  auto data = raw_fft(to_complex(f), f.dims(), FFTW_FORWARD);
  // grid points sit at x_i = (i - P/2) h, so each axis contributes the
  // alternating phase (-1)^k; quadrature weight is the cell volume.
  int N = f.ndim();
  double vol = f.cell_volume();
  GridField const* fp = &f;
  parallel_for(0, static_cast<long long>(data.size()), [&](long long i) {
    size_t rem = static_cast<size_t>(i);
    int parity = 0;
    for (int ax = N - 1; ax >= 0; --ax) {
      int P = fp->dims()[ax];
      parity ^= static_cast<int>(rem % P) & 1;
      rem /= P;
    }
    data[i] *= parity ? -vol : vol;
  });
  return data;
}

GridField convolve(GridField const& f, GridField const& g, GroupLaw const& law) {
  if (f.dims() != g.dims() || f.radius() != g.radius())
    throw DimensionMismatch("convolve: fields must share a grid");
  if (law.N != f.ndim()) throw DimensionMismatch("convolve: law dimension mismatch");

  auto bf = f.support_box();
  auto bg = g.support_box();
  for (int ax = 0; ax < f.ndim(); ++ax) {
    if (bf[ax].first > bf[ax].second || bg[ax].first > bg[ax].second) continue;  // empty field
    double mf = std::max(std::abs(bf[ax].first), std::abs(bf[ax].second));
    double mg = std::max(std::abs(bg[ax].first), std::abs(bg[ax].second));
    double reach = mf + mg;
    for (auto const& t : law.terms) {
      if (t.l != ax) continue;
      double mu = std::max(std::abs(bf[t.u].first), std::abs(bf[t.u].second));
      double mv = std::max(std::abs(bg[t.v].first), std::abs(bg[t.v].second));
      reach += std::abs(t.c) * mu * mv;
    }
    if (reach >= f.radius()[ax] - f.spacing(ax))
      throw SupportOverflow("convolve: supports too large for the box");
  }

  if (law.abelian()) {
    auto F = raw_fft(to_complex(f), f.dims(), FFTW_FORWARD);
    auto G = raw_fft(to_complex(g), g.dims(), FFTW_FORWARD);
    for (size_t i = 0; i < F.size(); ++i) F[i] *= G[i];
    auto data = raw_fft(std::move(F), f.dims(), FFTW_BACKWARD);
    double scale = f.cell_volume() / static_cast<double>(f.size());
    // index sums satisfy x_i + x_j = x_{i+j-P/2 (mod P)} on the vertex grid;
    // rotate each axis by P/2 to place the result on the same grid
    GridField out(f.dims(), f.radius());
    std::vector<long long> idx(f.ndim()), src(f.ndim());
    for (size_t i = 0; i < out.size(); ++i) {
      out.unflat(i, idx);
      for (int ax = 0; ax < f.ndim(); ++ax)
        src[ax] = (idx[ax] + f.dims()[ax] / 2) % f.dims()[ax];
      out.values()[i] = data[out.flat(src)].real() * scale;
    }
    return out;
  }

  GridField out(f.dims(), f.radius());
  double w = f.cell_volume() * g.cell_volume() / out.cell_volume();
  std::vector<double> u(f.ndim()), v(f.ndim());
  std::vector<size_t> nz_f, nz_g;
  for (size_t i = 0; i < f.size(); ++i)
    if (f.values()[i] != 0.0) nz_f.push_back(i);
  for (size_t i = 0; i < g.size(); ++i)
    if (g.values()[i] != 0.0) nz_g.push_back(i);
  std::vector<long long> idx(f.ndim());
  for (size_t fi : nz_f) {
    f.point(fi, u);
    double fv = f.values()[fi];
    for (size_t gi : nz_g) {
      g.point(gi, v);
      auto z = law.product(u, v);
      bool inside = true;
      for (int ax = 0; ax < f.ndim(); ++ax) {
        long long cell = llround((z[ax] + f.radius()[ax]) / f.spacing(ax));
        if (cell < 0 || cell >= f.dims()[ax]) { inside = false; break; }
        idx[ax] = cell;
      }
      if (!inside) throw SupportOverflow("convolve: product point left the box");
      out.values()[out.flat(idx)] += fv * g.values()[gi] * w;
    }
  }
  return out;
}

}  // namespace multinorm
