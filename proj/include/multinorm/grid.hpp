#ifndef MULTINORM_GRID_HPP
#define MULTINORM_GRID_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "multinorm/decomposition.hpp"

namespace multinorm {

// Sampled real field on a uniform grid over a centered box; points sit at
// x_i = -R + i*h with even axis sizes, so sums of grid points are grid points.
class GridField {
public:
  GridField() = default;
  GridField(std::vector<int> dims, std::vector<double> radius);

  int ndim() const { return static_cast<int>(dims_.size()); }
  std::vector<int> const& dims() const { return dims_; }
  std::vector<double> const& radius() const { return radius_; }
  double spacing(int axis) const { return 2.0 * radius_[axis] / dims_[axis]; }
  double coord(int axis, long long idx) const { return -radius_[axis] + idx * spacing(axis); }
  size_t size() const { return values_.size(); }
  double cell_volume() const;

  double& at(std::vector<long long> const& idx) { return values_[flat(idx)]; }
  double at(std::vector<long long> const& idx) const { return values_[flat(idx)]; }
  std::vector<double>& values() { return values_; }
  std::vector<double> const& values() const { return values_; }

  size_t flat(std::vector<long long> const& idx) const;
  void unflat(size_t f, std::vector<long long>& idx) const;
  void point(size_t f, std::vector<double>& x) const;

  double l1_norm() const;
  // Per-axis extent of the nonzero cells: [min coord - h/2, max coord + h/2].
  std::vector<std::pair<double, double>> support_box(double threshold = 0.0) const;

private:
  std::vector<int> dims_;
  std::vector<double> radius_;
  std::vector<double> values_;
};

// 1-D profile on [-1,1]: PLAIN is a plateau, CANCEL its derivative (zero mean).
enum class Profile { Plain, Cancel };
double profile_value(Profile p, double t);

struct BumpSpec {
  // one profile per coordinate
  std::vector<Profile> profiles;
  static BumpSpec plain(int N);
  static BumpSpec strong_cancellation(int N);
  // Cancellation on the first coordinate of each flagged block.
  static BumpSpec per_block(BlockDecomposition const& dec, std::vector<bool> const& cancel);
};
double bump_value(BumpSpec const& spec, std::vector<double> const& x);

struct SynthesisPlan {
  ExponentMatrix E;
  BlockDecomposition dec;
  int depth = 8;
  BumpSpec bump;
  std::vector<int> grid_dims;
  std::vector<double> grid_radius;
  uint64_t seed = 0;
};

// K = sum over cone lattice points with i_j >= -depth of the L1-normalized
// dilate of the bump.
GridField synthesize(SynthesisPlan const& plan);

// Dyadic one-homogeneity sum: scales j = -1..-depth with dilation j*a per block.
GridField synthesize_one_parameter(std::vector<Rational> const& a, BlockDecomposition const& dec,
                                   int depth, BumpSpec const& bump, std::vector<int> const& dims,
                                   std::vector<double> const& radius);

// Polynomial group law x*y = x + y + M(x,y); M vanishes when x or y is zero.
struct GroupLaw {
  int N = 0;
  std::vector<Rational> d;  // homogeneity exponents
  // M_l as a sum of monomial pairs c * x_u * y_v (sufficient for step-2 laws).
  struct BilinearTerm {
    int l, u, v;
    double c;
  };
  std::vector<BilinearTerm> terms;

  bool abelian() const { return terms.empty(); }
  std::vector<double> product(std::vector<double> const& x, std::vector<double> const& y) const;
  std::vector<double> inverse(std::vector<double> const& y) const;

  static GroupLaw abelian_law(int N, std::vector<Rational> d);
  static GroupLaw heisenberg();  // N=3, d=(1,1,2), M_3 = (x1 y2 - x2 y1)/2
};

// Residuals of the group axioms on random samples.
struct GroupLawCheck {
  double associativity = 0.0;
  double inverse = 0.0;
  double homogeneity = 0.0;
};
GroupLawCheck check_group_law(GroupLaw const& law, int samples, uint64_t seed);

// Convolution with Haar measure = Lebesgue; FFT path for the abelian law,
// direct scatter summation otherwise.
GridField convolve(GridField const& f, GridField const& g, GroupLaw const& law);

// DFT of the field as midpoint quadrature of the Fourier integral; frequency
// k runs over [-dims/2, dims/2) per axis, unshifted layout.
std::vector<std::complex<double>> dft(GridField const& f);
double dft_frequency(GridField const& f, int axis, long long k);

}  // namespace multinorm

#endif
