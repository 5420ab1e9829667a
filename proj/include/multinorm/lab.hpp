#ifndef MULTINORM_LAB_HPP
#define MULTINORM_LAB_HPP

#include <string>
#include <vector>

#include "multinorm/grid.hpp"
#include "multinorm/partitions.hpp"

namespace multinorm {

// N-dimensional multi-index over the coordinates.
using MultiIndex = std::vector<int>;

std::vector<MultiIndex> multi_indices_up_to(int N, int max_order);

// Per-shell suprema of a normalized quantity; shell k covers
// 2^{-k-1} <= |x| < 2^{-k} (or 2^k <= |xi| < 2^{k+1} on the frequency side).
struct ShellRow {
  int shell = 0;
  double sup = 0.0;
  long long samples = 0;
};

struct GammaShellReport {
  MultiIndex gamma;
  std::vector<ShellRow> rows;
  double max_sup = 0.0;
  double median_sup = 0.0;
  bool pass = false;
};

struct ShellReport {
  std::vector<GammaShellReport> per_gamma;
  double threshold = 0.0;
  bool pass = false;
  bool aliasing_warning = false;
};

// sup over shells of |d^gamma K| * prod_j N_j^{Q_j + [[gamma_j]]}.
ShellReport verify_kernel_bounds(GridField const& field, ExponentMatrix const& E,
                                 BlockDecomposition const& dec,
                                 std::vector<MultiIndex> const& gammas, int max_shell,
                                 double pass_threshold = 10.0);

// sup over dyadic frequency shells of |D^gamma m| * prod_j (1+N^_j)^{[[gamma_j]]},
// m the grid Fourier transform of the field.
ShellReport multiplier_check(GridField const& field, ExponentMatrix const& E,
                             BlockDecomposition const& dec, std::vector<MultiIndex> const& gammas,
                             double pass_threshold = 20.0);

// Exact counts N(lambda) = #{I in cone lattice : lambda < 2^{-sum Q_j i_j} <= 2 lambda}
// at lambda = 2^t.
struct WeakTypeProfile {
  std::vector<int> t;
  std::vector<long long> count;
  std::vector<double> normalized;  // count / t
};
WeakTypeProfile weak_type_count(ExponentMatrix const& E, std::vector<Rational> const& Q, int tmin,
                                int tmax);

// Quadrature-based measure checks for isotropic block decompositions.
struct MeasureReport {
  // vol{ N_a <= A } / A^Q over the requested dilations
  std::vector<double> ball_ratio;
  // integral of prod N_j^{-Q_j} over B(2^{k+1}) \ B(2^k)
  std::vector<double> tail_increment;
  // integral over B(2^{-m}) \ B(2^{-m-1})
  std::vector<double> shell_increment;
  // same with an extra factor N_kappa^alpha
  std::vector<double> damped_increment;
};

MeasureReport measure_checks(ExponentMatrix const& E, BlockDecomposition const& dec,
                             std::vector<Rational> const& a, std::vector<double> const& ball_A,
                             int tail_kmax, int local_mmax, int damp_block, double damp_alpha,
                             int quad_points = 256);

// Frequency-side partition of unity built from smoothstep cutoffs.
class PartitionOfUnity {
public:
  PartitionOfUnity(ExponentMatrix const& E, BlockDecomposition const& dec);

  std::vector<MarkedPartition> const& active() const { return active_; }
  double dominance_constant() const { return A_; }

  // values (psi_0, psi_S...) at xi; they sum to 1 by construction
  std::vector<double> eval(std::vector<double> const& xi) const;

  struct Check {
    double max_sum_deviation = 0.0;
    double min_value = 0.0, max_value = 0.0;
    long long support_violations = 0;
    bool psi0_inside_ok = true;
    long long samples = 0;
  };
  Check run_checks(double R, int samples, uint64_t seed) const;

private:
  ExponentMatrix E_;
  BlockDecomposition dec_;
  std::vector<MarkedPartition> active_;
  double A_ = 1.0;

  double raw_cutoff(MarkedPartition const& S, std::vector<double> const& nb,
                    double euclid) const;
};

// Convolution experiment for two one-parameter homogeneities.
struct CzExperimentReport {
  ShellReport envelope_bounds;   // against envelope_matrix({a,b})
  ShellReport deflated_bounds;   // against the deflated matrix
  double deflated_growth = 0.0;  // shell-sup ratio between the outer and inner shells
  bool index_split_exact = false;
  GridField convolution;
};

CzExperimentReport cz_experiments(std::vector<Rational> const& a, std::vector<Rational> const& b,
                                  ExponentMatrix const& deflated, int depth, int grid_points,
                                  double box_radius, int shell_lo, int shell_hi);

// The ratio interval split of index pairs for two homogeneities: every pair
// (j,k) in [-depth,-1]^2 must land in exactly one interval.
bool gamma_split_exact(std::vector<Rational> const& a, std::vector<Rational> const& b, int depth);

}  // namespace multinorm

#endif
