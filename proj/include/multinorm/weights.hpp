#ifndef MULTINORM_WEIGHTS_HPP
#define MULTINORM_WEIGHTS_HPP

#include <vector>

#include "multinorm/matrix.hpp"

namespace multinorm {

struct SumProfile {
  std::vector<double> partial;   // partial sums by box depth (index 0 = depth 1)
  std::vector<double> increment; // partial[d] - partial[d-1]
  double last_increment = 0.0;
};

// Sum of 2^{-eps * L(I)} over the cyclic cone a_j i_j <= i_{j+1} < 0 (indices
// mod n), where L(I) is the sum of the slacks; requires prod a_j != 1.
SumProfile cyclic_weight_sum(std::vector<Rational> const& a, Rational const& eps, int depth);

// One-dimensional series sum_{|i|<=depth} min((2^i R)^eps, (2^i R)^-eps).
SumProfile scaled_min_sum(double R, double eps, int depth);

// Ratio of the lattice sum
//   sum_{I in cone(E), i >= -depth} prod_j 2^{-i_j alpha_j} (1 + sum_k 2^{-i_k} A_k)^{-M}
// to the closed-form envelope prod_j N_j(A)^{-alpha_j} prod_j (1+A_j)^{-M_j},
// where N_j(A) = sum_k A_k^{e(j,k)}.
struct EnvelopeRatio {
  double lattice_sum = 0.0;
  double envelope = 0.0;
  double ratio = 0.0;
};
EnvelopeRatio envelope_ratio(ExponentMatrix const& E, std::vector<double> const& alpha,
                             std::vector<double> const& Mj, double M,
                             std::vector<double> const& A, int depth);

}  // namespace multinorm

#endif
