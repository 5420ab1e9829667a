#ifndef MULTINORM_PARTITIONS_HPP
#define MULTINORM_PARTITIONS_HPP

#include <optional>
#include <vector>

#include "multinorm/decomposition.hpp"
#include "multinorm/matrix.hpp"

namespace multinorm {

struct MarkedPartition {
  std::vector<std::vector<int>> blocks;  // sorted members, blocks ordered by first member
  std::vector<int> marks;                // one mark per block, mark in its block

  int order() const { return static_cast<int>(blocks.size()); }
  bool is_principal() const;
  int block_of(int j) const;

  bool operator==(MarkedPartition const&) const = default;
};

MarkedPartition principal_partition(int n);
// All marked partitions of {1..n}, principal first, deterministic order.
std::vector<MarkedPartition> enumerate_partitions(int n);

struct ClassifyResult {
  enum Status { Ok, Tie, WrongSide } status = Ok;
  MarkedPartition S;            // valid when status == Ok
  std::pair<int, int> tied{-1, -1};  // 0-based blocks of the tied pair, when Tie
};

// The unique strictly-dominant marked partition of x (Space side needs x in
// the open unit ball, Frequency side its complement).
ClassifyResult classify(NormSystem const& sys, std::vector<double> const& x,
                        double rel_tol = 1e-12);
// Exact variant for rational inputs on unit-exponent decompositions.
ClassifyResult classify_exact(NormSystem const& sys, std::vector<Rational> const& x);

// All S whose overlap region with parameter A contains x.
std::vector<MarkedPartition> classify_all(NormSystem const& sys, std::vector<double> const& x,
                                          double A);

// Reduced inequality test for membership in the A-dominance region of S.
bool member_es(NormSystem const& sys, MarkedPartition const& S, double A,
               std::vector<double> const& x);
// Full dominance definition (every competitor in every norm).
bool member_es_full(NormSystem const& sys, MarkedPartition const& S, double A,
                    std::vector<double> const& x);

// sigma[r][l] = min_{j in I_r} e(j,l)/e(j,k_r);  tau[l][r] = min_{j in I_r} e(l,j)/e(k_r,j).
struct SigmaTauTable {
  std::vector<std::vector<Rational>> sigma;  // indexed [r][l]
  std::vector<std::vector<Rational>> tau;    // indexed [l][r]
};
SigmaTauTable sigma_tau(ExponentMatrix const& E, MarkedPartition const& S);

// Closure of the s x s coefficient matrix tau(k_r, k_p); active when the
// cone has nonempty interior.
struct DerivedMatrix {
  bool active = false;
  bool empty_cone = false;
  PartialExponentMatrix raw;  // entries tau(k_r,k_p) before closing
  ExponentMatrix ES;          // valid when !empty_cone
};
DerivedMatrix derived_matrix(ExponentMatrix const& E, MarkedPartition const& S);

// Marked partitions that are active for E, in enumeration order.
std::vector<MarkedPartition> active_partitions(ExponentMatrix const& E);

// Homogeneous dimensions of the coarser blocks:
//   Q_{S,r} = sum_{j in I_r} Q_j e(j,k_r),   Q^_{S,r} = sum_{j in I_r} Q_j / e(k_r,j).
struct CoarseDims {
  std::vector<Rational> Q;
  std::vector<Rational> Qhat;
};
CoarseDims s_dims(ExponentMatrix const& E, MarkedPartition const& S,
                  BlockDecomposition const& dec);

struct GroupCompatReport {
  bool d_nondecreasing = false;
  bool doubly_monotone = false;
  bool lambda_monotone = false;       // expanded dilation tuple ordered on sampled lattice points
  bool derived_doubly_monotone = false;  // every active E_S (marks ascending)
  bool all_ok = false;
  std::vector<std::string> failures;
};
GroupCompatReport group_compatibility(BlockDecomposition const& dec, ExponentMatrix const& E,
                                      int sample_depth = 6);

}  // namespace multinorm

#endif
