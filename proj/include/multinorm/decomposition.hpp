#ifndef MULTINORM_DECOMPOSITION_HPP
#define MULTINORM_DECOMPOSITION_HPP

#include <vector>

#include "multinorm/matrix.hpp"

namespace multinorm {

// Consecutive blocks of coordinates with per-coordinate dilation exponents.
struct BlockDecomposition {
  struct Block {
    int offset = 0;
    int size = 0;
    std::vector<Rational> d;  // one exponent per coordinate
    Rational Q;               // sum of the d's
  };
  std::vector<Block> blocks;
  int total_dim = 0;

  int n() const { return static_cast<int>(blocks.size()); }

  static BlockDecomposition make(std::vector<std::vector<Rational>> const& block_exponents);
  static BlockDecomposition isotropic(std::vector<int> const& sizes);

  bool isotropic_block(int j) const;
  std::vector<Rational> coordinate_exponents() const;  // d_1..d_N in order
};

enum class Side { Space, Frequency };

struct NormSystem {
  ExponentMatrix E;
  BlockDecomposition dec;
  Side side = Side::Space;
};

// n_j(x_j): Euclidean norm on isotropic blocks, else sum_l |x_l|^{1/d_l}.
std::vector<double> block_norms(BlockDecomposition const& dec, std::vector<double> const& x);
double block_norm(BlockDecomposition const& dec, int j, double const* x);

// N_j (Space side) or dual N^_j (Frequency side) at x.
std::vector<double> norms(NormSystem const& sys, std::vector<double> const& x);

// Exact block norms (requires every d_l = 1 so n_j = sum |x_l|).
std::vector<Rational> block_norms_exact(BlockDecomposition const& dec,
                                        std::vector<Rational> const& x);

bool inside_unit_ball(BlockDecomposition const& dec, std::vector<double> const& x);

}  // namespace multinorm

#endif
