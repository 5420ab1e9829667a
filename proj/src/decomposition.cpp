#include "multinorm/decomposition.hpp"

#include <cmath>

namespace multinorm {

BlockDecomposition BlockDecomposition::make(
    std::vector<std::vector<Rational>> const& block_exponents) {
  BlockDecomposition dec;
  int off = 0;
  for (auto const& d : block_exponents) {
    Block b;
    b.offset = off;
    b.size = static_cast<int>(d.size());
    b.d = d;
    b.Q = Rational(0);
    for (auto const& x : d) {
      if (x <= 0) throw InvalidEntry("BlockDecomposition: exponents must be positive");
      b.Q += x;
    }
    off += b.size;
    dec.blocks.push_back(std::move(b));
  }
  dec.total_dim = off;
  return dec;
}

BlockDecomposition BlockDecomposition::isotropic(std::vector<int> const& sizes) {
  std::vector<std::vector<Rational>> be;
  for (int s : sizes) be.emplace_back(static_cast<size_t>(s), Rational(1));
  return make(be);
}

bool BlockDecomposition::isotropic_block(int j) const {
  for (auto const& x : blocks[j].d)
    if (x != 1) return false;
  return true;
}

std::vector<Rational> BlockDecomposition::coordinate_exponents() const {
  std::vector<Rational> d;
  d.reserve(total_dim);
  for (auto const& b : blocks)
    for (auto const& x : b.d) d.push_back(x);
  return d;
}

double block_norm(BlockDecomposition const& dec, int j, double const* x) {
  auto const& b = dec.blocks[j];
  if (dec.isotropic_block(j)) {
    double s = 0.0;
    for (int l = 0; l < b.size; ++l) s += x[b.offset + l] * x[b.offset + l];
    return std::sqrt(s);
  }
  double s = 0.0;
  for (int l = 0; l < b.size; ++l)
    s += std::pow(std::abs(x[b.offset + l]), 1.0 / to_double(b.d[l]));
  return s;
}

std::vector<double> block_norms(BlockDecomposition const& dec, std::vector<double> const& x) {
  if (static_cast<int>(x.size()) != dec.total_dim)
    throw DimensionMismatch("block_norms: dimension mismatch");
  std::vector<double> n(dec.blocks.size());
  for (size_t j = 0; j < dec.blocks.size(); ++j) n[j] = block_norm(dec, static_cast<int>(j), x.data());
  return n;
}

std::vector<double> norms(NormSystem const& sys, std::vector<double> const& x) {
  auto nb = block_norms(sys.dec, x);
  int n = sys.E.n();
  if (static_cast<int>(nb.size()) != n) throw DimensionMismatch("norms: block count mismatch");
  std::vector<double> N(n, 0.0);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      double e = (sys.side == Side::Space) ? to_double(sys.E(j, k))
                                           : 1.0 / to_double(sys.E(k, j));
      N[j] += std::pow(nb[k], e);
    }
  return N;
}

std::vector<Rational> block_norms_exact(BlockDecomposition const& dec,
                                        std::vector<Rational> const& x) {
  if (static_cast<int>(x.size()) != dec.total_dim)
    throw DimensionMismatch("block_norms_exact: dimension mismatch");
  std::vector<Rational> n(dec.blocks.size(), Rational(0));
  for (size_t j = 0; j < dec.blocks.size(); ++j) {
    auto const& b = dec.blocks[j];
    for (int l = 0; l < b.size; ++l) {
      if (b.d[l] != 1)
        throw DomainError("block_norms_exact: exact norms require unit exponents");
      n[j] += abs(x[b.offset + l]);
    }
  }
  return n;
}

bool inside_unit_ball(BlockDecomposition const& dec, std::vector<double> const& x) {
  auto nb = block_norms(dec, x);
  for (double v : nb)
    if (v >= 1.0) return false;
  return true;
}

}  // namespace multinorm
