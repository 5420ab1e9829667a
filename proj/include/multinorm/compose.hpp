#ifndef MULTINORM_COMPOSE_HPP
#define MULTINORM_COMPOSE_HPP

#include <map>
#include <vector>

#include "multinorm/cone.hpp"
#include "multinorm/partitions.hpp"

namespace multinorm {

// Breakpoint data for one pair of marked partitions.
struct PairTable {
  int s = 0, q = 0;
  // For each (r,a) with intersecting blocks: the members of I_r ∩ J_a ordered
  // by the ratio tau_T(v,l_a)/tau_S(v,k_r) (ties by index), and the ratios.
  struct Pair {
    int r = 0, a = 0;
    std::vector<int> v;            // ordered intersection
    std::vector<Rational> ratio;   // same length, non-decreasing
  };
  std::vector<Pair> pairs;

  int pair_index(int r, int a) const;  // -1 when blocks are disjoint
};

PairTable pair_table(ExponentMatrix const& E, MarkedPartition const& S, MarkedPartition const& T);

// One interval choice: w[p] in 0..m_p per table pair, with nonempty region.
struct CompositionCase {
  std::vector<int> w;
  ConeSpec gamma_w;  // coordinates (i_1..i_s, j_1..j_q)
  std::vector<long long> witness;

  std::vector<std::vector<int>> I_star, J_star;  // surviving indices per block
  std::vector<int> S_star, T_star;               // blocks with survivors

  // Combined blocks in display order (sorted by marked index, S before T on
  // ties); each entry is (from_T?, block index).
  std::vector<std::pair<bool, int>> vorder;

  PartialExponentMatrix B_W;    // assembled bounds on the combined blocks
  bool empty_cone = false;      // closure found an inconsistent cycle
  PartialExponentMatrix E_STW;  // closure of B_W (componentwise when disconnected)
  bool connected = false;
  bool inclusion_ok = false;    // sharpened finite entries sit below E

  bool projection_discrepancy = false;  // exact projection strictly inside the closure cone
};

struct CaseEnumeration {
  PairTable table;
  std::vector<CompositionCase> cases;
  int dropped_empty = 0;
};

CaseEnumeration enumerate_cases(ExponentMatrix const& E, MarkedPartition const& S,
                                MarkedPartition const& T);

// Partition audit over the box: every (I,J) lies in exactly one region.
struct CoverReport {
  long long total_pairs = 0;
  std::vector<long long> per_case;
  bool exact_partition = false;
};
CoverReport cover_check(ExponentMatrix const& E, MarkedPartition const& S,
                        MarkedPartition const& T, int depth);

// Per-coordinate governing scales and the surviving dilation tuple of one
// convolution term.
struct ScaleImage {
  std::vector<Rational> coordinate_scale;  // length n
  std::vector<long long> tuple;            // on the combined blocks, vorder
};
ScaleImage scale_map(std::vector<long long> const& I, std::vector<long long> const& J,
                     ExponentMatrix const& E, MarkedPartition const& S, MarkedPartition const& T,
                     CompositionCase const& cse);

// Compare {scale_map images over a box} with the lattice of the closure cone.
struct ScaleAudit {
  long long images = 0;
  long long cone_points = 0;
  bool image_inside = false;  // every image lies in the cone lattice
  bool onto_box = false;      // every cone lattice point in the box is attained
};
ScaleAudit scale_audit(ExponentMatrix const& E, MarkedPartition const& S,
                       MarkedPartition const& T, CompositionCase const& cse, int depth);

}  // namespace multinorm

#endif
