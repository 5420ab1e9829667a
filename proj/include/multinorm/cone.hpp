#ifndef MULTINORM_CONE_HPP
#define MULTINORM_CONE_HPP

#include <optional>
#include <vector>

#include "multinorm/matrix.hpp"

namespace multinorm {

// coef * t_k <= t_j (or < when strict); 0-based indices.
struct ConeConstraint {
  int j = 0;
  int k = 0;
  Rational coef = Rational(1);
  bool strict = false;

  bool operator==(ConeConstraint const&) const = default;
};

// A homogeneous system of pairwise ratio constraints inside the open negative
// orthant: every coordinate additionally satisfies t_j < 0.
struct ConeSpec {
  int n = 0;
  std::vector<ConeConstraint> constraints;
};

ConeSpec cone_of(ExponentMatrix const& E, bool strict = false);
ConeSpec cone_of(PartialExponentMatrix const& B, bool strict = false);

bool member(ConeSpec const& C, std::vector<Rational> const& t);
bool member(ConeSpec const& C, std::vector<long long> const& t);

// The 2n vectors -column_l(E) and -1/row_l(E); all lie in the cone of E.
std::vector<std::vector<Rational>> generators(ExponentMatrix const& E);

bool has_interior(ExponentMatrix const& E);
int dimension(ExponentMatrix const& E);

// Lattice points with -depth <= t_j <= -1 satisfying C, lexicographic order.
std::vector<std::vector<long long>> enumerate_lattice(ConeSpec const& C, int depth);

// Extend a point of the cone of the leading p x p corner of E, one coordinate
// at a time, choosing the midpoint of each admissible interval.
std::vector<Rational> extend_point(ExponentMatrix const& E, std::vector<Rational> const& u);

// Exact projection onto the coordinates in `keep` (result re-indexed by their
// position in `keep`) via Fourier-Motzkin elimination.
ConeSpec project(ConeSpec const& C, std::vector<int> const& keep);

// Exact feasibility of the system (with the strict negativity constraints).
bool feasible(ConeSpec const& C);

// Feasibility with some coordinates pinned to given values.
struct FixedValue {
  int index;
  Rational value;
};
bool feasible_with_fixed(ConeSpec const& C, std::vector<FixedValue> const& fixed);

// A rational point of the cone, when nonempty.
std::optional<std::vector<Rational>> rational_witness(ConeSpec const& C);
// Rational witness scaled by the common denominator.
std::optional<std::vector<long long>> integer_witness(ConeSpec const& C);

}  // namespace multinorm

#endif
