#ifndef MULTINORM_MATRIX_HPP
#define MULTINORM_MATRIX_HPP

#include <array>
#include <vector>

#include "multinorm/rational.hpp"
#include "multinorm/errors.hpp"

namespace multinorm {

// Square matrix of positive rationals e(j,k).  The norms it generates are
// N_j(x) = sum_k n_k(x_k)^{e(j,k)}; all indices 0-based in code, 1-based in
// serialized form.
class ExponentMatrix {
public:
  ExponentMatrix() : n_(0) {}
  explicit ExponentMatrix(int n) : n_(n), e_(static_cast<size_t>(n) * n, Rational(1)) {}
  ExponentMatrix(int n, std::vector<Rational> entries);

  int n() const { return n_; }
  Rational const& operator()(int j, int k) const { return e_[static_cast<size_t>(j) * n_ + k]; }
  Rational& operator()(int j, int k) { return e_[static_cast<size_t>(j) * n_ + k]; }

  bool operator==(ExponentMatrix const& o) const { return n_ == o.n_ && e_ == o.e_; }

private:
  int n_;
  std::vector<Rational> e_;
};

// Like ExponentMatrix but entries may be +infinity (missing constraint).
class PartialExponentMatrix {
public:
  PartialExponentMatrix() : n_(0) {}
  explicit PartialExponentMatrix(int n)
      : n_(n), e_(static_cast<size_t>(n) * n, ExtRational::infinity()) {
    for (int j = 0; j < n; ++j) (*this)(j, j) = ExtRational(Rational(1));
  }
  explicit PartialExponentMatrix(ExponentMatrix const& m) : PartialExponentMatrix(m.n()) {
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k) (*this)(j, k) = ExtRational(m(j, k));
  }

  int n() const { return n_; }
  ExtRational const& operator()(int j, int k) const { return e_[static_cast<size_t>(j) * n_ + k]; }
  ExtRational& operator()(int j, int k) { return e_[static_cast<size_t>(j) * n_ + k]; }

  bool complete() const;
  ExponentMatrix as_full() const;  // throws if any entry infinite

  bool operator==(PartialExponentMatrix const& o) const { return n_ == o.n_ && e_ == o.e_; }

private:
  int n_;
  std::vector<ExtRational> e_;
};

struct MatrixReport {
  bool basic_ok = false;
  std::vector<std::array<int, 3>> violations;  // (j,k,l), 1-based
  bool doubly_monotone = false;
  int numeric_rank = 0;
  int reduced_rank = 0;
};

// basic hypothesis: diagonal 1 and e(j,l) <= e(j,k) e(k,l).
MatrixReport check_basic(ExponentMatrix const& E);
bool basic_ok(ExponentMatrix const& E);

// rows weakly increase left to right, columns weakly decrease top to bottom;
// cross-checked against the subdiagonal test e(j+1,j) <= 1 when basic_ok.
bool is_doubly_monotone(ExponentMatrix const& E);

// Exact rank / determinant over the rationals.
int exact_rank(ExponentMatrix const& E);
Rational exact_det(ExponentMatrix const& E);

// Min-product path closure of a partial matrix.
struct Closure {
  bool empty = false;                   // some cycle has product < 1
  std::vector<int> witness_cycle;       // vertices of such a cycle (0-based), when empty
  PartialExponentMatrix closed;         // valid when !empty
  bool connected = false;               // all off-diagonal entries finite
  std::vector<std::vector<int>> components;  // strongly connected components, 0-based
};

Closure close(PartialExponentMatrix const& B);
Closure close(ExponentMatrix const& E);
// Convenience: closure that must be full and nonempty.
ExponentMatrix close_full(PartialExponentMatrix const& B);

// Quotient by the equivalence j ~ k  <=>  e(j,k) e(k,j) = 1.
struct Reduction {
  std::vector<std::vector<int>> classes;  // 0-based member lists, each sorted
  std::vector<int> marks;                 // representative of each class (its minimum)
  ExponentMatrix flat;                    // s x s matrix on the representatives
  std::vector<Rational> alpha;            // alpha_j = e(mark(j), j); sharpen(flat, classes, alpha) == E
};
Reduction reduce(ExponentMatrix const& E);

// Refine an s x s matrix to n x n: e#(j,k) = (alpha_k / alpha_j) e(t,r) for
// j in blocks[t], k in blocks[r].
ExponentMatrix sharpen(ExponentMatrix const& coarse,
                       std::vector<std::vector<int>> const& blocks,
                       std::vector<Rational> const& alpha);

// Entrywise e(j,k) <= e'(j,k); the class-inclusion order.
bool includes(ExponentMatrix const& E, ExponentMatrix const& Eprime);

// One homogeneity a: entries a_j / a_k (rank 1).
ExponentMatrix cz_matrix(std::vector<Rational> const& a);

// Several homogeneities: entrywise max of the ratio matrices.
ExponentMatrix envelope_matrix(std::vector<std::vector<Rational>> const& homs);

// Opposite-flag matrix: e(j,k) = b_j/b_k for j<=k, a_j/a_k for j>=k.
// Requires a_1/b_1 <= ... <= a_n/b_n; equals envelope_matrix({a,b}) then.
ExponentMatrix two_flag_matrix(std::vector<Rational> const& a, std::vector<Rational> const& b);

// The n+1 classes that split a convolution of two one-homogeneity kernels by
// the ratio interval of the two dyadic indices.  family[0] = cz_matrix(a),
// family[n] = cz_matrix(b); each member is entrywise <= envelope_matrix({a,b}).
std::vector<ExponentMatrix> cz_pair_family(std::vector<Rational> const& a,
                                           std::vector<Rational> const& b);

// Ascending order of b_j/a_j used by cz_pair_family (ties by index).
std::vector<int> ratio_order(std::vector<Rational> const& a, std::vector<Rational> const& b);

MatrixReport full_report(ExponentMatrix const& E);

}  // namespace multinorm

#endif
