#include "multinorm/weights.hpp"

#include <cmath>

#include "multinorm/errors.hpp"

namespace multinorm {

SumProfile cyclic_weight_sum(std::vector<Rational> const& a, Rational const& eps, int depth) {
  int n = static_cast<int>(a.size());
  if (n < 2) throw DomainError("cyclic_weight_sum: need at least two indices");
  if (eps <= 0) throw DomainError("cyclic_weight_sum: eps must be positive");
  Rational prod(1);
  for (auto const& x : a) prod *= x;
  if (prod == 1) throw DivergentParameters("cyclic_weight_sum: product of weights equals 1");

  double epsd = to_double(eps);
  std::vector<double> ad(a.size());
  for (size_t i = 0; i < a.size(); ++i) ad[i] = to_double(a[i]);

  SumProfile prof;
  double total = 0.0;
  std::vector<long long> idx(n);
  // Sum box by box; at box depth d add the points whose max modulus equals d.
  for (int d = 1; d <= depth; ++d) {
    double added = 0.0;
    auto rec = [&](auto&& self, int pos, bool attains) -> void {
      if (pos == n) {
        if (!attains) return;
        // membership and slack
        double slack = 0.0;
        for (int j = 0; j < n; ++j) {
          int next = (j + 1) % n;
          Rational lhs = a[j] * Rational(idx[j]);
          if (lhs > Rational(idx[next])) return;
          slack += static_cast<double>(idx[next]) - to_double(lhs);
        }
        added += std::exp2(-epsd * slack);
        return;
      }
      for (long long v = -d; v <= -1; ++v) {
        idx[pos] = v;
        self(self, pos + 1, attains || v == -d);
      }
    };
    rec(rec, 0, false);
    total += added;
    prof.partial.push_back(total);
    prof.increment.push_back(added);
  }
  if (!prof.increment.empty()) prof.last_increment = prof.increment.back();
  return prof;
}

SumProfile scaled_min_sum(double R, double eps, int depth) {
  if (R <= 0 || eps <= 0) throw DomainError("scaled_min_sum: R and eps must be positive");
  SumProfile prof;
  double total = 0.0;
  for (int d = 0; d <= depth; ++d) {
    double added = 0.0;
    auto term = [&](long long i) {
      double v = std::exp2(static_cast<double>(i)) * R;
      return std::min(std::pow(v, eps), std::pow(v, -eps));
    };
    if (d == 0)
      added = term(0);
    else
      added = term(d) + term(-d);
    total += added;
    prof.partial.push_back(total);
    prof.increment.push_back(added);
  }
  prof.last_increment = prof.increment.back();
  return prof;
}

EnvelopeRatio envelope_ratio(ExponentMatrix const& E, std::vector<double> const& alpha,
                             std::vector<double> const& Mj, double M,
                             std::vector<double> const& A, int depth) {
  int n = E.n();
  if (static_cast<int>(alpha.size()) != n || static_cast<int>(Mj.size()) != n ||
      static_cast<int>(A.size()) != n)
    throw DimensionMismatch("envelope_ratio: length mismatch");

  EnvelopeRatio out;
  std::vector<long long> idx(n);
  double sum = 0.0;
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == n) {
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          if (j != k && E(j, k) * Rational(idx[k]) > Rational(idx[j])) return;
      double expo = 0.0, bump = 1.0;
      for (int j = 0; j < n; ++j) {
        expo += -static_cast<double>(idx[j]) * alpha[j];
        bump += std::exp2(-static_cast<double>(idx[j])) * A[j];
      }
      sum += std::exp2(expo) * std::pow(bump, -M);
      return;
    }
    for (long long v = -depth; v <= -1; ++v) {
      idx[pos] = v;
      self(self, pos + 1);
    }
  };
  rec(rec, 0);
  out.lattice_sum = sum;

  double env = 1.0;
  for (int j = 0; j < n; ++j) {
    double Nj = 0.0;
    for (int k = 0; k < n; ++k) Nj += std::pow(A[k], to_double(E(j, k)));
    env *= std::pow(Nj, -alpha[j]) * std::pow(1.0 + A[j], -Mj[j]);
  }
  out.envelope = env;
  out.ratio = sum / env;
  return out;
}

}  // namespace multinorm
