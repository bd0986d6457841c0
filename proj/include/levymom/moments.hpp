#pragma once

// Joint moments E[ prod_i A_{f_i} prod_j D_{g_j} ] of polynomial functionals.
//
// Writing the product of the additive functionals as a sum over the time
// ordering of their increments, and conditioning on the first increment, gives
// for a multiset S of factors and M_S(x) = E_x prod_{i in S} F_i:
//
//   M_S = sum_{A_f in S} Gamma_a( f M_{S - A_f} )
//       + sum_{nonempty B subset of the D factors in S} Gamma_a( g_B * J M_{S - B} ),
//
// where g_B is the product of the polynomials in B (all of them counted at the
// same jump) and J h(x) = integral h(x + y) nu(dy) is the level after that
// jump. M_empty = 1. With only Area factors this is the plain permutation sum
// of nested Gamma_a chains.
//
// The literal variant replaces the D part by lambda Gamma_a( g M_{S - D_g} )
// for single factors, i.e. lambda^l times the permutation sum of chains. It
// agrees with the exact recursion when there is at most one factor and when
// all factors are Area, and is kept for comparison.

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "levymom/gamma.hpp"

namespace levymom {

enum class FunctionalKind { Area, JumpSum };

inline std::string to_string(FunctionalKind kind) { return kind == FunctionalKind::Area ? "A" : "D"; }

/// One factor A_f (Area) or D_f (JumpSum) of a joint moment.
template <Field T>
struct FunctionalSpec {
  FunctionalKind kind = FunctionalKind::Area;
  Polynomial<T> poly;

  static FunctionalSpec area(Polynomial<T> p) { return {FunctionalKind::Area, std::move(p)}; }
  static FunctionalSpec jump_sum(Polynomial<T> p) { return {FunctionalKind::JumpSum, std::move(p)}; }

  std::string describe() const { return to_string(kind) + ":" + poly.to_string(); }

  template <Field U>
  FunctionalSpec<U> cast() const {
    return {kind, poly.template cast<U>()};
  }
};

struct EngineOptions {
  /// Upper bound on the number of factors in one request.
  unsigned max_factors = 12;
  /// Use the literal permutation-sum treatment of JumpSum factors.
  bool literal = false;
};

template <Field T>
struct MomentResult {
  Extended<T> value;
  unsigned psi_order = 0;            // highest E zeta^k consumed
  std::size_t chains_evaluated = 0;  // memoised sub-products
  mpz_class permutations = 1;        // orderings represented, (k+l)!
};

/// Joint moment as a polynomial in a deterministic starting level x.
template <Field T>
struct JointPolynomial {
  Polynomial<T> poly;
  bool infinite = false;
  unsigned psi_order = 0;
  std::size_t chains_evaluated = 0;
  mpz_class permutations = 1;
};

namespace detail {

/// J h(x) = integral h(x + y) nu(dy) = lambda h(x) + sum_{k>=1} eta_k h^(k)(x) / k!.
template <Field T>
class JumpShift {
 public:
  JumpShift(const LevyModel& model, T lambda) : model_(model), lambda_(std::move(lambda)) {}

  Polynomial<T> operator()(const Polynomial<T>& h) {
    Polynomial<T> out = lambda_ * h;
    Polynomial<T> deriv = h.derivative();
    for (unsigned k = 1; !deriv.is_zero(); ++k) {
      out += (eta(k) / factorial<T>(k)) * deriv;
      deriv = deriv.derivative();
    }
    return out;
  }

 private:
  const T& eta(unsigned k) {
    while (eta_.size() < k) {
      const auto i = static_cast<unsigned>(eta_.size()) + 1;
      Extended<Rational> e = model_.jumps().eta(i);
      if (e.infinite()) {
        throw FiniteMomentRequired("a jump-sum product needs eta_" + std::to_string(i) +
                                   ", which is infinite; the requested moment does not exist");
      }
      eta_.push_back(field_cast<T>(e.value()));
    }
    return eta_[k - 1];
  }

  const LevyModel& model_;
  T lambda_;
  std::vector<T> eta_;
};

template <Field T>
class ProductEngine {
 public:
  ProductEngine(const LevyModel& model, const GammaContext<T>& ctx, std::vector<FunctionalSpec<T>> types, T lambda,
                bool literal)
      : ctx_(ctx), types_(std::move(types)), lambda_(lambda), literal_(literal), shift_(model, lambda) {}

  /// M(counts) = E_x prod of counts[j] copies of factor j, as a polynomial in x.
  const Polynomial<T>& operator()(const std::vector<unsigned>& counts) {
    if (auto it = memo_.find(counts); it != memo_.end()) return it->second;
    Polynomial<T> acc;
    if (std::all_of(counts.begin(), counts.end(), [](unsigned c) { return c == 0; })) {
      acc = Polynomial<T>::constant(FieldTraits<T>::from_int(1));
    } else {
      add_singletons(counts, acc);
      if (!literal_) add_jump_blocks(counts, acc);
    }
    return memo_.emplace(counts, std::move(acc)).first->second;
  }

  std::size_t evaluated() const { return memo_.size(); }

 private:
  void add_singletons(const std::vector<unsigned>& counts, Polynomial<T>& acc) {
    std::vector<unsigned> rest = counts;
    for (std::size_t j = 0; j < counts.size(); ++j) {
      if (counts[j] == 0) continue;
      const bool jump = types_[j].kind == FunctionalKind::JumpSum;
      if (jump && !literal_) continue;
      --rest[j];
      Polynomial<T> inner = (*this)(rest);  // copy: the memo may grow below
      ++rest[j];
      T weight = FieldTraits<T>::from_int(counts[j]);
      if (jump) weight *= lambda_;
      acc += weight * gamma_a(ctx_, types_[j].poly * inner);
    }
  }

  // All factors of the block B are counted at the same jump.
  void add_jump_blocks(const std::vector<unsigned>& counts, Polynomial<T>& acc) {
    std::vector<std::size_t> jumps;
    for (std::size_t j = 0; j < counts.size(); ++j) {
      if (counts[j] > 0 && types_[j].kind == FunctionalKind::JumpSum) jumps.push_back(j);
    }
    if (jumps.empty()) return;
    std::vector<unsigned> block(counts.size(), 0);
    std::vector<unsigned> rest = counts;
    // Odometer over 0 <= block[j] <= counts[j] on the jump-sum types.
    while (true) {
      std::size_t pos = 0;
      while (pos < jumps.size() && block[jumps[pos]] == counts[jumps[pos]]) {
        block[jumps[pos]] = 0;
        ++pos;
      }
      if (pos == jumps.size()) break;
      ++block[jumps[pos]];

      T weight = FieldTraits<T>::from_int(1);
      Polynomial<T> g = Polynomial<T>::constant(FieldTraits<T>::from_int(1));
      for (std::size_t j : jumps) {
        rest[j] = counts[j] - block[j];
        weight *= binomial<T>(counts[j], block[j]);
        for (unsigned r = 0; r < block[j]; ++r) g = g * types_[j].poly;
      }
      Polynomial<T> shifted = shift_((*this)(rest));
      acc += weight * gamma_a(ctx_, g * shifted);
    }
  }

  const GammaContext<T>& ctx_;
  std::vector<FunctionalSpec<T>> types_;
  T lambda_;
  bool literal_;
  JumpShift<T> shift_;
  std::map<std::vector<unsigned>, Polynomial<T>> memo_;
};

template <Field T>
unsigned spec_degree(const FunctionalSpec<T>& s) {
  return s.poly.is_zero() ? 1u : static_cast<unsigned>(s.poly.degree()) + 1;
}

}  // namespace detail

template <Field T>
JointPolynomial<T> joint_moment_poly(const LevyModel& model, const std::vector<FunctionalSpec<T>>& specs,
                                     const EngineOptions& options = {}) {
  JointPolynomial<T> out;
  if (specs.size() > options.max_factors) {
    throw Unsupported("request has " + std::to_string(specs.size()) + " factors; the limit is " +
                      std::to_string(options.max_factors) +
                      " (raise max_factors explicitly if the required zeta moments and degrees are acceptable)");
  }
  out.permutations = factorial_z(specs.size());
  if (specs.empty()) {
    out.poly = Polynomial<T>::constant(FieldTraits<T>::from_int(1));
    return out;
  }

  bool any_jump = false;
  for (const auto& s : specs) {
    // A zero factor makes the product vanish identically, also when lambda = inf.
    if (s.poly.is_zero()) return out;
    any_jump = any_jump || s.kind == FunctionalKind::JumpSum;
  }
  Extended<T> lambda = model.lambda().template cast<T>();
  if (any_jump) {
    if (!lambda.finite()) {
      out.infinite = true;
      return out;
    }
    if (FieldTraits<T>::is_zero(lambda.value())) return out;
  }

  std::vector<FunctionalSpec<T>> types;
  std::vector<unsigned> counts;
  unsigned total_degree = 0;
  for (const auto& s : specs) {
    total_degree += detail::spec_degree(s);
    auto it = std::find_if(types.begin(), types.end(),
                           [&](const FunctionalSpec<T>& t) { return t.kind == s.kind && t.poly == s.poly; });
    if (it == types.end()) {
      types.push_back(s);
      counts.push_back(1);
    } else {
      ++counts[static_cast<std::size_t>(it - types.begin())];
    }
  }

  out.psi_order = total_degree - 1;
  auto ctx = GammaContext<T>::create(model, out.psi_order);
  T lam = lambda.finite() ? lambda.value() : FieldTraits<T>::from_int(0);
  detail::ProductEngine<T> engine(model, ctx, types, lam, options.literal);
  out.poly = engine(counts);
  out.chains_evaluated = engine.evaluated();
  return out;
}

template <Field T>
MomentResult<T> joint_moment(const LevyModel& model, const PushSpec& push, const std::vector<FunctionalSpec<T>>& specs,
                             const EngineOptions& options = {}) {
  PushSpec resolved = push.resolve(model);
  JointPolynomial<T> jp = joint_moment_poly(model, specs, options);
  MomentResult<T> r;
  r.psi_order = jp.psi_order;
  r.chains_evaluated = jp.chains_evaluated;
  r.permutations = jp.permutations;
  r.value = jp.infinite ? Extended<T>::pos_inf() : Extended<T>(push_expectation(resolved, jp.poly));
  return r;
}

/// E[ X^m Y^n ] for all m + n <= max_total, where X and Y are two functionals.
template <Field T>
class MomentGrid {
 public:
  MomentGrid() = default;
  explicit MomentGrid(unsigned max_total) : max_total_(max_total), cells_(max_total + 1) {
    for (unsigned m = 0; m <= max_total; ++m) cells_[m].resize(max_total + 1 - m);
  }

  unsigned max_total() const { return max_total_; }
  const Extended<T>& operator()(unsigned m, unsigned n) const { return cells_.at(m).at(n); }
  Extended<T>& at(unsigned m, unsigned n) { return cells_.at(m).at(n); }

 private:
  unsigned max_total_ = 0;
  std::vector<std::vector<Extended<T>>> cells_;
};

template <Field T>
MomentGrid<T> moment_grid(const LevyModel& model, const PushSpec& push, const FunctionalSpec<T>& first,
                          const FunctionalSpec<T>& second, unsigned max_total, const EngineOptions& options = {}) {
  if (max_total > options.max_factors) {
    throw Unsupported("grid order " + std::to_string(max_total) + " exceeds the limit " +
                      std::to_string(options.max_factors));
  }
  PushSpec resolved = push.resolve(model);
  MomentGrid<T> grid(max_total);
  Extended<T> lambda = model.lambda().template cast<T>();

  const unsigned d1 = detail::spec_degree(first);
  const unsigned d2 = detail::spec_degree(second);
  unsigned needed = 0;
  for (unsigned m = 0; m <= max_total; ++m) {
    for (unsigned n = 0; m + n <= max_total; ++n) needed = std::max(needed, m * d1 + n * d2);
  }
  auto ctx = GammaContext<T>::create(model, needed == 0 ? 0 : needed - 1);
  T lam = lambda.finite() ? lambda.value() : FieldTraits<T>::from_int(0);
  detail::ProductEngine<T> engine(model, ctx, {first, second}, lam, options.literal);

  auto uses_jumps = [](const FunctionalSpec<T>& s, unsigned count) {
    return count > 0 && s.kind == FunctionalKind::JumpSum;
  };
  for (unsigned m = 0; m <= max_total; ++m) {
    for (unsigned n = 0; m + n <= max_total; ++n) {
      bool zero = (m > 0 && first.poly.is_zero()) || (n > 0 && second.poly.is_zero());
      bool jumps = uses_jumps(first, m) || uses_jumps(second, n);
      if (zero || (jumps && lambda.finite() && FieldTraits<T>::is_zero(lambda.value()))) {
        grid.at(m, n) = Extended<T>(FieldTraits<T>::from_int(0));
      } else if (jumps && !lambda.finite()) {
        grid.at(m, n) = Extended<T>::pos_inf();
      } else {
        grid.at(m, n) = Extended<T>(push_expectation(resolved, engine({m, n})));
      }
    }
  }
  return grid;
}

/// Grid of E[A_{fA}^m D_{fD}^n].
template <Field T>
MomentGrid<T> moment_grid(const LevyModel& model, const PushSpec& push, const Polynomial<T>& fA,
                          const Polynomial<T>& fD, unsigned max_total, const EngineOptions& options = {}) {
  return moment_grid(model, push, FunctionalSpec<T>::area(fA), FunctionalSpec<T>::jump_sum(fD), max_total, options);
}

}  // namespace levymom
