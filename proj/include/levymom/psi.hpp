#pragma once

// Moments of the Pollaczek-Khinchine variable zeta, whose LST is
// alpha * phi'(0+) / phi(alpha), via the generalised Takacs recursion
//
//   psi_k = -1/((k+1) phi_1) * sum_{i<k} C(k+1, i) psi_i phi_{k+1-i},
//
// with E zeta^k = (-1)^k psi_k. psi_k is finite exactly when eta_{k+1} is.

#include <vector>

#include "levymom/model.hpp"

namespace levymom {

template <Field T>
struct PsiTable {
  std::vector<Extended<T>> psi;  // psi_0 .. psi_K

  unsigned order() const { return static_cast<unsigned>(psi.size()) - 1; }

  const Extended<T>& operator[](unsigned k) const { return psi.at(k); }

  /// E zeta^k = (-1)^k psi_k; +inf when infinite.
  Extended<T> zeta_moment(unsigned k) const {
    const auto& p = psi.at(k);
    return k % 2 == 0 ? p : -p;
  }
};

template <Field T>
PsiTable<T> psi_recursion(const PhiTable<T>& phi, unsigned K) {
  if (K < 1) throw InvalidModel("psi order must be at least 1");
  if (phi.order() < K + 1) throw MissingMoment("psi_" + std::to_string(K) + " needs phi up to order " + std::to_string(K + 1));
  const auto& phi1 = phi[1];
  if (!phi1.finite() || phi1.sign() >= 0) throw InvalidRho("psi recursion needs phi_1 = rho finite and negative");

  PsiTable<T> table;
  table.psi.reserve(K + 1);
  table.psi.emplace_back(FieldTraits<T>::from_int(1));
  bool diverged = false;
  for (unsigned k = 1; k <= K; ++k) {
    // E zeta^k = +inf, i.e. psi_k = (-1)^k * inf.
    if (diverged || !phi[k + 1].finite()) {
      diverged = true;
      table.psi.push_back(Extended<T>::signed_inf(k % 2 == 0 ? 1 : -1));
      continue;
    }
    T sum = FieldTraits<T>::from_int(0);
    for (unsigned i = 0; i < k; ++i) {
      sum += binomial<T>(k + 1, i) * table.psi[i].value() * phi[k + 1 - i].value();
    }
    T denom = FieldTraits<T>::from_int(static_cast<long>(k + 1)) * phi1.value();
    table.psi.emplace_back(T(-sum / denom));
  }
  return table;
}

/// Convenience: phi table of order K+1 followed by the recursion.
template <Field T>
PsiTable<T> psi_table(const LevyModel& model, unsigned K) {
  return psi_recursion(build_phi_table<T>(model, K + 1), K);
}

}  // namespace levymom
