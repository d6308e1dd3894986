#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ncplane/exactmath/matrix.hpp"

namespace ncplane {

// Spaces E_1..E_N and maps phi_i : E_{i+1} -> E_i, stored 0-based:
// dims[t] = dim E_{t+1}, phi[t] = phi_{t+1} (dims[t] x dims[t+1]).
template <class K>
struct ChainData {
  std::vector<int> dims;
  std::vector<Matrix<K>> phi;
  K one;

  int length() const { return static_cast<int>(dims.size()); }
  // first (t, t+1) with phi_t phi_{t+1} != 0
  std::optional<int> composition_defect() const;
};

template <class K>
using Tuple = std::vector<Matrix<K>>;

// ShapeMismatch unless phi composes along dims.
template <class K>
void check_shapes(const ChainData<K>& c);

// d(e)_i = e_i phi_i - phi_i e_{i+1}, i = 1..N-1
template <class K>
Tuple<K> differential(const ChainData<K>& c, const Tuple<K>& e);
// d*(f)_i = phi_i f_i - f_{i-1} phi_{i-1}, i = 1..N
template <class K>
Tuple<K> dual_differential(const ChainData<K>& c, const Tuple<K>& f);
// psi_0(f)_i = (-1)^{i+1} (phi_i f_i - f_{i-1} phi_{i-1})
template <class K>
Tuple<K> psi0(const ChainData<K>& c, const Tuple<K>& f);
// psibar_1(e)_i = (-1)^{i+1} (e_i phi_i + phi_i e_{i+1})
template <class K>
Tuple<K> psibar1(const ChainData<K>& c, const Tuple<K>& e);
// h(e)_i = (-1)^i e_i
template <class K>
Tuple<K> homotopy(const Tuple<K>& e, const K& one);

template <class K>
bool tuple_is_zero(const Tuple<K>& t);

// phi_i phi_{i+1} = 0 by choosing each phi_i inside the left kernel of phi_{i+1}.
template <class K>
ChainData<K> random_chain_data(const std::vector<int>& dims, const K& one, std::mt19937_64& rng);
// Uniform maps with no composition constraint.
template <class K>
ChainData<K> random_unconstrained_data(const std::vector<int>& dims, const K& one, std::mt19937_64& rng);

template <class K>
Tuple<K> random_endo_tuple(const ChainData<K>& c, const K& one, std::mt19937_64& rng);  // e_i : E_i -> E_i
template <class K>
Tuple<K> random_dual_tuple(const ChainData<K>& c, const K& one, std::mt19937_64& rng);  // f_i : E_i -> E_{i+1}

struct ChainIdentityReport {
  int trials = 0;
  long long failures_d_psi0 = 0;         // d(psi_0 f) = 0
  long long failures_psibar_dstar = 0;   // psibar_1(d* f) = 0
  long long failures_psi0_homotopy = 0;  // psi_0 = -h d*
  long long failures_psibar_homotopy = 0;  // -psibar_1 = d h
  long long psi0_equals_h_dstar = 0;     // trials where psi_0 = +h d* literally
  std::string witness;
  bool holds() const {
    return !failures_d_psi0 && !failures_psibar_dstar && !failures_psi0_homotopy && !failures_psibar_homotopy;
  }
};

template <class K>
ChainIdentityReport chain_identity_report(const ChainData<K>& c, int trials, std::mt19937_64& rng);
// Throws IdentityViolated with the first witness.
template <class K>
ChainIdentityReport verify_chain_identities(const ChainData<K>& c, int trials, std::mt19937_64& rng);

// t(d*_alpha beta)_i = (-1)^{i+1} (alpha_i beta_i - beta_{i-1} alpha_{i-1}); the
// variant with + between the terms is reported alongside.
template <class K>
Tuple<K> moment_term(const ChainData<K>& alpha, const Tuple<K>& beta, bool plus_variant = false);

struct MomentReport {
  int trials = 0;
  long long failures = 0;
  long long plus_variant_failures = 0;
  std::string witness;
  bool holds() const { return failures == 0; }
};

template <class K>
MomentReport moment_identity_report(const ChainData<K>& alpha, int trials, std::mt19937_64& rng);
template <class K>
MomentReport verify_moment_identity(const ChainData<K>& alpha, int trials, std::mt19937_64& rng);

}  // namespace ncplane
