#pragma once

#include <optional>
#include <vector>

#include "ncplane/kronecker/complex.hpp"

namespace ncplane {

enum class Stability { Stable, Semistable, Unstable };
const char* stability_name(Stability s);

enum class StabilityMode { Strict, Semi };

// Data of the subcomplex cut out by H' inside H (x) F_{q^e}.
struct SubspaceData {
  unsigned ext_degree = 1;
  // rows span H' in coordinates of H; entries are GF(q^e) indices
  std::vector<std::vector<std::uint32_t>> basis;
  long long n1 = 0, dim_k = 0, dim_l = 0;
  long long r1 = 0, c1 = 0, chi1 = 0;
  // X = r c1' - r' c1, Y = r chi' - r' chi
  long long x = 0, y = 0;
};

struct StabilityReport {
  Stability verdict = Stability::Stable;
  bool passes = false;  // against the requested mode
  std::vector<unsigned> ext_degrees;
  std::vector<std::uint32_t> field_orders;
  std::optional<SubspaceData> witness;  // first violation (or tie when only semistable)
  long long subspaces_checked = 0;
  long long m = 1;                  // effective GIT parameter
  bool git_agrees = true;           // sign of Z(H') matches the lexicographic sign
  long long git_disagreements = 0;
};

struct StabilityOptions {
  StabilityMode mode = StabilityMode::Semi;
  std::vector<unsigned> ext_degrees = {1, 2};
  long long budget = 2000000;
  std::optional<long long> m_override;
  // stop at the first violation; otherwise every subspace is visited
  bool stop_early = true;
};

// Number of subspaces of F_q^n of every dimension 1..n-1 (saturates).
long long proper_subspace_count(long long q, int n);

StabilityReport check_semistable(const KroneckerComplex<Fp>& k, const StabilityOptions& opt = {});

}  // namespace ncplane
