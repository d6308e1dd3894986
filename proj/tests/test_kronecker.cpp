#include <gtest/gtest.h>

#include <random>
#include <set>

#include "ncplane/error.hpp"
#include "ncplane/kronecker/complex.hpp"
#include "ncplane/kronecker/ext.hpp"
#include "ncplane/kronecker/klpair.hpp"
#include "ncplane/kronecker/numerics.hpp"
#include "ncplane/kronecker/stability.hpp"
#include "ncplane/kronecker/standard.hpp"

using namespace ncplane;

namespace {

AlgebraPtr<Fp> poly(std::uint32_t p, int D = 8) { return build_algebra<Fp>(AlgebraSpec::polynomial(FieldSpec::prime(p), "x*y*z", D)); }

template <class K>
KroneckerComplex<K> parse_complex(AlgebraPtr<K> alg, int a, int n, int c, const std::vector<std::vector<std::string>>& A,
                                  const std::vector<std::vector<std::string>>& B) {
  return build_complex(alg, a, n, c, parse_linear_matrix(*alg, A, n, a), parse_linear_matrix(*alg, B, c, n));
}

KroneckerComplex<Fp> point_monad(AlgebraPtr<Fp> alg) {
  return parse_complex(alg, 1, 3, 1, {{"-y"}, {"x"}, {"0"}}, {{"x", "y", "z"}});
}

KroneckerComplex<Fp> trivial(AlgebraPtr<Fp> alg, int n = 1) {
  return build_complex(alg, 0, n, 0, zero_linear<Fp>(n, 0), zero_linear<Fp>(0, n));
}

// Product B*A evaluated entry by entry with the algebra's multiplication.
template <class K>
bool brute_force_complex(const KroneckerComplex<K>& k) {
  const auto& alg = *k.alg;
  for (int i = 0; i < k.c; ++i)
    for (int j = 0; j < k.a; ++j) {
      Element<K> s = alg.zero(2);
      for (int t = 0; t < k.n; ++t) s = s + alg.multiply(k.B_entry(i, t), k.A_entry(t, j));
      if (!s.is_zero()) return false;
    }
  return true;
}

// Semistability over F_2 by listing subspaces as sets of bitmasks.
struct BruteVerdict {
  bool unstable = false, tie = false;
  long long proper = 0;
};

BruteVerdict brute_force_stability(const KroneckerComplex<Fp>& kc) {
  const int n = kc.n, a = kc.a, c = kc.c;
  // vectors of H (x) S_1 as bitmasks over coordinates 3i + k
  std::vector<unsigned> kcols(a);
  for (int j = 0; j < a; ++j)
    for (int i = 0; i < n; ++i)
      for (int x = 0; x < 3; ++x)
        if (kc.A[x](i, j).value()) kcols[j] |= 1u << (3 * i + x);
  // images A s for every s in F_2^a, repeats kept so kernels are counted
  std::vector<unsigned> kimages;
  for (unsigned s = 0; s < (1u << a); ++s) {
    unsigned v = 0;
    for (int j = 0; j < a; ++j)
      if (s >> j & 1) v ^= kcols[j];
    kimages.push_back(v);
  }
  auto image = [&](unsigned v) {
    unsigned out = 0;
    for (int t = 0; t < c; ++t) {
      unsigned bit = 0;
      for (int i = 0; i < n; ++i)
        for (int x = 0; x < 3; ++x)
          if ((v >> (3 * i + x) & 1) && kc.B[x](t, i).value()) bit ^= 1;
      out |= bit << t;
    }
    return out;
  };
  auto log2 = [](std::size_t s) {
    int l = 0;
    while ((std::size_t(1) << l) < s) ++l;
    return l;
  };
  Invariants inv = kc.invariants();
  BruteVerdict out;
  // every subset of F_2^n closed under addition, stored as a bitmask over the 2^n vectors
  for (unsigned long long sub = 0; sub < (1ull << (1u << n)); ++sub) {
    if (!(sub & 1)) continue;
    bool closed = true;
    for (unsigned u = 0; u < (1u << n) && closed; ++u)
      for (unsigned w = 0; w < (1u << n) && closed; ++w)
        if ((sub >> u & 1) && (sub >> w & 1) && !(sub >> (u ^ w) & 1)) closed = false;
    if (!closed) continue;
    std::vector<unsigned> vecs;
    for (unsigned u = 0; u < (1u << n); ++u)
      if (sub >> u & 1) vecs.push_back(u);
    int n1 = log2(vecs.size());
    bool extreme = n1 == 0 || n1 == n;
    if (!extreme) ++out.proper;
    // H' (x) S_1 = all sums of h (x) x_k
    std::set<unsigned> hs = {0};
    for (unsigned h : vecs)
      for (int x = 0; x < 3; ++x) {
        unsigned v = 0;
        for (int i = 0; i < n; ++i)
          if (h >> i & 1) v |= 1u << (3 * i + x);
        std::set<unsigned> next = hs;
        for (unsigned s : hs) next.insert(s ^ v);
        hs = next;
      }
    std::size_t kin = 0;
    for (unsigned v : kimages) kin += hs.count(v);
    std::set<unsigned> img;
    for (unsigned v : hs) img.insert(image(v));
    long long dk = log2(kin), dl = log2(img.size());
    // H' = 0 or H only matter when they cut out a proper subcomplex
    if (extreme && ((n1 == 0 && dk == 0) || (n1 == n && dk == a && dl == c))) continue;
    long long r1 = n1 - dk - dl, c1 = dk - dl, chi1 = n1 - 3 * dl;
    long long x = inv.r * c1 - r1 * inv.c1, y = inv.r * chi1 - r1 * inv.chi;
    if (x > 0 || (x == 0 && y > 0)) out.unstable = true;
    if (x == 0 && y == 0) out.tie = true;
  }
  return out;
}

KroneckerComplex<Fp> random_complex(AlgebraPtr<Fp> alg, int a, int n, int c, std::mt19937_64& rng) {
  Fp one = alg->one();
  while (true) {
    KroneckerComplex<Fp> k{alg, a, n, c, zero_linear<Fp>(n, a), zero_linear<Fp>(c, n)};
    for (int x = 0; x < 3; ++x) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < a; ++j) k.A[x](i, j) = random_scalar(rng, one);
      for (int i = 0; i < c; ++i)
        for (int j = 0; j < n; ++j) k.B[x](i, j) = random_scalar(rng, one);
    }
    if (!complex_defect(k)) return k;
  }
}

}  // namespace

TEST(BuildComplex, CommutativeCancellation) {
  auto alg = poly(101);
  EXPECT_NO_THROW(point_monad(alg));
  EXPECT_NO_THROW(parse_complex(alg, 1, 3, 1, {{"-y"}, {"x"}, {"0"}}, {{"x", "y", "x"}}));
  try {
    parse_complex(alg, 1, 3, 1, {{"-y"}, {"x"}, {"0"}}, {{"y", "y", "z"}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAComplex);
  }
  EXPECT_TRUE(brute_force_complex(point_monad(alg)));
}

TEST(BuildComplex, ShapeChecked) {
  auto alg = poly(101);
  try {
    build_complex(alg, 1, 3, 1, zero_linear<Fp>(2, 1), zero_linear<Fp>(1, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ShapeMismatch);
  }
}

TEST(BuildComplex, DefectAgreesWithDirectProduct) {
  std::mt19937_64 rng(7);
  auto alg = build_algebra<Fp>(AlgebraSpec::sklyanin(FieldSpec::prime(101), 1, 2, 3, 6));
  Fp one = alg->one();
  for (int t = 0; t < 30; ++t) {
    KroneckerComplex<Fp> k{alg, 1, 2, 1, zero_linear<Fp>(2, 1), zero_linear<Fp>(1, 2)};
    for (int x = 0; x < 3; ++x) {
      for (int i = 0; i < 2; ++i) k.A[x](i, 0) = random_scalar(rng, one);
      for (int i = 0; i < 2; ++i) k.B[x](0, i) = random_scalar(rng, one);
    }
    EXPECT_EQ(!complex_defect(k).has_value(), brute_force_complex(k));
  }
}

TEST(ComplexInvariants, Formulas) {
  auto alg = poly(101);
  EXPECT_EQ(point_monad(alg).invariants(), (Invariants{1, 0, 0}));
  KroneckerComplex<Fp> k{alg, 2, 5, 2, zero_linear<Fp>(5, 2), zero_linear<Fp>(2, 5)};
  EXPECT_EQ(k.invariants(), (Invariants{1, 0, -1}));
  EXPECT_EQ(trivial(alg).invariants(), (Invariants{1, 0, 1}));
}

TEST(IsMonad, PointMonad) {
  auto alg = poly(101);
  MonadReport rep = is_monad(point_monad(alg));
  EXPECT_EQ(rep.verdict, MonadVerdict::Monad);
  EXPECT_EQ(rep.b_surjective_degree, 0);
}

TEST(IsMonad, BNotSurjective) {
  auto alg = poly(101);
  auto k = build_complex(alg, 0, 0, 1, zero_linear<Fp>(0, 0), zero_linear<Fp>(1, 0));
  EXPECT_EQ(is_monad(k).verdict, MonadVerdict::NotMonad);
}

TEST(IsMonad, RepeatedColumn) {
  auto alg = poly(101);
  auto k = parse_complex(alg, 2, 3, 1, {{"-y", "-y"}, {"x", "x"}, {"0", "0"}}, {{"x", "y", "z"}});
  // kernel of the degree-0 linearization, stacked over x, y, z
  Matrix<Fp> stacked(9, 2);
  for (int x = 0; x < 3; ++x)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 2; ++j) stacked(3 * x + i, j) = k.A[x](i, j);
  ASSERT_EQ(kernel_basis(stacked, alg->one()).size(), 1u);
  MonadReport rep = is_monad(k);
  EXPECT_EQ(rep.verdict, MonadVerdict::NotMonad);
  EXPECT_EQ(rep.a_kernel_degree, 1);
}

TEST(MonadCohomology, PointIdeal) {
  auto alg = poly(101, 9);
  auto m = monad_cohomology(point_monad(alg));
  EXPECT_EQ(m.hilbert(0), 0);
  for (int d = 1; d < 9; ++d) EXPECT_EQ(m.hilbert(d), (d + 1) * (d + 2) / 2 - 1) << d;
  EXPECT_EQ(invariants(m), (Invariants{1, 0, 0}));
}

TEST(MonadCohomology, TrivialIsO) {
  auto alg = poly(101, 8);
  auto m = monad_cohomology(trivial(alg));
  for (int d = 0; d < 8; ++d) EXPECT_EQ(m.hilbert(d), (d + 1) * (d + 2) / 2);
  EXPECT_EQ(invariants(m), (Invariants{1, 0, 1}));
}

TEST(MonadCohomology, RejectsNonMonad) {
  auto alg = poly(101);
  auto k = build_complex(alg, 0, 0, 1, zero_linear<Fp>(0, 0), zero_linear<Fp>(1, 0));
  try {
    monad_cohomology(k);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAMonad);
  }
}

TEST(MonadCohomology, InvariantsMatchOnOtherFamilies) {
  for (auto spec : {AlgebraSpec::weyl(FieldSpec::prime(101), 9), AlgebraSpec::qdeform(FieldSpec::prime(101), 2, 1, 1, 9)}) {
    auto alg = build_algebra<Fp>(spec);
    // the type-3 complex O(-1) -> O^2 -> O(1) with an extra O
    auto t3 = standard_representative(alg, 3);
    KroneckerComplex<Fp> k{alg, 1, 3, 1, zero_linear<Fp>(3, 1), zero_linear<Fp>(1, 3)};
    for (int x = 0; x < 3; ++x) {
      for (int i = 0; i < 2; ++i) k.A[x](i, 0) = t3.A[x](i, 0);
      for (int i = 0; i < 2; ++i) k.B[x](0, i) = t3.B[x](0, i);
    }
    // third column of B: a variable completing B to a surjection
    bool done = false;
    for (int x = 0; x < 3 && !done; ++x) {
      k.B[x](0, 2) = alg->one();
      if (is_monad(k).verdict == MonadVerdict::Monad) done = true;
      else k.B[x](0, 2) = Fp(0, 101);
    }
    ASSERT_TRUE(done);
    EXPECT_EQ(invariants(monad_cohomology(k)), k.invariants());
  }
}

TEST(KLPair, RoundTrip) {
  auto alg = poly(101);
  auto k = point_monad(alg);
  auto back = from_kl_pair(alg, to_kl_pair(k));
  for (int x = 0; x < 3; ++x) {
    EXPECT_EQ(back.A[x], k.A[x]);
    EXPECT_EQ(back.B[x], k.B[x]);
  }
  auto t = from_kl_pair(alg, to_kl_pair(trivial(alg, 2)));
  EXPECT_EQ(t.a, 0);
  EXPECT_EQ(t.c, 0);
  EXPECT_EQ(t.n, 2);
}

TEST(KLPair, NotInNLocusOverF2) {
  auto alg = poly(2);
  std::mt19937_64 rng(11);
  Fp one = alg->one();
  int rejected = 0;
  for (int t = 0; t < 40; ++t) {
    KLPair<Fp> p;
    p.n = 3;
    p.k = Matrix<Fp>(9, 1);
    p.pi = Matrix<Fp>(1, 9);
    for (int i = 0; i < 9; ++i) {
      p.k(i, 0) = random_scalar(rng, one);
      p.pi(0, i) = random_scalar(rng, one);
    }
    // the composite evaluated by direct multiplication
    KroneckerComplex<Fp> raw{alg, 1, 3, 1, zero_linear<Fp>(3, 1), zero_linear<Fp>(1, 3)};
    for (int i = 0; i < 3; ++i)
      for (int x = 0; x < 3; ++x) {
        raw.A[x](i, 0) = p.k(3 * i + x, 0);
        raw.B[x](0, i) = p.pi(0, 3 * i + x);
      }
    bool in_locus = brute_force_complex(raw);
    try {
      from_kl_pair(alg, p);
      EXPECT_TRUE(in_locus);
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::NotInNLocus);
      EXPECT_FALSE(in_locus);
      ++rejected;
    }
  }
  EXPECT_GT(rejected, 0);
}

TEST(Stability, TrivialIsStable) {
  auto alg = poly(2);
  auto rep = check_semistable(trivial(alg), {StabilityMode::Strict, {1}});
  EXPECT_EQ(rep.verdict, Stability::Stable);
  EXPECT_TRUE(rep.passes);
  EXPECT_EQ(rep.subspaces_checked, 0);
}

TEST(Stability, PointMonadOverF2) {
  auto alg = poly(2);
  auto k = point_monad(alg);
  StabilityOptions opt{StabilityMode::Strict, {1}};
  opt.stop_early = false;
  auto rep = check_semistable(k, opt);
  EXPECT_EQ(rep.verdict, Stability::Stable);
  EXPECT_EQ(rep.subspaces_checked, 14);
  BruteVerdict b = brute_force_stability(k);
  EXPECT_EQ(b.proper, 14);
  EXPECT_FALSE(b.unstable);
  EXPECT_FALSE(b.tie);
  auto rep2 = check_semistable(k, {StabilityMode::Strict, {1, 2}});
  EXPECT_EQ(rep2.verdict, Stability::Stable);
  EXPECT_EQ(rep2.field_orders, (std::vector<std::uint32_t>{2, 4}));
  EXPECT_EQ(rep2.subspaces_checked, 14 + 42);
  EXPECT_TRUE(rep2.git_agrees);
}

TEST(Stability, TypeTwoSubcomplexDestabilizes) {
  auto alg = poly(2);
  auto k = parse_complex(alg, 1, 3, 1, {{"x"}, {"0"}, {"0"}}, {{"0", "y", "z"}});
  auto rep = check_semistable(k, {StabilityMode::Semi, {1}});
  EXPECT_EQ(rep.verdict, Stability::Unstable);
  ASSERT_TRUE(rep.witness);
  EXPECT_EQ(rep.witness->r1, 0);
  EXPECT_EQ(rep.witness->c1, 1);
  EXPECT_EQ(rep.witness->chi1, 1);
  EXPECT_FALSE(rep.passes);
}

TEST(Stability, AgreesWithBruteForceOnRandomComplexes) {
  auto alg = poly(2);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 60; ++t) {
    auto k = random_complex(alg, 1, 3, 1, rng);
    StabilityOptions opt{StabilityMode::Semi, {1}};
    opt.stop_early = false;
    auto rep = check_semistable(k, opt);
    BruteVerdict b = brute_force_stability(k);
    Stability expected = b.unstable ? Stability::Unstable : b.tie ? Stability::Semistable : Stability::Stable;
    EXPECT_EQ(rep.verdict, expected) << t;
    EXPECT_TRUE(rep.git_agrees);
  }
}

TEST(Stability, BudgetExceeded) {
  auto alg = poly(101);
  auto k = point_monad(alg);
  StabilityOptions opt{StabilityMode::Semi, {1, 2}};
  opt.budget = 1000;
  try {
    check_semistable(k, opt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BudgetExceeded);
  }
  EXPECT_EQ(proper_subspace_count(2, 3), 14);
  EXPECT_EQ(proper_subspace_count(3, 2), 4);
}

TEST(Standard, TableRows) {
  for (auto spec : {AlgebraSpec::polynomial(FieldSpec::prime(101), "x*y*z", 8), AlgebraSpec::weyl(FieldSpec::prime(101), 8)}) {
    auto alg = build_algebra<Fp>(spec);
    for (int t = 1; t <= 7; ++t) {
      auto k = standard_representative(alg, t);
      StandardType s = classify_standard(k);
      EXPECT_EQ(s.type, t);
      EXPECT_EQ(s.expected, k.invariants()) << t;
    }
  }
  EXPECT_EQ(standard_invariants(3), (Invariants{0, 0, -1}));
  EXPECT_EQ(standard_invariants(4), (Invariants{0, -1, -2}));
  EXPECT_EQ(standard_invariants(2), (Invariants{0, 1, 1}));
}

TEST(Standard, NonExactMiddleIsNone) {
  auto alg = poly(101);
  auto k = parse_complex(alg, 1, 2, 1, {{"x"}, {"0"}}, {{"0", "x"}});
  EXPECT_EQ(classify_standard(k).type, 0);
}

TEST(Numerics, GitWeightsExample) {
  GitWeights w = git_weights(1, 0, 0, 5);
  EXPECT_EQ(w.n, 3);
  EXPECT_EQ(w.k, 10);
  EXPECT_EQ(w.l, 16);
  EXPECT_EQ(git_weights(2, -1, 0, 0).k, 3 * (2 - 1) - git_weights(2, -1, 0, 0).n);
}

TEST(Numerics, GitIdentityRandom) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 2000; ++t) {
    long long r = uniform_int(rng, -20, 20), c1 = uniform_int(rng, -20, 20), chi = uniform_int(rng, -20, 20);
    long long m = uniform_int(rng, 0, 30), n1 = uniform_int(rng, 0, 20), dk = uniform_int(rng, 0, 20),
              dl = uniform_int(rng, 0, 20);
    EXPECT_TRUE(git_identity(r, c1, chi, m, n1, dk, dl).holds());
  }
}

TEST(Numerics, Normalize) {
  EXPECT_EQ(normalize_invariants(1, 1, 2), (Invariants{1, 0, 0}));
  EXPECT_EQ(normalize_invariants(1, 0, -1), (Invariants{1, 0, -1}));
  EXPECT_EQ(normalize_invariants(2, -3, 0), (Invariants{2, -1, 1}));
  EXPECT_EQ(normalize_invariants(3, 7, 0).c1, -2);
}

TEST(Numerics, FineModuliAndDimension) {
  for (int n = 1; n <= 10; ++n) {
    EXPECT_TRUE(fine_moduli_predicate(1, 0, 1 - n));
    EXPECT_EQ(moduli_dimension(1, 0, 1 - n), 2 * n);
  }
  EXPECT_FALSE(fine_moduli_predicate(2, 0, 0));
  EXPECT_TRUE(fine_moduli_predicate(3, -1, 0));
  EXPECT_EQ(moduli_dimension(1, 0, 0), 2);
  EXPECT_EQ(moduli_dimension(2, -1, 0), 0);
  EXPECT_EQ(monad_shape(2, 0, 0), (MonadShape{2, 6, 2}));
}

TEST(Numerics, EffectiveMSeparates) {
  long long m = effective_m(1, 3, 1);
  EXPECT_GE(m, 1);
  for (long long n1 = 0; n1 <= 3; ++n1)
    for (long long dk = 0; dk <= 1; ++dk)
      for (long long dl = 0; dl <= 1; ++dl) {
        long long r1 = n1 - dk - dl, c1 = dk - dl, chi1 = n1 - 3 * dl;
        long long x = c1 - r1 * 0, y = chi1 - r1 * 0;
        long long v = x * m + y;
        if (x != 0) EXPECT_EQ(v > 0, x > 0);
      }
}

TEST(Ext, Examples) {
  auto alg = poly(101);
  ExtDims t = ext_dims(trivial(alg), trivial(alg));
  EXPECT_EQ(t.e0, 1);
  EXPECT_EQ(t.e1, 0);
  EXPECT_EQ(t.e2, 0);
  auto p = point_monad(alg);
  ExtDims e = ext_dims(p, p);
  EXPECT_EQ(e.e0, 1);
  EXPECT_EQ(e.e1, 2);
  EXPECT_EQ(e.e2, 0);
  EXPECT_EQ(e.euler(), euler_pairing({1, 0, 0}, {1, 0, 0}));
  ExtDims mixed = ext_dims(trivial(alg), p);
  EXPECT_EQ(mixed.euler(), euler_pairing({1, 0, 1}, {1, 0, 0}));
  ExtDims mixed2 = ext_dims(p, trivial(alg));
  EXPECT_EQ(mixed2.euler(), euler_pairing({1, 0, 0}, {1, 0, 1}));
}

TEST(Ext, RejectsNonMonad) {
  auto alg = poly(101);
  auto k = build_complex(alg, 0, 0, 1, zero_linear<Fp>(0, 0), zero_linear<Fp>(1, 0));
  try {
    ext_dims(k, k);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAMonad);
  }
}

TEST(Stability, KernelOfADestabilizes) {
  // A = 0 leaves O(-1) -> 0 -> 0 as a subcomplex of type (1)
  auto alg = poly(2);
  auto k = parse_complex(alg, 1, 3, 1, {{"0"}, {"0"}, {"0"}}, {{"z", "y", "x"}});
  auto rep = check_semistable(k, {StabilityMode::Semi, {1, 2}});
  EXPECT_EQ(rep.verdict, Stability::Unstable);
  ASSERT_TRUE(rep.witness);
  EXPECT_EQ(rep.witness->n1, 0);
  EXPECT_EQ((Invariants{rep.witness->r1, rep.witness->c1, rep.witness->chi1}), standard_invariants(1));
}
