#include <gtest/gtest.h>

#include <set>

#include "krstrata/alcove_perm.hpp"
#include "krstrata/coxeter_bruhat.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace krs;
using krs::testing::Rng;

namespace {

ExtAffineElement el(std::vector<int> w, std::vector<int> l) { return {Permutation(std::move(w)), IntVector(std::move(l))}; }

const Limits kLimits{};

struct Window {
  PermDatum datum;
  IntVector mu;
};

std::vector<Window> bruhat_windows() {
  std::vector<Window> out;
  for (int n = 1; n <= 2; ++n) {
    for (int e = 1; e <= 2; ++e) {
      IntVector mu = IntVector::zeros(2 * n);
      for (int j = 1; j <= n; ++j) mu(j) = e;
      out.push_back({PermDatum::symplectic(n, e), mu});
    }
  }
  for (int n = 1; n <= 3; ++n) {
    for (int r = 0; r <= n; ++r) {
      IntVector mu = IntVector::zeros(n);
      for (int j = 1; j <= n - r; ++j) mu(j) = 1;
      out.push_back({PermDatum::general_linear(n, 1, r), mu});
    }
  }
  return out;
}

/// {y : y <= x} by the subword property on a reduced expression of x.
std::set<ExtAffineElement> subword_lower_set(const ExtAffineElement& x, const SimpleReflectionSet& set) {
  const ReducedWord rw = reduced_word(x, set, 64);
  const int l = static_cast<int>(rw.word.size());
  std::set<ExtAffineElement> out;
  for (unsigned mask = 0; mask < (1u << l); ++mask) {
    ExtAffineElement y = rw.omega_part;
    for (int k = l - 1; k >= 0; --k) {
      if (mask & (1u << k)) y = set.generators[rw.word[k]] * y;
    }
    out.insert(y);
  }
  return out;
}

}  // namespace

TEST(SimpleReflections, RankTwoSymplectic) {
  const auto set = simple_reflections(GroupFlavor::symplectic(1));
  ASSERT_EQ(set.size(), 2);
  EXPECT_EQ(set.generators[0], el({2, 1}, {1, -1}));
  EXPECT_EQ(set.generators[1], el({2, 1}, {0, 0}));
  EXPECT_EQ(set.omega_generator, el({2, 1}, {1, 0}));
  EXPECT_EQ(set.generators[1] * set.omega_generator, el({1, 2}, {1, 0}));
  EXPECT_EQ(set.generators[0] * set.omega_generator, el({1, 2}, {0, 1}));
}

TEST(SimpleReflections, UnitaryIsRejected) {
  EXPECT_THROW(simple_reflections(GroupFlavor::unitary_ramified(2)), FlavorMismatch);
}

TEST(LengthIm, Examples) {
  const auto gl2 = GroupFlavor::general_linear(2);
  EXPECT_EQ(length_im(el({1, 2}, {1, 0}), gl2), 1);
  EXPECT_EQ(length_im(el({1, 2}, {1, 1}), gl2), 0);
  EXPECT_EQ(length_im(ExtAffineElement::identity(2), gl2), 0);
}

TEST(LengthWord, IdentityAndGenerators) {
  for (const auto& flavor : {GroupFlavor::general_linear(1), GroupFlavor::general_linear(3),
                             GroupFlavor::general_linear(4), GroupFlavor::symplectic(1), GroupFlavor::symplectic(3)}) {
    const auto set = simple_reflections(flavor);
    EXPECT_EQ(length_word(ExtAffineElement::identity(flavor.ambient_rank()), flavor), 0);
    for (const auto& s : set.generators) {
      EXPECT_EQ(length_word(s, flavor), 1);
      EXPECT_EQ(length_im(s, flavor), 1);
    }
  }
}

TEST(BruhatLeq, RankTwoSymplectic) {
  const auto set = simple_reflections(GroupFlavor::symplectic(1));
  const auto tau = set.omega_generator;
  const auto s0tau = set.generators[0] * tau;
  const auto s1tau = set.generators[1] * tau;
  EXPECT_TRUE(bruhat_leq(tau, s1tau, set));
  EXPECT_TRUE(bruhat_leq(tau, s0tau, set));
  EXPECT_FALSE(bruhat_leq(s0tau, s1tau, set));
  EXPECT_FALSE(bruhat_leq(s1tau, s0tau, set));
  EXPECT_FALSE(bruhat_leq(s1tau, tau, set));
  const std::vector<ExtAffineElement> perm{tau, s0tau, s1tau};
  for (const auto& x : perm) {
    EXPECT_TRUE(bruhat_leq(x, x, set));
    for (const auto& y : perm) {
      if (x != y) EXPECT_FALSE(bruhat_leq(x, y, set) && bruhat_leq(y, x, set));
      for (const auto& z : perm) {
        if (bruhat_leq(x, y, set) && bruhat_leq(y, z, set)) EXPECT_TRUE(bruhat_leq(x, z, set));
      }
    }
  }
}

TEST(BruhatLeq, DifferentOmegaComponentsAreIncomparable) {
  const auto set = simple_reflections(GroupFlavor::general_linear(2));
  EXPECT_FALSE(bruhat_leq(ExtAffineElement::identity(2), el({1, 2}, {1, 0}), set));
}

TEST(AdmissibleSet, Examples) {
  const auto gsp = GroupFlavor::symplectic(1);
  EXPECT_EQ(admissible_set(IntVector({1, 0}), gsp, kLimits), enumerate_perm(PermDatum::symplectic(1, 1), kLimits));
  EXPECT_EQ(admissible_set(IntVector({0, 0, 0}), GroupFlavor::general_linear(3), kLimits),
            (std::vector<ExtAffineElement>{ExtAffineElement::identity(3)}));
  EXPECT_EQ(admissible_set(IntVector({1, 0}), GroupFlavor::general_linear(2), kLimits),
            enumerate_perm(PermDatum::general_linear(2, 1, 1), kLimits));
  EXPECT_THROW(admissible_set(IntVector({1, 0, 0, 0}), GroupFlavor::symplectic(2), kLimits), FlavorMismatch);
}

TEST(ClosureAndMaximal, RankTwoSymplectic) {
  const auto set = simple_reflections(GroupFlavor::symplectic(1));
  const auto perm = enumerate_perm(PermDatum::symplectic(1, 1), kLimits);
  const auto tau = set.omega_generator;
  const auto s0tau = set.generators[0] * tau;
  const auto s1tau = set.generators[1] * tau;
  auto sorted = [](std::vector<ExtAffineElement> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  EXPECT_EQ(sorted(closure(s1tau, perm, set)), sorted({tau, s1tau}));
  EXPECT_EQ(closure(tau, perm, set), std::vector<ExtAffineElement>{tau});
  EXPECT_EQ(sorted(maximal_elements(perm, set)), sorted({s0tau, s1tau}));
  EXPECT_THROW(closure(ExtAffineElement::identity(2), perm, set), Error);
}

TEST(FormatWord, Examples) {
  const auto set = simple_reflections(GroupFlavor::symplectic(1));
  EXPECT_EQ(format_word(set.omega_generator, set), "t");
  EXPECT_EQ(format_word(set.generators[0] * set.omega_generator, set), "s0.t");
  EXPECT_EQ(format_word(ExtAffineElement::identity(2), set), "1");
}

// ---- properties ------------------------------------------------------------------------------

TEST(CoxeterProperty, GeneratorSetInvariants) {
  for (const auto& flavor : {GroupFlavor::general_linear(2), GroupFlavor::general_linear(5), GroupFlavor::symplectic(1),
                             GroupFlavor::symplectic(2), GroupFlavor::symplectic(4)}) {
    const auto set = simple_reflections(flavor);
    const int m = flavor.ambient_rank();
    std::set<ExtAffineElement> gens(set.generators.begin(), set.generators.end());
    EXPECT_EQ(length_im(set.omega_generator, flavor), 0);
    for (const auto& s : set.generators) {
      EXPECT_TRUE(in_flavor(s, flavor));
      EXPECT_EQ(s * s, ExtAffineElement::identity(m));
      EXPECT_EQ(gens.count(set.omega_generator * s * inverse(set.omega_generator)), 1u);
    }
  }
}

TEST(CoxeterProperty, LengthAgreesWithHyperplaneCount) {
  Rng rng(31);
  for (int trial = 0; trial < 3000; ++trial) {
    const bool symplectic = trial % 2 == 0;
    const int n = krs::testing::uniform(rng, 1, symplectic ? 3 : 5);
    const auto flavor = symplectic ? GroupFlavor::symplectic(n) : GroupFlavor::general_linear(n);
    const auto x = symplectic ? krs::testing::random_symplectic_element(rng, n) : krs::testing::random_element(rng, n);
    const int expected = oracle::separating_hyperplanes(x, flavor);
    ASSERT_EQ(length_im(x, flavor), expected) << format_compact(x);
    ASSERT_EQ(length_word(x, flavor), expected) << format_compact(x);
  }
}

TEST(CoxeterProperty, LengthSymmetries) {
  Rng rng(32);
  for (int trial = 0; trial < 2000; ++trial) {
    const bool symplectic = trial % 2 == 0;
    const int n = krs::testing::uniform(rng, 1, symplectic ? 3 : 5);
    const auto flavor = symplectic ? GroupFlavor::symplectic(n) : GroupFlavor::general_linear(n);
    const auto set = simple_reflections(flavor);
    const auto x = symplectic ? krs::testing::random_symplectic_element(rng, n) : krs::testing::random_element(rng, n);
    const auto tau = set.omega_generator;
    const int l = length_im(x, flavor);
    ASSERT_EQ(length_im(inverse(x), flavor), l);
    ASSERT_EQ(length_im(tau * x * inverse(tau), flavor), l);
    for (const auto& s : set.generators) ASSERT_EQ(std::abs(length_im(s * x, flavor) - l), 1);
  }
}

TEST(CoxeterProperty, BruhatMatchesSubwordPropertyOnWindows) {
  for (const auto& win : bruhat_windows()) {
    const auto set = simple_reflections(win.datum.flavor);
    const auto perm = enumerate_perm(win.datum, kLimits);
    for (const auto& y : perm) {
      const auto below = subword_lower_set(y, set);
      for (const auto& x : perm) ASSERT_EQ(bruhat_leq(x, y, set), below.count(x) > 0);
    }
  }
}

TEST(CoxeterProperty, BruhatIsGradedPartialOrderOnWindows) {
  for (const auto& win : bruhat_windows()) {
    const auto flavor = win.datum.flavor;
    const auto set = simple_reflections(flavor);
    const auto perm = enumerate_perm(win.datum, kLimits);
    for (const auto& x : perm) {
      ASSERT_TRUE(bruhat_leq(x, x, set));
      for (const auto& y : perm) {
        if (x != y && bruhat_leq(x, y, set)) {
          ASSERT_FALSE(bruhat_leq(y, x, set));
          ASSERT_LT(length_im(x, flavor), length_im(y, flavor));
        }
      }
    }
    const auto roots = positive_roots(flavor);
    const auto covers =
        covering_relations(perm, set, [&](const ExtAffineElement& x) { return length_im(x, roots); });
    for (auto [lo, hi] : covers) {
      ASSERT_EQ(length_im(perm[hi], flavor), length_im(perm[lo], flavor) + 1);
      // nothing strictly in between
      for (const auto& z : perm) {
        if (z != perm[lo] && z != perm[hi]) {
          ASSERT_FALSE(bruhat_leq(perm[lo], z, set) && bruhat_leq(z, perm[hi], set));
        }
      }
    }
  }
}

TEST(CoxeterProperty, MaximalPermissibleElementsAreTranslations) {
  for (const auto& win : bruhat_windows()) {
    const auto set = simple_reflections(win.datum.flavor);
    auto maxima = maximal_elements(enumerate_perm(win.datum, kLimits), set);
    std::sort(maxima.begin(), maxima.end());
    ASSERT_EQ(maxima, translation_orbit(win.mu, win.datum.flavor));
  }
}

TEST(CoxeterProperty, AdmissibleSetIsDownwardClosureByBruhatTest) {
  // Every element of the candidate box lies in Adm(μ) iff it is below some u^{w(μ)}.
  for (const auto& win : bruhat_windows()) {
    const auto flavor = win.datum.flavor;
    const auto set = simple_reflections(flavor);
    const auto orbit = translation_orbit(win.mu, flavor);
    const auto adm = admissible_set(win.mu, flavor, kLimits);
    const std::set<ExtAffineElement> adm_set(adm.begin(), adm.end());
    const int m = flavor.ambient_rank();
    const int hi = win.datum.e + 1;
    for (const auto& w : enumerate_weyl(flavor)) {
      for_each_bounded_vector(m, -1, hi, win.mu.sum(), [&](const IntVector& l) {
        const ExtAffineElement x(w, l);
        if (!in_flavor(x, flavor)) return;
        const bool below = std::any_of(orbit.begin(), orbit.end(), [&](const auto& t) { return bruhat_leq(x, t, set); });
        ASSERT_EQ(below, adm_set.count(x) > 0) << format_compact(x);
      });
    }
  }
}
