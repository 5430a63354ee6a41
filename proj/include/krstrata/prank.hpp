#pragma once

// p-ranks of KR strata and the Newton slope-zero multiplicity of Frobenius tuples.
//
// All formulas read a stored component (w, λ) as x_σ = w_σ·u^{λ_σ}, i.e. exactly the storage
// convention A_w·u^λ; no conversion is applied.

#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "krstrata/alcove_perm.hpp"
#include "krstrata/errors.hpp"
#include "krstrata/weyl_core.hpp"

namespace krs {

using Rational = boost::rational<long long>;
using RationalVector = std::vector<Rational>;

/// Parameters of one of the four moduli problems.
///
/// symplectic (e, f, n): g = e·f.   ramified GU (e_0, f, n): e = 2·e_0, g = e·f.
/// inert GU (e, f_0, n): g = 2·e·f_0.   split GU (e, f_0, n, r): g_0 = e·f_0.
/// `f` is always the tuple length (f or f_0).
struct StrataConfig {
  enum class Case { Symplectic, UnitaryRamified, UnitaryInert, UnitarySplit };

  Case kind = Case::Symplectic;
  int e = 1;
  int f = 1;
  int n = 1;
  std::optional<int> r;

  static StrataConfig symplectic(int e, int f, int n) { return {Case::Symplectic, e, f, n, std::nullopt}; }
  static StrataConfig unitary_ramified(int e0, int f, int n) { return {Case::UnitaryRamified, e0, f, n, std::nullopt}; }
  static StrataConfig unitary_inert(int e, int f0, int n) { return {Case::UnitaryInert, e, f0, n, std::nullopt}; }
  static StrataConfig unitary_split(int e, int f0, int n, int r) { return {Case::UnitarySplit, e, f0, n, r}; }

  /// Ramification index as it enters λ' and the alcove bound (2·e_0 in the ramified case).
  int ramification() const { return kind == Case::UnitaryRamified ? 2 * e : e; }

  /// The factor in front of the count: g, or g_0 in the split case.
  int multiplier() const {
    switch (kind) {
      case Case::Symplectic: return e * f;
      case Case::UnitaryRamified: return 2 * e * f;
      case Case::UnitaryInert: return 2 * e * f;
      case Case::UnitarySplit: return e * f;
    }
    return 0;
  }

  void validate() const {
    if (e < 1 || f < 1 || n < 1) throw Error("strata parameters e, f, n must be at least 1");
    if (r && (*r < 0 || *r > n * e)) throw Error("r must satisfy 0 <= r <= n*e");
    if (kind == Case::UnitarySplit && !r) throw Error("the split case needs r");
  }
};

namespace detail {

inline void require_tuple_length(const FrobeniusTuple& t, const StrataConfig& cfg) {
  if (t.size() != cfg.f) {
    throw Error("tuple has " + std::to_string(t.size()) + " components, expected " + std::to_string(cfg.f));
  }
}

inline void require_permissible(const FrobeniusTuple& t, const PermDatum& d) {
  for (int k = 0; k < t.size(); ++k) {
    if (t[k].rank() != d.rank()) throw RankMismatch("tuple rank does not match the configuration");
    if (!is_permissible(t[k], d)) {
      throw Error("component " + std::to_string(k) + " (" + format_compact(t[k]) + ") is not permissible");
    }
  }
}

/// Datum for the r-permissible checks of the GU inert and split cases. Without an explicit r,
/// r is read off the first component and must be shared by all of them.
inline PermDatum linear_datum(const FrobeniusTuple& t, const StrataConfig& cfg) {
  const int r = cfg.r ? *cfg.r : cfg.n * cfg.e - static_cast<int>(t[0].lambda.sum());
  return PermDatum::general_linear(cfg.n, cfg.e, r);
}

/// #{i : pred(x_σ, i) for all σ}.
template <typename Pred>
int count_common(const FrobeniusTuple& t, Pred&& pred) {
  int count = 0;
  for (int i = 1; i <= t.rank(); ++i) {
    bool all = true;
    for (const auto& x : t) all = all && pred(x, i);
    count += all ? 1 : 0;
  }
  return count;
}

inline bool fixed_with_value(const ExtAffineElement& x, int i, int value) {
  return x.w(i) == i && x.lambda(i) == value;
}

}  // namespace detail

/// g·#{1 <= i <= 2n : w_σ(i) = i and λ_σ(i) = 0 for all σ}.
inline int prank_sym(const FrobeniusTuple& t, const StrataConfig& cfg) {
  cfg.validate();
  detail::require_tuple_length(t, cfg);
  detail::require_permissible(t, PermDatum::symplectic(cfg.n, cfg.e));
  return cfg.multiplier() *
         detail::count_common(t, [](const ExtAffineElement& x, int i) { return detail::fixed_with_value(x, i, 0); });
}

/// Same count over 1 <= i <= n for ramified GU.
inline int prank_uni_ramified(const FrobeniusTuple& t, const StrataConfig& cfg) {
  cfg.validate();
  detail::require_tuple_length(t, cfg);
  detail::require_permissible(t, PermDatum::unitary_ramified(cfg.n, cfg.e));
  return cfg.multiplier() *
         detail::count_common(t, [](const ExtAffineElement& x, int i) { return detail::fixed_with_value(x, i, 0); });
}

/// (w', λ') with w'(i) = n+1-w(n+1-i) and λ'(i) = e-λ(n+1-i). Equals u^e·(x^τ)^{-1}.
inline ExtAffineElement xprime(const ExtAffineElement& x, int e) {
  const int n = x.rank();
  std::vector<int> w(n), l(n);
  for (int i = 1; i <= n; ++i) {
    w[i - 1] = n + 1 - x.w(n + 1 - i);
    l[i - 1] = e - x.lambda(n + 1 - i);
  }
  return {Permutation(std::move(w)), IntVector(std::move(l))};
}

/// g·#{i : w_σ(i) = w'_σ(i) = i and λ_σ(i) = λ'_σ(i) = 0 for all σ}.
inline int prank_uni_inert(const FrobeniusTuple& t, const StrataConfig& cfg) {
  cfg.validate();
  detail::require_tuple_length(t, cfg);
  detail::require_permissible(t, detail::linear_datum(t, cfg));
  const int e = cfg.e;
  return cfg.multiplier() * detail::count_common(t, [e](const ExtAffineElement& x, int i) {
           const ExtAffineElement xp = xprime(x, e);
           return detail::fixed_with_value(x, i, 0) && detail::fixed_with_value(xp, i, 0);
         });
}

/// g_0·#{i : w_σ(i) = i, λ_σ(i) = 0 ∀σ} + g_0·#{i : w_σ(i) = i, λ_σ(i) = e ∀σ}.
inline int prank_uni_split(const FrobeniusTuple& t, const StrataConfig& cfg) {
  cfg.validate();
  detail::require_tuple_length(t, cfg);
  detail::require_permissible(t, detail::linear_datum(t, cfg));
  const int e = cfg.e;
  const int zeros =
      detail::count_common(t, [](const ExtAffineElement& x, int i) { return detail::fixed_with_value(x, i, 0); });
  const int tops =
      detail::count_common(t, [e](const ExtAffineElement& x, int i) { return detail::fixed_with_value(x, i, e); });
  return cfg.multiplier() * (zeros + tops);
}

/// Dispatch on cfg.kind.
inline int prank(const FrobeniusTuple& t, const StrataConfig& cfg) {
  switch (cfg.kind) {
    case StrataConfig::Case::Symplectic: return prank_sym(t, cfg);
    case StrataConfig::Case::UnitaryRamified: return prank_uni_ramified(t, cfg);
    case StrataConfig::Case::UnitaryInert: return prank_uni_inert(t, cfg);
    case StrataConfig::Case::UnitarySplit: return prank_uni_split(t, cfg);
  }
  return 0;
}

struct NewtonResult {
  long long period = 1;            // N
  std::vector<RationalVector> nu;  // ν_ξ for ξ = 0..f-1
  int zero_multiplicity = 0;
};

/// Checks λ_ξ(i) >= 0 and (λ_ξ(i) = 0 ⇒ w_ξ(i) <= i); throws on the first offending (ξ, i).
inline void check_newton_hypothesis(const FrobeniusTuple& t) {
  for (int xi = 0; xi < t.size(); ++xi) {
    const auto& x = t[xi];
    for (int i = 1; i <= x.rank(); ++i) {
      if (x.lambda(i) < 0 || (x.lambda(i) == 0 && x.w(i) > i)) {
        throw HypothesisViolation("hypothesis fails at component " + std::to_string(xi) + ", index " +
                                      std::to_string(i) + " (" + format_compact(x) + ")",
                                  xi, i);
      }
    }
  }
}

/// ν = (1/Nf)·∏_{k=0}^{Nf-1} σ^k(x), with N the order of the permutation part of the f-fold
/// twisted product; zero_multiplicity = #{i : ν_ξ(i) = 0}, which does not depend on ξ.
inline NewtonResult newton_vector(const FrobeniusTuple& t) {
  check_newton_hypothesis(t);
  const int f = t.size();
  const int m = t.rank();
  NewtonResult result;
  // Component ξ of the f-fold product is x_ξ·x_{ξ-1}···x_{ξ-f+1}.
  std::vector<ExtAffineElement> twisted;
  for (int xi = 0; xi < f; ++xi) {
    ExtAffineElement q = ExtAffineElement::identity(m);
    for (int k = 0; k < f; ++k) q = q * t[((xi - k) % f + f) % f];
    twisted.push_back(q);
  }
  result.period = twisted.front().w.order();
  const long long denom = result.period * f;
  for (int xi = 0; xi < f; ++xi) {
    const ExtAffineElement full = power(twisted[xi], result.period);
    if (!full.is_translation()) throw InvariantFailure("twisted power is not a translation");
    RationalVector nu;
    for (int i = 1; i <= m; ++i) nu.emplace_back(full.lambda(i), denom);
    result.nu.push_back(std::move(nu));
  }
  auto zeros_at = [&](int xi) {
    int count = 0;
    for (const auto& v : result.nu[xi]) count += v.numerator() == 0 ? 1 : 0;
    return count;
  };
  result.zero_multiplicity = zeros_at(0);
  for (int xi = 1; xi < f; ++xi) {
    if (zeros_at(xi) != result.zero_multiplicity) throw InvariantFailure("zero multiplicity depends on the component");
  }
  return result;
}

}  // namespace krs
