#pragma once

// Executable versions of the structural results: density of the ordinary locus, the
// Hilbert–Blumenthal case, and the dimension of the p-rank 0 locus for split GU over Q.
//
// Dimensions are reported as lengths of index elements. Non-emptiness of every KR stratum is
// taken for granted, so "dimension" below always means "maximal length over the index set".

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "krstrata/alcove_perm.hpp"
#include "krstrata/coxeter_bruhat.hpp"
#include "krstrata/errors.hpp"
#include "krstrata/prank.hpp"
#include "krstrata/weyl_core.hpp"

namespace krs {

struct StratumRecord {
  FrobeniusTuple index;
  int prank = 0;
  std::optional<int> length;  // Σ_σ ℓ(x_σ); absent for ramified GU
  bool is_maximal = false;
};

/// All f-tuples of elements of `perm`, lexicographic.
inline std::vector<FrobeniusTuple> product_tuples(const std::vector<ExtAffineElement>& perm, int f) {
  std::vector<FrobeniusTuple> out;
  if (perm.empty()) return out;
  std::vector<std::size_t> digits(f, 0);
  while (true) {
    std::vector<ExtAffineElement> components;
    components.reserve(f);
    for (std::size_t d : digits) components.push_back(perm[d]);
    out.emplace_back(std::move(components));
    int pos = f - 1;
    while (pos >= 0 && ++digits[pos] == perm.size()) digits[pos--] = 0;
    if (pos < 0) break;
  }
  return out;
}

// ---------------------------------------------------------------------------------------------
// Ordinary locus

struct DensityReport {
  int e = 1, f = 1, n = 1;
  IntVector mu;                                // (e^n, 0^n)
  std::vector<ExtAffineElement> orbit;         // {u^{w(μ)}}
  std::vector<ExtAffineElement> perm_maximal;  // maximal elements of Perm
  long long maximal_tuples = 0;                // |maximal elements of ∏Perm|
  long long diagonal_tuples = 0;               // how many of them lie on the diagonal of ∏{u^{w(μ)}}
  bool dense = false;
};

/// The ordinary locus is dense iff every maximal element of ∏_σ Perm lies on the diagonal of
/// ∏_σ{u^{w(μ)}}. Maximal elements of a product order are the products of maximal elements.
inline DensityReport ordinary_density(int e, int f, int n, const Limits& limits = Limits::from_env()) {
  if (e < 1 || f < 1 || n < 1) throw Error("density parameters must be at least 1");
  const GroupFlavor flavor = GroupFlavor::symplectic(n);
  check_rank_window(flavor.ambient_rank(), limits);
  DensityReport report;
  report.e = e;
  report.f = f;
  report.n = n;
  report.mu = IntVector::zeros(2 * n);
  for (int j = 1; j <= n; ++j) report.mu(j) = e;
  report.orbit = translation_orbit(report.mu, flavor);

  const auto perm = enumerate_perm(PermDatum::symplectic(n, e), limits);
  const SimpleReflectionSet set = simple_reflections(flavor);
  report.perm_maximal = maximal_elements(perm, set);
  if (report.perm_maximal != report.orbit) {
    throw InvariantFailure("maximal permissible elements differ from the translations u^{w(mu)}");
  }
  const std::set<ExtAffineElement> orbit(report.orbit.begin(), report.orbit.end());
  for (const auto& t : product_tuples(report.perm_maximal, f)) {
    ++report.maximal_tuples;
    const bool constant = std::all_of(t.begin(), t.end(), [&](const auto& x) { return x == t[0]; });
    if (constant && orbit.count(t[0])) ++report.diagonal_tuples;
  }
  report.dense = report.maximal_tuples == report.diagonal_tuples;
  return report;
}

// ---------------------------------------------------------------------------------------------
// Hilbert–Blumenthal: GSp with e = 1, f = g, n = 1

struct HbReport {
  int g = 2;
  ExtAffineElement tau, s0_tau, s1_tau;
  std::vector<StratumRecord> strata;                   // all 3^g strata
  std::vector<FrobeniusTuple> ordinary;                // p-rank g
  std::vector<FrobeniusTuple> maximal;                 // ∏{s1τ, s0τ}
  std::vector<FrobeniusTuple> closure_intersection;    // closure(x1) ∩ closure(x2)
  std::map<int, int> prank_histogram;                  // p-rank -> number of strata
  bool pranks_zero_or_g = false;
  bool intersection_prank_zero = false;
  bool prank_zero_covered = false;  // p-rank 0 strata = union of closures of the other maximal elements
};

inline constexpr int kMaxHbGenus = 6;

inline HbReport hb_report(int g) {
  if (g < 2) throw Error("hb_report needs g >= 2");
  if (g > kMaxHbGenus) throw WindowExceeded("hb_report is limited to g <= " + std::to_string(kMaxHbGenus));
  const GroupFlavor flavor = GroupFlavor::symplectic(1);
  const SimpleReflectionSet set = simple_reflections(flavor);
  const PositiveRootSystem roots = positive_roots(flavor);
  const StrataConfig cfg = StrataConfig::symplectic(1, g, 1);

  HbReport report;
  report.g = g;
  report.tau = set.omega_generator;
  report.s0_tau = set.generators[0] * report.tau;
  report.s1_tau = set.generators[1] * report.tau;

  const auto perm = enumerate_perm(PermDatum::symplectic(1, 1));
  const auto tuples = product_tuples(perm, g);
  const auto maximal = maximal_elements(tuples, set);
  const std::set<FrobeniusTuple> maximal_set(maximal.begin(), maximal.end());
  report.maximal = maximal;

  for (const auto& t : tuples) {
    StratumRecord rec{t, prank_sym(t, cfg), length_im(t, roots), maximal_set.count(t) > 0};
    ++report.prank_histogram[rec.prank];
    if (rec.prank == g) report.ordinary.push_back(t);
    report.strata.push_back(std::move(rec));
  }
  report.pranks_zero_or_g = std::all_of(report.strata.begin(), report.strata.end(),
                                        [g](const StratumRecord& r) { return r.prank == 0 || r.prank == g; });

  const FrobeniusTuple x1(std::vector<ExtAffineElement>(g, report.s1_tau));
  const FrobeniusTuple x2(std::vector<ExtAffineElement>(g, report.s0_tau));
  const auto c1 = closure(x1, tuples, set);
  const auto c2 = closure(x2, tuples, set);
  std::set_intersection(c1.begin(), c1.end(), c2.begin(), c2.end(), std::back_inserter(report.closure_intersection));

  std::map<FrobeniusTuple, int> prank_of;
  for (const auto& rec : report.strata) prank_of[rec.index] = rec.prank;
  report.intersection_prank_zero =
      std::all_of(report.closure_intersection.begin(), report.closure_intersection.end(),
                  [&](const FrobeniusTuple& t) { return prank_of[t] == 0; });

  std::set<FrobeniusTuple> covered;
  bool closures_prank_zero = true;
  for (const auto& x : maximal) {
    if (x == x1 || x == x2) continue;
    for (const auto& y : closure(x, tuples, set)) {
      covered.insert(y);
      closures_prank_zero = closures_prank_zero && prank_of[y] == 0;
    }
  }
  std::set<FrobeniusTuple> prank_zero;
  for (const auto& rec : report.strata) {
    if (rec.prank == 0) prank_zero.insert(rec.index);
  }
  report.prank_zero_covered = closures_prank_zero && covered == prank_zero;
  return report;
}

// ---------------------------------------------------------------------------------------------
// p-rank 0 locus for split GU over Q

struct PermutationStats {
  Permutation sigma;
  int a = 0, a_tilde = 0, b = 0, b_tilde = 0;
  int N = 0;
};

/// Counts of the four patterns
///   A: i < j < σ(j) < σ(i),   Ã: σ(j) < σ(i) < i < j,
///   B: σ(i) < i < j < σ(j),   B̃: i < σ(i) < σ(j) < j,
/// over ordered pairs (i, j).
inline PermutationStats n_sigma_stats(const Permutation& sigma) {
  PermutationStats s{sigma};
  const int n = sigma.rank();
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      const int si = sigma(i), sj = sigma(j);
      if (i < j && j < sj && sj < si) ++s.a;
      if (sj < si && si < i && i < j) ++s.a_tilde;
      if (si < i && i < j && j < sj) ++s.b;
      if (i < si && si < sj && sj < j) ++s.b_tilde;
    }
  }
  s.N = s.a + s.a_tilde + s.b + s.b_tilde;
  return s;
}

inline int descents_below(const Permutation& w) {
  int count = 0;
  for (int i = 1; i <= w.rank(); ++i) count += w(i) < i ? 1 : 0;
  return count;
}

/// W_{n,r}: fixed-point-free w ∈ S_n with #{i : w(i) < i} = r, lexicographic.
/// r = 0 and r = n are allowed and give the empty set.
inline std::vector<Permutation> enumerate_wnr(int n, int r, const Limits& limits = Limits::from_env()) {
  if (n < 1 || r < 0 || r > n) throw Error("enumerate_wnr needs n >= 1 and 0 <= r <= n");
  check_rank_window(n, limits);
  std::vector<Permutation> out;
  std::vector<int> images(n);
  std::iota(images.begin(), images.end(), 1);
  do {
    Permutation w(images);
    if (w.fixed_points().empty() && descents_below(w) == r) out.push_back(std::move(w));
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

/// min((r-1)(n-r), r(n-r-1)).
inline int prank0_closed_form(int n, int r) { return std::min((r - 1) * (n - r), r * (n - r - 1)); }

/// (1,2)(3,4)···(2r-3,2r-2)(2r-1,2r,...,n), for 1 <= r <= n/2.
inline Permutation prank0_witness(int n, int r) {
  if (r < 1 || 2 * r > n) throw Error("witness needs 1 <= r <= n/2");
  std::vector<std::vector<int>> cycles;
  for (int k = 1; k < r; ++k) cycles.push_back({2 * k - 1, 2 * k});
  std::vector<int> tail;
  for (int j = 2 * r - 1; j <= n; ++j) tail.push_back(j);
  cycles.push_back(tail);
  return Permutation::from_cycles(n, cycles);
}

struct Prank0Report {
  int n = 2, r = 1;
  int dimension = 0;    // max N_σ over W_{n,r}
  int closed_form = 0;  // min((r-1)(n-r), r(n-r-1))
  Permutation attaining;
  Permutation witness;  // explicit construction (inverted from W_{n,n-r} when r > n/2)
  int witness_N = 0;
  bool witness_in_wnr = false;

  bool consistent() const {
    return dimension == closed_form && witness_in_wnr && witness_N == closed_form;
  }
};

inline Prank0Report prank0_dimension(int n, int r, const Limits& limits = Limits::from_env()) {
  if (n < 2 || r < 1 || r > n - 1) throw Error("prank0_dimension needs 1 <= r <= n-1");
  Prank0Report report;
  report.n = n;
  report.r = r;
  report.closed_form = prank0_closed_form(n, r);
  report.dimension = -1;
  for (const auto& sigma : enumerate_wnr(n, r, limits)) {
    const int value = n_sigma_stats(sigma).N;
    if (value > report.dimension) {
      report.dimension = value;
      report.attaining = sigma;
    }
  }
  report.witness = 2 * r <= n ? prank0_witness(n, r) : prank0_witness(n, n - r).inverse();
  report.witness_N = n_sigma_stats(report.witness).N;
  report.witness_in_wnr = report.witness.fixed_points().empty() && descents_below(report.witness) == r;
  return report;
}

/// λ(w)(i) = 0 if w^{-1}(i) > i, 1 if w^{-1}(i) < i.
inline IntVector perm0_translation(const Permutation& w) {
  const Permutation winv = w.inverse();
  IntVector lambda = IntVector::zeros(w.rank());
  for (int i = 1; i <= w.rank(); ++i) lambda(i) = winv(i) < i ? 1 : 0;
  return lambda;
}

struct Perm0Report {
  int n = 2, r = 1;
  std::vector<ExtAffineElement> perm0;  // p-rank 0 part of Perm_r (e = 1)
  std::vector<Permutation> wnr;
  bool projection_bijective = false;
  bool inverse_matches = false;  // x = u^{λ(w)}·w for each x
  bool lengths_match = false;    // ℓ(u^{λ(w)}·w) = N_w
  int max_length = 0;

  bool ok() const { return projection_bijective && inverse_matches && lengths_match; }
};

inline Perm0Report perm0_bijection_check(int n, int r, const Limits& limits = Limits::from_env()) {
  if (n < 1 || r < 0 || r > n) throw Error("perm0_bijection_check needs 0 <= r <= n");
  Perm0Report report;
  report.n = n;
  report.r = r;
  const PermDatum datum = PermDatum::general_linear(n, 1, r);
  const StrataConfig cfg = StrataConfig::unitary_split(1, 1, n, r);
  for (const auto& x : enumerate_perm(datum, limits)) {
    if (prank_uni_split(FrobeniusTuple({x}), cfg) == 0) report.perm0.push_back(x);
  }
  report.wnr = enumerate_wnr(n, r, limits);

  std::vector<Permutation> projected;
  for (const auto& x : report.perm0) projected.push_back(x.w);
  std::sort(projected.begin(), projected.end());
  const bool injective = std::adjacent_find(projected.begin(), projected.end()) == projected.end();
  report.projection_bijective = injective && projected == report.wnr;

  const GroupFlavor flavor = GroupFlavor::general_linear(n);
  report.inverse_matches = true;
  report.lengths_match = true;
  for (const auto& x : report.perm0) {
    const ExtAffineElement expected = from_translation_first(perm0_translation(x.w), x.w);
    report.inverse_matches = report.inverse_matches && expected == x;
    const int length = length_im(x, flavor);
    report.max_length = std::max(report.max_length, length);
    report.lengths_match = report.lengths_match && length == n_sigma_stats(x.w).N;
  }
  return report;
}

}  // namespace krs
