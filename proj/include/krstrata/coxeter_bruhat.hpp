#pragma once

// Lengths and the Bruhat order on extended affine Weyl groups of GL_n and GSp_2n.
//
// Geometry used throughout: W̃ acts on R^m by (x·v)(w(j)) = v(j) + λ(j) (the action on exponent
// vectors of monomial lattices). The base alcove is the open simplex spanned by the standard
// vertices ω_0..ω_{m-1}; its barycentre p(j) = -(m-j)/m lies off every wall v_a - v_b ∈ Z. A
// simple reflection s is a left descent of x iff its wall separates p from x·p.
//
// W̃ = W_a ⋊ Ω where Ω = <τ> stabilises the base alcove. Length and order extend from W_a by
// ℓ(x_a τ^k) = ℓ(x_a) and x_a τ^j <= y_a τ^k iff j = k and x_a <= y_a.

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "krstrata/alcove_perm.hpp"
#include "krstrata/errors.hpp"
#include "krstrata/weyl_core.hpp"

namespace krs {

/// The affine hyperplane v_a - v_b = k.
struct Wall {
  int a;
  int b;
  int k;
};

struct SimpleReflectionSet {
  GroupFlavor flavor;
  std::vector<ExtAffineElement> generators;  // s_0, s_1, ..., s_k
  std::vector<Wall> walls;                   // wall of each generator
  ExtAffineElement omega_generator;          // τ

  int size() const { return static_cast<int>(generators.size()); }
};

namespace detail {

inline void require_bruhat_flavor(const GroupFlavor& flavor) {
  if (flavor.kind == GroupFlavor::Kind::UnitaryRamified) {
    throw FlavorMismatch("length and Bruhat order are only provided for gl and gsp");
  }
}

inline Permutation transposition_product(int m, const std::vector<std::pair<int, int>>& swaps) {
  std::vector<int> images(m);
  std::iota(images.begin(), images.end(), 1);
  for (auto [a, b] : swaps) std::swap(images[a - 1], images[b - 1]);
  return Permutation(std::move(images));
}

}  // namespace detail

/// GL_n: s_i = (i,i+1), s_0 = (1,n)u^{(1,0,..,0,-1)}, τ = (1 2 ... n)u^{(0,..,0,-1)} sending Λ̃_i to Λ̃_{i+1}.
/// GSp_2n: s_i = (i,i+1)(2n-i,2n+1-i) for i < n, s_n = (n,n+1), s_0 = (1,2n)u^{(1,0,..,0,-1)},
/// τ = (j ↦ j+n mod 2n)u^{(1^n,0^n)}, which sends Λ̃_i to u·Λ̃_{i+n}.
inline SimpleReflectionSet simple_reflections(const GroupFlavor& flavor) {
  detail::require_bruhat_flavor(flavor);
  const int m = flavor.ambient_rank();
  SimpleReflectionSet set{flavor, {}, {}, ExtAffineElement::identity(m)};
  if (m >= 2) {
    IntVector shift0 = IntVector::zeros(m);
    shift0(1) = 1;
    shift0(m) = -1;
    set.generators.emplace_back(detail::transposition_product(m, {{1, m}}), shift0);
    set.walls.push_back({1, m, -1});
  }
  if (flavor.kind == GroupFlavor::Kind::GeneralLinear) {
    for (int i = 1; i < m; ++i) {
      set.generators.push_back(ExtAffineElement::permutation(detail::transposition_product(m, {{i, i + 1}})));
      set.walls.push_back({i, i + 1, 0});
    }
    std::vector<int> cycle(m);
    for (int j = 1; j <= m; ++j) cycle[j - 1] = j % m + 1;
    IntVector lambda = IntVector::zeros(m);
    lambda(m) = -1;
    set.omega_generator = ExtAffineElement(Permutation(cycle), lambda);
  } else {
    const int n = flavor.n;
    for (int i = 1; i < n; ++i) {
      set.generators.push_back(ExtAffineElement::permutation(
          detail::transposition_product(m, {{i, i + 1}, {m - i, m + 1 - i}})));
      set.walls.push_back({i, i + 1, 0});
    }
    set.generators.push_back(ExtAffineElement::permutation(detail::transposition_product(m, {{n, n + 1}})));
    set.walls.push_back({n, n + 1, 0});
    std::vector<int> half_turn(m);
    for (int j = 1; j <= m; ++j) half_turn[j - 1] = (j + n - 1) % m + 1;
    IntVector lambda = IntVector::zeros(m);
    for (int j = 1; j <= n; ++j) lambda(j) = 1;
    set.omega_generator = ExtAffineElement(Permutation(half_turn), lambda);
  }
  return set;
}

/// Positive roots as GL functionals λ ↦ λ_a - λ_b with a < b.
struct PositiveRootSystem {
  GroupFlavor flavor;
  std::vector<std::pair<int, int>> roots;
};

/// GL_n: all a < b. GSp_2n: λ_i - λ_j and λ_i - λ_{2n+1-j} (i < j <= n), and λ_i - λ_{2n+1-i}.
inline PositiveRootSystem positive_roots(const GroupFlavor& flavor) {
  detail::require_bruhat_flavor(flavor);
  PositiveRootSystem system{flavor, {}};
  const int m = flavor.ambient_rank();
  if (flavor.kind == GroupFlavor::Kind::GeneralLinear) {
    for (int a = 1; a <= m; ++a) {
      for (int b = a + 1; b <= m; ++b) system.roots.emplace_back(a, b);
    }
  } else {
    const int n = flavor.n;
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        system.roots.emplace_back(i, j);
        system.roots.emplace_back(i, m + 1 - j);
      }
      system.roots.emplace_back(i, m + 1 - i);
    }
  }
  return system;
}

/// Iwahori–Matsumoto length. With x = u^μ·w,
///   ℓ(x) = Σ_{β>0, w^{-1}β>0} |<β,μ>| + Σ_{β>0, w^{-1}β<0} |<β,μ> + 1|.
inline int length_im(const ExtAffineElement& x, const PositiveRootSystem& system) {
  if (x.rank() != system.flavor.ambient_rank()) throw RankMismatch("element rank does not match flavor");
  if (!in_flavor(x, system.flavor)) throw FlavorMismatch("element is not in the extended affine Weyl group");
  const IntVector mu = translation_first(x);
  const Permutation winv = x.w.inverse();
  int length = 0;
  for (auto [a, b] : system.roots) {
    const int pairing = mu(a) - mu(b);
    length += winv(a) < winv(b) ? std::abs(pairing) : std::abs(pairing + 1);
  }
  return length;
}

inline int length_im(const ExtAffineElement& x, const GroupFlavor& flavor) {
  return length_im(x, positive_roots(flavor));
}

/// m times the barycentre of x·(base alcove); integral, and never on a wall.
inline std::vector<long long> scaled_alcove_point(const ExtAffineElement& x) {
  const int m = x.rank();
  std::vector<long long> point(m);
  for (int j = 1; j <= m; ++j) {
    point[x.w(j) - 1] = -static_cast<long long>(m - j) + static_cast<long long>(m) * x.lambda(j);
  }
  return point;
}

inline int wall_side(const std::vector<long long>& point, const Wall& wall) {
  const long long m = static_cast<long long>(point.size());
  const long long value = point[wall.a - 1] - point[wall.b - 1] - m * wall.k;
  return value > 0 ? 1 : -1;
}

/// s_index·x < x, decided by which side of the wall of s the alcove x lies on.
inline bool is_left_descent(const ExtAffineElement& x, int index, const SimpleReflectionSet& set) {
  const Wall& wall = set.walls[index];
  const auto base = scaled_alcove_point(ExtAffineElement::identity(x.rank()));
  return wall_side(base, wall) != wall_side(scaled_alcove_point(x), wall);
}

/// Lowest-index left descent, if any.
inline std::optional<int> first_left_descent(const ExtAffineElement& x, const SimpleReflectionSet& set) {
  for (int i = 0; i < set.size(); ++i) {
    if (is_left_descent(x, i, set)) return i;
  }
  return std::nullopt;
}

/// x = s_{word[0]} ··· s_{word[l-1]} · τ^omega_power with l = ℓ(x).
struct ReducedWord {
  std::vector<int> word;
  ExtAffineElement omega_part;  // length-zero remainder
  long long omega_power = 0;
};

/// Exponent k with x ∈ W_a·τ^k, read off from the Kottwitz invariant
/// (-Σλ for GL, λ(1)+λ(2n) for GSp).
inline long long omega_exponent(const ExtAffineElement& x, const GroupFlavor& flavor) {
  detail::require_bruhat_flavor(flavor);
  if (flavor.kind == GroupFlavor::Kind::GeneralLinear) return -x.lambda.sum();
  return static_cast<long long>(x.lambda(1)) + x.lambda(x.rank());
}

/// Peels off descents until nothing shortens; the guard bounds the number of steps.
inline ReducedWord reduced_word(const ExtAffineElement& x, const SimpleReflectionSet& set, int guard) {
  ReducedWord result;
  ExtAffineElement current = x;
  while (auto s = first_left_descent(current, set)) {
    if (static_cast<int>(result.word.size()) >= guard) {
      throw InvariantFailure("descent peeling did not terminate; the generator set is inconsistent");
    }
    result.word.push_back(*s);
    current = set.generators[*s] * current;
  }
  result.omega_part = current;
  result.omega_power = omega_exponent(x, set.flavor);
  if (current != power(set.omega_generator, result.omega_power)) {
    throw InvariantFailure("length-zero remainder is not the expected power of tau");
  }
  return result;
}

/// Length as the number of descent steps down to Ω.
inline int length_word(const ExtAffineElement& x, const GroupFlavor& flavor) {
  const SimpleReflectionSet set = simple_reflections(flavor);
  if (!in_flavor(x, flavor)) throw FlavorMismatch("element is not in the extended affine Weyl group");
  return static_cast<int>(reduced_word(x, set, length_im(x, flavor) + 1).word.size());
}

/// x <= y. With s a descent of y: x <= y iff (sx < x ? sx <= sy : x <= sy); at length zero, x <= y iff x = y.
inline bool bruhat_leq(ExtAffineElement x, ExtAffineElement y, const SimpleReflectionSet& set) {
  if (!in_flavor(x, set.flavor) || !in_flavor(y, set.flavor)) {
    throw FlavorMismatch("Bruhat comparison outside the extended affine Weyl group");
  }
  if (omega_exponent(x, set.flavor) != omega_exponent(y, set.flavor)) return false;
  while (auto s = first_left_descent(y, set)) {
    const ExtAffineElement& gen = set.generators[*s];
    if (is_left_descent(x, *s, set)) x = gen * x;
    y = gen * y;
  }
  return x == y;
}

inline bool bruhat_leq(const ExtAffineElement& x, const ExtAffineElement& y, const GroupFlavor& flavor) {
  return bruhat_leq(x, y, simple_reflections(flavor));
}

/// {y : y <= x}, via {y <= x} = {y <= sx} ∪ s·{y <= sx} for a descent s of x.
inline std::set<ExtAffineElement> lower_set(const ExtAffineElement& x, const SimpleReflectionSet& set,
                                            std::map<ExtAffineElement, std::set<ExtAffineElement>>& memo) {
  if (auto it = memo.find(x); it != memo.end()) return it->second;
  std::set<ExtAffineElement> result;
  if (auto s = first_left_descent(x, set)) {
    const ExtAffineElement& gen = set.generators[*s];
    const auto below = lower_set(gen * x, set, memo);
    for (const auto& y : below) {
      result.insert(y);
      result.insert(gen * y);
    }
  } else {
    result.insert(x);
  }
  memo.emplace(x, result);
  return result;
}

/// {u^{w(μ)} : w ∈ W}, sorted.
inline std::vector<ExtAffineElement> translation_orbit(const IntVector& mu, const GroupFlavor& flavor) {
  std::set<ExtAffineElement> orbit;
  for (const Permutation& w : enumerate_weyl(flavor)) orbit.insert(ExtAffineElement::translation(permute(w, mu)));
  return {orbit.begin(), orbit.end()};
}

/// Adm(μ) = {x : x <= u^{w(μ)} for some w ∈ W}, sorted.
inline std::vector<ExtAffineElement> admissible_set(const IntVector& mu, const GroupFlavor& flavor,
                                                    const Limits& limits = Limits::from_env()) {
  check_rank_window(flavor.ambient_rank(), limits);
  if (mu.rank() != flavor.ambient_rank()) throw RankMismatch("mu does not match the flavor rank");
  if (!in_lattice(mu, flavor)) throw FlavorMismatch("mu is not a cocharacter of the flavor");
  const SimpleReflectionSet set = simple_reflections(flavor);
  std::map<ExtAffineElement, std::set<ExtAffineElement>> memo;
  std::set<ExtAffineElement> adm;
  for (const auto& t : translation_orbit(mu, flavor)) {
    const auto below = lower_set(t, set, memo);
    adm.insert(below.begin(), below.end());
  }
  return {adm.begin(), adm.end()};
}

/// Componentwise order on tuples.
inline bool bruhat_leq(const FrobeniusTuple& x, const FrobeniusTuple& y, const SimpleReflectionSet& set) {
  if (x.size() != y.size()) throw Error("tuple lengths differ");
  for (int k = 0; k < x.size(); ++k) {
    if (!bruhat_leq(x[k], y[k], set)) return false;
  }
  return true;
}

inline int length_im(const FrobeniusTuple& t, const PositiveRootSystem& system) {
  int total = 0;
  for (const auto& x : t) total += length_im(x, system);
  return total;
}

/// {y ∈ index_set : y <= x}; x must belong to index_set.
template <typename T>
std::vector<T> closure(const T& x, const std::vector<T>& index_set, const SimpleReflectionSet& set) {
  if (std::find(index_set.begin(), index_set.end(), x) == index_set.end()) {
    throw Error("closure: element is not in the index set");
  }
  std::vector<T> out;
  for (const auto& y : index_set) {
    if (bruhat_leq(y, x, set)) out.push_back(y);
  }
  return out;
}

/// Elements of index_set not strictly below another element of it.
template <typename T>
std::vector<T> maximal_elements(const std::vector<T>& index_set, const SimpleReflectionSet& set) {
  std::vector<T> out;
  for (const auto& x : index_set) {
    bool dominated = false;
    for (const auto& y : index_set) {
      if (!(y == x) && bruhat_leq(x, y, set)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(x);
  }
  return out;
}

/// Pairs (lower, upper) of indices into index_set with lower ⋖ upper. index_set must be
/// downward closed; Bruhat intervals are graded by ℓ, so a cover has length difference one.
template <typename T, typename LengthFn>
std::vector<std::pair<std::size_t, std::size_t>> covering_relations(const std::vector<T>& index_set,
                                                                    const SimpleReflectionSet& set,
                                                                    LengthFn&& length) {
  std::vector<int> lengths;
  lengths.reserve(index_set.size());
  for (const auto& x : index_set) lengths.push_back(length(x));
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t lo = 0; lo < index_set.size(); ++lo) {
    for (std::size_t hi = 0; hi < index_set.size(); ++hi) {
      if (lengths[hi] == lengths[lo] + 1 && bruhat_leq(index_set[lo], index_set[hi], set)) out.emplace_back(lo, hi);
    }
  }
  return out;
}

/// Human-readable word such as "s1.s0.t^1"; "1" for the identity.
inline std::string format_word(const ExtAffineElement& x, const SimpleReflectionSet& set) {
  const ReducedWord rw = reduced_word(x, set, length_im(x, set.flavor) + 1);
  std::string out;
  for (int s : rw.word) {
    if (!out.empty()) out += '.';
    out += "s" + std::to_string(s);
  }
  if (rw.omega_power != 0) {
    if (!out.empty()) out += '.';
    out += rw.omega_power == 1 ? std::string("t") : "t^" + std::to_string(rw.omega_power);
  }
  return out.empty() ? "1" : out;
}

}  // namespace krs
