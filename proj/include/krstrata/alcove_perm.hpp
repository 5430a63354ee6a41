#pragma once

// Extended alcoves, permissibility and the monomial-lattice oracle.
//
// The standard lattice chain is Λ̃_i = span(u^{-1}e_1, ..., u^{-1}e_i, e_{i+1}, ..., e_m), whose
// exponent vector is ω_i = ((-1)^{(i)}, 0^{(m-i)}). The alcove of x is the chain of exponent vectors
// of x·Λ̃_i, i.e. x_i(w(j)) = λ(j) + ω_i(j). Since Λ̃_{i+m} = u^{-1}Λ̃_i, the chain extends
// periodically by x_{i+m} = x_i - (1, ..., 1); only the base indices 0..m-1 are stored or checked,
// every other index being a uniform shift of one of them.

#include <algorithm>
#include <functional>
#include <vector>

#include "krstrata/errors.hpp"
#include "krstrata/weyl_core.hpp"

namespace krs {

/// The lattice spanned by u^{v(j)}·e_j. A larger exponent means a smaller lattice.
struct MonomialLattice {
  IntVector exponents;

  int rank() const { return exponents.rank(); }

  /// u^k·L.
  MonomialLattice scaled(int k) const { return {exponents + IntVector::constant(rank(), k)}; }

  bool operator==(const MonomialLattice&) const = default;
};

/// L(a) ⊆ L(b) iff a(j) >= b(j) for all j.
inline bool is_sublattice(const MonomialLattice& a, const MonomialLattice& b) {
  if (a.rank() != b.rank()) throw RankMismatch("lattice ranks differ");
  for (int j = 1; j <= a.rank(); ++j) {
    if (a.exponents(j) < b.exponents(j)) return false;
  }
  return true;
}

/// A_w u^λ · (u^{v(j)} e_j) = u^{λ(j)+v(j)} e_{w(j)}.
inline MonomialLattice lattice_image(const ExtAffineElement& x, const MonomialLattice& lattice) {
  if (x.rank() != lattice.rank()) throw RankMismatch("element and lattice ranks differ");
  return {permute(x.w, x.lambda + lattice.exponents)};
}

/// Λ̃_i for 0 <= i < m.
inline MonomialLattice standard_lattice(int m, int i) {
  IntVector v = IntVector::zeros(m);
  for (int j = 1; j <= i; ++j) v(j) = -1;
  return {v};
}

struct AlcoveChain {
  std::vector<IntVector> vectors;  // x_0, ..., x_{m-1}

  int rank() const { return static_cast<int>(vectors.size()); }

  /// x_i for any integer i, using x_{i+m} = x_i - 1.
  IntVector vertex(int i) const {
    const int m = rank();
    int q = i >= 0 ? i / m : -((-i + m - 1) / m);
    int base = i - q * m;
    return vectors[base] - IntVector::constant(m, q);
  }

  bool operator==(const AlcoveChain&) const = default;
};

inline AlcoveChain standard_alcove(int m) {
  if (m < 1) throw Error("rank must be positive");
  AlcoveChain chain;
  for (int i = 0; i < m; ++i) chain.vectors.push_back(standard_lattice(m, i).exponents);
  return chain;
}

inline AlcoveChain alcove_of(const ExtAffineElement& x) {
  const int m = x.rank();
  AlcoveChain chain;
  chain.vectors.reserve(m);
  for (int i = 0; i < m; ++i) {
    const IntVector omega = standard_lattice(m, i).exponents;
    chain.vectors.push_back(permute(x.w, x.lambda + omega));
  }
  return chain;
}

/// Duality condition for GU alcoves: x_i(j) + x_{m-i}(m+1-j) = 2r-1 for one r, all 0<=i<=m.
/// r is read off at (i, j) = (0, 1) and then checked everywhere.
inline bool is_gu_alcove(const AlcoveChain& chain) {
  const int m = chain.rank();
  const int first = chain.vertex(0)(1) + chain.vertex(m)(m);
  if ((first + 1) % 2 != 0) return false;
  for (int i = 0; i <= m; ++i) {
    const IntVector a = chain.vertex(i);
    const IntVector b = chain.vertex(m - i);
    for (int j = 1; j <= m; ++j) {
      if (a(j) + b(m + 1 - j) != first) return false;
    }
  }
  return true;
}

/// Which permissible set to look at.
///
/// For GSp and GL `e` is the ramification index; for ramified GU it is e_0 and the alcove bound
/// is e = 2·e_0. `r` only matters for GL (r-permissibility with s = n·e - r).
struct PermDatum {
  GroupFlavor flavor;
  int e = 1;
  int r = 0;

  static PermDatum symplectic(int n, int e) { return {GroupFlavor::symplectic(n), e, 0}; }
  static PermDatum unitary_ramified(int n, int e0) { return {GroupFlavor::unitary_ramified(n), e0, 0}; }
  static PermDatum general_linear(int n, int e, int r) { return {GroupFlavor::general_linear(n), e, r}; }

  int rank() const { return flavor.ambient_rank(); }

  /// Width of the box ω_i <= x_i <= ω_i + bound.
  int bound() const { return flavor.kind == GroupFlavor::Kind::UnitaryRamified ? 2 * e : e; }

  /// Required value of Σλ (equivalently Σ_j x_0(j)).
  int target_sum() const {
    switch (flavor.kind) {
      case GroupFlavor::Kind::SymplecticSimilitude: return flavor.n * e;
      case GroupFlavor::Kind::UnitaryRamified: return flavor.n * e;
      case GroupFlavor::Kind::GeneralLinear: return flavor.n * e - r;
    }
    return 0;
  }

  void validate() const {
    if (flavor.n < 1) throw Error("n must be at least 1");
    if (e < 1) throw Error("e must be at least 1");
    if (flavor.kind == GroupFlavor::Kind::GeneralLinear && (r < 0 || r > flavor.n * e)) {
      throw Error("r must satisfy 0 <= r <= n*e");
    }
  }
};

namespace detail {

inline void require_datum_rank(const ExtAffineElement& x, const PermDatum& d) {
  if (x.rank() != d.rank()) {
    throw RankMismatch("element rank " + std::to_string(x.rank()) + " does not match datum rank " +
                       std::to_string(d.rank()));
  }
}

/// Common prefix of both predicates: flavor membership and, for GU, the duality condition.
inline bool in_perm_domain(const ExtAffineElement& x, const PermDatum& d) {
  require_datum_rank(x, d);
  if (!in_flavor(x, d.flavor)) return false;
  if (d.flavor.kind == GroupFlavor::Kind::UnitaryRamified && !is_gu_alcove(alcove_of(x))) return false;
  return true;
}

}  // namespace detail

/// ω_i <= x_i <= ω_i + e and Σ_j x_i(j) = target - i for every base index i.
/// Elements outside the flavor's group are not permissible.
inline bool is_permissible(const ExtAffineElement& x, const PermDatum& d) {
  if (!detail::in_perm_domain(x, d)) return false;
  const int m = x.rank();
  const AlcoveChain chain = alcove_of(x);
  const AlcoveChain standard = standard_alcove(m);
  for (int i = 0; i < m; ++i) {
    const IntVector& xi = chain.vectors[i];
    const IntVector& wi = standard.vectors[i];
    for (int j = 1; j <= m; ++j) {
      if (xi(j) < wi(j) || xi(j) > wi(j) + d.bound()) return false;
    }
    if (xi.sum() != d.target_sum() - i) return false;
  }
  return true;
}

/// u^e·Λ̃_i ⊆ x·Λ̃_i ⊆ Λ̃_i for every base index i, plus Σλ = target.
inline bool is_permissible_oracle(const ExtAffineElement& x, const PermDatum& d) {
  if (!detail::in_perm_domain(x, d)) return false;
  if (x.lambda.sum() != d.target_sum()) return false;
  const int m = x.rank();
  for (int i = 0; i < m; ++i) {
    const MonomialLattice base = standard_lattice(m, i);
    const MonomialLattice image = lattice_image(x, base);
    if (!is_sublattice(image, base)) return false;
    if (!is_sublattice(base.scaled(d.bound()), image)) return false;
  }
  return true;
}

/// All w in the finite Weyl group of the flavor, lexicographic in one-line notation.
inline std::vector<Permutation> enumerate_weyl(const GroupFlavor& flavor) {
  const int m = flavor.ambient_rank();
  std::vector<Permutation> out;
  if (flavor.kind == GroupFlavor::Kind::GeneralLinear) {
    std::vector<int> images(m);
    std::iota(images.begin(), images.end(), 1);
    do {
      out.emplace_back(images);
    } while (std::next_permutation(images.begin(), images.end()));
    return out;
  }
  // Centraliser of i ↦ m+1-i: choose w(i) for i <= m/2, mirror the rest.
  std::vector<int> images(m, 0);
  std::vector<bool> used(m + 1, false);
  if (m % 2 == 1) {
    images[m / 2] = (m + 1) / 2;
    used[(m + 1) / 2] = true;
  }
  std::function<void(int)> fill = [&](int i) {
    if (i > m / 2) {
      out.emplace_back(images);
      return;
    }
    for (int v = 1; v <= m; ++v) {
      const int mirror = m + 1 - v;
      if (used[v] || used[mirror] || v == mirror) continue;
      used[v] = used[mirror] = true;
      images[i - 1] = v;
      images[m - i] = mirror;
      fill(i + 1);
      used[v] = used[mirror] = false;
    }
  };
  fill(1);
  std::sort(out.begin(), out.end());
  return out;
}

/// Calls visit(λ) for every λ ∈ {lo..hi}^m with Σλ = total, in lexicographic order.
template <typename Visitor>
void for_each_bounded_vector(int m, int lo, int hi, long long total, Visitor&& visit) {
  std::vector<int> entries(m, lo);
  std::function<void(int, long long)> rec = [&](int j, long long remaining) {
    const int left = m - j;
    if (left == 0) {
      if (remaining == 0) visit(IntVector(entries));
      return;
    }
    for (int v = lo; v <= hi; ++v) {
      const long long rest = remaining - v;
      if (rest < static_cast<long long>(left - 1) * lo || rest > static_cast<long long>(left - 1) * hi) continue;
      entries[j] = v;
      rec(j + 1, rest);
    }
  };
  rec(0, total);
}

/// Perm(d) by brute force over W × {0..e}^m, ordered lexicographically by (w, λ).
inline std::vector<ExtAffineElement> enumerate_perm(const PermDatum& d, const Limits& limits = Limits::from_env()) {
  d.validate();
  check_rank_window(d.rank(), limits);
  const int m = d.rank();
  std::vector<ExtAffineElement> out;
  for (const Permutation& w : enumerate_weyl(d.flavor)) {
    for_each_bounded_vector(m, 0, d.bound(), d.target_sum(), [&](const IntVector& lambda) {
      ExtAffineElement x(w, lambda);
      if (is_permissible(x, d)) out.push_back(std::move(x));
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// (x_σ) ↦ (u^e·x_σ^{-1}); relates the Frobenius and Verschiebung normalisations.
inline ExtAffineElement verschiebung_to_frobenius(const ExtAffineElement& x, int e) {
  return ExtAffineElement::translation(IntVector::constant(x.rank(), e)) * inverse(x);
}

inline FrobeniusTuple verschiebung_to_frobenius(const FrobeniusTuple& t, int e) {
  std::vector<ExtAffineElement> out;
  for (const auto& x : t) out.push_back(verschiebung_to_frobenius(x, e));
  return FrobeniusTuple(std::move(out));
}

}  // namespace krs
