#pragma once

// Extended affine Weyl groups S_m ⋉ Z^m realised as monomial matrices.
//
// An element (w, λ) stands for the matrix A_w·u^λ, where A_w = (δ_{i,w(j)}) and
// u^λ = diag(u^{λ(1)}, ..., u^{λ(m)}). It sends u^k·e_j to u^{λ(j)+k}·e_{w(j)}, so
//
//   (w, λ)·(w', λ') = (w w', λ∘w' + λ').
//
// Some formulas are naturally written translation-first (u^μ·w). The two readings
// are related by A_w·u^λ = u^{w·λ}·A_w with (w·λ)(w(j)) = λ(j); see
// translation_first() / from_translation_first(). All indices in the public API
// are 1-based.

#include <algorithm>
#include <compare>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "krstrata/errors.hpp"

namespace krs {

class Permutation {
 public:
  Permutation() = default;

  /// One-line notation: images[i-1] = w(i). Throws if not a bijection of {1..m}.
  explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size() + 1, false);
    for (int v : images_) {
      if (v < 1 || v > rank() || seen[v]) {
        throw Error("permutation images must be a bijection of {1,...,m}");
      }
      seen[v] = true;
    }
  }

  static Permutation identity(int m) {
    std::vector<int> images(m);
    std::iota(images.begin(), images.end(), 1);
    return Permutation(std::move(images));
  }

  /// Product of disjoint-or-not cycles, applied right to left; each cycle (a,b,c) sends a→b→c→a.
  static Permutation from_cycles(int m, const std::vector<std::vector<int>>& cycles) {
    Permutation result = identity(m);
    for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
      std::vector<int> images = identity(m).images_;
      const auto& cycle = *it;
      for (std::size_t k = 0; k < cycle.size(); ++k) {
        images[cycle[k] - 1] = cycle[(k + 1) % cycle.size()];
      }
      result = Permutation(std::move(images)) * result;
    }
    return result;
  }

  int rank() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[i - 1]; }
  const std::vector<int>& images() const { return images_; }

  bool is_identity() const {
    for (int i = 1; i <= rank(); ++i) {
      if ((*this)(i) != i) return false;
    }
    return true;
  }

  Permutation inverse() const {
    std::vector<int> inv(images_.size());
    for (int i = 1; i <= rank(); ++i) inv[(*this)(i) - 1] = i;
    return Permutation(std::move(inv));
  }

  /// Composition (a*b)(j) = a(b(j)).
  friend Permutation operator*(const Permutation& a, const Permutation& b) {
    if (a.rank() != b.rank()) throw RankMismatch("permutation ranks differ");
    std::vector<int> images(a.images_.size());
    for (int j = 1; j <= a.rank(); ++j) images[j - 1] = a(b(j));
    Permutation out;
    out.images_ = std::move(images);
    return out;
  }

  /// Order of the permutation in S_m (lcm of cycle lengths).
  long long order() const {
    std::vector<bool> visited(images_.size(), false);
    long long result = 1;
    for (int i = 1; i <= rank(); ++i) {
      if (visited[i - 1]) continue;
      long long len = 0;
      for (int j = i; !visited[j - 1]; j = (*this)(j)) {
        visited[j - 1] = true;
        ++len;
      }
      result = std::lcm(result, len);
    }
    return result;
  }

  std::vector<int> fixed_points() const {
    std::vector<int> out;
    for (int i = 1; i <= rank(); ++i) {
      if ((*this)(i) == i) out.push_back(i);
    }
    return out;
  }

  auto operator<=>(const Permutation&) const = default;
  bool operator==(const Permutation&) const = default;

 private:
  std::vector<int> images_;
};

class IntVector {
 public:
  IntVector() = default;
  explicit IntVector(std::vector<int> entries) : entries_(std::move(entries)) {}
  IntVector(std::initializer_list<int> entries) : entries_(entries) {}

  static IntVector zeros(int m) { return IntVector(std::vector<int>(m, 0)); }
  static IntVector constant(int m, int value) { return IntVector(std::vector<int>(m, value)); }

  int rank() const { return static_cast<int>(entries_.size()); }
  int operator()(int j) const { return entries_[j - 1]; }
  int& operator()(int j) { return entries_[j - 1]; }
  const std::vector<int>& values() const { return entries_; }

  long long sum() const { return std::accumulate(entries_.begin(), entries_.end(), 0LL); }

  friend IntVector operator+(const IntVector& a, const IntVector& b) {
    if (a.rank() != b.rank()) throw RankMismatch("vector ranks differ");
    IntVector out = a;
    for (int j = 1; j <= a.rank(); ++j) out(j) += b(j);
    return out;
  }
  friend IntVector operator-(const IntVector& a) {
    IntVector out = a;
    for (int& v : out.entries_) v = -v;
    return out;
  }
  friend IntVector operator-(const IntVector& a, const IntVector& b) { return a + (-b); }

  auto operator<=>(const IntVector&) const = default;
  bool operator==(const IntVector&) const = default;

 private:
  std::vector<int> entries_;
};

/// (σ·v)(σ(j)) = v(j).
inline IntVector permute(const Permutation& sigma, const IntVector& v) {
  if (sigma.rank() != v.rank()) throw RankMismatch("permutation and vector ranks differ");
  IntVector out = IntVector::zeros(v.rank());
  for (int j = 1; j <= v.rank(); ++j) out(sigma(j)) = v(j);
  return out;
}

/// v∘σ, i.e. j ↦ v(σ(j)).
inline IntVector compose(const IntVector& v, const Permutation& sigma) {
  if (sigma.rank() != v.rank()) throw RankMismatch("permutation and vector ranks differ");
  IntVector out = IntVector::zeros(v.rank());
  for (int j = 1; j <= v.rank(); ++j) out(j) = v(sigma(j));
  return out;
}

struct ExtAffineElement {
  Permutation w;
  IntVector lambda;

  ExtAffineElement() = default;
  ExtAffineElement(Permutation w_, IntVector lambda_) : w(std::move(w_)), lambda(std::move(lambda_)) {
    if (w.rank() != lambda.rank()) throw RankMismatch("w and lambda must share the rank");
  }

  static ExtAffineElement identity(int m) { return {Permutation::identity(m), IntVector::zeros(m)}; }
  static ExtAffineElement translation(IntVector lambda_) {
    const int m = lambda_.rank();
    return {Permutation::identity(m), std::move(lambda_)};
  }
  static ExtAffineElement permutation(Permutation w_) {
    const int m = w_.rank();
    return {std::move(w_), IntVector::zeros(m)};
  }

  int rank() const { return w.rank(); }
  bool is_identity() const { return w.is_identity() && lambda == IntVector::zeros(rank()); }
  bool is_translation() const { return w.is_identity(); }

  auto operator<=>(const ExtAffineElement&) const = default;
  bool operator==(const ExtAffineElement&) const = default;
};

inline ExtAffineElement multiply(const ExtAffineElement& x, const ExtAffineElement& y) {
  if (x.rank() != y.rank()) throw RankMismatch("cannot multiply elements of different rank");
  return {x.w * y.w, compose(x.lambda, y.w) + y.lambda};
}

inline ExtAffineElement operator*(const ExtAffineElement& x, const ExtAffineElement& y) {
  return multiply(x, y);
}

inline ExtAffineElement inverse(const ExtAffineElement& x) {
  Permutation winv = x.w.inverse();
  return {winv, -compose(x.lambda, winv)};
}

inline ExtAffineElement power(const ExtAffineElement& x, long long k) {
  ExtAffineElement base = k >= 0 ? x : inverse(x);
  if (k < 0) k = -k;
  ExtAffineElement result = ExtAffineElement::identity(x.rank());
  while (k > 0) {
    if (k & 1) result = result * base;
    base = base * base;
    k >>= 1;
  }
  return result;
}

/// μ with x = u^μ·A_w.
inline IntVector translation_first(const ExtAffineElement& x) { return permute(x.w, x.lambda); }

/// The element u^μ·A_w in storage form.
inline ExtAffineElement from_translation_first(const IntVector& mu, const Permutation& w) {
  return {w, compose(mu, w)};
}

struct GroupFlavor {
  enum class Kind { GeneralLinear, SymplecticSimilitude, UnitaryRamified };

  Kind kind = Kind::GeneralLinear;
  int n = 1;

  static GroupFlavor general_linear(int n) { return {Kind::GeneralLinear, n}; }
  static GroupFlavor symplectic(int n) { return {Kind::SymplecticSimilitude, n}; }
  static GroupFlavor unitary_ramified(int n) { return {Kind::UnitaryRamified, n}; }

  int ambient_rank() const { return kind == Kind::SymplecticSimilitude ? 2 * n : n; }

  std::string name() const {
    switch (kind) {
      case Kind::GeneralLinear: return "gl";
      case Kind::SymplecticSimilitude: return "gsp";
      case Kind::UnitaryRamified: return "gu";
    }
    return "?";
  }

  bool operator==(const GroupFlavor&) const = default;
};

/// w ∈ W for the flavor; for GSp and GU this is the centraliser of i ↦ m+1-i.
inline bool in_weyl(const Permutation& w, const GroupFlavor& flavor) {
  if (w.rank() != flavor.ambient_rank()) throw RankMismatch("permutation rank does not match flavor");
  if (flavor.kind == GroupFlavor::Kind::GeneralLinear) return true;
  const int m = w.rank();
  for (int i = 1; i <= m; ++i) {
    if (w(i) + w(m + 1 - i) != m + 1) return false;
  }
  return true;
}

/// λ ∈ X: GSp needs λ(i)+λ(m+1-i) constant, GU needs it constant and even.
inline bool in_lattice(const IntVector& lambda, const GroupFlavor& flavor) {
  if (lambda.rank() != flavor.ambient_rank()) throw RankMismatch("vector rank does not match flavor");
  if (flavor.kind == GroupFlavor::Kind::GeneralLinear) return true;
  const int m = lambda.rank();
  const int c = lambda(1) + lambda(m);
  for (int i = 1; i <= m; ++i) {
    if (lambda(i) + lambda(m + 1 - i) != c) return false;
  }
  if (flavor.kind == GroupFlavor::Kind::UnitaryRamified && c % 2 != 0) return false;
  return true;
}

inline bool in_flavor(const ExtAffineElement& x, const GroupFlavor& flavor) {
  if (x.rank() != flavor.ambient_rank()) {
    throw RankMismatch("element rank " + std::to_string(x.rank()) + " does not match " + flavor.name() +
                       " ambient rank " + std::to_string(flavor.ambient_rank()));
  }
  return in_weyl(x.w, flavor) && in_lattice(x.lambda, flavor);
}

/// Adjoint for the anti-diagonal form: x^τ = J·x^t·J with J the anti-diagonal permutation matrix.
inline ExtAffineElement adjoint_tau(const ExtAffineElement& x) {
  const int m = x.rank();
  std::vector<int> w(m), l(m);
  // Entry u^{λ(j)} of x sits at (w(j), j); in J x^t J it sits at (m+1-j, m+1-w(j)).
  for (int j = 1; j <= m; ++j) {
    const int column = m + 1 - x.w(j);
    w[column - 1] = m + 1 - j;
    l[column - 1] = x.lambda(j);
  }
  return {Permutation(std::move(w)), IntVector(std::move(l))};
}

/// Elements indexed by a cyclic group Ξ = Z/f; component k holds x_{σ^k}.
class FrobeniusTuple {
 public:
  FrobeniusTuple() = default;
  explicit FrobeniusTuple(std::vector<ExtAffineElement> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) throw Error("a Frobenius tuple needs at least one component");
    for (const auto& x : elements_) {
      if (x.rank() != elements_.front().rank()) throw RankMismatch("tuple components must share the rank");
    }
  }

  int size() const { return static_cast<int>(elements_.size()); }
  int rank() const { return elements_.front().rank(); }
  const ExtAffineElement& operator[](int k) const { return elements_[k]; }
  const std::vector<ExtAffineElement>& elements() const { return elements_; }
  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

  auto operator<=>(const FrobeniusTuple&) const = default;
  bool operator==(const FrobeniusTuple&) const = default;

 private:
  std::vector<ExtAffineElement> elements_;
};

/// (x_ξ)_ξ ↦ (x_{σ^{-1}ξ})_ξ: component ξ receives the previous component.
inline FrobeniusTuple shift(const FrobeniusTuple& t) {
  const int f = t.size();
  std::vector<ExtAffineElement> out;
  out.reserve(f);
  for (int xi = 0; xi < f; ++xi) out.push_back(t[(xi + f - 1) % f]);
  return FrobeniusTuple(std::move(out));
}

inline FrobeniusTuple operator*(const FrobeniusTuple& a, const FrobeniusTuple& b) {
  if (a.size() != b.size()) throw Error("tuple lengths differ");
  std::vector<ExtAffineElement> out;
  out.reserve(a.size());
  for (int k = 0; k < a.size(); ++k) out.push_back(a[k] * b[k]);
  return FrobeniusTuple(std::move(out));
}

inline std::string format_list(const std::vector<int>& values) {
  std::ostringstream os;
  os << '[';
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) os << ',';
    os << values[k];
  }
  os << ']';
  return os.str();
}

/// Shell-safe compact form, e.g. "w=[2,1];l=[1,0]".
inline std::string format_compact(const ExtAffineElement& x) {
  return "w=" + format_list(x.w.images()) + ";l=" + format_list(x.lambda.values());
}

inline std::ostream& operator<<(std::ostream& os, const ExtAffineElement& x) { return os << format_compact(x); }

inline std::ostream& operator<<(std::ostream& os, const FrobeniusTuple& t) {
  for (int k = 0; k < t.size(); ++k) {
    if (k) os << ';';
    os << format_compact(t[k]);
  }
  return os;
}

}  // namespace krs
