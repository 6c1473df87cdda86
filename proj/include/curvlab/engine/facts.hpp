#pragma once

// Shallow topology bookkeeping: rational Betti numbers and connectivity of
// the atoms, propagated through products (Künneth) and connected sums. Any
// deeper knowledge must come from user flags.

#include <string>
#include <vector>

#include "curvlab/engine/dsl.hpp"

namespace curvlab::engine {

/// Three-valued knowledge about a quantity.
enum class Known { Unknown, No, Yes };

enum class Pi1 { Unknown, Trivial, FiniteNontrivial, Infinite };

template <typename T>
struct Fact {
  T value{};
  std::string source;  // where the value came from, for conflict reports
};

struct Facts {
  int dim = 0;
  std::vector<Fact<Known>> betti_nonzero;  // index k = 0..dim
  Fact<Pi1> pi1;
  Fact<Known> two_connected;
  Fact<Known> three_connected;
  Fact<Known> non_string;

  Known betti(int k) const {
    return (k < 0 || k > dim) ? Known::No : betti_nonzero[static_cast<std::size_t>(k)].value;
  }
  bool b1_nonzero() const { return betti(1) == Known::Yes; }
  bool simply_connected() const { return pi1.value == Pi1::Trivial; }
  bool pi1_infinite() const { return pi1.value == Pi1::Infinite; }
  /// Some b_k with 1 <= k <= n-1 is known to be nonzero.
  bool some_middle_betti_nonzero() const {
    for (int k = 1; k < dim; ++k)
      if (betti(k) == Known::Yes) return true;
    return false;
  }
};

namespace detail {

/// Text of e without its own flags, naming the source of derived facts.
inline std::string bare_text(const ManifoldExpr& e) {
  ManifoldExpr copy = e;
  copy.flags = Flags{};
  return to_string(copy);
}

inline Facts blank_facts(int dim, const std::string& source) {
  Facts f;
  f.dim = dim;
  f.betti_nonzero.assign(static_cast<std::size_t>(dim) + 1, {Known::Unknown, source});
  f.betti_nonzero[0] = {Known::Yes, source};
  f.pi1 = {Pi1::Unknown, source};
  f.two_connected = {Known::Unknown, source};
  f.three_connected = {Known::Unknown, source};
  f.non_string = {Known::Unknown, source};
  return f;
}

inline Known both(Known a, Known b) {
  if (a == Known::Yes && b == Known::Yes) return Known::Yes;
  if (a == Known::No || b == Known::No) return Known::No;
  return Known::Unknown;
}

inline Known either(Known a, Known b) {
  if (a == Known::Yes || b == Known::Yes) return Known::Yes;
  if (a == Known::No && b == Known::No) return Known::No;
  return Known::Unknown;
}

inline Facts atom_facts(const ManifoldExpr& e) {
  const std::string src = bare_text(e);
  const int n = e.dim;
  Facts f = blank_facts(n, src);
  auto set_betti = [&](auto nonzero) {
    for (int k = 0; k <= n; ++k) f.betti_nonzero[static_cast<std::size_t>(k)] = {nonzero(k) ? Known::Yes : Known::No, src};
  };
  auto connectivity = [&](bool two, bool three) {
    f.two_connected = {two ? Known::Yes : Known::No, src};
    f.three_connected = {three ? Known::Yes : Known::No, src};
  };
  switch (e.atom) {
    case AtomKind::Sphere:
      set_betti([&](int k) { return k == 0 || k == n; });
      f.pi1 = {Pi1::Trivial, src};
      connectivity(n >= 3, n >= 4);
      break;
    case AtomKind::RP:
      set_betti([&](int k) { return k == 0 || (k == n && n % 2 == 1); });
      f.pi1 = {Pi1::FiniteNontrivial, src};
      connectivity(false, false);
      break;
    case AtomKind::SpaceForm:
      // Finite quotient of S^n: rational homology of a sphere away from the top degree.
      for (int k = 1; k < n; ++k) f.betti_nonzero[static_cast<std::size_t>(k)] = {Known::No, src};
      break;
    case AtomKind::Torus:
    case AtomKind::Circle:
      set_betti([](int) { return true; });
      f.pi1 = {Pi1::Infinite, src};
      connectivity(false, false);
      break;
    case AtomKind::CP:
      set_betti([](int k) { return k % 2 == 0; });
      f.pi1 = {Pi1::Trivial, src};
      connectivity(false, false);
      break;
    case AtomKind::HP:
      set_betti([](int k) { return k % 4 == 0; });
      f.pi1 = {Pi1::Trivial, src};
      connectivity(true, true);
      break;
  }
  return f;
}

inline Pi1 product_pi1(Pi1 a, Pi1 b) {
  if (a == Pi1::Infinite || b == Pi1::Infinite) return Pi1::Infinite;
  if (a == Pi1::Unknown || b == Pi1::Unknown) return Pi1::Unknown;
  if (a == Pi1::Trivial && b == Pi1::Trivial) return Pi1::Trivial;
  return Pi1::FiniteNontrivial;
}

/// Free product.
inline Pi1 connsum_pi1(Pi1 a, Pi1 b) {
  if (a == Pi1::Trivial) return b;
  if (b == Pi1::Trivial) return a;
  if (a == Pi1::Infinite || b == Pi1::Infinite) return Pi1::Infinite;
  if (a == Pi1::Unknown || b == Pi1::Unknown) return Pi1::Unknown;
  return Pi1::Infinite;  // both nontrivial
}

inline void conflict(const std::string& what, const std::string& derived_source,
                     const ManifoldExpr& e) {
  throw FactConflictError("fact conflict at byte " + std::to_string(e.flags.offset) + ": " + what +
                          " is asserted by the user on '" + to_string(e) +
                          "' but contradicts facts derived from '" + derived_source + "'");
}

inline void merge_user_flags(Facts& f, const ManifoldExpr& e) {
  const Flags& fl = e.flags;
  const std::string src = "user flag on " + to_string(e);
  const bool three = fl.three_connected;
  const bool two = fl.two_connected || three;
  const bool simply = fl.simply_connected || two;

  auto vanish = [&](int k, const char* flag) {
    if (k > f.dim) return;
    auto& b = f.betti_nonzero[static_cast<std::size_t>(k)];
    if (b.value == Known::Yes) conflict(std::string(flag) + " (forces b" + std::to_string(k) + " = 0)", b.source, e);
    b = {Known::No, src};
  };

  if (simply) {
    if (f.pi1.value == Pi1::FiniteNontrivial || f.pi1.value == Pi1::Infinite)
      conflict("simply_connected", f.pi1.source, e);
    f.pi1 = {Pi1::Trivial, src};
    vanish(1, "simply_connected");
  }
  if (two) {
    if (f.two_connected.value == Known::No) conflict("two_connected", f.two_connected.source, e);
    f.two_connected = {Known::Yes, src};
    vanish(2, "two_connected");
  }
  if (three) {
    if (f.three_connected.value == Known::No) conflict("three_connected", f.three_connected.source, e);
    f.three_connected = {Known::Yes, src};
    vanish(3, "three_connected");
  }
  if (fl.non_string) f.non_string = {Known::Yes, src};
  for (int k : fl.betti_nonzero) {
    auto& b = f.betti_nonzero[static_cast<std::size_t>(k)];
    if (b.value == Known::No) conflict("b" + std::to_string(k) + " != 0", b.source, e);
    b = {Known::Yes, src};
  }
}

}  // namespace detail

/// Facts for one node given the facts of its children (in order).
inline Facts node_facts(const ManifoldExpr& e, const std::vector<Facts>& children) {
  using detail::both;
  using detail::either;
  const std::string src = detail::bare_text(e);
  Facts f;
  switch (e.kind) {
    case ManifoldExpr::Kind::Atom:
      f = detail::atom_facts(e);
      break;
    case ManifoldExpr::Kind::Product: {
      const Facts& a = children[0];
      const Facts& b = children[1];
      f = detail::blank_facts(e.dim, src);
      for (int k = 0; k <= e.dim; ++k) {
        // Künneth: b_k(A×B) = Σ b_i(A) b_{k-i}(B), a sum of nonnegative terms.
        Known acc = Known::No;
        for (int i = std::max(0, k - b.dim); i <= std::min(k, a.dim); ++i)
          acc = either(acc, both(a.betti(i), b.betti(k - i)));
        f.betti_nonzero[static_cast<std::size_t>(k)] = {acc, src + " (Kunneth)"};
      }
      f.pi1 = {detail::product_pi1(a.pi1.value, b.pi1.value), src};
      f.two_connected = {both(a.two_connected.value, b.two_connected.value), src};
      f.three_connected = {both(a.three_connected.value, b.three_connected.value), src};
      break;
    }
    case ManifoldExpr::Kind::ConnSum: {
      const Facts& a = children[0];
      const Facts& b = children[1];
      f = detail::blank_facts(e.dim, src);
      for (int k = 1; k < e.dim; ++k)
        f.betti_nonzero[static_cast<std::size_t>(k)] = {either(a.betti(k), b.betti(k)), src};
      f.betti_nonzero[static_cast<std::size_t>(e.dim)] = {both(a.betti(e.dim), b.betti(e.dim)), src};
      f.pi1 = {detail::connsum_pi1(a.pi1.value, b.pi1.value), src + " (free product)"};
      f.two_connected = {both(a.two_connected.value, b.two_connected.value), src};
      f.three_connected = {both(a.three_connected.value, b.three_connected.value), src};
      break;
    }
    case ManifoldExpr::Kind::Surgery:
    case ManifoldExpr::Kind::Bundle:
      f = detail::blank_facts(e.dim, src);
      break;
  }
  detail::merge_user_flags(f, e);
  return f;
}

/// Facts of the whole expression.
inline Facts base_facts(const ManifoldExpr& e) {
  std::vector<Facts> children;
  for (const ManifoldExpr& c : e.children) children.push_back(base_facts(c));
  return node_facts(e, children);
}

}  // namespace curvlab::engine
