#pragma once

// Fixed-point rule engine deriving rational bounds on the smooth invariant
// Riem(M) of a manifold described by a construction expression.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "curvlab/engine/facts.hpp"

namespace curvlab::engine {

using Rational = boost::rational<long long>;

inline Rational choose2(long long k) { return Rational(k * (k - 1) / 2); }

/// "p/q" with a positive denominator, also for integers ("21/1").
inline std::string to_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// One end of an interval. An open lower bound means Riem(M) > value, an
/// open upper bound Riem(M) < value.
struct Bound {
  Rational value{0};
  bool open = false;

  friend bool operator==(const Bound& a, const Bound& b) { return a.value == b.value && a.open == b.open; }
};

namespace detail {

/// a is a strictly stronger lower bound than b.
inline bool stronger_lower(const Bound& a, const Bound& b) {
  return a.value > b.value || (a.value == b.value && a.open && !b.open);
}

inline bool stronger_upper(const Bound& a, const Bound& b) {
  return a.value < b.value || (a.value == b.value && a.open && !b.open);
}

inline Bound weaker_lower(const Bound& a, const Bound& b) { return stronger_lower(a, b) ? b : a; }

/// The lower bound certifies Riem(M) > v.
inline bool exceeds(const Bound& lower, const Rational& v) {
  return lower.value > v || (lower.value == v && lower.open);
}

inline std::string interval_text(const Bound& lo, const Bound& hi) {
  return std::string(lo.open ? "(" : "[") + to_string(lo.value) + ", " + to_string(hi.value) +
         (hi.open ? ")" : "]");
}

}  // namespace detail

struct TraceStep {
  std::string rule;
  std::string cite;
  std::string node;
  std::string before;
  std::string after;
  bool applied = true;  // false: the rule matched but was deliberately not used
  std::string note;
};

struct RiemInterval {
  std::string expr;
  int dim = 0;
  Bound lower;
  Bound upper;
  std::vector<TraceStep> trace;
  int iterations = 0;

  Rational max_value() const { return choose2(dim); }
  bool exact() const { return lower.value == upper.value && !lower.open && !upper.open; }

  /// Values C(k,2) inside the interval. Whether Riem only takes such values
  /// is open; this is reported, never used by the rules.
  std::vector<long long> binomial_candidates() const {
    std::vector<long long> out;
    for (long long k = 0; k <= dim; ++k) {
      const Rational c = choose2(k);
      if (k == 1) continue;  // C(1,2) duplicates C(0,2)
      const bool above = lower.open ? c > lower.value : c >= lower.value;
      const bool below = upper.open ? c < upper.value : c <= upper.value;
      if (above && below) out.push_back(c.numerator());
    }
    return out;
  }
};

inline const char* rule_cite(const std::string& rule) {
  static const std::pair<const char*, const char*> table[] = {
      {"R1", "model metrics: round space forms, Fubini-Study metrics, no PSC on tori"},
      {"R2", "ideal property of Riem under Cartesian products"},
      {"R3", "torus factors do not raise Riem in dimension <= 7"},
      {"R4", "Riem(M x S^1) <= C(n-1,2)"},
      {"R5", "surgery stability when Riem(M) <= C(q-1,2)"},
      {"R6", "surgery stability of Riem > C(k,2) in codimension >= k+1"},
      {"R7", "connected sums preserve Riem up to C(n-1,2)"},
      {"R8", "gap (N-2, N): Riem > N-2 forces constant curvature"},
      {"R9", "Riem > C(n-1,2) gives Ric > 0, hence b_1 = 0 and finite pi_1"},
      {"R10", "Riem > N-(n-2) forces a rational homology sphere"},
      {"R11", "Weitzenboeck vanishing of b_k for p <= k <= n-p above N-p(n-p)/2"},
      {"R12", "gap for simply, 2- and 3-connected PSC manifolds via cobordism"},
      {"R13", "connected sum with S^2 x T^(n-2) or S^(n-1) x S^1, n <= 7"},
      {"R14", "fibre bundles with invariant fibre metric"},
  };
  for (const auto& [id, text] : table)
    if (rule == id) return text;
  return "";
}

class BoundsEngine {
 public:
  static constexpr int kMaxIterations = 50;

  RiemInterval infer(const ManifoldExpr& expr) const {
    Run run;
    run.build(expr);
    run.solve(kMaxIterations);
    const Node& root = run.nodes.back();
    RiemInterval out;
    out.expr = root.text;
    out.dim = root.e->dim;
    out.lower = root.lo;
    out.upper = root.hi;
    out.trace = std::move(run.trace);
    out.iterations = run.iterations;
    return out;
  }

  RiemInterval infer(std::string_view text) const { return infer(parse(text)); }

 private:
  struct Node {
    const ManifoldExpr* e = nullptr;
    std::vector<std::size_t> kids;
    Facts facts;
    std::string text;
    Bound lo;
    Bound hi;
  };

  struct Run {
    std::vector<Node> nodes;  // post-order, root last
    std::vector<TraceStep> trace;
    std::set<std::pair<std::string, std::size_t>> noted;
    int iterations = 0;
    bool changed = false;

    std::size_t build(const ManifoldExpr& e) {
      Node n;
      n.e = &e;
      std::vector<Facts> child_facts;
      for (const ManifoldExpr& c : e.children) {
        const std::size_t k = build(c);
        n.kids.push_back(k);
        child_facts.push_back(nodes[k].facts);
      }
      n.facts = node_facts(e, child_facts);
      n.text = to_string(e);
      n.lo = {Rational(0), false};
      n.hi = {choose2(e.dim), false};
      nodes.push_back(std::move(n));
      return nodes.size() - 1;
    }

    void solve(int max_iterations) {
      do {
        changed = false;
        for (std::size_t i = 0; i < nodes.size(); ++i) apply_rules(i);
        ++iterations;
      } while (changed && iterations < max_iterations);
    }

    void tighten(std::size_t i, const char* rule, std::optional<Bound> lo, std::optional<Bound> hi,
                 std::string note = {}) {
      Node& n = nodes[i];
      Bound new_lo = n.lo;
      Bound new_hi = n.hi;
      if (lo && detail::stronger_lower(*lo, new_lo)) new_lo = *lo;
      if (hi && detail::stronger_upper(*hi, new_hi)) new_hi = *hi;
      if (new_lo == n.lo && new_hi == n.hi) return;
      const bool empty = new_lo.value > new_hi.value ||
                         (new_lo.value == new_hi.value && (new_lo.open || new_hi.open));
      if (empty)
        throw FactConflictError("inconsistent facts for '" + n.text + "': rule " + rule + " gives " +
                                detail::interval_text(new_lo, new_hi) +
                                "; check the asserted flags");
      trace.push_back({rule, rule_cite(rule), n.text, detail::interval_text(n.lo, n.hi),
                       detail::interval_text(new_lo, new_hi), true, std::move(note)});
      n.lo = new_lo;
      n.hi = new_hi;
      changed = true;
    }

    void note(std::size_t i, const char* rule, std::string text) {
      if (!noted.emplace(rule, i).second) return;
      const Node& n = nodes[i];
      const std::string b = detail::interval_text(n.lo, n.hi);
      trace.push_back({rule, rule_cite(rule), n.text, b, b, false, std::move(text)});
    }

    // Leaves of the maximal product subtree rooted at e.
    static void product_leaves(const ManifoldExpr& e, std::vector<const ManifoldExpr*>& out) {
      if (e.kind == ManifoldExpr::Kind::Product) {
        for (const ManifoldExpr& c : e.children) product_leaves(c, out);
      } else {
        out.push_back(&e);
      }
    }

    static bool is_torus(const ManifoldExpr& e) {
      return e.kind == ManifoldExpr::Kind::Atom &&
             (e.atom == AtomKind::Torus || e.atom == AtomKind::Circle);
    }

    static bool is_circle(const ManifoldExpr& e) { return is_torus(e) && e.dim == 1; }

    static bool is_sphere(const ManifoldExpr& e, int n) {
      return e.kind == ManifoldExpr::Kind::Atom && e.atom == AtomKind::Sphere && e.arg == n;
    }

    // product(sphere(s), T) or product(T, sphere(s)) with T a torus of dimension t.
    static bool is_sphere_times_torus(const ManifoldExpr& e, int s, int t) {
      if (e.kind != ManifoldExpr::Kind::Product) return false;
      const ManifoldExpr& a = e.children[0];
      const ManifoldExpr& b = e.children[1];
      return (is_sphere(a, s) && is_torus(b) && b.dim == t) ||
             (is_sphere(b, s) && is_torus(a) && a.dim == t);
    }

    void apply_rules(std::size_t i) {
      r1(i);
      r2(i);
      r4(i);
      r3(i);
      r5(i);
      r6(i);
      r7(i);
      r8(i);
      r9(i);
      r10(i);
      r11(i);
      r12(i);
      r13(i);
      r14(i);
    }

    void r1(std::size_t i) {
      const ManifoldExpr& e = *nodes[i].e;
      const Rational top = choose2(e.dim);
      if (e.kind == ManifoldExpr::Kind::Atom) {
        switch (e.atom) {
          case AtomKind::Sphere:
          case AtomKind::RP:
          case AtomKind::SpaceForm:
            tighten(i, "R1", Bound{top, false}, Bound{top, false});
            break;
          case AtomKind::CP:
            tighten(i, "R1", Bound{Rational(e.arg), false}, std::nullopt);
            break;
          case AtomKind::HP:
            tighten(i, "R1", Bound{Rational(2 * e.arg + 4), false}, std::nullopt);
            break;
          case AtomKind::Torus:
          case AtomKind::Circle:
            tighten(i, "R1", std::nullopt, Bound{Rational(0), false});
            break;
        }
        return;
      }
      if (e.kind == ManifoldExpr::Kind::Product) {
        std::vector<const ManifoldExpr*> leaves;
        product_leaves(e, leaves);
        if (std::all_of(leaves.begin(), leaves.end(), [](const ManifoldExpr* l) { return is_torus(*l); }))
          tighten(i, "R1", std::nullopt, Bound{Rational(0), false});
      }
    }

    void r2(std::size_t i) {
      const Node& n = nodes[i];
      if (n.e->kind != ManifoldExpr::Kind::Product) return;
      const Bound& a = nodes[n.kids[0]].lo;
      const Bound& b = nodes[n.kids[1]].lo;
      tighten(i, "R2", detail::stronger_lower(a, b) ? a : b, std::nullopt);
    }

    void r4(std::size_t i) {
      const ManifoldExpr& e = *nodes[i].e;
      if (e.kind != ManifoldExpr::Kind::Product || e.dim < 3) return;
      if (is_circle(e.children[0]) || is_circle(e.children[1]))
        tighten(i, "R4", std::nullopt, Bound{choose2(e.dim - 1), false});
    }

    void r3(std::size_t i) {
      const ManifoldExpr& e = *nodes[i].e;
      if (e.kind != ManifoldExpr::Kind::Product || e.dim < 3) return;
      std::vector<const ManifoldExpr*> leaves;
      product_leaves(e, leaves);
      int p = 0;
      for (const ManifoldExpr* l : leaves)
        if (is_torus(*l)) p += l->dim;
      if (p < 1 || p > e.dim - 1) return;
      if (e.dim > 7) {
        note(i, "R3", "torus factor of dimension " + std::to_string(p) + " in dimension " +
                          std::to_string(e.dim) + " >= 8: the cap is not established there");
        return;
      }
      tighten(i, "R3", std::nullopt, Bound{choose2(e.dim - p), false});
    }

    void r5(std::size_t i) {
      const Node& n = nodes[i];
      if (n.e->kind != ManifoldExpr::Kind::Surgery) return;
      const int q = n.e->arg;
      if (q < 3) return;
      const Node& base = nodes[n.kids[0]];
      const Rational cap = choose2(q - 1);
      if (base.hi.value > cap) {
        note(i, "R5", "upper bound " + to_string(base.hi.value) + " of the base does not certify Riem <= " +
                          to_string(cap));
        return;
      }
      tighten(i, "R5", base.lo, std::nullopt);
    }

    void r6(std::size_t i) {
      const Node& n = nodes[i];
      if (n.e->kind != ManifoldExpr::Kind::Surgery) return;
      const Bound& base = nodes[n.kids[0]].lo;
      for (int k = std::min(n.e->arg - 1, n.e->dim - 1); k >= 2; --k) {
        if (detail::exceeds(base, choose2(k))) {
          tighten(i, "R6", Bound{choose2(k), false}, std::nullopt);
          return;
        }
      }
    }

    void r7(std::size_t i) {
      const Node& n = nodes[i];
      if (n.e->kind != ManifoldExpr::Kind::ConnSum) return;
      Bound m = detail::weaker_lower(nodes[n.kids[0]].lo, nodes[n.kids[1]].lo);
      m = detail::weaker_lower(m, Bound{choose2(n.e->dim - 1), false});
      tighten(i, "R7", m, std::nullopt);
    }

    void r8(std::size_t i) {
      const Node& n = nodes[i];
      const int d = n.e->dim;
      if (d < 3) return;
      const Rational top = choose2(d);
      const Rational gap = top - 2;
      if (detail::exceeds(n.lo, gap)) {
        tighten(i, "R8", Bound{top, false}, Bound{top, false});
        return;
      }
      if (n.hi.value > gap && (n.hi.value < top || n.hi.open))
        tighten(i, "R8", std::nullopt, Bound{gap, false});
    }

    void r9(std::size_t i) {
      const Node& n = nodes[i];
      const int d = n.e->dim;
      if (d < 3) return;
      if (n.facts.b1_nonzero())
        tighten(i, "R9", std::nullopt, Bound{choose2(d - 1), false}, "b_1 != 0");
      else if (n.facts.pi1_infinite())
        tighten(i, "R9", std::nullopt, Bound{choose2(d - 1), false}, "pi_1 infinite");
    }

    void r10(std::size_t i) {
      const Node& n = nodes[i];
      const int d = n.e->dim;
      if (d < 4 || !n.facts.some_middle_betti_nonzero()) return;
      tighten(i, "R10", std::nullopt, Bound{choose2(d) - (d - 2), false});
    }

    void r11(std::size_t i) {
      const Node& n = nodes[i];
      const int d = n.e->dim;
      std::optional<Bound> best;
      int best_k = 0;
      for (int k = 2; k <= d - 2; ++k) {
        if (n.facts.betti(k) != Known::Yes) continue;
        const int p = std::min(k, d - k);
        const Bound b{choose2(d) - Rational(p * (d - p), 2), false};
        if (!best || detail::stronger_upper(b, *best)) {
          best = b;
          best_k = k;
        }
      }
      if (best) tighten(i, "R11", std::nullopt, best, "b_" + std::to_string(best_k) + " != 0");
    }

    void r12(std::size_t i) {
      const Node& n = nodes[i];
      const int d = n.e->dim;
      const Facts& f = n.facts;
      if (!detail::exceeds(n.lo, Rational(0))) return;
      if (f.three_connected.value == Known::Yes && f.non_string.value == Known::Yes && d >= 9)
        tighten(i, "R12", Bound{Rational(6), false}, std::nullopt, "3-connected, non-string");
      if (f.two_connected.value == Known::Yes && d >= 7)
        tighten(i, "R12", Bound{Rational(3), false}, std::nullopt, "2-connected");
      if (f.simply_connected() && d >= 5)
        tighten(i, "R12", Bound{Rational(1), false}, std::nullopt, "simply connected");
    }

    void r13(std::size_t i) {
      const Node& n = nodes[i];
      if (n.e->kind != ManifoldExpr::Kind::ConnSum) return;
      const int d = n.e->dim;
      for (int side = 0; side < 2; ++side) {
        const ManifoldExpr& a = n.e->children[static_cast<std::size_t>(side)];
        const Bound& other = nodes[n.kids[static_cast<std::size_t>(1 - side)]].lo;
        const bool part_a = is_sphere_times_torus(a, 2, d - 2);
        const bool part_b = is_sphere_times_torus(a, d - 1, 1);
        if (!part_a && !part_b) continue;
        if (d > 7) {
          note(i, "R13", "dimension " + std::to_string(d) + " > 7 is outside the proven range");
          return;
        }
        const Rational v = part_a ? Rational(1) : choose2(d - 1);
        if (other.value >= v) {
          tighten(i, "R13", Bound{v, false}, Bound{v, false});
          return;
        }
      }
    }

    void r14(std::size_t i) {
      const Node& n = nodes[i];
      if (n.e->kind != ManifoldExpr::Kind::Bundle) return;
      const Bound& fibre = nodes[n.kids[0]].lo;
      if (fibre.value <= 0) return;
      tighten(i, "R14", Bound{fibre.value, false}, std::nullopt,
              "assumes the structure group preserves a fibre metric realising the fibre bound");
    }
  };
};

/// Human-readable derivation, one line per trace step.
inline std::string explain(const RiemInterval& r) {
  std::ostringstream os;
  os << r.expr << "\n";
  os << "  dim " << r.dim << ", N = " << to_string(r.max_value()) << "\n";
  for (const TraceStep& s : r.trace) {
    os << "  " << s.rule << (s.applied ? "  " : "  (not applied) ") << s.node << ": " << s.before;
    if (s.applied) os << " -> " << s.after;
    os << "  [" << s.cite << "]";
    if (!s.note.empty()) os << " (" << s.note << ")";
    os << "\n";
  }
  os << "  result " << detail::interval_text(r.lower, r.upper) << (r.exact() ? " exact" : "") << " after "
     << r.iterations << " pass" << (r.iterations == 1 ? "" : "es") << "\n";
  return os.str();
}

}  // namespace curvlab::engine
