#ifndef PTEG_PTEG_HPP
#define PTEG_PTEG_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pteg/maxplus.hpp"
#include "pteg/periodic.hpp"
#include "pteg/ultimate.hpp"

namespace pteg {

// Token residence window [lower, upper], upper possibly +inf.
struct Interval {
    Rational lower;
    Tropical upper;

    Interval(Rational lb, Tropical ub) : lower(std::move(lb)), upper(std::move(ub)) {
        if (lower < 0) throw std::invalid_argument("interval: lower bound must be nonnegative");
        if (upper.is_neg_inf()) throw std::invalid_argument("interval: upper bound cannot be -inf");
        if (upper.is_finite() && upper.value() < lower)
            throw std::invalid_argument("interval: lower bound exceeds upper bound");
    }
    Interval(Rational lb, Rational ub) : Interval(std::move(lb), Tropical(std::move(ub))) {}

    bool bounded() const { return upper.is_finite(); }
};

struct Place {
    int source = 0;  // upstream transition (0-based)
    int target = 0;  // downstream transition
    long tokens = 0;
    Interval interval;
};

// P-time event graph: every place has exactly one upstream and one downstream
// transition, which is what lets places live as plain (source, target) pairs.
class PTEG {
  public:
    int add_transition(std::string label) {
        transitions_.push_back(std::move(label));
        return static_cast<int>(transitions_.size()) - 1;
    }

    void add_place(int source, int target, long tokens, Interval interval) {
        if (source < 0 || source >= size() || target < 0 || target >= size())
            throw std::invalid_argument("place: transition index out of range");
        if (tokens < 0) throw std::invalid_argument("place: negative token count");
        places_.push_back(Place{source, target, tokens, std::move(interval)});
    }

    int size() const { return static_cast<int>(transitions_.size()); }
    const std::vector<std::string>& transitions() const { return transitions_; }
    const std::vector<Place>& places() const { return places_; }

  private:
    std::vector<std::string> transitions_;
    std::vector<Place> places_;
};

// Rewrites every place holding m >= 2 tokens into a chain of m single-token
// places through m-1 fresh transitions: pure [0, 0] delays followed by the
// original interval on the last hop. Behaviorally equivalent; original
// transition indices are preserved as a prefix.
inline PTEG normalize_marking(const PTEG& net) {
    bool needed = false;
    for (const Place& p : net.places())
        if (p.tokens >= 2) needed = true;
    if (!needed) return net;

    PTEG out;
    for (const std::string& label : net.transitions()) out.add_transition(label);
    int fresh = 1;
    auto fresh_label = [&]() {
        for (;; ++fresh) {
            std::string candidate = "u" + std::to_string(fresh);
            bool taken = false;
            for (const std::string& label : out.transitions())
                if (label == candidate) taken = true;
            if (!taken) return candidate;
        }
    };
    const Interval unit_delay(Rational(0), Rational(0));
    for (const Place& p : net.places()) {
        if (p.tokens <= 1) {
            out.add_place(p.source, p.target, p.tokens, p.interval);
            continue;
        }
        int prev = p.source;
        for (long stage = 1; stage < p.tokens; ++stage) {
            int u = out.add_transition(fresh_label());
            out.add_place(prev, u, 1, unit_delay);
            prev = u;
        }
        out.add_place(prev, p.target, 1, p.interval);
    }
    return out;
}

// A^mu / B^mu for mu in {0, 1}: residence bounds of the place (if any) with
// mu initial tokens from t_j to t_i. A entries default to -inf, B to +inf.
struct CharacteristicMatrices {
    Matrix a0, a1;  // lower bounds, max-plus side
    Matrix b0, b1;  // upper bounds, min-plus side

    explicit CharacteristicMatrices(int n)
        : a0(Matrix::epsilon(n)), a1(Matrix::epsilon(n)), b0(n), b1(n) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                b0.at(i, j) = Tropical::pos_inf();
                b1.at(i, j) = Tropical::pos_inf();
            }
    }

    int dim() const { return a0.dim(); }
};

// Duplicate places sharing (source, target, tokens) are conjoined constraints:
// intervals intersect; an empty intersection is an input error.
inline CharacteristicMatrices characteristic_matrices(const PTEG& net) {
    CharacteristicMatrices cm(net.size());
    for (const Place& p : net.places()) {
        if (p.tokens > 1)
            throw std::invalid_argument(
                "characteristic matrices: place holds more than one token (normalize first)");
        Matrix& a = p.tokens == 0 ? cm.a0 : cm.a1;
        Matrix& b = p.tokens == 0 ? cm.b0 : cm.b1;
        const int i = p.target, j = p.source;
        Tropical lb(p.interval.lower);
        const Tropical& ub = p.interval.upper;
        a.at(i, j) = oplus(a.at(i, j), lb);
        if (ub < b.at(i, j)) b.at(i, j) = ub;
        if (b.at(i, j) < a.at(i, j))
            throw std::invalid_argument("duplicate places have an empty interval intersection");
    }
    return cm;
}

// L_{ij} = -B^1_{ji}; C_{ij} = A^0_{ij} oplus -B^0_{ji}; R = A^1 oplus E
// (the unit diagonal carries the nondecreasingness constraints).
inline StaticGraph lcr_matrices(const CharacteristicMatrices& cm) {
    const int n = cm.dim();
    Matrix l(n), c(n), r(n);
    auto negated = [](const Tropical& t) {
        return t.is_finite() ? Tropical(Rational(-t.value())) : Tropical::neg_inf();
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            l.at(i, j) = negated(cm.b1.at(j, i));
            c.at(i, j) = oplus(cm.a0.at(i, j), negated(cm.b0.at(j, i)));
            r.at(i, j) = i == j ? oplus(Tropical::zero(), cm.a1.at(i, i)) : cm.a1.at(i, j);
        }
    return StaticGraph(std::move(l), std::move(c), std::move(r));
}

enum class Semantics { Loose, Strict };

// Where the strict-consistency iteration stopped.
enum class StrictStage {
    CenterCircuit,     // G(C) already has a positive circuit
    IterationCircuit,  // circuit in L Pi(h) R oplus C
    NoFixpoint,        // Pi never converged within h <= n^2: inconsistent
    CombinedCircuit,   // fixpoint reached but C_t oplus L Pi R has a circuit
    Converged,         // consistent
};

struct StrictResult {
    StrictStage stage = StrictStage::Converged;
    int h = -1;  // iteration index (IterationCircuit) or fixpoint index
    std::optional<Matrix> failing;
    std::optional<int> witness_node;  // 0-based
};

struct ConsistencyReport {
    Semantics semantics = Semantics::Loose;
    bool consistent = false;
    std::optional<PeriodicVerdict> periodic;     // loose analysis
    std::optional<StrictResult> strict_result;   // strict analysis
    std::optional<Circuit> circuit;              // extracted certificate, when one exists
};

inline ConsistencyReport check_loose(const CharacteristicMatrices& cm) {
    ConsistencyReport rep;
    rep.semantics = Semantics::Loose;
    rep.periodic = detect_inf_weight_paths(lcr_matrices(cm));
    rep.consistent = rep.periodic->no_inf_path();
    if (rep.periodic->kind == PeriodicKind::PositiveCircuit)
        rep.circuit = find_positive_circuit(*rep.periodic->failing_matrix);
    return rep;
}

inline ConsistencyReport check_loose(const PTEG& net) {
    return check_loose(characteristic_matrices(normalize_marking(net)));
}

// Strict consistency: the positive periodic part is G(L, C, R), the transient
// block is all zeros (it pins every x_i(0) to one initial time), and the
// negative part is empty. Iterates the starred Pi sequence to its fixpoint
// and then checks the combined shift-0 matrix.
inline ConsistencyReport check_strict(const CharacteristicMatrices& cm) {
    ConsistencyReport rep;
    rep.semantics = Semantics::Strict;
    rep.strict_result = StrictResult{};
    StrictResult& sr = *rep.strict_result;

    const StaticGraph g = lcr_matrices(cm);
    const int n = g.dim();
    Matrix zeros(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) zeros.at(i, j) = Tropical::zero();

    auto fail = [&](StrictStage stage, int h, Matrix failing, int node) {
        sr.stage = stage;
        sr.h = h;
        sr.witness_node = node;
        rep.circuit = find_positive_circuit(failing);
        sr.failing = std::move(failing);
        rep.consistent = false;
    };

    ClosureResult c0 = closure_plus(g.center);
    if (c0.positive_node) {
        fail(StrictStage::CenterCircuit, -1, g.center, *c0.positive_node);
        return rep;
    }
    Matrix pi = std::move(c0.plus);
    for (int i = 0; i < n; ++i) pi.at(i, i) = oplus(pi.at(i, i), Tropical::zero());

    for (int h = 0; h <= n * n; ++h) {
        Matrix x = oplus(otimes(otimes(g.left, pi), g.right), g.center);
        ClosureResult cx = closure_plus(x);
        if (cx.positive_node) {
            fail(StrictStage::IterationCircuit, h, std::move(x), *cx.positive_node);
            return rep;
        }
        Matrix next = std::move(cx.plus);
        for (int i = 0; i < n; ++i) next.at(i, i) = oplus(next.at(i, i), Tropical::zero());
        if (next == pi) {
            Matrix combined = oplus(zeros, otimes(otimes(g.left, next), g.right));
            CircuitVerdict cc = check_circuit_free(combined);
            if (!cc.circuit_free) {
                fail(StrictStage::CombinedCircuit, h, std::move(combined), *cc.witness_node);
                return rep;
            }
            sr.stage = StrictStage::Converged;
            sr.h = h;
            rep.consistent = true;
            return rep;
        }
        pi = std::move(next);
    }
    sr.stage = StrictStage::NoFixpoint;
    sr.h = n * n;
    rep.consistent = false;
    return rep;
}

inline ConsistencyReport check_strict(const PTEG& net) {
    return check_strict(characteristic_matrices(normalize_marking(net)));
}

// Firing-time prefix: steps[k-1][i] is the k-th firing time of transition i.
struct Trajectory {
    std::optional<Rational> t0;  // strict runs carry the initial time
    std::vector<std::vector<Rational>> steps;

    int length() const { return static_cast<int>(steps.size()); }
};

namespace detail {

// Truncation of the strict-mode incidence matrix: blocks 0..K with the
// all-zeros transient block at shift 0.
inline Matrix strict_truncation(const StaticGraph& g, int events) {
    Matrix m = truncated_incidence(g, events + 1);
    for (int i = 0; i < g.dim(); ++i)
        for (int j = 0; j < g.dim(); ++j) m.at(i, j) = Tropical::zero();
    return m;
}

}  // namespace detail

// A feasible prefix of K events, canonically anchored: loose prefixes are
// shifted so their smallest entry is 0, strict prefixes so that x(0) = t0.
// Certifies prefix feasibility only; the infinite-horizon statement is the
// decision procedure's.
inline Trajectory witness_prefix(const PTEG& net, Semantics semantics, int events,
                                 const Rational& t0 = Rational(0)) {
    if (events < 1) throw std::invalid_argument("witness_prefix: need at least one event");
    const PTEG normalized = normalize_marking(net);
    const CharacteristicMatrices cm = characteristic_matrices(normalized);
    ConsistencyReport rep =
        semantics == Semantics::Loose ? check_loose(cm) : check_strict(cm);
    if (!rep.consistent)
        throw std::invalid_argument("witness_prefix: net is not consistent under the requested semantics");

    const StaticGraph g = lcr_matrices(cm);
    const int n_all = g.dim();
    const int n = net.size();
    const bool strict = semantics == Semantics::Strict;
    Matrix trunc = strict ? detail::strict_truncation(g, events) : truncated_incidence(g, events);
    Matrix star = kleene_star(trunc);

    // Row-maximum of the star: the all-zero-coefficients column combination.
    std::vector<Rational> x(star.dim());
    for (int i = 0; i < star.dim(); ++i) {
        Tropical best = star.at(i, i);  // diagonal is 0
        for (int j = 0; j < star.dim(); ++j) best = oplus(best, star.at(i, j));
        x[i] = best.value();
    }

    Trajectory traj;
    Rational shift;
    int first_block = 0;
    if (strict) {
        traj.t0 = t0;
        shift = t0 - x[0];  // block 0 is one synchronized value
        first_block = 1;
    } else {
        Rational smallest = x[0];
        for (int b = 0; b < events; ++b)
            for (int i = 0; i < n; ++i)
                if (x[b * n_all + i] < smallest) smallest = x[b * n_all + i];
        shift = -smallest;
    }
    for (int b = first_block; b < first_block + events; ++b) {
        std::vector<Rational> step(n);
        for (int i = 0; i < n; ++i) step[i] = x[b * n_all + i] + shift;
        traj.steps.push_back(std::move(step));
    }
    return traj;
}

// One violated constraint of a trajectory, with enough indices to print it.
struct Violation {
    enum class Kind {
        LowerBound,     // x_i(k_src + mu) < lb + x_j(k_src)
        UpperBound,     // x_i(k_src + mu) > ub + x_j(k_src)
        NonDecreasing,  // x_i(k+1) < x_i(k)
        InitialLower,   // strict: x_i(k) < t0 + lb for k <= tokens
        InitialUpper,   // strict: x_i(k) > t0 + ub for k <= tokens
        InitialTime,    // strict: x_i(1) < t0
    };
    Kind kind;
    int place = -1;  // index into net.places(), when applicable
    int i = -1;      // transition whose firing violates the bound (0-based)
    int j = -1;      // upstream transition, for place constraints
    int k = -1;      // firing index on the violating side
    int k_src = -1;  // firing index on the upstream side
    Rational bound;  // the crossed bound
    Rational actual;

    // How far past the bound the firing is (always positive for a violation).
    Rational slack() const {
        Rational s = actual - bound;
        return s < 0 ? Rational(-s) : s;
    }
};

inline std::string describe(const Violation& v, const PTEG& net) {
    const auto& t = net.transitions();
    auto x = [&](int i, int k) { return "x(" + t[i] + "," + std::to_string(k) + ")"; };
    std::string lhs = x(v.i, v.k) + " = " + format_rational(v.actual);
    switch (v.kind) {
        case Violation::Kind::LowerBound:
            return lhs + " < " + format_rational(v.bound) + " = lb + " + x(v.j, v.k_src) +
                   " (place " + std::to_string(v.place + 1) + ", slack " +
                   format_rational(v.slack()) + ")";
        case Violation::Kind::UpperBound:
            return lhs + " > " + format_rational(v.bound) + " = ub + " + x(v.j, v.k_src) +
                   " (place " + std::to_string(v.place + 1) + ", slack " +
                   format_rational(v.slack()) + ")";
        case Violation::Kind::NonDecreasing:
            return lhs + " < " + format_rational(v.bound) + " = " + x(v.i, v.k - 1) +
                   " (nondecreasingness, slack " + format_rational(v.slack()) + ")";
        case Violation::Kind::InitialLower:
            return lhs + " < " + format_rational(v.bound) +
                   " = t0 + lb (initial token of place " + std::to_string(v.place + 1) +
                   ", slack " + format_rational(v.slack()) + ")";
        case Violation::Kind::InitialUpper:
            return lhs + " > " + format_rational(v.bound) +
                   " = t0 + ub (initial token of place " + std::to_string(v.place + 1) +
                   ", slack " + format_rational(v.slack()) + ")";
        case Violation::Kind::InitialTime:
            return lhs + " < t0 = " + format_rational(v.bound) + " (slack " +
                   format_rational(v.slack()) + ")";
    }
    return lhs;
}

// Checks every constraint instance internal to the prefix, literally against
// the net: residence windows of each place for all k with k + tokens <= K,
// nondecreasingness, and in strict mode the initial-token windows
// (x_i(k) in [t0+lb, t0+ub] for k <= tokens) plus t0 <= x_i(1). This is the
// independent oracle the witness tests rely on, so it reads the net directly
// rather than going through the L/C/R encoding.
inline std::vector<Violation> validate_trajectory(const PTEG& net, Semantics semantics,
                                                  const Trajectory& traj) {
    const int n = net.size();
    const int len = traj.length();
    if (len < 1) throw std::invalid_argument("validate_trajectory: empty trajectory");
    for (const auto& step : traj.steps)
        if (static_cast<int>(step.size()) != n)
            throw std::invalid_argument("validate_trajectory: step dimension mismatch");

    std::vector<Violation> out;
    auto firing = [&](int i, int k) -> const Rational& { return traj.steps[k - 1][i]; };

    for (int i = 0; i < n; ++i)
        for (int k = 1; k < len; ++k)
            if (firing(i, k + 1) < firing(i, k)) {
                Violation v;
                v.kind = Violation::Kind::NonDecreasing;
                v.i = i;
                v.k = k + 1;
                v.bound = firing(i, k);
                v.actual = firing(i, k + 1);
                out.push_back(std::move(v));
            }

    const auto& places = net.places();
    for (int p = 0; p < static_cast<int>(places.size()); ++p) {
        const Place& pl = places[p];
        const long mu = pl.tokens;
        for (int k = 1; k + mu <= len; ++k) {
            const Rational& src = firing(pl.source, k);
            const Rational& dst = firing(pl.target, static_cast<int>(k + mu));
            Rational lb = pl.interval.lower + src;
            if (dst < lb) {
                Violation v;
                v.kind = Violation::Kind::LowerBound;
                v.place = p;
                v.i = pl.target;
                v.j = pl.source;
                v.k = static_cast<int>(k + mu);
                v.k_src = k;
                v.bound = std::move(lb);
                v.actual = dst;
                out.push_back(std::move(v));
            }
            if (pl.interval.bounded()) {
                Rational ub = pl.interval.upper.value() + src;
                if (ub < dst) {
                    Violation v;
                    v.kind = Violation::Kind::UpperBound;
                    v.place = p;
                    v.i = pl.target;
                    v.j = pl.source;
                    v.k = static_cast<int>(k + mu);
                    v.k_src = k;
                    v.bound = std::move(ub);
                    v.actual = dst;
                    out.push_back(std::move(v));
                }
            }
        }
    }

    if (semantics == Semantics::Strict) {
        const Rational t0 = traj.t0.value_or(Rational(0));
        for (int p = 0; p < static_cast<int>(places.size()); ++p) {
            const Place& pl = places[p];
            for (long k = 1; k <= pl.tokens && k <= len; ++k) {
                const Rational& dst = firing(pl.target, static_cast<int>(k));
                Rational lb = t0 + pl.interval.lower;
                if (dst < lb) {
                    Violation v;
                    v.kind = Violation::Kind::InitialLower;
                    v.place = p;
                    v.i = pl.target;
                    v.k = static_cast<int>(k);
                    v.bound = std::move(lb);
                    v.actual = dst;
                    out.push_back(std::move(v));
                }
                if (pl.interval.bounded()) {
                    Rational ub = t0 + pl.interval.upper.value();
                    if (ub < dst) {
                        Violation v;
                        v.kind = Violation::Kind::InitialUpper;
                        v.place = p;
                        v.i = pl.target;
                        v.k = static_cast<int>(k);
                        v.bound = std::move(ub);
                        v.actual = dst;
                        out.push_back(std::move(v));
                    }
                }
            }
        }
        for (int i = 0; i < n; ++i)
            if (firing(i, 1) < t0) {
                Violation v;
                v.kind = Violation::Kind::InitialTime;
                v.i = i;
                v.k = 1;
                v.bound = t0;
                v.actual = firing(i, 1);
                out.push_back(std::move(v));
            }
    }
    return out;
}

}  // namespace pteg

#endif  // PTEG_PTEG_HPP
