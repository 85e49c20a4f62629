#ifndef PTEG_PERIODIC_HPP
#define PTEG_PERIODIC_HPP

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pteg/maxplus.hpp"

namespace pteg {

// Finite generator of an N-periodic precedence graph: arcs with shift -1
// (left), 0 (center), +1 (right). Nodes of the unrolled graph are (i, k) with
// i a base node and k >= 1 the shift.
struct StaticGraph {
    Matrix left, center, right;

    StaticGraph(Matrix l, Matrix c, Matrix r)
        : left(std::move(l)), center(std::move(c)), right(std::move(r)) {
        if (left.dim() != center.dim() || center.dim() != right.dim())
            throw std::invalid_argument("static graph: L, C, R must share one dimension");
        if (left.has_pos_inf() || center.has_pos_inf() || right.has_pos_inf())
            throw std::invalid_argument("static graph: entries must be finite or -inf");
    }

    int dim() const { return center.dim(); }
};

enum class PeriodicKind {
    NoInfPath,        // Pi converged; no inf-weight path exists
    PositiveCircuit,  // a positive-weight circuit appeared at some shift bound
    Divergence,       // Pi(n^2+1) > Pi(n^2): inf-weight path without a circuit
};

struct PeriodicVerdict {
    PeriodicKind kind = PeriodicKind::NoInfPath;
    std::optional<Matrix> pi_limit;        // NoInfPath: Pi(n^2) = Pi(+inf)
    std::optional<int> shift_bound;        // PositiveCircuit: the h where it appeared
    std::optional<int> witness_node;       // 0-based node on the positive circuit
    std::optional<Matrix> failing_matrix;  // arc matrix in which the circuit lives
    std::vector<std::pair<int, int>> diverging_entries;  // 0-based, strictly increased
    std::optional<Matrix> pi_before, pi_after;           // Divergence: Pi(n^2), Pi(n^2+1)
    int pi_evaluations = 0;

    bool no_inf_path() const { return kind == PeriodicKind::NoInfPath; }
};

struct AnalysisOptions {
    // Stopping at the first Pi(h+1) = Pi(h) is sound (it is a fixed point of
    // the recursion); disabled only for conformance tests.
    bool early_exit = true;
};

// Pi(0) = C^+.
inline Matrix pi_initial(const StaticGraph& g) { return kleene_plus(g.center); }

// Pi(h+1) = (L Pi(h)^* R oplus C)^+.
inline Matrix pi_next(const StaticGraph& g, const Matrix& pi) {
    if (pi.has_pos_inf()) throw std::invalid_argument("pi_next: Pi contains +inf");
    Matrix x = oplus(otimes(otimes(g.left, kleene_star(pi)), g.right), g.center);
    return kleene_plus(x);
}

// Decides whether the N-periodic graph of g contains an inf-weight path, by
// iterating Pi(0), ..., Pi(n^2+1). Halts as soon as some iterate leaves Rmax
// (positive circuit); otherwise the sequence converged iff its last two terms
// are exactly equal.
inline PeriodicVerdict detect_inf_weight_paths(const StaticGraph& g, AnalysisOptions opts = {}) {
    const int n = g.dim();
    const int hmax = n * n + 1;

    PeriodicVerdict v;
    std::optional<Matrix> prev;
    Matrix x = g.center;
    for (int h = 0; h <= hmax; ++h) {
        ClosureResult c = closure_plus(x);
        ++v.pi_evaluations;
        if (c.positive_node) {
            v.kind = PeriodicKind::PositiveCircuit;
            v.shift_bound = h;
            v.witness_node = c.positive_node;
            v.failing_matrix = std::move(x);
            return v;
        }
        Matrix pi = std::move(c.plus);
        if (prev && pi == *prev) {
            if (opts.early_exit || h == hmax) {
                v.kind = PeriodicKind::NoInfPath;
                v.pi_limit = std::move(pi);
                return v;
            }
        }
        if (h == hmax) {
            v.kind = PeriodicKind::Divergence;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (prev->at(i, j) < pi.at(i, j)) v.diverging_entries.emplace_back(i, j);
            v.pi_before = std::move(prev);
            v.pi_after = std::move(pi);
            return v;
        }
        x = oplus(otimes(otimes(g.left, kleene_star(pi)), g.right), g.center);
        prev = std::move(pi);
    }
    throw std::logic_error("detect_inf_weight_paths: unreachable");
}

// Incidence matrix of the N-periodic graph restricted to shifts 1..K:
// block-tridiagonal with C on the diagonal, L above, R below.
inline Matrix truncated_incidence(const StaticGraph& g, int blocks) {
    if (blocks < 1) throw std::invalid_argument("truncated_incidence: need at least one block");
    const int n = g.dim();
    Matrix m(blocks * n);
    for (int b = 0; b < blocks; ++b)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                m.at(b * n + i, b * n + j) = g.center.at(i, j);
                if (b + 1 < blocks) {
                    m.at(b * n + i, (b + 1) * n + j) = g.left.at(i, j);
                    m.at((b + 1) * n + i, b * n + j) = g.right.at(i, j);
                }
            }
    return m;
}

}  // namespace pteg

#endif  // PTEG_PERIODIC_HPP
