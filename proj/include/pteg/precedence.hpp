#ifndef PTEG_PRECEDENCE_HPP
#define PTEG_PRECEDENCE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pteg/maxplus.hpp"

namespace pteg {

// Good order on node pairs: an injection into the naturals, so every nonempty
// pair set has a least element and finitely many pairs precede any pair.
// Nodes are 1-based here to match the usual statement of the pairing function.
using GoodOrder = std::function<std::uint64_t(int, int)>;

// Cantor pairing f(m, n) = (m+n-2)(m+n-1)/2 + m, a bijection N x N -> N.
inline std::uint64_t cantor_index(int i, int j) {
    if (i < 1 || j < 1) throw std::invalid_argument("cantor_index: nodes are 1-based");
    std::uint64_t m = static_cast<std::uint64_t>(i), n = static_cast<std::uint64_t>(j);
    return (m + n - 2) * (m + n - 1) / 2 + m;
}

inline GoodOrder cantor_order() {
    return [](int i, int j) { return cantor_index(i, j); };
}

// Feasibility of the finite precedence system x >= A x over the reals.
struct FeasibilityResult {
    bool feasible = false;
    std::optional<std::vector<Rational>> solution;  // x with x >= A x, all finite
    std::optional<int> certificate_node;            // 0-based node on a positive circuit
};

// Gallai: x >= A x has a real solution iff G(A) has no positive-weight
// circuit. The solution is the row-maximum of A^*, i.e. the max-plus
// combination of all columns with zero coefficients; finite because the
// diagonal of A^* is zero.
inline FeasibilityResult has_solution(const Matrix& a) {
    ClosureResult c = closure_plus(a);
    if (c.positive_node) return FeasibilityResult{false, std::nullopt, c.positive_node};
    const int n = a.dim();
    std::vector<Rational> x(n);
    for (int i = 0; i < n; ++i) {
        Tropical best = Tropical::zero();  // (A^*)_{ii}
        for (int j = 0; j < n; ++j) best = oplus(best, c.plus.at(i, j));
        x[i] = best.value();
    }
    return FeasibilityResult{true, std::move(x), std::nullopt};
}

// One application of the Phi operator: close A, then raise the single entry
// (i, j) -- the least pair under `order` with (A^*)_{ij} = -inf and
// (A^*)_{ji} != -inf -- to -(A^*)_{ji}. Adds a zero-weight return arc between
// two one-way-connected strongly connected components.
inline Matrix phi_step(const Matrix& a, const GoodOrder& order = cantor_order()) {
    ClosureResult c = closure_plus(a);
    if (c.positive_node)
        throw std::invalid_argument("phi_step: graph contains a positive-weight circuit");
    const int n = a.dim();
    Matrix star = std::move(c.plus);
    for (int i = 0; i < n; ++i) star.at(i, i) = oplus(star.at(i, i), Tropical::zero());

    bool found = false;
    int bi = 0, bj = 0;
    std::uint64_t best = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!star.at(i, j).is_neg_inf() || star.at(j, i).is_neg_inf()) continue;
            std::uint64_t key = order(i + 1, j + 1);
            if (!found || key < best) {
                found = true;
                best = key;
                bi = i;
                bj = j;
            }
        }
    if (found) star.at(bi, bj) = Tropical(Rational(-star.at(bj, bi).value()));
    return star;
}

// Iterated Phi up to its fixed point. Finite matrices converge in finitely
// many steps: each non-final application removes at least one one-sided pair.
inline Matrix phi_closure(const Matrix& a, const GoodOrder& order = cantor_order(),
                          std::optional<int> max_iters = std::nullopt) {
    const int n = a.dim();
    int cap = max_iters.value_or(n * n + n);
    Matrix cur = a;
    for (int it = 0; it < cap; ++it) {
        Matrix next = phi_step(cur, order);
        if (next == cur) return cur;
        cur = std::move(next);
    }
    throw std::runtime_error("phi_closure: no fixed point within iteration cap");
}

}  // namespace pteg

#endif  // PTEG_PRECEDENCE_HPP
