#ifndef PTEG_TESTS_HELPERS_HPP
#define PTEG_TESTS_HELPERS_HPP

#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "pteg/maxplus.hpp"

namespace pteg::testing {

// Matrix literal: "." is -inf.
inline Matrix mat(std::initializer_list<std::initializer_list<const char*>> rows) {
    Matrix m(static_cast<int>(rows.size()));
    int i = 0;
    for (const auto& row : rows) {
        int j = 0;
        for (const char* e : row) {
            std::string s(e);
            if (s == ".")
                m.at(i, j) = Tropical::neg_inf();
            else if (s == "inf")
                m.at(i, j) = Tropical::pos_inf();
            else
                m.at(i, j) = Tropical(parse_rational(s));
            ++j;
        }
        ++i;
    }
    return m;
}

// Random matrix over integers in [lo, hi] with the given arc density.
inline Matrix random_matrix(std::mt19937& rng, int n, double density, int lo = -3, int hi = 3) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<int> weight(lo, hi);
    Matrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (coin(rng) < density) m.at(i, j) = Tropical(static_cast<long>(weight(rng)));
    return m;
}

// Arc list view of G(A): arc i -> j of weight A_{ji}.
inline bool has_arc(const Matrix& a, int from, int to) { return !a.at(to, from).is_neg_inf(); }

inline Rational arc_weight(const Matrix& a, int from, int to) { return a.at(to, from).value(); }

// Best weight over walks from `from` of length 1..maxlen, by plain recursion
// on arcs; independent of the matrix algebra.
inline void walk_weights(const Matrix& a, int from, int maxlen, std::vector<Tropical>& best) {
    const int n = a.dim();
    struct Frame {
        int node;
        Rational weight;
        int len;
    };
    std::vector<Frame> stack{{from, Rational(0), 0}};
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        if (f.len == maxlen) continue;
        for (int to = 0; to < n; ++to) {
            if (!has_arc(a, f.node, to)) continue;
            Rational w = f.weight + arc_weight(a, f.node, to);
            if (best[to] < Tropical(w)) best[to] = Tropical(w);
            stack.push_back({to, w, f.len + 1});
        }
    }
}

// Nodes lying on some positive-weight elementary circuit, by exhaustive
// elementary-circuit enumeration.
inline std::vector<bool> nodes_on_positive_circuit(const Matrix& a) {
    const int n = a.dim();
    std::vector<bool> on(n, false);
    std::vector<int> path;
    std::vector<bool> used(n, false);
    auto dfs = [&](auto&& self, int start, int node, const Rational& weight) -> void {
        for (int to = 0; to < n; ++to) {
            if (!has_arc(a, node, to)) continue;
            Rational w = weight + arc_weight(a, node, to);
            if (to == start) {
                if (w > 0)
                    for (int v : path) on[v] = true;
                continue;
            }
            if (used[to] || to < start) continue;  // canonical: smallest node first
            used[to] = true;
            path.push_back(to);
            self(self, start, to, w);
            path.pop_back();
            used[to] = false;
        }
    };
    for (int s = 0; s < n; ++s) {
        path.assign(1, s);
        used.assign(n, false);
        used[s] = true;
        dfs(dfs, s, s, Rational(0));
    }
    return on;
}

inline std::vector<std::vector<bool>> reachability(const Matrix& a) {
    const int n = a.dim();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) reach[i][j] = has_arc(a, i, j);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (reach[i][k] && reach[k][j]) reach[i][j] = true;
    return reach;
}

// Reference A^+ semantics: +inf where a walk can be pumped through a
// positive circuit, otherwise the best walk weight (length <= n suffices).
inline Matrix brute_kleene_plus(const Matrix& a) {
    const int n = a.dim();
    Matrix expected(n);
    auto on_pos = nodes_on_positive_circuit(a);
    auto reach = reachability(a);
    for (int from = 0; from < n; ++from) {
        std::vector<Tropical> best(n);
        walk_weights(a, from, n, best);
        for (int to = 0; to < n; ++to) {
            bool pumped = false;
            for (int m = 0; m < n && !pumped; ++m)
                if (on_pos[m] && (m == from || reach[from][m]) && (m == to || reach[m][to]))
                    pumped = true;
            expected.at(to, from) = pumped ? Tropical::pos_inf() : best[to];
        }
    }
    return expected;
}

}  // namespace pteg::testing

#endif  // PTEG_TESTS_HELPERS_HPP
