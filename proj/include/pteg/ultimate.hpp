#ifndef PTEG_ULTIMATE_HPP
#define PTEG_ULTIMATE_HPP

#include <optional>
#include <stdexcept>
#include <utility>

#include "pteg/periodic.hpp"

namespace pteg {

// Ultimately periodic graph: a negative periodic part (shifts < 0), a
// transient graph at shift 0, and a positive periodic part (shifts > 0),
// all over one base node set.
struct UltimateSpec {
    StaticGraph neg;
    Matrix transient;
    StaticGraph pos;

    UltimateSpec(StaticGraph n, Matrix t, StaticGraph p)
        : neg(std::move(n)), transient(std::move(t)), pos(std::move(p)) {
        if (neg.dim() != transient.dim() || transient.dim() != pos.dim())
            throw std::invalid_argument("ultimate spec: parts must share one dimension");
        if (transient.has_pos_inf())
            throw std::invalid_argument("ultimate spec: transient entries must be finite or -inf");
    }

    int dim() const { return transient.dim(); }
};

enum class UltimateKind {
    NoInfPath,
    NegPartDiverges,
    PosPartDiverges,
    TransientPositiveCircuit,
};

struct UltimateVerdict {
    UltimateKind kind = UltimateKind::NoInfPath;
    std::optional<PeriodicVerdict> neg_verdict;  // role-swapped run on the negative part
    std::optional<PeriodicVerdict> pos_verdict;
    std::optional<Matrix> combined;   // R_n Pi_n^* L_n oplus C_t oplus L_p Pi_p^* R_p
    std::optional<int> witness_node;  // 0-based, on a positive circuit of `combined`

    bool no_inf_path() const { return kind == UltimateKind::NoInfPath; }
};

// Three conditions, each strongly polynomial: no inf-weight paths in the
// negative part (analyzed through the role-swapped static graph (R_n, C_n,
// L_n), which unrolls to the same graph), none in the positive part, and no
// positive circuit through shift 0 in the combined matrix.
inline UltimateVerdict detect_inf_weight_paths(const UltimateSpec& spec,
                                               AnalysisOptions opts = {}) {
    UltimateVerdict v;

    StaticGraph neg_swapped(spec.neg.right, spec.neg.center, spec.neg.left);
    v.neg_verdict = detect_inf_weight_paths(neg_swapped, opts);
    if (!v.neg_verdict->no_inf_path()) {
        v.kind = UltimateKind::NegPartDiverges;
        return v;
    }

    v.pos_verdict = detect_inf_weight_paths(spec.pos, opts);
    if (!v.pos_verdict->no_inf_path()) {
        v.kind = UltimateKind::PosPartDiverges;
        return v;
    }

    Matrix pin_star = *v.neg_verdict->pi_limit;
    Matrix pip_star = *v.pos_verdict->pi_limit;
    for (int i = 0; i < spec.dim(); ++i) {
        pin_star.at(i, i) = oplus(pin_star.at(i, i), Tropical::zero());
        pip_star.at(i, i) = oplus(pip_star.at(i, i), Tropical::zero());
    }
    Matrix combined = oplus(
        oplus(otimes(otimes(spec.neg.right, pin_star), spec.neg.left), spec.transient),
        otimes(otimes(spec.pos.left, pip_star), spec.pos.right));
    CircuitVerdict c = check_circuit_free(combined);
    v.combined = std::move(combined);
    if (!c.circuit_free) {
        v.kind = UltimateKind::TransientPositiveCircuit;
        v.witness_node = c.witness_node;
        return v;
    }
    v.kind = UltimateKind::NoInfPath;
    return v;
}

}  // namespace pteg

#endif  // PTEG_ULTIMATE_HPP
