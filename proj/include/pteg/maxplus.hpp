#ifndef PTEG_MAXPLUS_HPP
#define PTEG_MAXPLUS_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pteg/rational.hpp"

namespace pteg {

// Scalar of the completed max-plus semiring: an exact rational, -inf, or +inf.
// -inf < finite < +inf; oplus is max, otimes is addition with -inf absorbing
// (so -inf dominates +inf, the complete-semiring rule).
class Tropical {
  public:
    Tropical() = default;  // -inf, the oplus-neutral element
    Tropical(const Rational& v) : state_(State::Finite), value_(v) {}
    Tropical(long v) : state_(State::Finite), value_(v) {}
    Tropical(int v) : state_(State::Finite), value_(static_cast<long>(v)) {}

    static Tropical neg_inf() { return Tropical(); }
    static Tropical pos_inf() {
        Tropical t;
        t.state_ = State::PosInf;
        return t;
    }
    static Tropical zero() { return Tropical(0L); }  // otimes-neutral

    bool is_neg_inf() const { return state_ == State::NegInf; }
    bool is_pos_inf() const { return state_ == State::PosInf; }
    bool is_finite() const { return state_ == State::Finite; }

    const Rational& value() const {
        if (!is_finite()) throw std::logic_error("tropical: value() on infinite element");
        return value_;
    }

    friend bool operator==(const Tropical& a, const Tropical& b) {
        if (a.state_ != b.state_) return false;
        return a.state_ != State::Finite || a.value_ == b.value_;
    }
    friend bool operator!=(const Tropical& a, const Tropical& b) { return !(a == b); }
    friend bool operator<(const Tropical& a, const Tropical& b) {
        if (a.state_ != b.state_) return static_cast<int>(a.state_) < static_cast<int>(b.state_);
        return a.state_ == State::Finite && a.value_ < b.value_;
    }
    friend bool operator<=(const Tropical& a, const Tropical& b) { return a < b || a == b; }
    friend bool operator>(const Tropical& a, const Tropical& b) { return b < a; }
    friend bool operator>=(const Tropical& a, const Tropical& b) { return b <= a; }

    std::string str() const {
        if (is_neg_inf()) return "-inf";
        if (is_pos_inf()) return "inf";
        return format_rational(value_);
    }

  private:
    enum class State { NegInf = 0, Finite = 1, PosInf = 2 };
    State state_ = State::NegInf;
    Rational value_;
};

inline Tropical oplus(const Tropical& a, const Tropical& b) { return a < b ? b : a; }

inline Tropical otimes(const Tropical& a, const Tropical& b) {
    if (a.is_neg_inf() || b.is_neg_inf()) return Tropical::neg_inf();
    if (a.is_pos_inf() || b.is_pos_inf()) return Tropical::pos_inf();
    return Tropical(Rational(a.value() + b.value()));
}

// Dense square max-plus matrix. Freshly constructed matrices are all -inf.
class Matrix {
  public:
    explicit Matrix(int n) : n_(n), entries_(static_cast<std::size_t>(n) * n) {
        if (n < 1) throw std::invalid_argument("matrix: dimension must be >= 1");
    }

    static Matrix epsilon(int n) { return Matrix(n); }
    static Matrix identity(int n) {
        Matrix m(n);
        for (int i = 0; i < n; ++i) m.at(i, i) = Tropical::zero();
        return m;
    }

    int dim() const { return n_; }

    Tropical& at(int i, int j) { return entries_[static_cast<std::size_t>(i) * n_ + j]; }
    const Tropical& at(int i, int j) const {
        return entries_[static_cast<std::size_t>(i) * n_ + j];
    }

    bool has_pos_inf() const {
        for (const auto& e : entries_)
            if (e.is_pos_inf()) return true;
        return false;
    }

    Matrix transposed() const {
        Matrix t(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.n_ == b.n_ && a.entries_ == b.entries_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  private:
    int n_;
    std::vector<Tropical> entries_;
};

inline void require_same_dim(const Matrix& a, const Matrix& b, const char* op) {
    if (a.dim() != b.dim())
        throw std::invalid_argument(std::string(op) + ": dimension mismatch (" +
                                    std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) +
                                    ")");
}

inline Matrix oplus(const Matrix& a, const Matrix& b) {
    require_same_dim(a, b, "oplus");
    Matrix out(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) out.at(i, j) = oplus(a.at(i, j), b.at(i, j));
    return out;
}

inline Matrix otimes(const Matrix& a, const Matrix& b) {
    require_same_dim(a, b, "otimes");
    const int n = a.dim();
    Matrix out(n);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            const Tropical& aik = a.at(i, k);
            if (aik.is_neg_inf()) continue;
            for (int j = 0; j < n; ++j) {
                const Tropical& bkj = b.at(k, j);
                if (bkj.is_neg_inf()) continue;
                Tropical prod = otimes(aik, bkj);
                if (out.at(i, j) < prod) out.at(i, j) = prod;
            }
        }
    }
    return out;
}

// Kleene plus together with positive-circuit information, computed in one
// sweep so analysis loops do not run Floyd-Warshall twice.
struct ClosureResult {
    Matrix plus;                       // A^+, with +inf where an inf-weight path exists
    std::optional<int> positive_node;  // some node on a positive-weight circuit (0-based)
};

// Two passes: Floyd-Warshall over the finite entries, then saturation. A bare
// iteration of FW does not converge when positive circuits are present; the
// saturation pass sets (A^+)_{ji} = +inf exactly where i reaches a node on a
// positive circuit that reaches j.
inline ClosureResult closure_plus(const Matrix& a) {
    if (a.has_pos_inf()) throw std::invalid_argument("kleene_plus: input contains +inf");
    const int n = a.dim();
    Matrix d = a;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            const Tropical& dik = d.at(i, k);
            if (dik.is_neg_inf()) continue;
            for (int j = 0; j < n; ++j) {
                const Tropical& dkj = d.at(k, j);
                if (dkj.is_neg_inf()) continue;
                Tropical through = otimes(dik, dkj);
                if (d.at(i, j) < through) d.at(i, j) = through;
            }
        }

    std::vector<int> pumping;
    for (int k = 0; k < n; ++k)
        if (Tropical::zero() < d.at(k, k)) pumping.push_back(k);
    std::optional<int> witness;
    if (!pumping.empty()) {
        witness = pumping.front();
        // d_{ji} != -inf means "some walk i -> j exists", which is all the
        // reachability needed here.
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                for (int k : pumping) {
                    bool i_to_k = (i == k) || !d.at(k, i).is_neg_inf();
                    bool k_to_j = (k == j) || !d.at(j, k).is_neg_inf();
                    if (i_to_k && k_to_j) {
                        d.at(j, i) = Tropical::pos_inf();
                        break;
                    }
                }
    }
    return ClosureResult{std::move(d), witness};
}

inline Matrix kleene_plus(const Matrix& a) { return closure_plus(a).plus; }

inline Matrix kleene_star(const Matrix& a) {
    Matrix star = kleene_plus(a);
    for (int i = 0; i < a.dim(); ++i) star.at(i, i) = oplus(star.at(i, i), Tropical::zero());
    return star;
}

// Membership in the class of precedence graphs without inf-weight paths; for
// finite matrices that is exactly "no positive-weight circuit".
struct CircuitVerdict {
    bool circuit_free = true;
    std::optional<int> witness_node;  // 0-based, present iff !circuit_free
};

inline CircuitVerdict check_circuit_free(const Matrix& a) {
    ClosureResult r = closure_plus(a);
    return CircuitVerdict{!r.positive_node.has_value(), r.positive_node};
}

// An explicit circuit, for certificates: nodes[0] == nodes.back(), 0-based.
struct Circuit {
    std::vector<int> nodes;
    Rational weight;
};

// Heaviest positive closed walk at the smallest length where one appears.
// At that minimal length the maximizing walk is an elementary circuit: any
// decomposition into shorter circuits would contain a positive one.
inline std::optional<Circuit> find_positive_circuit(const Matrix& a) {
    const int n = a.dim();
    std::vector<Matrix> pow;  // pow[m] = A^{m+1}
    pow.push_back(a);
    for (int len = 1; len <= n; ++len) {
        if (len > 1) pow.push_back(otimes(a, pow.back()));
        const Matrix& p = pow[len - 1];
        int best = -1;
        for (int i = 0; i < n; ++i)
            if (Tropical::zero() < p.at(i, i) && (best < 0 || p.at(best, best) < p.at(i, i)))
                best = i;
        if (best < 0) continue;

        // Reconstruct: (A^m)_{ji} is the best weight over length-m paths
        // i -> j, so peel arcs off the front of the walk.
        Circuit c;
        c.weight = p.at(best, best).value();
        c.nodes.push_back(best);
        int cur = best;
        Tropical need = p.at(best, best);
        for (int rem = len; rem >= 1; --rem) {
            if (rem == 1) {
                c.nodes.push_back(best);
                break;
            }
            for (int v = 0; v < n; ++v) {
                const Tropical& arc = a.at(v, cur);  // arc cur -> v
                if (arc.is_neg_inf()) continue;
                const Tropical& rest = pow[rem - 2].at(best, v);  // path v -> best, length rem-1
                if (otimes(arc, rest) == need) {
                    c.nodes.push_back(v);
                    need = rest;
                    cur = v;
                    break;
                }
            }
        }
        return c;
    }
    return std::nullopt;
}

}  // namespace pteg

#endif  // PTEG_MAXPLUS_HPP
