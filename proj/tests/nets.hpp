#ifndef PTEG_TESTS_NETS_HPP
#define PTEG_TESTS_NETS_HPP

#include "pteg/pteg.hpp"

namespace pteg::testing {

// Two-transition net with self-loop places [beta, -alpha] on t1 and [2, 3] on
// t2 (one token each) and a tokenless [0, inf) place t1 -> t2. Only
// representable as a net when beta <= -alpha.
inline PTEG two_loop_net(const Rational& alpha, const Rational& beta) {
    PTEG net;
    int t1 = net.add_transition("t1");
    int t2 = net.add_transition("t2");
    net.add_place(t1, t1, 1, Interval(beta, Rational(-alpha)));
    net.add_place(t2, t2, 1, Interval(Rational(2), Rational(3)));
    net.add_place(t1, t2, 0, Interval(Rational(0), Tropical::pos_inf()));
    return net;
}

// The same system as characteristic matrices, valid for any alpha <= 0 <=
// beta; this is the form the infeasible-interval parameterizations need.
inline CharacteristicMatrices two_loop_cm(const Rational& alpha, const Rational& beta) {
    CharacteristicMatrices cm(2);
    cm.a1.at(0, 0) = Tropical(beta);
    cm.b1.at(0, 0) = Tropical(Rational(-alpha));
    cm.a1.at(1, 1) = Tropical(2);
    cm.b1.at(1, 1) = Tropical(3);
    cm.a0.at(1, 0) = Tropical(0);
    return cm;
}

// Furnace + transport vehicle: heating window [2,3], two half-unit transport
// legs, a throughput cap of 4, and a minimum residence of 6.
inline PTEG heat_treatment_net() {
    PTEG net;
    int t1 = net.add_transition("t1");
    int t2 = net.add_transition("t2");
    int t3 = net.add_transition("t3");
    const Tropical inf = Tropical::pos_inf();
    net.add_place(t1, t2, 1, Interval(Rational(2), Rational(3)));               // heating
    net.add_place(t2, t1, 0, Interval(Rational(0), inf));                       // furnace capacity
    net.add_place(t2, t3, 0, Interval(parse_rational("0.5"), inf));             // outbound leg
    net.add_place(t3, t2, 1, Interval(parse_rational("0.5"), inf));             // return leg
    net.add_place(t3, t3, 1, Interval(Rational(0), Rational(4)));               // throughput cap
    net.add_place(t1, t3, 1, Interval(Rational(6), inf));                       // min residence
    return net;
}

// Four-transition ring with exact windows; consistent under strict initial
// conditions but only via a non-periodic schedule.
inline PTEG ring_net() {
    PTEG net;
    int t1 = net.add_transition("t1");
    int t2 = net.add_transition("t2");
    int t3 = net.add_transition("t3");
    int t4 = net.add_transition("t4");
    net.add_place(t1, t2, 0, Interval(Rational(1), Rational(1)));
    net.add_place(t2, t3, 1, Interval(Rational(1), Rational(1)));
    net.add_place(t3, t4, 0, Interval(Rational(2), Rational(2)));
    net.add_place(t4, t1, 1, Interval(Rational(0), Rational(0)));
    return net;
}

}  // namespace pteg::testing

#endif  // PTEG_TESTS_NETS_HPP
