#pragma once

#include "families.hpp"

namespace miop {

// First-order difference operators acting on lattice functions.  Every
// application happens in cleared form: multiply through by the denominator
// polynomials, shift, then divide exactly.  A failed division is a broken
// identity, not an arithmetic accident, and surfaces as exactness_error.
enum class OpKind {
    forward,          // rdQM  F(lambda)
    backward,         // rdQM  B(lambda)
    hamiltonian,      // rdQM  H~(lambda) = B F
    forward_primed,   // rdQM  F at twisted parameters (continuous shift)
    backward_primed,  // rdQM  B at twisted parameters
    idqm_forward,         // idQM  F (parameter independent)
    idqm_backward,        // idQM  B(lambda)
    idqm_hamiltonian,     // idQM  H~(lambda)
    idqm_forward_primed,  // idQM  F'(lambda) = F
    idqm_backward_primed  // idQM  B'(lambda) = B(t(lambda))
};

struct ShiftOperator {
    OpKind kind;
    Params p;
    Twist type = Twist::unit;  // primed kinds
};

namespace detail {

inline LatticeFun apply_forward_rdqm(const Params& p, const LatticeFun& f) {
    Gauss B0 = eval_at_int(pot_B(p), 0);
    LatticeFun g = (f - lat_shift(f, Rational(1))) * B0;
    return exact_div(g, phi_fn(p));
}

inline LatticeFun apply_backward_rdqm(const Params& p, const LatticeFun& f) {
    LatticeRat B = pot_B(p), D = pot_D(p);
    Gauss B0 = eval_at_int(B, 0);
    LatticeFun g = phi_fn(p) * f;
    LatticeFun num = B.num * D.den * g - D.num * B.den * lat_shift(g, Rational(-1));
    return exact_div(num, B.den * D.den) * (Gauss(1) / B0);
}

inline LatticeFun apply_hamiltonian_rdqm(const Params& p, const LatticeFun& f) {
    LatticeRat B = pot_B(p), D = pot_D(p);
    LatticeFun num = B.num * D.den * (f - lat_shift(f, Rational(1))) +
                     D.num * B.den * (f - lat_shift(f, Rational(-1)));
    return exact_div(num, B.den * D.den);
}

inline LatticeFun apply_forward_idqm(const Params& p, const LatticeFun& f) {
    LatticeFun g = (lat_shift_half(f, 1) - lat_shift_half(f, -1)) * Gauss::unit_i();
    return exact_div(g, phi_fn(p));
}

inline LatticeFun apply_backward_idqm(const Params& p, const LatticeFun& f) {
    LatticeRat V = pot_V(p), Vs = lat_star(V);
    LatticeFun g = phi_fn(p) * f;
    LatticeFun num = V.num * Vs.den * lat_shift_half(g, 1) - Vs.num * V.den * lat_shift_half(g, -1);
    return exact_div(num, V.den * Vs.den) * (-Gauss::unit_i());
}

inline LatticeFun apply_hamiltonian_idqm(const Params& p, const LatticeFun& f) {
    LatticeRat V = pot_V(p), Vs = lat_star(V);
    LatticeFun num = V.num * Vs.den * (lat_shift_half(f, 2) - f) +
                     Vs.num * V.den * (lat_shift_half(f, -2) - f);
    return exact_div(num, V.den * Vs.den);
}

}  // namespace detail

inline LatticeFun apply(const ShiftOperator& op, const LatticeFun& f) {
    switch (op.kind) {
        case OpKind::forward: return detail::apply_forward_rdqm(op.p, f);
        case OpKind::backward: return detail::apply_backward_rdqm(op.p, f);
        case OpKind::hamiltonian: return detail::apply_hamiltonian_rdqm(op.p, f);
        case OpKind::forward_primed: return detail::apply_forward_rdqm(twist(op.p, op.type), f);
        case OpKind::backward_primed: return detail::apply_backward_rdqm(twist(op.p, op.type), f);
        case OpKind::idqm_forward: return detail::apply_forward_idqm(op.p, f);
        case OpKind::idqm_backward: return detail::apply_backward_idqm(op.p, f);
        case OpKind::idqm_hamiltonian: return detail::apply_hamiltonian_idqm(op.p, f);
        case OpKind::idqm_forward_primed: return detail::apply_forward_idqm(op.p, f);
        default: return detail::apply_backward_idqm(twist(op.p, op.type), f);
    }
}

// The square-root-free forward/backward shift operators for the idQM virtual
// state polynomials.  The type picks which parameter pair carries the shift:
// type I twists (a1,a2), so the forward coefficient function is v1; type II
// twists (a3,a4) and uses v2.
inline LatticeFun apply_idqm_xi_forward(const Params& p, Twist t, const LatticeFun& f) {
    Params pd = shift_tdelta(p, 1, t);
    LatticeFun v = v_fn(pd, t == Twist::I ? 1 : 2);
    LatticeFun g = (lat_star(v) * lat_shift_half(f, 1) - v * lat_shift_half(f, -1)) * Gauss::unit_i();
    return exact_div(g, phi_fn(p));
}

inline LatticeFun apply_idqm_xi_backward(const Params& p, Twist t, const LatticeFun& f) {
    LatticeFun v = v_fn(p, t == Twist::I ? 2 : 1);
    LatticeFun g = (v * lat_shift_half(f, 1) - lat_star(v) * lat_shift_half(f, -1)) * Gauss::unit_i();
    return exact_div(g, phi_fn(p));
}

}  // namespace miop
