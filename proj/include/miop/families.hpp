#pragma once

#include <string>
#include <utility>
#include <vector>

#include "eta_poly.hpp"
#include "lattice.hpp"
#include "params.hpp"

namespace miop {

// ---------------------------------------------------------------------------
// scalar data
// ---------------------------------------------------------------------------

inline Rational d_tilde(const Params& p) {
    switch (p.fam) {
        case Family::R: return p.a[0] + p.a[1] + p.a[2] - p.a[3] - 1;
        case Family::qR: return p.a[0] * p.a[1] / (p.a[3] * p.q());
        default: throw std::invalid_argument("d_tilde: Racah-type families only");
    }
}

inline Rational sym_b1(const Params& p) { return p.a[0] + p.a[1] + p.a[2] + p.a[3]; }
inline Rational sym_b3(const Params& p) {
    const auto& a = p.a;
    return a[0] * a[1] * a[2] + a[0] * a[1] * a[3] + a[0] * a[2] * a[3] + a[1] * a[2] * a[3];
}
inline Rational sym_b4(const Params& p) { return p.a[0] * p.a[1] * p.a[2] * p.a[3]; }

inline Rational energy(const Params& p, long n) {
    if (n < 0) throw std::invalid_argument("negative level index");
    switch (p.fam) {
        case Family::M: return (1 - p.a[1]) * n;
        case Family::lqL: return rat_pow(p.q(), -n) - 1;
        case Family::lqJ:
            return (rat_pow(p.q(), -n) - 1) * (1 - p.a[0] * p.a[1] * rat_pow(p.q(), n + 1));
        case Family::R: return Rational(n) * (n + d_tilde(p));
        case Family::qR: return (rat_pow(p.q(), -n) - 1) * (1 - d_tilde(p) * rat_pow(p.q(), n));
        case Family::W: return Rational(n) * (n + sym_b1(p) - 1);
        default: return (rat_pow(p.q(), -n) - 1) * (1 - sym_b4(p) * rat_pow(p.q(), n - 1));
    }
}

inline Rational virt_energy(const Params& p, long v, Twist t = Twist::unit) {
    if (v < 0) throw std::invalid_argument("negative virtual index");
    switch (p.fam) {
        case Family::M: return -(1 - p.a[1]) * (v + p.a[0]);
        case Family::lqL: return -(1 - p.a[0] * rat_pow(p.q(), -v));
        case Family::lqJ:
            return -(1 - p.a[0] * rat_pow(p.q(), -v)) * (1 - p.a[1] * rat_pow(p.q(), v + 1));
        case Family::R:
            return -(p.a[2] + v) * (p.a[0] + p.a[1] - p.a[3] - v - 1);
        case Family::qR:
            return -(1 - p.a[2] * rat_pow(p.q(), v)) *
                   (1 - p.a[0] * p.a[1] / p.a[3] * rat_pow(p.q(), -v - 1));
        case Family::W:
            if (t == Twist::I) return -(p.a[0] + p.a[1] - v - 1) * (p.a[2] + p.a[3] + v);
            if (t == Twist::II) return -(p.a[2] + p.a[3] - v - 1) * (p.a[0] + p.a[1] + v);
            throw std::invalid_argument("idQM virtual energy needs a type");
        default:
            if (t == Twist::I)
                return -(1 - p.a[0] * p.a[1] * rat_pow(p.q(), -v - 1)) *
                       (1 - p.a[2] * p.a[3] * rat_pow(p.q(), v));
            if (t == Twist::II)
                return -(1 - p.a[2] * p.a[3] * rat_pow(p.q(), -v - 1)) *
                       (1 - p.a[0] * p.a[1] * rat_pow(p.q(), v));
            throw std::invalid_argument("idQM virtual energy needs a type");
    }
}

inline Rational alpha(const Params& p, Twist t = Twist::unit) {
    switch (p.fam) {
        case Family::M: return p.a[1];
        case Family::lqL:
        case Family::lqJ: return p.a[0];
        case Family::R: return Rational(1);
        case Family::qR: return p.a[0] * p.a[1] / (p.a[3] * p.q());
        case Family::W: return Rational(1);
        default:
            if (t == Twist::I) return p.a[0] * p.a[1] / p.q();
            if (t == Twist::II) return p.a[2] * p.a[3] / p.q();
            throw std::invalid_argument("AW alpha needs a type");
    }
}

inline Rational alpha_prime(const Params& p, Twist t = Twist::unit) {
    switch (p.fam) {
        case Family::M: return -(1 - p.a[1]) * p.a[0];
        case Family::lqL: return -(1 - p.a[0]);
        case Family::lqJ: return -(1 - p.a[0]) * (1 - p.a[1] * p.q());
        case Family::R: return -p.a[2] * (p.a[0] + p.a[1] - p.a[3] - 1);
        case Family::qR: return -(1 - p.a[2]) * (1 - p.a[0] * p.a[1] / (p.a[3] * p.q()));
        case Family::W:
            if (t == Twist::I) return -(p.a[0] + p.a[1] - 1) * (p.a[2] + p.a[3]);
            if (t == Twist::II) return -(p.a[2] + p.a[3] - 1) * (p.a[0] + p.a[1]);
            throw std::invalid_argument("W alpha' needs a type");
        default:
            if (t == Twist::I) return -(1 - p.a[0] * p.a[1] / p.q()) * (1 - p.a[2] * p.a[3]);
            if (t == Twist::II) return -(1 - p.a[2] * p.a[3] / p.q()) * (1 - p.a[0] * p.a[1]);
            throw std::invalid_argument("AW alpha' needs a type");
    }
}

// alpha^{1/2} for the idQM families.  Rational only when the AW parameter set
// carries split-square witnesses.
inline Rational alpha_sqrt(const Params& p, Twist t) {
    if (p.fam == Family::W) return Rational(1);
    if (p.fam != Family::AW) throw std::invalid_argument("alpha_sqrt: idQM families only");
    if (!p.rho)
        throw std::invalid_argument("irrational alpha^(1/2); supply split parameters rho1, rho2");
    return (t == Twist::I) ? (*p.rho)[0] : (*p.rho)[1];
}

// alpha^{num/2}: exact for even num, needs witnesses otherwise.
inline Rational alpha_pow_half(const Params& p, Twist t, long num) {
    if (num % 2 == 0) return rat_pow(alpha(p, t), num / 2);
    return rat_pow(alpha_sqrt(p, t), num);
}

// Factors of the idQM energy: E_n = f_n b_{n-1}.
inline Rational factor_f(const Params& p, long n) {
    if (p.fam == Family::W) return -Rational(n) * (n + sym_b1(p) - 1);
    if (p.fam == Family::AW)
        return rat_pow(p.s, n) * (rat_pow(p.q(), -n) - 1) * (1 - sym_b4(p) * rat_pow(p.q(), n - 1));
    throw std::invalid_argument("factor_f: idQM families only");
}
inline Rational factor_b(const Params& p, long v) {
    if (p.fam == Family::W) return Rational(-1);
    if (p.fam == Family::AW) return rat_pow(p.s, -(v + 1));
    throw std::invalid_argument("factor_b: idQM families only");
}

// Factors of the idQM virtual energy: E~_v = f~_v b~_v.  These carry
// alpha^{+-1/2}, hence the witness requirement for AW.
inline Rational factor_ft(const Params& p, long v, Twist t) {
    Rational root = alpha_sqrt(p, t);
    if (p.fam == Family::W) {
        if (t == Twist::I) return (p.a[0] + p.a[1] - v - 1) / root;
        return (p.a[2] + p.a[3] - v - 1) / root;
    }
    Rational prod = (t == Twist::I) ? p.a[0] * p.a[1] : p.a[2] * p.a[3];
    return -rat_pow(p.s, v) * (1 - prod * rat_pow(p.q(), -v - 1)) / root;
}
inline Rational factor_bt(const Params& p, long v, Twist t) {
    Rational root = alpha_sqrt(p, t);
    if (p.fam == Family::W) {
        if (t == Twist::I) return -root * (p.a[2] + p.a[3] + v);
        return -root * (p.a[0] + p.a[1] + v);
    }
    Rational prod = (t == Twist::I) ? p.a[2] * p.a[3] : p.a[0] * p.a[1];
    return root * rat_pow(p.s, -v) * (1 - prod * rat_pow(p.q(), v));
}

// Primed data: the same quantity at twisted parameters.
inline Rational energy_primed(const Params& p, long v, Twist t = Twist::unit) {
    return energy(twist(p, t), v);
}
inline Rational virt_energy_primed(const Params& p, long n, Twist t = Twist::unit) {
    return virt_energy(twist(p, t), n, t);
}
inline Rational factor_f_primed(const Params& p, long n, Twist t) { return factor_f(twist(p, t), n); }
inline Rational factor_b_primed(const Params& p, long n, Twist t) { return factor_b(twist(p, t), n); }
inline Rational factor_ft_primed(const Params& p, long v, Twist t) {
    return factor_ft(twist(p, t), v, t);
}
inline Rational factor_bt_primed(const Params& p, long v, Twist t) {
    return factor_bt(twist(p, t), v, t);
}

// ---------------------------------------------------------------------------
// lattice data
// ---------------------------------------------------------------------------

namespace build {

inline LatticeFun cst(const CoordModel& m, const Rational& v) {
    return LatticeFun::constant(m, Gauss(v));
}
// x + c (additive models).
inline LatticeFun lin(const CoordModel& m, const Rational& c, bool minus_sym = false) {
    LatticeFun f = LatticeFun::monomial(m, 1, minus_sym ? Gauss(-1) : Gauss(1));
    f.add_coeff(0, Gauss(c));
    return f;
}
// 1 - c * sym^dir (multiplicative models).
inline LatticeFun one_minus(const CoordModel& m, const Rational& c, int dir = 1) {
    LatticeFun f = LatticeFun::monomial(m, dir, Gauss(-c));
    f.add_coeff(0, Gauss(1));
    return f;
}
// prod_{i=0}^{m-1} (x + c + i), or with -x in place of x.
inline LatticeFun poch_lin(const CoordModel& mo, const Rational& c, long m, bool minus_sym = false) {
    LatticeFun r = cst(mo, 1);
    for (long i = 0; i < m; ++i) r *= lin(mo, c + i, minus_sym);
    return r;
}
// prod_{i=0}^{m-1} (1 - c q^i sym^dir).
inline LatticeFun qpoch_lat(const CoordModel& mo, const Rational& c, const Rational& q, long m,
                            int dir = 1) {
    LatticeFun r = cst(mo, 1);
    Rational f = c;
    for (long i = 0; i < m; ++i) {
        r *= one_minus(mo, f, dir);
        f *= q;
    }
    return r;
}

}  // namespace build

// Sinusoidal coordinate eta(x; lambda) as a lattice function.
inline LatticeFun eta_fn(const Params& p) {
    CoordModel m = model_of(p);
    using namespace build;
    switch (p.fam) {
        case Family::M: return LatticeFun::symbol(m);
        case Family::lqL:
        case Family::lqJ: {
            LatticeFun f = LatticeFun::monomial(m, 1, Gauss(Rational(-1)));
            f.add_coeff(0, Gauss(1));
            return f;  // 1 - t
        }
        case Family::R: {
            // x(x+d)
            return LatticeFun::symbol(m) * lin(m, p.a[3]);
        }
        case Family::qR: {
            // (q^{-x}-1)(1-d q^x) = t^{-1} + d t - (1+d)
            LatticeFun f = LatticeFun::monomial(m, -1, Gauss(1));
            f.add_coeff(1, Gauss(p.a[3]));
            f.add_coeff(0, Gauss(-(1 + p.a[3])));
            return f;
        }
        case Family::W: return LatticeFun::monomial(m, 2, Gauss(Rational(-1)));  // x^2 = -y^2
        default: {
            // cos x = (z + z^{-1})/2
            LatticeFun f = LatticeFun::monomial(m, 1, Gauss(Rational(1, 2)));
            f.add_coeff(-1, Gauss(Rational(1, 2)));
            return f;
        }
    }
}

// The auxiliary function phi(x; lambda).
inline LatticeFun phi_fn(const Params& p) {
    CoordModel m = model_of(p);
    switch (p.fam) {
        case Family::M: return build::cst(m, 1);
        case Family::lqL:
        case Family::lqJ: return LatticeFun::symbol(m);
        case Family::R: {
            LatticeFun f = LatticeFun::monomial(m, 1, Gauss(Rational(2) / (p.a[3] + 1)));
            f.add_coeff(0, Gauss(1));
            return f;  // (2x+d+1)/(d+1)
        }
        case Family::qR: {
            Rational den = 1 - p.a[3] * p.q();
            LatticeFun f = LatticeFun::monomial(m, -1, Gauss(Rational(1) / den));
            f.add_coeff(1, Gauss(-p.a[3] * p.q() / den));
            return f;  // (q^{-x} - d q^{x+1})/(1-dq)
        }
        case Family::W: return LatticeFun::monomial(m, 1, Gauss(Rational(0), Rational(-2)));  // 2x = -2iy
        default: {
            // 2 sin x = -i(z - z^{-1})
            LatticeFun f = LatticeFun::monomial(m, 1, Gauss(Rational(0), Rational(-1)));
            f.add_coeff(-1, Gauss(Rational(0), Rational(1)));
            return f;
        }
    }
}

// Potential functions.  rdQM families expose B and D, idQM families V.
inline LatticeRat pot_B(const Params& p) {
    CoordModel m = model_of(p);
    using namespace build;
    switch (p.fam) {
        case Family::M: return LatticeRat(lin(m, p.a[0]) * cst(m, p.a[1]));
        case Family::lqL: return LatticeRat(LatticeFun::monomial(m, -1, Gauss(p.a[0])));
        case Family::lqJ: {
            LatticeFun f = LatticeFun::monomial(m, -1, Gauss(p.a[0]));
            f.add_coeff(0, Gauss(-p.a[0] * p.a[1] * p.q()));
            return LatticeRat(f);
        }
        case Family::R: {
            LatticeFun num = lin(m, p.a[0]) * lin(m, p.a[1]) * lin(m, p.a[2]) * lin(m, p.a[3]);
            LatticeFun d1 = LatticeFun::monomial(m, 1, Gauss(2));
            d1.add_coeff(0, Gauss(p.a[3]));
            LatticeFun d2 = LatticeFun::monomial(m, 1, Gauss(2));
            d2.add_coeff(0, Gauss(p.a[3] + 1));
            return LatticeRat(-num, d1 * d2);
        }
        case Family::qR: {
            LatticeFun num = one_minus(m, p.a[0]) * one_minus(m, p.a[1]) * one_minus(m, p.a[2]) *
                             one_minus(m, p.a[3]);
            LatticeFun d1 = build::cst(m, 1);
            d1.add_coeff(2, Gauss(-p.a[3]));  // 1 - d q^{2x}
            LatticeFun d2 = build::cst(m, 1);
            d2.add_coeff(2, Gauss(-p.a[3] * p.q()));  // 1 - d q^{2x+1}
            return LatticeRat(-num, d1 * d2);
        }
        default: throw std::invalid_argument("pot_B: rdQM families only");
    }
}

inline LatticeRat pot_D(const Params& p) {
    CoordModel m = model_of(p);
    using namespace build;
    switch (p.fam) {
        case Family::M: return LatticeRat(LatticeFun::symbol(m));
        case Family::lqL:
        case Family::lqJ: {
            LatticeFun f = LatticeFun::monomial(m, -1, Gauss(1));
            f.add_coeff(0, Gauss(Rational(-1)));
            return LatticeRat(f);  // q^{-x} - 1
        }
        case Family::R: {
            LatticeFun num = lin(m, p.a[3] - p.a[0]) * lin(m, p.a[3] - p.a[1]) *
                             lin(m, p.a[3] - p.a[2]) * LatticeFun::symbol(m);
            LatticeFun d1 = LatticeFun::monomial(m, 1, Gauss(2));
            d1.add_coeff(0, Gauss(p.a[3] - 1));
            LatticeFun d2 = LatticeFun::monomial(m, 1, Gauss(2));
            d2.add_coeff(0, Gauss(p.a[3]));
            return LatticeRat(-num, d1 * d2);
        }
        case Family::qR: {
            LatticeFun num = one_minus(m, p.a[3] / p.a[0]) * one_minus(m, p.a[3] / p.a[1]) *
                             one_minus(m, p.a[3] / p.a[2]) * one_minus(m, Rational(1));
            LatticeFun d1 = build::cst(m, 1);
            d1.add_coeff(2, Gauss(-p.a[3] / p.q()));  // 1 - d q^{2x-1}
            LatticeFun d2 = build::cst(m, 1);
            d2.add_coeff(2, Gauss(-p.a[3]));  // 1 - d q^{2x}
            return LatticeRat(num * build::cst(m, -d_tilde(p)), d1 * d2);
        }
        default: throw std::invalid_argument("pot_D: rdQM families only");
    }
}

inline LatticeRat pot_V(const Params& p) {
    CoordModel m = model_of(p);
    using namespace build;
    if (p.fam == Family::W) {
        LatticeFun num = cst(m, 1);
        for (int i = 0; i < 4; ++i) num *= lin(m, p.a[static_cast<std::size_t>(i)]);
        LatticeFun d1 = LatticeFun::monomial(m, 1, Gauss(2));  // 2ix = 2y
        LatticeFun d2 = LatticeFun::monomial(m, 1, Gauss(2));
        d2.add_coeff(0, Gauss(1));  // 2ix + 1
        return LatticeRat(num, d1 * d2);
    }
    if (p.fam == Family::AW) {
        LatticeFun num = cst(m, 1);
        for (int i = 0; i < 4; ++i) num *= one_minus(m, p.a[static_cast<std::size_t>(i)]);
        LatticeFun d1 = cst(m, 1);
        d1.add_coeff(2, Gauss(Rational(-1)));  // 1 - e^{2ix}
        LatticeFun d2 = cst(m, 1);
        d2.add_coeff(2, Gauss(-p.q()));  // 1 - q e^{2ix}
        return LatticeRat(num, d1 * d2);
    }
    throw std::invalid_argument("pot_V: idQM families only");
}

inline LatticeRat pot_Vstar(const Params& p) { return lat_star(pot_V(p)); }

// Value of a lattice function at the integer lattice point x = k (real-shift
// models only).
inline Gauss eval_at_int(const LatticeFun& f, long k) {
    switch (f.model().kind) {
        case CoordKind::additive_x: return f.eval(Gauss(Rational(k)));
        case CoordKind::multiplicative_t: return f.eval(Gauss(rat_pow(f.model().q(), k)));
        default: throw std::invalid_argument("integer lattice evaluation on an idQM model");
    }
}
inline Gauss eval_at_int(const LatticeRat& f, long k) {
    Gauss d = eval_at_int(f.den, k);
    if (d.is_zero()) throw std::invalid_argument("pole at lattice point");
    return eval_at_int(f.num, k) / d;
}

// Value at the pure imaginary point x = i j gamma / 2 (idQM models).
inline Gauss eval_at_imag_half(const LatticeFun& f, long j) {
    switch (f.model().kind) {
        case CoordKind::additive_y: return f.eval(Gauss(Rational(-j, 2)));
        case CoordKind::multiplicative_z: return f.eval(Gauss(rat_pow(f.model().sqrt_q, -j)));
        default: throw std::invalid_argument("imaginary evaluation on a real-shift model");
    }
}

// ---------------------------------------------------------------------------
// eigenpolynomials and virtual state polynomials
// ---------------------------------------------------------------------------

// P_n as a polynomial in eta, assembled term by term from the (q-)hypergeometric
// series.  For W/AW the lower Pochhammers are folded into the sum, which keeps
// every term polynomial in the parameters (no poles at symmetric points).
inline EtaPoly eigenpoly_eta(const Params& p, long n) {
    if (n < 0) return EtaPoly::zero();
    EtaPoly eta = EtaPoly::eta();
    EtaPoly sum = EtaPoly::zero();
    switch (p.fam) {
        case Family::M: {
            const Rational &beta = p.a[0], &c = p.a[1];
            Rational z = 1 - Rational(1) / c;
            EtaPoly theta = EtaPoly::one();  // (-1)^k prod_{m<k} (eta - m)
            Rational coef(1);
            for (long k = 0; k <= n; ++k) {
                sum += theta * Gauss(coef);
                coef *= Rational(-n + k) * z / ((beta + k) * (k + 1));
                theta = theta * (EtaPoly(Gauss(Rational(k))) - eta);  // -(eta - k)
            }
            return sum;
        }
        case Family::lqL:
        case Family::lqJ: {
            const Rational q = p.q();
            const Rational& a = p.a[0];
            Rational qn = rat_pow(q, -n);
            EtaPoly theta = EtaPoly::one();  // prod_{m<k} ((1-q^m) - eta)
            Rational coef(1), qk(1), qm(1);
            for (long k = 0; k <= n; ++k) {
                sum += theta * Gauss(coef);
                // advance k -> k+1
                Rational fac = (1 - qn * qk);  // (q^{-n};q)_k step
                if (p.fam == Family::lqJ) {
                    fac *= (1 - p.a[0] * p.a[1] * rat_pow(q, n + 1) * qk);
                    fac /= (1 - p.a[1] * q * qk);
                }
                fac /= (1 - q * qk);          // (q;q)_k step
                fac *= -rat_pow(qk, -1) / a;  // (-1) q^{-k(k-1)/2 - (k-1)(k)/2...}
                // q^{-k(k-1)/2} steps by q^{-k}: qk = q^k here
                coef *= fac;
                theta = theta * (EtaPoly(Gauss(1 - qm)) - eta);
                qk *= q;
                qm *= q;
            }
            return sum;
        }
        case Family::R: {
            const Rational &a = p.a[0], &b = p.a[1], &c = p.a[2], &d = p.a[3];
            Rational dt = d_tilde(p);
            EtaPoly theta = EtaPoly::one();  // (-1)^k prod_{m<k}(eta - m(d+m))
            Rational coef(1);
            for (long k = 0; k <= n; ++k) {
                sum += theta * Gauss(coef);
                coef *= Rational(-n + k) * (n + dt + k) /
                        ((a + k) * (b + k) * (c + k) * (k + 1));
                theta = theta * (EtaPoly(Gauss(Rational(k) * (d + k))) - eta);
            }
            return sum;
        }
        case Family::qR: {
            const Rational q = p.q();
            const Rational &a = p.a[0], &b = p.a[1], &c = p.a[2], &d = p.a[3];
            Rational dt = d_tilde(p);
            Rational qn = rat_pow(q, -n), dtqn = dt * rat_pow(q, n);
            EtaPoly theta = EtaPoly::one();  // prod_{m<k}((1-q^m)(1-dq^m) - q^m eta)
            Rational coef(1), qk(1);
            for (long k = 0; k <= n; ++k) {
                sum += theta * Gauss(coef);
                Rational fac = (1 - qn * qk) * (1 - dtqn * qk) * q;
                fac /= (1 - a * qk) * (1 - b * qk) * (1 - c * qk) * (1 - q * qk);
                coef *= fac;
                theta = theta * (EtaPoly(Gauss((1 - qk) * (1 - d * qk))) - eta * Gauss(qk));
                qk *= q;
            }
            return sum;
        }
        case Family::W: {
            const auto& a = p.a;
            Rational b1 = sym_b1(p);
            EtaPoly theta = EtaPoly::one();  // prod_{m<k} ((a1+m)^2 + eta)
            Rational front(1);               // (-n)_k (n+b1-1)_k / k!
            for (long k = 0; k <= n; ++k) {
                Rational tail(1);  // prod_{i=2..4} (a1+ai+k)_{n-k}
                for (int i = 1; i < 4; ++i)
                    tail *= poch(a[0] + a[static_cast<std::size_t>(i)] + k, n - k);
                sum += theta * Gauss(front * tail);
                front *= Rational(-n + k) * (n + b1 - 1 + k) / (k + 1);
                theta = theta * (EtaPoly(Gauss((a[0] + k) * (a[0] + k))) + eta);
            }
            return sum;
        }
        default: {  // AW
            const auto& a = p.a;
            const Rational q = p.q();
            Rational b4 = sym_b4(p);
            Rational qn = rat_pow(q, -n), b4qn = b4 * rat_pow(q, n - 1);
            EtaPoly theta = EtaPoly::one();  // prod_{m<k} (1 + a1^2 q^{2m} - 2 a1 q^m eta)
            Rational front = rat_pow(a[0], -n);
            Rational qk(1);
            for (long k = 0; k <= n; ++k) {
                Rational tail(1);  // prod_{i=2..4} (a1 ai q^k; q)_{n-k}
                for (int i = 1; i < 4; ++i)
                    tail *= qpoch(a[0] * a[static_cast<std::size_t>(i)] * qk, q, n - k);
                sum += theta * Gauss(front * tail);
                front *= (1 - qn * qk) * (1 - b4qn * qk) * q / (1 - q * qk);
                theta = theta *
                        (EtaPoly(Gauss(1 + a[0] * a[0] * qk * qk)) - eta * Gauss(2 * a[0] * qk));
                qk *= q;
            }
            return sum;
        }
    }
}

// P-check_n(x) = P_n(eta(x)).
inline LatticeFun eigenpoly(const Params& p, long n) {
    if (n < 0) return LatticeFun::zero(model_of(p));
    return eigenpoly_eta(p, n).compose(eta_fn(p));
}

// Virtual state polynomial xi_v = P_v at twisted parameters.  Both forms:
// in eta and on the lattice (the twist leaves eta invariant).
inline EtaPoly vstate_eta(const Params& p, long v, Twist t = Twist::unit) {
    if (v < 0) return EtaPoly::zero();
    return eigenpoly_eta(twist(p, t), v);
}
inline LatticeFun vstate(const Params& p, long v, Twist t = Twist::unit) {
    if (v < 0) return LatticeFun::zero(model_of(p));
    return vstate_eta(p, v, t).compose(eta_fn(p));
}

// ---------------------------------------------------------------------------
// auxiliary tables
// ---------------------------------------------------------------------------

// r_j(x + j - 1; lambda, M) = nu(x+j-1; lambda) / nu(x; lambda + M delta-tilde)
// as a lattice function of x (rdQM).
inline LatticeFun rj_rdqm(const Params& p, long M, long j) {
    CoordModel m = model_of(p);
    using namespace build;
    switch (p.fam) {
        case Family::M: return cst(m, rat_pow(p.a[1], j - 1));
        case Family::lqL:
        case Family::lqJ:
            return LatticeFun::monomial(m, M, Gauss(rat_pow(p.a[0], j - 1)));
        case Family::R: {
            const Rational &a = p.a[0], &b = p.a[1], &d = p.a[3];
            LatticeFun f = poch_lin(m, a, j - 1) * poch_lin(m, b, j - 1) *
                           poch_lin(m, d - a + j, M + 1 - j) * poch_lin(m, d - b + j, M + 1 - j);
            Rational den = poch(d - a + 1, M) * poch(d - b + 1, M);
            return f * Gauss(Rational(1) / den);
        }
        case Family::qR: {
            const Rational q = p.q();
            const Rational &a = p.a[0], &b = p.a[1], &d = p.a[3];
            LatticeFun f = qpoch_lat(m, a, q, j - 1) * qpoch_lat(m, b, q, j - 1) *
                           qpoch_lat(m, d / a * rat_pow(q, j), q, M + 1 - j) *
                           qpoch_lat(m, d / b * rat_pow(q, j), q, M + 1 - j);
            f = f * LatticeFun::monomial(m, -M, Gauss(1));
            Rational den = rat_pow(a * b / (d * q), j - 1) * qpoch(d * q / a, q, M) *
                           qpoch(d * q / b, q, M);
            return f * Gauss(Rational(1) / den);
        }
        default: throw std::invalid_argument("rj_rdqm: rdQM families only");
    }
}

// nu(x; lambda+(j-1) delta-tilde) / nu(x; lambda + M delta-tilde): the ratio that
// enters the (M+1)-th column of the case-A determinant.
inline LatticeFun caseA_nu_ratio(const Params& p, long M, long j) {
    CoordModel m = model_of(p);
    using namespace build;
    switch (p.fam) {
        case Family::M: return cst(m, 1);
        case Family::lqL:
        case Family::lqJ: return LatticeFun::monomial(m, M + 1 - j, Gauss(1));
        case Family::R: {
            const Rational &a = p.a[0], &b = p.a[1], &d = p.a[3];
            LatticeFun f = poch_lin(m, d - a + j, M + 1 - j) * poch_lin(m, d - b + j, M + 1 - j);
            Rational den = poch(d - a + j, M + 1 - j) * poch(d - b + j, M + 1 - j);
            return f * Gauss(Rational(1) / den);
        }
        case Family::qR: {
            const Rational q = p.q();
            const Rational &a = p.a[0], &b = p.a[1], &d = p.a[3];
            LatticeFun f = qpoch_lat(m, d / a * rat_pow(q, j), q, M + 1 - j) *
                           qpoch_lat(m, d / b * rat_pow(q, j), q, M + 1 - j);
            f = f * LatticeFun::monomial(m, -(M + 1 - j), Gauss(1));
            Rational den = qpoch(d / a * rat_pow(q, j), q, M + 1 - j) *
                           qpoch(d / b * rat_pow(q, j), q, M + 1 - j);
            return f * Gauss(Rational(1) / den);
        }
        default: throw std::invalid_argument("caseA_nu_ratio: rdQM families only");
    }
}

// The two nu-ratios of the case-B last column:
//   which = 0:  nu(x+l-1; lambda)                / nu(x; lambda+M delta-tilde)
//   which = 1:  nu(x+l-1; lambda + delta-tilde)  / nu(x; lambda+M delta-tilde)
inline LatticeFun caseB_nu_ratio(const Params& p, long M, long l, int which) {
    if (which == 0) return rj_rdqm(p, M, l);
    CoordModel m = model_of(p);
    using namespace build;
    switch (p.fam) {
        case Family::M: return cst(m, rat_pow(p.a[1], l - 1));
        case Family::lqL:
        case Family::lqJ:
            return LatticeFun::monomial(m, M - 1, Gauss(rat_pow(p.a[0] / p.q(), l - 1)));
        case Family::R: {
            const Rational &a = p.a[0], &b = p.a[1], &d = p.a[3];
            LatticeFun f = poch_lin(m, d - a + l + 1, M - l) * poch_lin(m, d - b + l + 1, M - l) *
                           poch_lin(m, a, l - 1) * poch_lin(m, b, l - 1);
            Rational den = poch(d - a + 2, M - 1) * poch(d - b + 2, M - 1);
            return f * Gauss(Rational(1) / den);
        }
        case Family::qR: {
            const Rational q = p.q();
            const Rational &a = p.a[0], &b = p.a[1], &d = p.a[3];
            LatticeFun f = qpoch_lat(m, d / a * rat_pow(q, l + 1), q, M - l) *
                           qpoch_lat(m, d / b * rat_pow(q, l + 1), q, M - l) *
                           qpoch_lat(m, a, q, l - 1) * qpoch_lat(m, b, q, l - 1);
            f = f * LatticeFun::monomial(m, -(M - 1), Gauss(1));
            Rational den = rat_pow(a * b / (d * q * q), l - 1) *
                           qpoch(d / a * q * q, q, M - 1) * qpoch(d / b * q * q, q, M - 1);
            return f * Gauss(Rational(1) / den);
        }
        default: throw std::invalid_argument("caseB_nu_ratio: rdQM families only");
    }
}

// Closed-form nu at non-negative integer lattice points (rdQM).
inline Rational nu_int(const Params& p, long x) {
    if (x < 0) throw std::invalid_argument("nu_int: x >= 0");
    switch (p.fam) {
        case Family::M: return rat_pow(p.a[1], x);
        case Family::lqL:
        case Family::lqJ: return rat_pow(p.a[0], x);
        case Family::R: {
            const Rational &a = p.a[0], &b = p.a[1], &d = p.a[3];
            return poch(1 - a - x, x) * poch(b, x) / (poch(d - a + 1, x) * poch(b - d - x, x));
        }
        case Family::qR: {
            const Rational q = p.q();
            const Rational &a = p.a[0], &b = p.a[1], &d = p.a[3];
            return qpoch(rat_pow(q, 1 - x) / a, q, x) * qpoch(b, q, x) /
                   (qpoch(d * q / a, q, x) * qpoch(b / d * rat_pow(q, -x), q, x));
        }
        default: throw std::invalid_argument("nu_int: rdQM families only");
    }
}

// varphi_M(x; lambda), rdQM product form.
inline LatticeFun phiM_rdqm(const Params& p, long M) {
    CoordModel m = model_of(p);
    LatticeFun eta = eta_fn(p);
    LatticeFun r = build::cst(m, 1);
    for (long j = 1; j <= M; ++j)
        for (long k = j + 1; k <= M; ++k) {
            LatticeFun diff = lat_shift(eta, Rational(k - 1)) - lat_shift(eta, Rational(j - 1));
            Gauss den = eval_at_int(eta, k - j);
            r *= diff * (Gauss(1) / den);
        }
    return r;
}

// Explicit kappa-power form, valid for M / lqL / lqJ.
inline LatticeFun phiM_rdqm_explicit(const Params& p, long M) {
    CoordModel m = model_of(p);
    if (p.fam == Family::M) return build::cst(m, 1);
    if (p.fam != Family::lqL && p.fam != Family::lqJ)
        throw std::invalid_argument("phiM_rdqm_explicit: M/lqL/lqJ only");
    long e = M * (M - 1) / 2;
    Rational c = rat_pow(p.q(), M * (M - 1) * (M - 2) / 6);
    return LatticeFun::monomial(m, e, Gauss(c));
}

// f at x_j^{(Msize)} = x + i ((Msize+1)/2 - j) gamma  (idQM evaluation points).
inline LatticeFun at_point(const LatticeFun& f, long Msize, long j) {
    return lat_shift_half(f, 2 * j - Msize - 1);
}

// varphi_M(x), idQM: the power-product form.
inline LatticeFun phiM_idqm(const Params& p, long M) {
    LatticeFun phi = phi_fn(p);
    LatticeFun r = phi.pow(floor_div(M, 2));
    for (long k = 1; k <= M - 2; ++k) {
        long e = floor_div(M - k, 2);
        r *= (lat_shift_half(phi, k) * lat_shift_half(phi, -k)).pow(e);
    }
    return r;
}

// varphi_M(x), idQM: the eta-difference pair form.
inline LatticeFun phiM_idqm_pairs(const Params& p, long M) {
    CoordModel m = model_of(p);
    LatticeFun eta = eta_fn(p);
    LatticeFun phi = phi_fn(p);
    LatticeFun r = build::cst(m, 1);
    for (long j = 1; j <= M; ++j)
        for (long k = j + 1; k <= M; ++k) {
            LatticeFun diff = at_point(eta, M, j) - at_point(eta, M, k);
            Gauss den = eval_at_imag_half(phi, j);
            r *= diff * (Gauss(1) / den);
        }
    if (p.fam == Family::AW) r *= Gauss(rat_pow(Rational(-2), M * (M - 1) / 2));
    return r;
}

// U polynomials (idQM): nu-ratio building blocks, and their lattice avatars.
inline EtaPoly U_eta(const Params& p, Twist t) {
    int lo = (t == Twist::I) ? 0 : 2;
    EtaPoly eta = EtaPoly::eta();
    if (p.fam == Family::W) {
        EtaPoly r = EtaPoly::one();
        for (int i = lo; i < lo + 2; ++i) {
            Rational ai = p.a[static_cast<std::size_t>(i)];
            r = r * (eta + EtaPoly(Gauss(ai * ai)));
        }
        return r;
    }
    if (p.fam == Family::AW) {
        EtaPoly r = EtaPoly::one();
        for (int i = lo; i < lo + 2; ++i) {
            Rational ai = p.a[static_cast<std::size_t>(i)];
            r = r * (EtaPoly(Gauss(ai + Rational(1) / ai)) - eta * Gauss(Rational(2)));
        }
        return r;
    }
    throw std::invalid_argument("U_eta: idQM families only");
}
inline LatticeFun U_fn(const Params& p, Twist t) { return U_eta(p, t).compose(eta_fn(p)); }

// S polynomial: the commutator function of the case-B operator pairs.
inline EtaPoly S_eta(const Params& p) {
    EtaPoly eta = EtaPoly::eta();
    if (p.fam == Family::W)
        return eta * Gauss(sym_b1(p)) - EtaPoly(Gauss(sym_b3(p)));
    if (p.fam == Family::AW) {
        Rational inv_s = Rational(1) / p.s;
        return (eta * Gauss(2 * (1 - sym_b4(p))) + EtaPoly(Gauss(sym_b3(p) - sym_b1(p)))) *
               Gauss(inv_s);
    }
    throw std::invalid_argument("S_eta: idQM families only");
}
inline LatticeFun S_fn(const Params& p) { return S_eta(p).compose(eta_fn(p)); }

// v1 (parameters a1,a2) and v2 (parameters a3,a4): the square-root-free
// coefficient functions of the virtual-state shift relations.
inline LatticeFun v_fn(const Params& p, int which) {
    CoordModel m = model_of(p);
    using namespace build;
    int lo = (which == 1) ? 0 : 2;
    if (p.fam == Family::W) {
        LatticeFun r = cst(m, 1);
        for (int i = lo; i < lo + 2; ++i) r *= lin(m, p.a[static_cast<std::size_t>(i)]);
        return r;
    }
    if (p.fam == Family::AW) {
        LatticeFun r = LatticeFun::monomial(m, -1, Gauss(1));
        for (int i = lo; i < lo + 2; ++i) r *= one_minus(m, p.a[static_cast<std::size_t>(i)]);
        return r;
    }
    throw std::invalid_argument("v_fn: idQM families only");
}

// r_j for the idQM original matrix expressions.
inline LatticeFun rj_idqm(const Params& p, long Msize, long j, Twist t) {
    CoordModel m = model_of(p);
    using namespace build;
    Params pM = shift_tdelta(p, Msize - 1, t);
    Rational pref = alpha_pow_half(pM, t, -(Msize - 1)) *
                    kappa_pow_half(p, (Msize - 1) * (Msize - 1) - 2 * (j - 1) * (Msize - j));
    int lo = (t == Twist::I) ? 0 : 2;
    if (p.fam == Family::W) {
        LatticeFun r = cst(m, pref);
        Rational off = -Rational(Msize - 1, 2);
        for (int i = lo; i < lo + 2; ++i) {
            Rational base = p.a[static_cast<std::size_t>(i)] + off;
            r *= poch_lin(m, base, j - 1, false) * poch_lin(m, base, Msize - j, true);
        }
        return r;
    }
    if (p.fam == Family::AW) {
        const Rational q = p.q();
        Rational scale = rat_pow(p.s, -(Msize - 1));
        LatticeFun r = LatticeFun::monomial(m, Msize + 1 - 2 * j, Gauss(pref));
        for (int i = lo; i < lo + 2; ++i) {
            Rational base = p.a[static_cast<std::size_t>(i)] * scale;
            r *= qpoch_lat(m, base, q, j - 1, 1) * qpoch_lat(m, base, q, Msize - j, -1);
        }
        return r;
    }
    throw std::invalid_argument("rj_idqm: idQM families only");
}

// ---------------------------------------------------------------------------
// family spec
// ---------------------------------------------------------------------------

struct FamilySpec {
    Params p;
    CoordModel model;
    int N = -1;  // finite families only
};

namespace detail {

inline void verify_construction(const Params& p) {
    std::vector<Twist> types = is_rdqm(p.fam) ? std::vector<Twist>{Twist::unit}
                                              : std::vector<Twist>{Twist::I, Twist::II};
    for (Twist t : types) {
        if (!(twist(twist(p, t), t) == p))
            throw std::invalid_argument("twist is not an involution at these parameters");
        for (long u : {-2L, -1L, 1L, 2L}) {
            Params lhs = shift_delta(twist(p, t), u);
            Params rhs = twist(shift_tdelta(p, u, t), t);
            if (!(lhs == rhs))
                throw std::invalid_argument("twist/shift compatibility failed");
        }
        if (!(eta_fn(twist(p, t)) == eta_fn(p)) || !(phi_fn(twist(p, t)) == phi_fn(p)))
            throw std::invalid_argument("eta/phi are not twist invariant at these parameters");
    }
}

}  // namespace detail

inline FamilySpec make_family(Family fam, std::vector<Rational> params,
                              Rational sqrt_q = Rational(0),
                              std::optional<std::array<Rational, 2>> rho = std::nullopt) {
    Params p;
    p.fam = fam;
    p.a = std::move(params);
    p.s = std::move(sqrt_q);
    p.rho = std::move(rho);
    if (p.a.size() != param_arity(fam))
        throw std::invalid_argument("parameter arity mismatch for family " +
                                    std::string(family_name(fam)));
    if (is_q_family(fam)) {
        if (!(p.s > 0 && p.s < 1))
            throw std::invalid_argument("sqrt(q) must lie in (0,1)");
    } else {
        p.s = Rational(0);
    }
    for (const auto& v : p.a)
        if (v == 0) throw std::invalid_argument("zero parameter entry");

    if (fam == Family::R) {
        Rational na = -p.a[0];
        if (na.get_den() != 1 || na < 1)
            throw std::invalid_argument("Racah needs a = -N with integer N >= 1");
        p.N = static_cast<int>(na.get_num().get_si());
    } else if (fam == Family::qR) {
        Rational v = p.a[0];
        Rational q = p.q();
        int count = 0;
        while (v > 1 && count <= 4096) {
            v *= q;
            ++count;
        }
        if (v != 1 || count < 1)
            throw std::invalid_argument("q-Racah needs a = q^{-N} with integer N >= 1");
        p.N = count;
    }
    if (p.rho) {
        if (fam != Family::AW)
            throw std::invalid_argument("split-square witnesses apply to AW only");
        if (!((*p.rho)[0] * (*p.rho)[0] == p.a[0] * p.a[1] / p.q()) ||
            !((*p.rho)[1] * (*p.rho)[1] == p.a[2] * p.a[3] / p.q()))
            throw std::invalid_argument("split-square witnesses do not satisfy rho^2 = a a'/q");
    }

    detail::verify_construction(p);
    return FamilySpec{p, model_of(p), p.N};
}

// ---------------------------------------------------------------------------
// normalization constants of the rdQM deformed polynomials
// ---------------------------------------------------------------------------

// C_D(lambda); throws on a degenerate index set (equal virtual energies).
inline Rational norm_CD(const Params& p, const std::vector<int>& D) {
    if (!is_rdqm(p.fam)) throw std::invalid_argument("norm_CD: rdQM families only");
    long M = static_cast<long>(D.size());
    Gauss phiM0 = eval_at_int(phiM_rdqm(p, M), 0);
    Rational r = Rational(1) / phiM0.re;
    LatticeRat Bq = pot_B(twist(p));
    Rational al = alpha(p);
    for (long j = 0; j < M; ++j)
        for (long k = j + 1; k < M; ++k) {
            Rational diff = virt_energy(p, D[static_cast<std::size_t>(j)]) -
                            virt_energy(p, D[static_cast<std::size_t>(k)]);
            if (diff == 0)
                throw std::invalid_argument("degenerate index set: equal virtual energies");
            r *= diff / (al * eval_at_int(Bq, j).re);
        }
    return r;
}

inline Rational norm_dtilde2(const Params& p, const std::vector<int>& D, long n) {
    long M = static_cast<long>(D.size());
    Gauss phiM0 = eval_at_int(phiM_rdqm(p, M), 0);
    Gauss phiM10 = eval_at_int(phiM_rdqm(p, M + 1), 0);
    Rational r = phiM0.re / phiM10.re;
    LatticeRat Bq = pot_B(twist(p));
    Rational al = alpha(p);
    Rational En = energy(p, n);
    for (long j = 0; j < M; ++j) {
        Rational diff = En - virt_energy(p, D[static_cast<std::size_t>(j)]);
        if (diff == 0)
            throw std::invalid_argument("degenerate index set: E_n equals a virtual energy");
        r *= diff / (al * eval_at_int(Bq, j).re);
    }
    return r;
}

inline Rational norm_CDn(const Params& p, const std::vector<int>& D, long n) {
    Rational sign = (D.size() % 2 == 0) ? Rational(1) : Rational(-1);
    return sign * norm_CD(p, D) * norm_dtilde2(p, D, n);
}

}  // namespace miop
