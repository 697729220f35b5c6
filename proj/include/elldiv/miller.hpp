/*
   Copyright 2026 The elldiv authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef ELLDIV_MILLER_HPP
#define ELLDIV_MILLER_HPP

#include <utility>

#include "elldiv/torsion.hpp"

namespace elldiv {

/// The line through two affine points: vanishes at Wi, Wj and -(Wi + Wj).
/// Tangent when Wi = Wj; the vertical x - gamma when Wj = -Wi.
inline CurveFunction line_through(const EllipticCurve& E, const CurvePoint& Wi,
                                  const CurvePoint& Wj) {
    if (Wi.is_infinity() || Wj.is_infinity())
        throw domain_error("line_through: points must be affine");
    const auto& F = E.field();
    if (Wi.x() == Wj.x() && (Wi.y() != Wj.y() || Wi.y().is_zero())) {
        return CurveFunction::from_x_poly(E, Poly::linear_root(Wi.x()));
    }
    FieldElement lambda =
        Wi == Wj
            ? (F->from_int(3) * Wi.x() * Wi.x() + E.a()) / (F->from_int(2) * Wi.y())
            : (Wj.y() - Wi.y()) / (Wj.x() - Wi.x());
    FieldElement nu = Wi.y() - lambda * Wi.x();
    // y - (lambda x + nu)
    return {E, Poly(F, {-nu, -lambda}), Poly::constant(F->one())};
}

/// Normalized function with divisor ell(W) - ell(P_infinity).
struct MillerFunction {
    CurvePoint W;
    Int ell;
    CurveFunction fn;

    FieldElement operator()(const CurvePoint& P) const { return fn.eval(P); }
};

/// Miller's algorithm: accumulates line/vertical quotients along a
/// double-and-add chain for ell, maintaining f_n with
/// div(f_n) = n(W) - (nW) - (n-1)(P_infinity); f_ell is then normalized.
inline MillerFunction miller_function(const EllipticCurve& E, const CurvePoint& W,
                                      const Int& ell) {
    if (W.is_infinity()) throw domain_error("miller_function: W must be affine");
    const auto& F = E.field();
    // Closed forms for the two smallest ell (the generic chain reduces to
    // these): the vertical for ell = 2, the normalized tangent for ell = 3.
    if (ell == 2) {
        // affine 2-torsion means y = 0 and f(gamma) = 0
        if (!W.y().is_zero() || !E.f(W.x()).is_zero())
            throw domain_error("miller_function: W is not ell-torsion");
        return {W, ell, CurveFunction::from_x_poly(E, Poly::linear_root(W.x()))};
    }
    if (!on_curve(E, W)) throw domain_error("miller_function: W not on the curve");
    if (!scalar_mul(E, ell, W).is_infinity())
        throw domain_error("miller_function: W is not ell-torsion");

    if (ell == 3) {
        FieldElement m =
            (F->from_int(3) * W.x() * W.x() + E.a()) / (F->from_int(2) * W.y());
        return {W, ell,
                CurveFunction{E, Poly(F, {m * W.x() - W.y(), -m}),
                              Poly::constant(F->one())}};
    }
    auto vertical = [&](const CurvePoint& R) {
        return R.is_infinity()
                   ? CurveFunction::one(E)
                   : CurveFunction::from_x_poly(E, Poly::linear_root(R.x()));
    };

    // Intermediate f_n have affine poles, so the quotient is only taken once
    // the chain closes and div(num/den) = ell(W) - ell(P_infinity).
    CurveFunction num = CurveFunction::one(E);
    CurveFunction den = CurveFunction::one(E);
    CurvePoint T = W;
    // bits of ell, most significant first, skipping the top bit
    int nbits = int(msb(ell));
    for (int i = nbits - 1; i >= 0; --i) {
        CurvePoint T2 = point_add(E, T, T);
        num = num * num * line_through(E, T, T);
        den = den * den * vertical(T2);
        T = T2;
        if (bit_test(ell, unsigned(i))) {
            CurvePoint T1 = point_add(E, T, W);
            num = num * line_through(E, T, W);
            den = den * vertical(T1);
            T = T1;
        }
    }
    if (!T.is_infinity()) throw internal_error("miller_function: chain did not close");
    CurveFunction f = num.exact_div(den);

    // Normalization at infinity: for ell >= 3 the x^((ell-3)/2) y coefficient
    // is set to 1; for ell = 2 the function is x - gamma, already monic.
    if (ell >= 3) {
        int vdeg = int((ell - 3) / 2);
        if (f.v().degree() != vdeg)
            throw internal_error("miller_function: unexpected leading shape");
        f = f.v().leading().inverse() * f;
    } else {
        if (!f.y_free() || f.u().degree() != 1)
            throw internal_error("miller_function: unexpected shape for ell = 2");
        f = f.u().leading().inverse() * f;
    }
    return {W, ell, f};
}

/// epsilon_{ij} = L_{ij} / ((x - gamma_i)(x - gamma_j)), with divisor
/// (W_k) - (W_i) - (W_j) + (P_infinity) where W_k = W_i + W_j.  L_{ij} is
/// the line through -W_i and -W_j: those two points and W_k sum to zero, so
/// they are collinear, and this choice is what makes the divisor come out
/// right (the line through W_i and W_j would contribute (W_i) + (W_j) - (-W_k)
/// instead).
inline RationalCurveFunction epsilon(const EllipticCurve& E, const CurvePoint& Wi,
                                     const CurvePoint& Wj) {
    if (Wi.is_infinity() || Wj.is_infinity())
        throw domain_error("epsilon: points must be affine");
    if (point_add(E, Wi, Wj).is_infinity())
        throw domain_error("epsilon: Wi + Wj is the point at infinity");
    Poly den = Poly::linear_root(Wi.x()) * Poly::linear_root(Wj.x());
    return {line_through(E, -Wi, -Wj), CurveFunction::from_x_poly(E, den)};
}

/// Checks h_{W_k} = h_{W_i} h_{W_j} epsilon_{ij}^ell as a canonical identity
/// after clearing the denominator.
inline bool product_relation_check(const EllipticCurve& E, const CurvePoint& Wi,
                                   const CurvePoint& Wj, const Int& ell) {
    CurvePoint Wk = point_add(E, Wi, Wj);
    if (Wk.is_infinity())
        throw domain_error("product_relation_check: Wi + Wj must be affine");
    auto hi = miller_function(E, Wi, ell);
    auto hj = miller_function(E, Wj, ell);
    auto hk = miller_function(E, Wk, ell);
    CurveFunction den = CurveFunction::from_x_poly(
        E, Poly::linear_root(Wi.x()) * Poly::linear_root(Wj.x()));
    CurveFunction lhs = hk.fn * den.pow(ell);
    CurveFunction rhs = hi.fn * hj.fn * line_through(E, -Wi, -Wj).pow(ell);
    return lhs == rhs;
}

/// Sector composition omega_k = omega_i omega_j epsilon_{ij}(-Q); satisfies
/// omega_k^ell = h_{W_i + W_j}(-Q).  Throws on support collisions.
inline FieldElement omega_compose(const FieldElement& wi, const FieldElement& wj,
                                  const EllipticCurve& E, const CurvePoint& Wi,
                                  const CurvePoint& Wj, const CurvePoint& Q) {
    if (Q.is_infinity()) throw domain_error("omega_compose: Q must be affine");
    auto eps = epsilon(E, Wi, Wj);
    auto val = eps.eval(-Q);
    if (!val || val->is_zero())
        throw domain_error("omega_compose: -Q lies in the support of epsilon");
    return wi * wj * *val;
}

/// h_W composed with translation by P, as an exact rational normal form
/// (poles at P prevent a polynomial representative).
/// div(h_W o tau_P) = ell(P + W) - ell(P) ... up to the infinity bookkeeping
/// of the ambient Riemann-Roch space.
inline RationalCurveFunction translate_function(const EllipticCurve& E,
                                                const CurvePoint& W,
                                                const CurvePoint& P, const Int& ell) {
    auto h = miller_function(E, W, ell);
    if (P.is_infinity()) return RationalCurveFunction::from(h.fn);

    const auto& F = E.field();
    // (x', y') = (x, y) + P by the chord formulas, as rational functions.
    CurveFunction t = CurveFunction::from_x_poly(E, Poly::linear_root(P.x()));
    CurveFunction ymyp = CurveFunction::y(E) - CurveFunction::constant(E, P.y());
    RationalCurveFunction lambda{ymyp, t};
    RationalCurveFunction xr = RationalCurveFunction::from(
        CurveFunction::from_x_poly(E, Poly::x(F)));
    RationalCurveFunction xp = RationalCurveFunction::from(
        CurveFunction::constant(E, P.x()));
    RationalCurveFunction yr = RationalCurveFunction::from(CurveFunction::y(E));
    RationalCurveFunction x3 = lambda * lambda - xr - xp;
    RationalCurveFunction y3 = lambda * (xr - x3) - yr;

    auto eval_poly_at = [&](const Poly& poly,
                            const RationalCurveFunction& at) -> RationalCurveFunction {
        RationalCurveFunction acc =
            RationalCurveFunction::from(CurveFunction::zero(E));
        for (std::size_t i = poly.coeffs().size(); i-- > 0;) {
            acc = acc * at + RationalCurveFunction::from(
                                 CurveFunction::constant(E, poly.coeffs()[i]));
        }
        return acc;
    };
    return eval_poly_at(h.fn.u(), x3) + eval_poly_at(h.fn.v(), x3) * y3;
}

}  // namespace elldiv

#endif  // ELLDIV_MILLER_HPP
