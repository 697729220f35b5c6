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

#ifndef ELLDIV_TORSION_HPP
#define ELLDIV_TORSION_HPP

#include <algorithm>
#include <vector>

#include "elldiv/curvefn.hpp"

namespace elldiv {

/// Division polynomials psi_0..psi_n via the standard recurrence, in the
/// coordinate ring (even-index psi carry a factor y).
inline std::vector<CurveFunction> division_polynomials(const EllipticCurve& E,
                                                       unsigned n) {
    const auto& F = E.field();
    const FieldElement a = E.a(), b = E.b();
    auto ci = [&](long v) { return F->from_int(v); };
    std::vector<CurveFunction> psi;
    psi.reserve(n + 3);
    psi.push_back(CurveFunction::zero(E));                                // psi_0
    psi.push_back(CurveFunction::one(E));                                 // psi_1
    psi.push_back(ci(2) * CurveFunction::y(E));                           // psi_2
    // psi_3 = 3x^4 + 6a x^2 + 12b x - a^2
    Poly p3(F, {-(a * a), ci(12) * b, ci(6) * a, F->zero(), ci(3)});
    psi.push_back(CurveFunction::from_x_poly(E, p3));
    // psi_4 = 4y (x^6 + 5a x^4 + 20b x^3 - 5a^2 x^2 - 4ab x - a^3 - 8b^2)
    Poly p4(F, {-(a * a * a) - ci(8) * b * b, -(ci(4) * a * b), -(ci(5) * a * a),
                ci(20) * b, ci(5) * a, F->zero(), F->one()});
    psi.push_back(CurveFunction{E, Poly::zero(F), ci(4) * p4});
    CurveFunction two_y = ci(2) * CurveFunction::y(E);
    for (unsigned m = 5; m <= n; ++m) {
        if (m % 2 == 1) {
            unsigned k = (m - 1) / 2;  // psi_{2k+1} = psi_{k+2} psi_k^3 - psi_{k-1} psi_{k+1}^3
            psi.push_back(psi[k + 2] * psi[k].pow(3) - psi[k - 1] * psi[k + 1].pow(3));
        } else {
            unsigned k = m / 2;  // psi_{2k} = psi_k (psi_{k+2} psi_{k-1}^2 - psi_{k-2} psi_{k+1}^2) / (2y)
            CurveFunction num =
                psi[k] * (psi[k + 2] * psi[k - 1].pow(2) - psi[k - 2] * psi[k + 1].pow(2));
            psi.push_back(num.exact_div(two_y));
        }
    }
    psi.resize(n + 1, CurveFunction::zero(E));
    return psi;
}

/// psi_n as a CurveFunction.
inline CurveFunction division_polynomial(const EllipticCurve& E, unsigned n) {
    return division_polynomials(E, n).back();
}

/// phi_{ell,Q}(x) = (x - x_Q) psi_ell(x)^2 - psi_{ell-1}(x) psi_{ell+1}(x),
/// reduced to a pure x-polynomial; its roots over the algebraic closure are
/// the x-coordinates of the preimages of Q under multiplication by ell.
inline Poly preimage_x_poly(const EllipticCurve& E, const CurvePoint& Q, const Int& ell) {
    if (Q.is_infinity()) throw domain_error("preimage_x_poly: Q must be affine");
    unsigned l = unsigned(ell);
    auto psi = division_polynomials(E, l + 1);
    CurveFunction xmq = CurveFunction::from_x_poly(
        E, Poly::linear_root(Q.x()));
    CurveFunction phi = xmq * psi[l] * psi[l] - psi[l - 1] * psi[l + 1];
    if (!phi.y_free()) throw internal_error("preimage_x_poly: y part did not cancel");
    return phi.u();
}

/// A certified basis of E[ell] over an extension of the base field.
struct TorsionBasis {
    Int ell;
    EllipticCurve curve;  // base curve lifted to the working field
    CurvePoint W1, W2;
    unsigned extension_degree = 1;
};

namespace detail {

// Deterministic ordering of field elements for reproducible basis choice.
inline void sort_elements(std::vector<FieldElement>& v) {
    std::sort(v.begin(), v.end(), [](const FieldElement& a, const FieldElement& b) {
        return a.coeffs() < b.coeffs();
    });
}

// x-coordinates of the nonzero points of <W1>.
inline std::vector<FieldElement> subgroup_x_coords(const EllipticCurve& E,
                                                   const CurvePoint& W1,
                                                   const Int& ell) {
    std::vector<FieldElement> xs;
    CurvePoint T = W1;
    for (Int j = 1; j < ell; ++j) {
        xs.push_back(T.x());
        T = point_add(E, T, W1);
    }
    return xs;
}

// Tries to realize a full ell-torsion basis of E over the given field; the
// curve must already live there.  Returns nullopt when the torsion is not
// fully rational.
inline std::optional<TorsionBasis> torsion_basis_in_field(const EllipticCurve& E,
                                                          const Int& ell,
                                                          unsigned ext_degree,
                                                          std::uint64_t seed) {
    const auto& F = E.field();
    Poly xpoly = Poly::zero(F);
    std::size_t expected;
    if (ell == 2) {
        xpoly = E.f_poly();
        expected = 3;
    } else {
        CurveFunction psi = division_polynomial(E, unsigned(ell));
        if (!psi.y_free()) throw internal_error("odd psi_ell has a y part");
        xpoly = psi.u();
        expected = std::size_t((ell * ell - 1) / 2);
    }
    auto roots = roots_in_field(xpoly, seed);
    if (roots.size() != expected) return std::nullopt;
    detail::sort_elements(roots);

    auto lift = [&](const FieldElement& gamma) -> std::optional<CurvePoint> {
        FieldElement fy = E.f(gamma);
        if (fy.is_zero()) return CurvePoint(gamma, F->zero());
        if (!ell_power_residue(fy, 2)) return std::nullopt;
        return CurvePoint(gamma, ell_th_root(fy, 2, seed));
    };

    auto w1 = lift(roots[0]);
    if (!w1) return std::nullopt;
    // Full rationality requires every x-coordinate to lift.
    for (std::size_t i = 1; i < roots.size(); ++i)
        if (!lift(roots[i])) return std::nullopt;

    auto sub_xs = subgroup_x_coords(E, *w1, ell);
    std::optional<CurvePoint> w2;
    for (const auto& gamma : roots) {
        bool in_sub = false;
        for (const auto& x : sub_xs)
            if (x == gamma) {
                in_sub = true;
                break;
            }
        if (!in_sub) {
            w2 = lift(gamma);
            break;
        }
    }
    if (!w2) return std::nullopt;

    // Certification.
    if (!scalar_mul(E, ell, *w1).is_infinity() ||
        !scalar_mul(E, ell, *w2).is_infinity())
        throw internal_error("torsion basis candidate is not ell-torsion");
    // Weil pairing consequence: full E[ell] over F_q forces ell | q - 1.
    if ((F->order() - 1) % ell != 0)
        throw internal_error("invalid torsion certificate: ell does not divide q - 1");
    return TorsionBasis{ell, E, *w1, *w2, ext_degree};
}

}  // namespace detail

/// Lifts a curve defined over the prime subfield into an extension field.
inline EllipticCurve lift_curve(const EllipticCurve& E,
                                const FieldDescriptor::Ptr& ext) {
    return EllipticCurve(ext->from_int(E.a().as_int()), ext->from_int(E.b().as_int()));
}

/// Finds the smallest extension degree m <= max_extension of the curve's
/// prime field with E[ell] fully rational over F_{p^m}; roots of the
/// division polynomial are lifted and checked for independence.
inline TorsionBasis torsion_basis(const EllipticCurve& E, const Int& ell,
                                  unsigned max_extension, std::uint64_t seed = 0) {
    if (ell == E.field()->characteristic())
        throw domain_error("torsion_basis: ell equals the characteristic");
    if (!is_prime(ell)) throw domain_error("torsion_basis: ell must be prime");
    const Int p = E.field()->characteristic();
    const unsigned base_m = E.field()->extension_degree();
    for (unsigned m = 1; m <= max_extension; ++m) {
        EllipticCurve Em = E;
        if (m != base_m) {
            if (base_m != 1)
                throw domain_error(
                    "torsion_basis: extension search requires a curve over the prime field");
            auto ext = FieldDescriptor::extension_of_degree(p, m, seed);
            Em = lift_curve(E, ext);
        }
        if (auto basis = detail::torsion_basis_in_field(Em, ell, m, seed))
            return *basis;
    }
    throw not_found_error("no full ell-torsion within the extension bound");
}

}  // namespace elldiv

#endif  // ELLDIV_TORSION_HPP
