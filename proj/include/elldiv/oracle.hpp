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

#ifndef ELLDIV_ORACLE_HPP
#define ELLDIV_ORACLE_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "elldiv/gpsolve.hpp"
#include "elldiv/miller.hpp"

namespace elldiv {

inline constexpr long kOracleFieldBound = 1000000;

/// Every element of F_q, enumerated by coefficient vector.  q <= 10^6.
inline std::vector<FieldElement> all_field_elements(const FieldDescriptor::Ptr& F) {
    if (F->order() > kOracleFieldBound)
        throw domain_error("oracle: field too large for enumeration");
    std::vector<FieldElement> elems;
    for (Int i = 0; i < F->order(); ++i) {
        std::vector<Int> c;
        Int v = i;
        for (unsigned d = 0; d < F->extension_degree(); ++d) {
            c.push_back(v % F->characteristic());
            v /= F->characteristic();
        }
        elems.push_back(F->from_coeffs(c));
    }
    return elems;
}

/// Full enumeration of E(F_q) with coordinate lookup.  The point at infinity
/// is stored alongside the affine points.
struct GroupTable {
    EllipticCurve curve;
    std::vector<CurvePoint> points;  // includes the point at infinity
    std::map<std::pair<std::string, std::string>, std::size_t> index;

    explicit GroupTable(const EllipticCurve& E) : curve(E) {
        points.push_back(CurvePoint::infinity());
        for (const auto& x : all_field_elements(E.field())) {
            FieldElement fx = E.f(x);
            if (fx.is_zero()) {
                points.emplace_back(x, E.field()->zero());
            } else if (ell_power_residue(fx, 2)) {
                FieldElement y = ell_th_root(fx, 2);
                points.emplace_back(x, y);
                points.emplace_back(x, -y);
            }
        }
        for (std::size_t i = 1; i < points.size(); ++i)
            index.emplace(std::pair{points[i].x().str(), points[i].y().str()}, i);
    }

    Int order() const { return Int(points.size()); }

    bool contains(const CurvePoint& P) const {
        if (P.is_infinity()) return true;
        return index.count({P.x().str(), P.y().str()}) > 0;
    }
};

/// {P in E(F_q) : ell P = Q}, by full scan.
inline std::vector<CurvePoint> brute_preimages(const EllipticCurve& E,
                                               const CurvePoint& Q, const Int& ell) {
    GroupTable table(E);
    std::vector<CurvePoint> out;
    for (const auto& P : table.points)
        if (scalar_mul(E, ell, P) == Q) out.push_back(P);
    return out;
}

/// The Miller function h_W rebuilt from scratch: impose vanishing to order
/// ell at W on the Riemann-Roch basis of L(ell * P_infinity) and solve the
/// resulting linear system.  Cross-checks miller_function.
inline CurveFunction miller_by_linear_solve(const EllipticCurve& E, const CurvePoint& W,
                                            const Int& ell) {
    if (!scalar_mul(E, ell, W).is_infinity() || W.is_infinity())
        throw domain_error("miller_by_linear_solve: W is not affine ell-torsion");
    const auto& F = E.field();
    if (ell == 2) return CurveFunction::from_x_poly(E, Poly::linear_root(W.x()));
    if (ell % 2 == 0) throw domain_error("miller_by_linear_solve: ell must be prime");

    // Unknowns: h = sum a_i x^i (2i < ell)  +  sum b_i x^i y (2i + 3 <= ell),
    // with b_{(ell-3)/2} = 1 by the normalization at infinity.
    std::size_t na = std::size_t((ell + 1) / 2);  // a_0 .. a_{(ell-1)/2}
    std::size_t nb = std::size_t((ell - 1) / 2);  // b_0 .. b_{(ell-3)/2}
    std::size_t cols = na + nb;
    unsigned l = unsigned(ell);

    // y^(m)(W), from the shared derivative recurrence (needs p > ell).
    auto table = derivative_table(E, ell);
    std::vector<FieldElement> ym;
    ym.push_back(W.y());
    for (unsigned m = 1; m < l; ++m) {
        auto v = table.entry(m).eval(W);
        if (!v) throw internal_error("miller_by_linear_solve: derivative pole at W");
        ym.push_back(*v);
    }

    auto gpow = [&](const Int& e) { return e < 0 ? F->zero() : W.x().pow(e); };
    // rows n = 0 .. ell-1: the n-th x-derivative of h vanishes at W
    std::vector<std::vector<FieldElement>> rows;
    for (unsigned n = 0; n < l; ++n) {
        std::vector<FieldElement> row;
        for (std::size_t i = 0; i < na; ++i) {
            Int ff = detail::falling_factorial(unsigned(i), n);
            row.push_back(F->from_int(ff) * gpow(Int(i) - n));
        }
        for (std::size_t i = 0; i < nb; ++i) {
            FieldElement s = F->zero();
            for (unsigned m = 0; m <= n; ++m) {
                Int ff = detail::falling_factorial(unsigned(i), n - m);
                if (ff == 0) continue;
                s = s + F->from_int(detail::binomial(n, m) * ff) *
                            gpow(Int(i) - Int(n - m)) * ym[m];
            }
            row.push_back(s);
        }
        rows.push_back(std::move(row));
    }

    // Gaussian elimination; the solution space must be one-dimensional.
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_col;
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][c].is_zero()) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        FieldElement inv = rows[rank][c].inverse();
        for (auto& e : rows[rank]) e = e * inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][c].is_zero()) continue;
            FieldElement f = rows[r][c];
            for (std::size_t k = 0; k < cols; ++k)
                rows[r][k] = rows[r][k] - f * rows[rank][k];
        }
        pivot_col.push_back(c);
        ++rank;
    }
    if (rank != cols - 1)
        throw internal_error("miller_by_linear_solve: singular vanishing system");

    // back-substitute with the free variable set to 1, then rescale so that
    // b_{(ell-3)/2} (the last column) equals 1
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    std::size_t free_col = 0;
    while (is_pivot[free_col]) ++free_col;
    std::vector<FieldElement> sol(cols, F->zero());
    sol[free_col] = F->one();
    for (std::size_t r = 0; r < rank; ++r)
        sol[pivot_col[r]] = -rows[r][free_col];
    if (sol[cols - 1].is_zero())
        throw internal_error("miller_by_linear_solve: leading coefficient vanished");
    FieldElement scale = sol[cols - 1].inverse();
    for (auto& e : sol) e = e * scale;

    std::vector<FieldElement> uc(sol.begin(), sol.begin() + long(na));
    std::vector<FieldElement> vc(sol.begin() + long(na), sol.end());
    return CurveFunction{E, Poly(F, uc), Poly(F, vc)};
}

}  // namespace elldiv

#endif  // ELLDIV_ORACLE_HPP
