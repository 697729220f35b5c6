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

#ifndef ELLDIV_GPSOLVE_HPP
#define ELLDIV_GPSOLVE_HPP

#include <string>
#include <utility>
#include <vector>

#include "elldiv/miller.hpp"

namespace elldiv {

namespace detail {

inline Int falling_factorial(unsigned e, unsigned n) {
    Int r = 1;
    if (n > e) return 0;
    for (unsigned i = 0; i < n; ++i) r *= Int(e - i);
    return r;
}

inline Int binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    Int r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= Int(n - i);
        r /= Int(i + 1);
    }
    return r;
}

}  // namespace detail

/// Iterated derivatives of y on E: y^(n) = num[n](x) / (2^n y^(2n-1)) for
/// n >= 1, derived from 2yy' = f'(x) by repeated differentiation:
///   num[1] = f',   num[n] = 2 num[n-1]' f - (2n-3) num[n-1] f'.
struct DerivativeTable {
    EllipticCurve curve;
    unsigned order;          // entries 1..order are populated
    std::vector<Poly> num;   // num[0] is unused (y^(0) is y itself)

    /// y^(n) as an exact rational function on E (n >= 1).
    RationalCurveFunction entry(unsigned n) const {
        if (n < 1 || n > order) throw domain_error("DerivativeTable: order out of range");
        const auto& F = curve.field();
        FieldElement two_n = F->from_int(Int(1) << n);
        // y^(2n-1) = f^(n-1) y
        Poly fpow = Poly::constant(F->one());
        for (unsigned i = 1; i < n; ++i) fpow = fpow * curve.f_poly();
        CurveFunction den{curve, Poly::zero(F), two_n * fpow};
        return {CurveFunction::from_x_poly(curve, num[n]), den};
    }
};

/// Requires characteristic > ell: row n of the g_P matrix divides by
/// integers up to n!, and the table itself divides by powers of 2.
inline DerivativeTable derivative_table(const EllipticCurve& E, const Int& ell) {
    if (E.field()->characteristic() <= ell)
        throw domain_error("derivative_table: characteristic must exceed ell");
    unsigned order = unsigned(ell) - 1;
    Poly f = E.f_poly();
    Poly fp = f.derivative();
    std::vector<Poly> num;
    num.push_back(Poly::zero(E.field()));
    num.push_back(fp);
    for (unsigned n = 2; n <= order; ++n) {
        const auto& F = E.field();
        num.push_back(F->from_int(2) * num[n - 1].derivative() * f -
                      F->from_int(Int(2) * n - 3) * num[n - 1] * fp);
    }
    return {E, order, std::move(num)};
}

/// The homogeneous system M X = 0 determining the coefficients of
///   g_P = sum_j alpha_j (x - x_Q)^j + sum_i beta_i (y + y_Q)(x - x_Q)^i.
/// Row 0 evaluates the basis at (x_P, y_P); row n is the n-th x-derivative
/// at P.  Rows are cleared of denominators by row_factor[n] = 2^n y_P^(2n-1)
/// so every entry lives in k[x_P, y_P]/(y_P^2 - f); clearing does not change
/// the kernel.
struct GpSystem {
    Int ell;
    EllipticCurve curve;
    CurvePoint Q;
    unsigned num_alpha;  // 1 for ell = 2, (ell+1)/2 otherwise
    unsigned num_beta;
    unsigned unit_slot;  // beta_0 for ell = 2, alpha_r otherwise
    std::vector<std::vector<SymbolicElement>> matrix;
    std::vector<SymbolicElement> row_factor;
    /// Kernel of rows 1..ell-1 by signed maximal minors; empty until solved.
    /// Defined up to the common carried factor kernel[unit_slot].
    std::vector<SymbolicElement> kernel;
    bool degenerate = false;

    /// The j-th basis function of g_P: (x - x_Q)^(j+1) for j < num_alpha,
    /// (y + y_Q)(x - x_Q)^(j - num_alpha) after that.
    CurveFunction basis_function(unsigned j) const {
        Poly shift = Poly::linear_root(Q.x());
        if (j < num_alpha) {
            Poly p = Poly::constant(curve.field()->one());
            for (unsigned i = 0; i <= j; ++i) p = p * shift;
            return CurveFunction::from_x_poly(curve, p);
        }
        Poly p = Poly::constant(curve.field()->one());
        for (unsigned i = 0; i < j - num_alpha; ++i) p = p * shift;
        return CurveFunction{curve, Q.y() * p, p};
    }

    /// basis_function(j) evaluated at an affine point.
    FieldElement basis_value(unsigned j, const CurvePoint& W) const {
        return basis_function(j).eval(W);
    }
};

inline GpSystem build_matrix(const EllipticCurve& E, const Int& ell,
                             const CurvePoint& Q) {
    if (Q.is_infinity()) throw domain_error("build_matrix: Q must be affine");
    if (!on_curve(E, Q)) throw domain_error("build_matrix: Q not on the curve");
    auto table = derivative_table(E, ell);  // also enforces char > ell

    const auto& F = E.field();
    unsigned l = unsigned(ell);
    unsigned num_alpha = ell == 2 ? 1 : (l + 1) / 2;
    unsigned num_beta = l - num_alpha;
    GpSystem sys{ell, E, Q, num_alpha, num_beta,
                 ell == 2 ? 1 : num_alpha - 1,
                 {},      {}, {},        false};

    Poly f = E.f_poly();
    Poly shift = Poly::linear_root(Q.x());
    auto shift_pow = [&](unsigned e) {
        Poly p = Poly::constant(F->one());
        for (unsigned i = 0; i < e; ++i) p = p * shift;
        return p;
    };
    auto f_pow = [&](unsigned e) {
        Poly p = Poly::constant(F->one());
        for (unsigned i = 0; i < e; ++i) p = p * f;
        return p;
    };

    // Row 0: the basis itself.
    std::vector<SymbolicElement> row0;
    for (unsigned j = 0; j < l; ++j) row0.push_back(sys.basis_function(j));
    sys.matrix.push_back(std::move(row0));
    sys.row_factor.push_back(CurveFunction::one(E));

    for (unsigned n = 1; n < l; ++n) {
        // Clearing factor 2^n y^(2n-1) = 2^n f^(n-1) y.
        FieldElement two_n = F->from_int(Int(1) << n);
        CurveFunction cn{E, Poly::zero(F), two_n * f_pow(n - 1)};
        std::vector<SymbolicElement> row;
        for (unsigned j = 0; j < num_alpha; ++j) {
            unsigned e = j + 1;
            Int ff = detail::falling_factorial(e, n);
            if (ff == 0) {
                row.push_back(CurveFunction::zero(E));
                continue;
            }
            row.push_back(F->from_int(ff) *
                          (cn * CurveFunction::from_x_poly(E, shift_pow(e - n))));
        }
        for (unsigned i = 0; i < num_beta; ++i) {
            // d^n/dx^n [(y + y_Q)(x - x_Q)^i], Leibniz, then cleared by cn:
            //   cn * y^(n-m) = 2^m num[n-m] f^m   (pure x-polynomial, m < n)
            //   cn * (y + y_Q) = 2^n f^(n-1) y (y + y_Q)
            CurveFunction acc = CurveFunction::zero(E);
            for (unsigned m = 0; m <= std::min(n, i); ++m) {
                FieldElement scale =
                    F->from_int(detail::binomial(n, m) * detail::falling_factorial(i, m));
                if (scale.is_zero()) continue;
                Poly xpart = shift_pow(i - m);
                if (m == n) {
                    CurveFunction ypq{E, Q.y() * Poly::constant(F->one()),
                                      Poly::constant(F->one())};
                    acc += scale * (CurveFunction::from_x_poly(E, xpart) * cn * ypq);
                } else {
                    Poly cleared = F->from_int(Int(1) << m) * table.num[n - m] * f_pow(m);
                    acc += scale * CurveFunction::from_x_poly(E, xpart * cleared);
                }
            }
            row.push_back(acc);
        }
        sys.matrix.push_back(std::move(row));
        sys.row_factor.push_back(cn);
    }
    return sys;
}

/// Fraction-free (Bareiss) determinant over the coordinate ring.
inline SymbolicElement symbolic_det(std::vector<std::vector<SymbolicElement>> m) {
    std::size_t n = m.size();
    if (n == 0) throw domain_error("symbolic_det: empty matrix");
    const EllipticCurve& E = m[0][0].curve();
    bool negate = false;
    CurveFunction prev = CurveFunction::one(E);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t piv = k;
        while (piv < n && m[piv][k].is_zero()) ++piv;
        if (piv == n) return CurveFunction::zero(E);
        if (piv != k) {
            std::swap(m[piv], m[k]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).exact_div(prev);
        prev = m[k][k];
    }
    return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

/// Kernel of the derivative rows 1..ell-1 by signed maximal minors:
/// X_j = (-1)^j det(N with column j removed).  Row 0 dotted with X is
/// +/- det(M): the on-curve preimage condition, not identically zero.
inline void solve_kernel(GpSystem& sys) {
    unsigned l = unsigned(sys.ell);
    std::vector<std::vector<SymbolicElement>> N(sys.matrix.begin() + 1,
                                                sys.matrix.end());
    sys.kernel.clear();
    bool all_zero = true;
    for (unsigned j = 0; j < l; ++j) {
        std::vector<std::vector<SymbolicElement>> minor;
        for (unsigned i = 0; i + 1 < l; ++i) {
            std::vector<SymbolicElement> row;
            for (unsigned c = 0; c < l; ++c)
                if (c != j) row.push_back(N[i][c]);
            minor.push_back(std::move(row));
        }
        SymbolicElement d = symbolic_det(std::move(minor));
        if (!d.is_zero()) all_zero = false;
        sys.kernel.push_back(j % 2 == 0 ? d : -d);
    }
    if (all_zero || sys.kernel[sys.unit_slot].is_zero()) sys.degenerate = true;
}

/// e(x_P, y_P; omega) = (A0 + omega A1) - (B0 + omega B1) y_P, the
/// substituted condition g_P(W) - omega h_W(x_P, y_P) = 0, scaled by the
/// kernel's carried common factor (harmless: the form is homogeneous).
struct LinearForm {
    Poly A0, A1, B0, B1;

    Poly A(const FieldElement& omega) const { return A0 + omega * A1; }
    Poly B(const FieldElement& omega) const { return B0 + omega * B1; }
    bool degenerate_in_y() const { return B0.is_zero() && B1.is_zero(); }
};

inline LinearForm linear_form(const GpSystem& sys, const CurvePoint& W,
                              const MillerFunction& h) {
    if (sys.kernel.empty()) throw domain_error("linear_form: kernel not solved");
    if (W.is_infinity()) throw domain_error("linear_form: W must be affine");
    CurveFunction V = CurveFunction::zero(sys.curve);
    for (unsigned j = 0; j < unsigned(sys.ell); ++j)
        V += sys.basis_value(j, W) * sys.kernel[j];
    CurveFunction ch = sys.kernel[sys.unit_slot] * h.fn;
    return {V.u(), -ch.u(), -V.v(), ch.v()};
}

/// Kernel of rows 1..ell-1 specialized at a concrete P, solved over the
/// field and normalized so the designated slot is 1; this recovers the
/// paper-normalized g_P coefficients at P.  Throws internal_error when the
/// nullity is not 1 (degenerate P).
inline std::vector<FieldElement> specialized_kernel(const GpSystem& sys,
                                                    const CurvePoint& P) {
    if (P.is_infinity()) throw domain_error("specialized_kernel: P must be affine");
    const auto& F = sys.curve.field();
    unsigned l = unsigned(sys.ell);
    std::vector<std::vector<FieldElement>> m;
    for (unsigned i = 1; i < l; ++i) {
        std::vector<FieldElement> row;
        for (unsigned j = 0; j < l; ++j) row.push_back(sys.matrix[i][j].eval(P));
        m.push_back(std::move(row));
    }
    // Gaussian elimination to reduced row echelon form.
    std::vector<int> pivot_col(m.size(), -1);
    unsigned rank = 0;
    for (unsigned col = 0; col < l && rank < m.size(); ++col) {
        unsigned piv = rank;
        while (piv < m.size() && m[piv][col].is_zero()) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[rank]);
        FieldElement inv = m[rank][col].inverse();
        for (unsigned j = 0; j < l; ++j) m[rank][j] = inv * m[rank][j];
        for (unsigned i = 0; i < m.size(); ++i) {
            if (i == rank || m[i][col].is_zero()) continue;
            FieldElement s = m[i][col];
            for (unsigned j = 0; j < l; ++j) m[i][j] = m[i][j] - s * m[rank][j];
        }
        pivot_col[rank] = int(col);
        ++rank;
    }
    std::vector<FieldElement> x(l, F->zero());
    if (rank == l - 1) {
        // The single free column determines the kernel vector.
        std::vector<bool> is_pivot(l, false);
        for (unsigned i = 0; i < rank; ++i) is_pivot[unsigned(pivot_col[i])] = true;
        unsigned free_col = 0;
        while (is_pivot[free_col]) ++free_col;
        x[free_col] = F->one();
        for (unsigned i = 0; i < rank; ++i)
            x[unsigned(pivot_col[i])] = -m[i][free_col];
    } else if (P.y().is_zero() && P.x() == sys.Q.x()) {
        // P = Q in E[2] (odd ell only: 2P = oo forces ell P = P).  With the
        // uniformizer y at P, (x - x_Q)^(j+1) has local order 2(j+1) and
        // (y + y_Q)(x - x_Q)^j order 2j + 1, so order-ell vanishing kills
        // every basis function except (x - x_Q)^num_alpha: the unit slot.
        x[sys.unit_slot] = F->one();
    } else if (!sys.kernel.empty()) {
        // Rank drop (e.g. a 2-torsion P, where the 2y-cleared rows collapse):
        // the symbolic minors kernel still specializes to a valid direction.
        for (unsigned j = 0; j < l; ++j) x[j] = sys.kernel[j].eval(P);
        for (unsigned i = 1; i < l; ++i) {
            FieldElement dot = F->zero();
            for (unsigned j = 0; j < l; ++j)
                dot += sys.matrix[i][j].eval(P) * x[j];
            if (!dot.is_zero())
                throw internal_error("specialized_kernel: symbolic kernel fails at P");
        }
    } else {
        throw internal_error("specialized_kernel: nullity is not 1");
    }
    if (x[sys.unit_slot].is_zero())
        throw internal_error("specialized_kernel: designated slot vanishes");
    FieldElement inv = x[sys.unit_slot].inverse();
    for (auto& v : x) v = inv * v;
    return x;
}

/// Value of the normalized g_P at an affine point, given specialized
/// coefficients.
inline FieldElement gp_value(const GpSystem& sys,
                             const std::vector<FieldElement>& coeffs,
                             const CurvePoint& W) {
    FieldElement acc = sys.curve.field()->zero();
    for (unsigned j = 0; j < unsigned(sys.ell); ++j)
        acc += coeffs[j] * sys.basis_value(j, W);
    return acc;
}

/// Debug dump of the cleared matrix and kernel for comparison against
/// hand-computed displays.
inline std::string dump(const GpSystem& sys) {
    std::string out;
    for (std::size_t i = 0; i < sys.matrix.size(); ++i) {
        out += "row " + std::to_string(i) + " (x " + sys.row_factor[i].str() + "):\n";
        for (const auto& e : sys.matrix[i]) out += "  " + e.str() + "\n";
    }
    if (!sys.kernel.empty()) {
        out += "kernel:\n";
        for (const auto& e : sys.kernel) out += "  " + e.str() + "\n";
    }
    return out;
}

}  // namespace elldiv

#endif  // ELLDIV_GPSOLVE_HPP
