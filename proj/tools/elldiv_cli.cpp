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

// elldiv: decide Q in [ell]E(k) and compute all ell^2 preimages.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "elldiv/io.hpp"
#include "elldiv/oracle.hpp"

using namespace elldiv;

namespace {

struct CurveArgs {
    std::string p, a, b;
    void attach(CLI::App* cmd) {
        cmd->add_option("--p", p, "field characteristic (prime > 3)")->required();
        cmd->add_option("--a", a, "curve coefficient a (signed, reduced mod p)")
            ->required();
        cmd->add_option("--b", b, "curve coefficient b (signed, reduced mod p)")
            ->required();
    }
    EllipticCurve curve() const {
        Int pp = parse_int(p);
        if (pp <= 3 || !is_prime(pp))
            throw domain_error("--p must be a prime greater than 3");
        auto F = FieldDescriptor::prime_field(pp);
        return EllipticCurve(F->from_int(parse_int(a)), F->from_int(parse_int(b)));
    }
};

Int parse_ell(const std::string& s) {
    Int ell = parse_int(s);
    if (ell < 2 || !is_prime(ell)) throw domain_error("--ell must be a prime");
    return ell;
}

// Basis override ("x1,y1,x2,y2") or search up to max_ext.  In either case
// the returned basis is certified.
TorsionBasis resolve_basis(const EllipticCurve& E, const Int& ell,
                           const std::string& basis_opt, unsigned max_ext,
                           std::uint64_t seed) {
    if (basis_opt.empty()) return torsion_basis(E, ell, max_ext, seed);
    std::vector<Int> v;
    std::string cur;
    for (char c : basis_opt + ",") {
        if (c == ',') {
            v.push_back(parse_int(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (v.size() != 4) throw domain_error("--basis must be x1,y1,x2,y2");
    const auto& F = E.field();
    CurvePoint W1(F->from_int(v[0]), F->from_int(v[1]));
    CurvePoint W2(F->from_int(v[2]), F->from_int(v[3]));
    for (const auto& W : {W1, W2}) {
        if (!on_curve(E, W)) throw domain_error("--basis point not on the curve");
        if (W.is_infinity() || !scalar_mul(E, ell, W).is_infinity() ||
            point_order_naive(E, W) != ell)
            throw domain_error("--basis point is not of exact order ell");
    }
    // independence: W2 outside <W1>
    CurvePoint T = CurvePoint::infinity();
    for (Int i = 0; i < ell; ++i) {
        if (T == W2) throw domain_error("--basis points are dependent");
        T = point_add(E, T, W1);
    }
    return TorsionBasis{ell, E, W1, W2, E.field()->extension_degree()};
}

// Lifts a prime-field point into the basis' working field.
CurvePoint lift_point(const CurvePoint& P, const FieldDescriptor::Ptr& F) {
    if (P.is_infinity()) return P;
    return CurvePoint(F->from_int(P.x().as_int()), F->from_int(P.y().as_int()));
}

void emit(const Json& j, bool json_mode, const std::string& text) {
    if (json_mode)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

std::string point_str(const CurvePoint& P) {
    return P.is_infinity() ? "infinity" : "(" + P.x().str() + ", " + P.y().str() + ")";
}

int run_selftest() {
    // quick smoke subset of the acceptance properties
    auto F = FieldDescriptor::prime_field(5);
    EllipticCurve E(F->from_int(-1), F->from_int(0));
    auto basis = torsion_basis(E, 2, 1);
    CurvePoint Q(F->from_int(0), F->from_int(0));
    auto res = divide_point(E, basis, Q, 2);
    bool ok = res.in_image && res.preimages.size() == 4;
    for (const auto& rec : res.preimages)
        ok = ok && scalar_mul(E, 2, rec.P) == Q;
    ok = ok && !is_in_ell_image(E, basis, CurvePoint(F->from_int(2), F->from_int(1)), 2);
    auto brute = brute_preimages(E, Q, 2);
    ok = ok && brute.size() == res.preimages.size();
    // Miller cross-check on a curve with rational 3-torsion
    auto F7 = FieldDescriptor::prime_field(7);
    EllipticCurve E7(F7->from_int(1), F7->from_int(3));
    auto b3 = torsion_basis(E7, 3, 6);
    ok = ok && miller_function(b3.curve, b3.W1, 3).fn ==
                   miller_by_linear_solve(b3.curve, b3.W1, 3);
    ok = ok && product_relation_check(b3.curve, b3.W1, b3.W2, 3);
    std::cout << (ok ? "selftest: ok\n" : "selftest: FAILED\n");
    return ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"elldiv: division of points on elliptic curves by a prime ell"};
    app.require_subcommand(1);

    CurveArgs curve_args;
    std::string ell_s, q_s, w_s, basis_s, n_s, kmax_s;
    unsigned max_ext = 6, threads = 1;
    std::uint64_t seed = 0;
    bool json_mode = false;

    auto add_common = [&](CLI::App* cmd, bool with_ell) {
        curve_args.attach(cmd);
        if (with_ell) cmd->add_option("--ell", ell_s, "the prime ell")->required();
        cmd->add_option("--seed", seed, "PRNG seed (reproducible output)");
        cmd->add_option("--max-ext", max_ext, "largest extension degree searched");
        cmd->add_option("--threads", threads, "worker threads (advisory)");
        cmd->add_flag("--json", json_mode, "JSON output");
    };

    auto* divide = app.add_subcommand("divide", "compute all ell^2 preimages of Q");
    add_common(divide, true);
    divide->add_option("--q", q_s, "point Q as 'x,y' or 'infinity'")->required();
    divide->add_option("--basis", basis_s, "torsion basis override: x1,y1,x2,y2");

    auto* check = app.add_subcommand("check-image", "decide whether Q lies in [ell]E(k)");
    add_common(check, true);
    check->add_option("--q", q_s, "point Q as 'x,y' or 'infinity'")->required();
    check->add_option("--basis", basis_s, "torsion basis override: x1,y1,x2,y2");

    auto* tbasis = app.add_subcommand("torsion-basis", "find a basis of E[ell]");
    add_common(tbasis, true);

    auto* dpoly = app.add_subcommand("division-poly", "print the division polynomial");
    curve_args.attach(dpoly);
    dpoly->add_option("--n", n_s, "index n of psi_n")->required();
    dpoly->add_flag("--json", json_mode, "JSON output");

    auto* miller = app.add_subcommand("miller", "normalized Miller function h_W");
    add_common(miller, true);
    miller->add_option("--w", w_s, "ell-torsion point W as 'x,y'")->required();

    auto* ladder = app.add_subcommand("ladder", "climb ell-power torsion, report a_p");
    add_common(ladder, true);
    ladder->add_option("--k-max", kmax_s, "highest torsion level to attempt")
        ->required();

    app.add_subcommand("selftest", "run a quick built-in verification");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("selftest")) return run_selftest();

        EllipticCurve E = curve_args.curve();
        const auto& F = E.field();

        if (app.got_subcommand(dpoly)) {
            Int n = parse_int(n_s);
            if (n < 0) throw domain_error("--n must be nonnegative");
            CurveFunction psi = division_polynomial(E, unsigned(n));
            Json j;
            j["curve"] = curve_to_json(E);
            j["n"] = n_s;
            if (psi.v().is_zero())  // odd n: psi_n in k[x]
                j["psi"] = polynomial_to_json(psi.u());
            else  // even n: psi_n = u(x) + v(x) y
                j["psi"] = Json{{"u", polynomial_to_json(psi.u())},
                                {"v", polynomial_to_json(psi.v())}};
            emit(j, json_mode, "psi_" + n_s + " = " + psi.str() + "\n");
            return 0;
        }

        Int ell = parse_ell(ell_s);

        if (app.got_subcommand(miller)) {
            CurvePoint W = parse_point(F, w_s);
            auto h = miller_function(E, W, ell);
            Json j;
            j["curve"] = curve_to_json(E);
            j["w"] = point_to_json(W);
            j["u"] = polynomial_to_json(h.fn.u());
            j["v"] = polynomial_to_json(h.fn.v());
            emit(j, json_mode, "h_W = " + h.fn.str() + "\n");
            return 0;
        }

        if (app.got_subcommand(tbasis)) {
            auto basis = resolve_basis(E, ell, "", max_ext, seed);
            Json j;
            j["curve"] = curve_to_json(basis.curve);
            j["extension_degree"] = basis.extension_degree;
            j["w1"] = point_to_json(basis.W1);
            j["w2"] = point_to_json(basis.W2);
            emit(j, json_mode,
                 "extension degree " + std::to_string(basis.extension_degree) +
                     "\nW1 = " + point_str(basis.W1) + "\nW2 = " + point_str(basis.W2) +
                     "\n");
            return 0;
        }

        if (app.got_subcommand(ladder)) {
            Int km = parse_int(kmax_s);
            if (km < 1) throw domain_error("--k-max must be positive");
            auto st = climb(E, ell, unsigned(km), max_ext, seed);
            auto tr = trace_mod(st, st.level);
            Json j;
            j["curve"] = curve_to_json(E);
            j["ell"] = ell.str();
            j["level"] = st.level;
            Json levels = Json::array();
            std::string table = "  k  ext-degree  seconds\n";
            for (const auto& lv : st.history) {
                // timings stay in the text table: JSON must be reproducible
                levels.push_back(Json{{"k", lv.k},
                                      {"extension_degree", lv.extension_degree}});
                table += "  " + std::to_string(lv.k) + "  " +
                         std::to_string(lv.extension_degree) + "  " +
                         std::to_string(lv.seconds) + "\n";
            }
            j["levels"] = levels;
            j["trace_modulus"] = tr.modulus.str();
            Json cand = Json::array();
            std::string cs;
            for (const auto& t : tr.candidates) {
                cand.push_back(t.str());
                cs += (cs.empty() ? "" : ", ") + t.str();
            }
            j["trace_candidates"] = cand;
            j["ambiguous"] = tr.ambiguous();
            emit(j, json_mode,
                 table + "a_p mod " + tr.modulus.str() + " in {" + cs + "}" +
                     (tr.ambiguous() ? "  (ambiguous)" : "") + "\n");
            return 0;
        }

        // divide / check-image
        auto basis = resolve_basis(E, ell, basis_s, max_ext, seed);
        const auto& Ew = basis.curve;
        CurvePoint Q = lift_point(parse_point(F, q_s), Ew.field());
        if (!on_curve(Ew, Q)) throw domain_error("--q is not on the curve");

        if (app.got_subcommand(check)) {
            bool in = is_in_ell_image(Ew, basis, Q, ell);
            Json j;
            j["curve"] = curve_to_json(Ew);
            j["in_image"] = in;
            emit(j, json_mode, std::string("in_image: ") + (in ? "true" : "false") + "\n");
            return 0;
        }

        auto res = divide_point(Ew, basis, Q, ell, seed);
        Json j = result_to_json(res);
        j["curve"] = curve_to_json(Ew);
        std::string text = std::string("in_image: ") + (res.in_image ? "true" : "false") +
                           "\n";
        for (const auto& rec : res.preimages)
            text += "  (" + std::to_string(rec.i) + "," + std::to_string(rec.j) +
                    "): " + point_str(rec.P) + "\n";
        for (const auto& d : res.diagnostics) text += "note: " + d + "\n";
        emit(j, json_mode, text);
        return 0;
    } catch (const internal_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const not_found_error& e) {
        std::cerr << "not found: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
