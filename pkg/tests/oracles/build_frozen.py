"""Recompute the frozen reference values with sympy and write tests/data/frozen.json.

Run from the repository root:  python3 tests/oracles/build_frozen.py
Nothing in here imports crkit; the values are an independent cross-check.
"""

import json
from pathlib import Path

import sympy as sp

OUT = Path(__file__).resolve().parent.parent / "data" / "frozen.json"


def num(q):
    q = sp.Rational(q)
    return int(q) if q.q == 1 else "%d/%d" % (q.p, q.q)


def terms(expr, gens):
    """Sorted [[exponents], [re, im]] list for a polynomial over Q(i)."""
    p = sp.Poly(sp.expand(expr), *gens)
    out = []
    for mono, c in p.terms():
        re, im = sp.re(c), sp.im(c)
        out.append([list(mono), [num(re), num(im)]])
    return sorted(out)


def complex_syms(n):
    z = sp.symbols("z1:%d" % (n + 1))
    zb = sp.symbols("zb1:%d" % (n + 1))
    return z, zb


def products():
    z, zb = complex_syms(2)
    a = (z[0] + sp.I * zb[0] - sp.Rational(1, 2)) ** 3 * (z[1] - zb[1])
    b = (sp.Rational(1, 8) * (sp.Symbol("z3") + sp.Symbol("zb3")) * (z[0] + zb[0]) ** 2
         - sp.Rational(1, 4) * (z[1] + zb[1]) ** 2)
    z3, zb3 = sp.Symbol("z3"), sp.Symbol("zb3")
    gens3 = (z[0], z[1], z3, zb[0], zb[1], zb3)
    return {
        "cube_times_diff": {"text": "(z1 + i*zb1 - 1/2)^3*(z2 - zb2)", "n": 2,
                            "terms": terms(a, z + zb)},
        "whitney": {"text": "(1/8)*(z3 + zb3)*(z1 + zb1)^2 - (1/4)*(z2 + zb2)^2", "n": 3,
                    "terms": terms(b, gens3)},
    }


def groebner_bases():
    x = sp.symbols("z1:4")
    cases = {
        "twisted_cubic": ["z2 - z1^2", "z3 - z1^3"],
        "circle_line": ["z1^2 + z2^2 - 1", "z1 - z2"],
        "hyperbola": ["z1*z2 - 1", "z2^2 - z1"],
        "gaussian": ["z1^2 + 1", "z2 - i*z1"],
    }
    out = {}
    for name, gens in cases.items():
        exprs = [sp.sympify(g.replace("^", "**"), locals={"i": sp.I, **{str(v): v for v in x}}) for g in gens]
        opts = {"extension": sp.I} if any(e.has(sp.I) for e in exprs) else {}
        G = sp.groebner(exprs, *x, order="grlex", **opts)
        basis = []
        for g in G.exprs:
            p = sp.Poly(g, *x)
            basis.append(terms(p.as_expr() / p.LC(order="grlex"), x))
        out[name] = {"gens": gens, "basis": sorted(basis)}
    # elimination of z1 from the twisted cubic
    G = sp.groebner([x[1] - x[0] ** 2, x[2] - x[0] ** 3], *x, order="lex")
    elim = [g for g in G.exprs if x[0] not in g.free_symbols]
    out["twisted_cubic_elim"] = {"basis": sorted(terms(sp.Poly(g, *x).monic().as_expr(), x) for g in elim)}
    return out


def matrices():
    I = sp.I
    A = sp.Matrix([[1, 2 + I, sp.Rational(1, 3)], [0, I, -1], [2, 4 + 2 * I, sp.Rational(2, 3)]])
    B = sp.Matrix([[2, -I, 1, 0], [1 + I, 3, 0, sp.Rational(1, 2)], [0, 1, -1, I], [5, 0, 2, 2]])

    def enc(M):
        return [[[num(sp.re(e)), num(sp.im(e))] for e in row] for row in M.tolist()]

    def vec(v):
        return [[num(sp.re(e)), num(sp.im(e))] for e in v]

    d = sp.nsimplify(sp.expand(B.det()))
    inv = B.inv().applyfunc(sp.expand)
    z1, z2 = sp.symbols("z1 z2")
    P = sp.Matrix([[z1, z2, 1], [z2 ** 2, z1 * z2, z2], [z1 + z2, z2 + z2 ** 2, 1 + z2]])
    return {
        "A": {"rows": enc(A), "rank": A.rank(), "nullity": len(A.nullspace())},
        "B": {"rows": enc(B), "rank": B.rank(), "det": [num(sp.re(d)), num(sp.im(d))], "inverse": enc(inv)},
        "P": {"rows": [[str(e).replace("**", "^") for e in r] for r in P.tolist()],
              "rank": P.rank(), "det": terms(P.det(), (z1, z2))},
    }


def series():
    z = sp.Symbol("z")
    out = {}
    s1 = sp.sin(z)
    s2 = sp.sin(sp.sin(z))
    s3 = sp.sin(sp.sin(sp.sin(z)))
    for name, e, N in (("sin", s1, 20), ("sin@2", s2, 20), ("sin@3", s3, 20),
                       ("sin^2", sp.sin(z) ** 2, 12), ("sin^2@2", sp.sin(sp.sin(z) ** 2) ** 2, 12),
                       ("exp", sp.exp(z), 10)):
        poly = sp.series(e, z, 0, N + 1).removeO()
        out[name] = {"order": N, "coeffs": [num(poly.coeff(z, k)) for k in range(N + 1)]}
    return out


GRAPHS = {
    "heisenberg2": (2, 1, ["z2 - I*z1*zb1"]),
    "productC3": (3, 2, ["z3 - I*z1*zb1"]),
    "c3_remark": (3, 1, ["z2 - I*z1*zb1", "z3 - I*z1**2*zb1**2"]),
    "c4_prop1042": (4, 1, ["z2 - I*z1*zb1", "z3 - I*z1**3*zb1 - I*z1*zb1**3", "z4 - I*z1**3*zb1**3"]),
    "leviflat": (2, 1, ["z2"]),
}


def graph_ranks():
    """chi = rank of d/dt of the zeta-coefficients of Q; transversality ranks of the Segre frames."""
    out = {}
    for name, (n, m, Qs) in GRAPHS.items():
        z, zb = complex_syms(n)
        loc = {**{str(v): v for v in z + zb}, "I": sp.I}
        Q = [sp.sympify(q, locals=loc) for q in Qs]
        rows = []
        for q in Q:
            p = sp.Poly(sp.expand(q), *zb[:m])
            for _, c in p.terms():
                rows.append([sp.diff(c, v) for v in z])
        chi = sp.Matrix(rows).rank()
        # Segre frames: rows e_l + d/dw_l Qbar(w, zeta_j, Q(zeta_j, t)), j = 1..d+1
        d = n - m
        t = sp.symbols("t1:%d" % (n + 1))
        w = sp.symbols("w1:%d" % (m + 1))
        frames = []
        for j in range(d + 1):
            s = sp.symbols("s%d_1:%d" % (j + 1, m + 1))
            qimg = [q.subs({**{z[i]: t[i] for i in range(n)}, **{zb[i]: s[i] for i in range(m)}},
                           simultaneous=True) for q in Q]
            # Qbar(w, zeta, xi): conjugate coefficients, swap roles of z and zb
            Qbar = [sp.conjugate(q).subs({sp.conjugate(v): v for v in z + zb}) for q in Q]
            Qbar = [qb.subs({**{zb[i]: w[i] for i in range(m)},
                             **{z[i]: s[i] for i in range(m)},
                             **{z[m + l]: qimg[l] for l in range(d)}}, simultaneous=True) for qb in Qbar]
            for l in range(m):
                row = [1 if c == l else 0 for c in range(m)] + [sp.diff(qb, w[l]) for qb in Qbar]
                frames.append([sp.expand(e.subs({w[i]: t[i] for i in range(m)})) if hasattr(e, "subs") else e
                               for e in row])
        F = sp.Matrix(frames)
        rank_in = F.rank(simplify=True)
        rank_at = F.subs({v: 0 for v in t}).rank(simplify=True)
        out[name] = {"n": n, "m": m, "chi": chi, "kappa": n - chi,
                     "segre_rank": rank_in, "segre_rank_at_0": rank_at}
    return out


def whitney_bracket():
    x1, x2, x3 = sp.symbols("x1 x2 x3", real=True)
    z1, z2, z3, zb1, zb2, zb3 = sp.symbols("z1 z2 z3 zb1 zb2 zb3")
    # L2 = conj of Lbar2; in coordinates (z, zb) the fields are dicts of coefficients
    X1 = {zb1: (z1 + zb1) / 2, zb3: -(z3 + zb3)}
    X2 = {zb2: (z1 + zb1) ** 2 / 4, zb3: z2 + zb2}
    swap = {z1: zb1, zb1: z1, z2: zb2, zb2: z2, z3: zb3, zb3: z3}

    def conj(X):
        return {swap[k]: v.subs(swap, simultaneous=True) for k, v in X.items()}

    def bracket(X, Y):
        keys = [z1, z2, z3, zb1, zb2, zb3]
        out = {}
        for k in keys:
            c = sum(X.get(v, 0) * sp.diff(Y.get(k, 0), v) - Y.get(v, 0) * sp.diff(X.get(k, 0), v) for v in keys)
            c = sp.expand(c)
            if c != 0:
                out[str(k)] = str(c).replace("**", "^")
        return out

    return {"Lbar1": {str(k): str(sp.expand(v)).replace("**", "^") for k, v in X1.items()},
            "Lbar2": {str(k): str(sp.expand(v)).replace("**", "^") for k, v in X2.items()},
            "L2_Lbar2": bracket(conj(X2), X2),
            "Lbar1_Lbar2": bracket(X1, X2)}


def main():
    data = {"products": products(), "groebner": groebner_bases(), "matrices": matrices(),
            "series": series(), "graphs": graph_ranks(), "whitney_fields": whitney_bracket()}
    OUT.write_text(json.dumps(data, indent=1, sort_keys=True) + "\n")
    print("wrote", OUT)


if __name__ == "__main__":
    main()
