"""JSON input/output for manifold and series-map specs."""

from __future__ import annotations

from fractions import Fraction
import json
from pathlib import Path

from .gaussrat import GaussRat
from .manifold import GraphManifold, ImplicitManifold
from .poly import Poly, PolyParseError, Ring
from .series import SeriesMap, generator, input_ring


class SpecError(ValueError):
    """Malformed input; ``line``/``column`` are 1-based when known."""

    def __init__(self, message: str, source: str = "", line: int | None = None, column: int | None = None):
        self.message = message
        self.source = source
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = ":%d:%d" % (line, column or 1)
        super().__init__("%s%s: %s" % (source or "<input>", where, message))

    def as_dict(self) -> dict:
        return {"error": self.message, "source": self.source, "line": self.line, "column": self.column}


def _locate(text: str, needle: str) -> tuple[int | None, int | None]:
    pos = text.find(needle)
    if pos < 0:
        return None, None
    line = text.count("\n", 0, pos) + 1
    return line, pos - (text.rfind("\n", 0, pos) + 1) + 1


def _load(text: str, source: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecError(e.msg, source, e.lineno, e.colno) from None
    if not isinstance(data, dict):
        raise SpecError("top-level value must be an object", source, 1, 1)
    return data


def _rational(x, source, what) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise SpecError("%s: use integers or 'p/q' strings, not %r" % (what, x), source)
    try:
        return Fraction(x)
    except (TypeError, ValueError, ZeroDivisionError):
        raise SpecError("%s: not a rational number: %r" % (what, x), source) from None


def _gauss(pair, source, what) -> GaussRat:
    if isinstance(pair, list) and len(pair) == 2:
        return GaussRat(_rational(pair[0], source, what), _rational(pair[1], source, what))
    return GaussRat(_rational(pair, source, what))


def _gauss_out(x: GaussRat) -> list:
    return [_num_out(x.re), _num_out(x.im)]


def _num_out(q: Fraction):
    return q.numerator if q.denominator == 1 else "%d/%d" % (q.numerator, q.denominator)


# ---------------------------------------------------------------- manifolds

def manifold_from_dict(data: dict, source: str = "", text: str = ""):
    for key in ("n", "form", "equations"):
        if key not in data:
            raise SpecError("missing key %r" % key, source)
    n = data["n"]
    if not isinstance(n, int) or n < 1:
        raise SpecError("n must be a positive integer", source, *_locate(text, '"n"'))
    form = data["form"]
    eqs = data["equations"]
    if not isinstance(eqs, list) or not eqs or not all(isinstance(e, str) for e in eqs):
        raise SpecError("equations must be a non-empty list of strings", source, *_locate(text, '"equations"'))
    base = data.get("base_point")
    if base is not None:
        if len(base) != n:
            raise SpecError("base_point must have n entries", source, *_locate(text, '"base_point"'))
        base = [_gauss(b, source, "base_point") for b in base]
    name = data.get("name", "")
    try:
        if form == "graph":
            m = data.get("m")
            if m is None:
                m = n - len(eqs)
            if "d" in data and data["d"] != n - m:
                raise SpecError("d must equal n - m", source, *_locate(text, '"d"'))
            M = GraphManifold(n, m, eqs, name=name, base_point=base)
        elif form == "implicit":
            M = ImplicitManifold(n, eqs, name=name, base_point=base)
        else:
            raise SpecError("form must be 'implicit' or 'graph'", source, *_locate(text, '"form"'))
    except PolyParseError as e:
        line, col = _locate(text, e.text) if text else (None, None)
        if line is not None:
            col += e.column - 1
        raise SpecError("%s in %r" % (e.message, e.text), source, line, col) from None
    except SpecError:
        raise
    except ValueError as e:
        raise SpecError(str(e), source) from None
    return M


def load_manifold(path: str | Path):
    text = Path(path).read_text()
    return manifold_from_dict(_load(text, str(path)), str(path), text)


def parse_manifold(text: str, source: str = "<string>"):
    return manifold_from_dict(_load(text, source), source, text)


def manifold_to_dict(M) -> dict:
    out = {"name": M.name, "n": M.n}
    if isinstance(M, GraphManifold):
        out.update(form="graph", m=M.m, d=M.d, equations=[str(q) for q in M.Q])
    else:
        out.update(form="implicit", equations=[str(g) for g in M.gens])
    if M.base_point is not None:
        out["base_point"] = [_gauss_out(x) for x in M.base_point]
    return out


# ---------------------------------------------------------------- series maps

def series_from_dict(data: dict, source: str = "", text: str = "") -> SeriesMap:
    for key in ("n_in", "order", "components"):
        if key not in data:
            raise SpecError("missing key %r" % key, source)
    n_in, order = data["n_in"], data["order"]
    if not isinstance(n_in, int) or n_in < 1 or not isinstance(order, int) or order < 0:
        raise SpecError("n_in and order must be non-negative integers", source)
    R = input_ring(n_in)
    comps, exact = [], []
    for j, c in enumerate(data["components"]):
        if isinstance(c, str):
            try:
                p, ex = generator(c, n_in, order)
            except PolyParseError as e:
                line, col = _locate(text, e.text) if text else (None, None)
                raise SpecError("component %d: %s" % (j + 1, e.message), source, line,
                                None if col is None else col + e.column - 1) from None
            except ValueError as e:
                raise SpecError("component %d: %s" % (j + 1, e), source, *_locate(text, c)) from None
            comps.append(p)
            exact.append(ex and p.total_degree() <= order)
            continue
        terms = {}
        for term in c:
            if not (isinstance(term, list) and len(term) == 2 and len(term[0]) == n_in):
                raise SpecError("component %d: each term is [exponent-vector, [re, im]]" % (j + 1), source)
            e = tuple(int(x) for x in term[0])
            if min(e) < 0:
                raise SpecError("component %d: negative exponent" % (j + 1), source)
            v = _gauss(term[1], source, "component %d" % (j + 1))
            terms[e] = terms.get(e, GaussRat(0)) + v
        comps.append(Poly(R, terms))
        exact.append(None)
    if "n_out" in data and data["n_out"] != len(comps):
        raise SpecError("n_out does not match the number of components", source, *_locate(text, '"n_out"'))
    flags = data.get("exact")
    if flags is not None:
        if len(flags) != len(comps):
            raise SpecError("exact flags must match the components", source)
        exact = [bool(f) for f in flags]
    else:
        exact = [c.total_degree() <= order if e is None else e for c, e in zip(comps, exact)]
    return SeriesMap(n_in, order, comps, exact)


def load_series(path: str | Path) -> SeriesMap:
    text = Path(path).read_text()
    return series_from_dict(_load(text, str(path)), str(path), text)


def parse_series(text: str, source: str = "<string>") -> SeriesMap:
    return series_from_dict(_load(text, source), source, text)


def series_to_dict(f: SeriesMap) -> dict:
    comps = [[[list(e), _gauss_out(v)] for e, v in sorted(c.terms.items())] for c in f.components]
    return {"n_in": f.n_in, "n_out": f.n_out, "order": f.order, "components": comps, "exact": list(f.exact)}


def parse_point(text: str, n: int) -> list[GaussRat]:
    """``"2,2,1"`` or a JSON list of numbers / [re, im] pairs."""
    text = text.strip()
    if text.startswith("["):
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as e:
            raise SpecError(e.msg, "--point", e.lineno, e.colno) from None
        pts = [_gauss(x, "--point", "point") for x in raw]
    else:
        R = Ring.holomorphic(["_"])
        pts = []
        offset = 0
        for piece in text.split(","):
            try:
                c = R.parse(piece)
            except PolyParseError as e:
                raise SpecError(e.message, "--point", 1, offset + e.column) from None
            offset += len(piece) + 1
            if not c.is_constant():
                raise SpecError("point entries must be constants", "--point")
            pts.append(c.constant_term())
    if len(pts) != n:
        raise SpecError("point needs %d coordinates, got %d" % (n, len(pts)), "--point")
    return pts
