"""Report builders behind the command-line front end.

Every function returns a plain dict of JSON-ready values.  Two keys steer
the exit status: ``negative`` (a check came out false) and ``capped`` (a
bound or truncation kept the answer from being decided).
"""

from __future__ import annotations

import hashlib
import json
import random

from .crfields import (cr_fields_both, kappa, lie_saturation, straighten_linear,
                       tangent_hol_fields)
from .flows import FlowConfig, orbit_dim_numeric
from .formats import manifold_to_dict, series_to_dict
from .manifold import GraphManifold, ImplicitManifold, complexified
from .segre import (double_reflection_sample, first_reflection, reciprocity_check,
                    sample_segre, segre_polys, segre_transversal)
from .series import SeriesMap
from .transcendence import check_maps_into, maps_into_residuals, perturbation_builder, trdeg_estimate

DEFAULT_SEED = 0xC0FFEE


def canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def digest(*objs) -> str:
    return hashlib.sha256(canonical(list(objs)).encode()).hexdigest()[:16]


def _pt(p) -> list[str]:
    return [str(x) for x in p]


# ---------------------------------------------------------------- manifold reports

def analyze(M, seed: int = DEFAULT_SEED, degree: int = 3) -> dict:
    p = M.base_point
    out: dict = {"name": M.name, "n": M.n, "form": M.form}
    out["codimension"] = M.codim
    out["cr_dimension"] = M.n - M.codim
    if p is None:
        out["base_point"] = None
        out["note"] = "no base point given; pointwise checks skipped"
    else:
        out["base_point"] = _pt(p)
        out["regular"] = M.regular_at(p)
        out["cr_rank_at_p"] = M.cr_rank_at(p)
        gen = M.cr_generic_at(p, seed)
        out["cr_generic"] = gen
        if out["regular"] and gen.get("cr_generic"):
            lie = lie_saturation(M, p, seed=seed)
            out["minimality"] = lie.as_dict()
            out["minimal"] = {"minimal": True, "not_minimal": False}.get(lie.verdict)
            if lie.verdict == "unknown":
                out["capped"] = True
    if isinstance(M, GraphManifold):
        out["kappa"] = kappa(M, seed).as_dict()
    hol = tangent_hol_fields(M, degree, seed)
    out["holomorphic_fields"] = hol.as_dict()
    out["negative"] = out.get("minimal") is False
    return out


def segre_report(M, point=None, reciprocity_samples: int = 0, seed: int = DEFAULT_SEED) -> dict:
    q = point if point is not None else M.base_point
    out: dict = {"name": M.name}
    if q is not None:
        out["point"] = _pt(q)
        out["ideal"] = [str(g) for g in segre_polys(M, q)]
        try:
            out["sample"] = _pt(sample_segre(M, q, random.Random(seed)))
        except Exception as e:          # sampling is best effort here
            out["sample"] = None
            out["sample_error"] = str(e)
    if reciprocity_samples:
        rec = reciprocity_check(M, reciprocity_samples, seed)
        out["reciprocity"] = rec
        out["negative"] = not rec["holds"]
    return out


def transversal_report(M, seed: int = DEFAULT_SEED) -> dict:
    res = segre_transversal(M, seed=seed)
    res["name"] = M.name
    res["negative"] = res["verdict"] == "not_transversal"
    return res


def kappa_report(M, seed: int = DEFAULT_SEED) -> dict:
    if not isinstance(M, GraphManifold):
        raise ValueError("kappa needs a manifold in graph form")
    out = kappa(M, seed).as_dict()
    out["name"] = M.name
    out["capped"] = not out["exceptional_complete"] or not out["stable"]
    return out


def straighten_report(M, seed: int = DEFAULT_SEED) -> dict:
    if not isinstance(M, GraphManifold):
        raise ValueError("straighten needs a manifold in graph form")
    k = kappa(M, seed)
    out: dict = {"name": M.name, "kappa": k.kappa}
    if k.kappa == 0:
        out.update(product=False, note="kappa is 0: nothing to split off", negative=True)
        return out
    red = straighten_linear(M, seed)
    if red is None:
        out.update(product=None, note="no constant kernel direction; nonlinear straightening not attempted",
                   capped=True)
        return out
    out.update(product=True, delta_factor=len(red.straightened), directions=red.straightened,
               reduced=manifold_to_dict(red))
    return out


def orbit_report(M, seed: int = DEFAULT_SEED, numeric: bool = False, symbolic: bool = True,
                 cfg: FlowConfig | None = None, numeric_seeds: int = 3) -> dict:
    p = M.base_point
    M.require_on(p)
    out: dict = {"name": M.name, "point": _pt(p)}
    if symbolic:
        lie = lie_saturation(M, p, seed=seed)
        out["lie_saturation"] = lie.as_dict()
        out["capped"] = lie.verdict == "unknown"
        out["negative"] = lie.verdict == "not_minimal"
    if numeric:
        fields = cr_fields_both(M, seed=seed)
        runs = [orbit_dim_numeric(fields, complexified(p), cfg or FlowConfig(), seed + s)
                for s in range(numeric_seeds)]
        dims = [r["dim"] for r in runs]
        out["orbit_numeric"] = {"dims": dims, "dim": max(dims), "svd_tol": runs[0]["svd_tol"],
                                "delta": runs[0]["delta"], "certified": False}
    return out


def reflect_report(Mp, points: list, seed: int = DEFAULT_SEED, f: SeriesMap | None = None,
                   source=None, z=None, w=None) -> dict:
    refl = first_reflection(Mp, points, seed)
    out: dict = {"name": Mp.name, "sources": [_pt(q) for q in points],
                 "first_reflection": {"dimension": refl.dimension,
                                      "generators": [str(g) for g in refl.ideal.gens],
                                      "sample": None if refl.sample is None else _pt(refl.sample),
                                      "flag": "SAMPLED"}}
    out["capped"] = refl.dim is None
    if f is not None:
        dr = double_reflection_sample(f, source, Mp, z, w, seed=seed)
        out["double_reflection"] = dr
        out["capped"] = out["capped"] or not dr["stable"]
    return out


# ---------------------------------------------------------------- series reports

def trdeg_report(f: SeriesMap, bounds=(4, 4), order: int | None = None) -> dict:
    res = trdeg_estimate(f, tuple(bounds), order)
    res["capped"] = bool(res["undetermined"])
    return res


def maps_into_report(f: SeriesMap, M, Mp, order: int | None = None) -> dict:
    N = f.order if order is None else order
    ok = check_maps_into(f, M, Mp, N)
    out = {"maps_into": ok, "order": N, "exact": f.all_exact, "source": M.name, "target": Mp.name}
    if not ok:
        res = maps_into_residuals(f, M, Mp, N)
        out["residuals"] = [str(r) for r in res]
    out["negative"] = not ok
    return out


def perturb_report(f: SeriesMap, a: int, kappa_target: int, slots=None) -> dict:
    g = perturbation_builder(f, a, kappa_target, slots)
    return {"a": a, "kappa": kappa_target, "slots": list(range(kappa_target)) if slots is None else list(slots),
            "series": series_to_dict(g)}
