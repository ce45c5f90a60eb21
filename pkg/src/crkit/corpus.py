"""The built-in example manifolds and their recorded verdicts."""

from __future__ import annotations

from importlib import resources
import json
from pathlib import Path

from .formats import manifold_from_dict, load_manifold
from .reports import DEFAULT_SEED, analyze, transversal_report

NAMES = ("heisenberg2", "productC3", "whitney_tube", "c3_remark", "c4_prop1042", "leviflat")


def _data(name: str) -> str:
    return resources.files("crkit").joinpath("data").joinpath(name).read_text()


def load(name: str):
    if name not in NAMES:
        raise KeyError("unknown corpus manifold %r" % name)
    fname = name + ".json"
    return manifold_from_dict(json.loads(_data(fname)), fname, _data(fname))


def resolve(arg: str):
    """A corpus name (with or without ``.json``) or a path to a manifold file."""
    stem = arg[:-5] if arg.endswith(".json") else arg
    if not Path(arg).exists() and stem in NAMES:
        return load(stem)
    return load_manifold(arg)


def expected() -> dict:
    return json.loads(_data("expected.json"))


def summarize(report: dict, trans: dict) -> dict:
    k = report.get("kappa")
    return {"codimension": report["codimension"], "minimal": report.get("minimal"),
            "transversal": trans["verdict"],
            "kappa": k["kappa"] if k else None, "chi": k["chi"] if k else None,
            "holomorphically_nondegenerate": not report["holomorphic_fields"]["dimension"]}


def run(seed: int = DEFAULT_SEED, names=NAMES) -> dict:
    exp = expected()
    results = {}
    ok = True
    for name in names:
        M = load(name)
        rep = analyze(M, seed)
        trans = transversal_report(M, seed)
        got = summarize(rep, trans)
        match = got == exp[name]
        ok = ok and match
        results[name] = {"summary": got, "expected": exp[name], "match": match,
                         "analyze": rep, "transversal": trans}
    return {"examples": results, "all_match": ok}
