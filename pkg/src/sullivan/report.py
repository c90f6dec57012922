"""Reports produced by the command-line tool and their two serializations.

The machine format is JSON with sorted keys.  Every value in ``results`` is
JSON-native (rationals appear as ``[numerator, denominator]`` or as
``[exponent, numerator, denominator]`` triples inside series), so
``parse_report(emit(r, "machine")) == r`` holds exactly.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Dict, List

FORMAT_VERSION = 1


@dataclass
class Report:
    command: str
    input_digest: str
    parameters: Dict[str, Any]
    results: Dict[str, Any]
    warnings: List[str] = field(default_factory=list)
    status: int = 0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["format_version"] = FORMAT_VERSION
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        return cls(
            d["command"], d["input_digest"], d["parameters"], d["results"],
            list(d.get("warnings", [])), d.get("status", 0),
        )


def digest(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode("utf-8")).hexdigest()


def series_to_json(s) -> dict:
    return {"lo": s.lo, "hi": s.hi, "terms": s.to_triples()}


def series_from_json(d):
    from .series import LaurentSeries

    return LaurentSeries.from_triples(d["terms"], d["lo"], d["hi"])


def emit(report: Report, fmt: str = "text") -> str:
    if fmt == "machine":
        return json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = [f"command: {report.command}"]
    name = report.results.get("algebra")
    if name:
        lines.append(f"algebra: {name}")
    lines.append(f"input: {report.input_digest}")
    params = ", ".join(f"{k}={v}" for k, v in sorted(report.parameters.items()))
    lines.append(f"parameters: {params}")
    render = _TEXT.get(report.command, _render_generic)
    lines.extend(render(report.results))
    for w in report.warnings:
        lines.append(f"warning: {w}")
    return "\n".join(lines) + "\n"


def parse_report(text: str) -> Report:
    return Report.from_dict(json.loads(text))


# -- text renderers ---------------------------------------------------------------------


def _fmt_series(d) -> str:
    from .series import _fmt_terms
    from fractions import Fraction

    terms = {k: Fraction(n, q) for k, n, q in d["terms"]}
    return f"{_fmt_terms(terms)} + O(t^{d['hi'] + 1})"


def _render_generic(r: dict) -> List[str]:
    return [f"{k}: {v}" for k, v in sorted(r.items()) if k != "algebra"]


def _render_cohomology(r):
    out = ["dims: " + ",".join(str(d) for d in r["dims"])]
    for entry in r.get("representatives", []):
        out.append(f"H^{entry['codegree']}: " + "; ".join(entry["classes"]))
    return out


def _render_hilbert(r):
    out = ["series: " + _fmt_series(r["series"])]
    if r.get("fit"):
        out.append(f"closed form: {r['fit']['text']}")
    elif "fit_refusal" in r:
        out.append(f"no closed form with denominators {r['fit_refusal']['denominators']}")
    return out


def _render_presentation(r):
    gens = ", ".join(f"{g}({d})" for g, d in r["generators"])
    rels = ", ".join(r["relations"] + r["odd_squares"])
    out = [f"generators: {gens}", f"relations: {rels}"]
    for g, rep in r["representatives"]:
        out.append(f"  {g} = [{rep}]")
    out.append(f"stable: {'yes' if r['stable'] else 'no'} (window {r['window']})")
    return out


def _render_certificate(c) -> List[str]:
    if c["type"] == "sci-certificate":
        out = [
            "base: " + ", ".join(f"{g}({d})" for g, d in c["base"]),
            "fibre: " + ", ".join(f"{g}({d})" for g, d in c["fibre"]),
            f"codimension: {c['codimension']}",
        ]
        for s in c["steps"]:
            if s["kind"] == "strip-even" and s["witness"] not in (None, "0"):
                out.append(f"  {s['generator']} -> {s['generator']} + ({s['witness']})")
        return out
    return [
        f"obstruction at {c['generator']} (d{c['generator']}={c['differential']})",
        "  refusal functional: "
        + " + ".join(f"{n}/{q}*<{m}>" if q != 1 else f"{n}*<{m}>" for m, n, q in c["functional"]),
    ]


def _render_classify(r):
    out = []
    if r["sci"]:
        out.append(f"sci (codimension {r['codimension']}); gci; eci")
    else:
        ob = r["obstruction"]
        out.append(f"not sci; obstruction at {ob['generator']} (d{ob['generator']}={ob['differential']})")
    for key in ("regular", "pure", "even_cocycle_only", "noetherian", "elliptic_heuristic"):
        out.append(f"{key}: {'yes' if r[key] else 'no'}")
    out.append(f"zci: {'yes' if r['labels']['zci'] else 'no'}")
    out.append(f"growth degree: {r['growth_degree']}")
    if r["gorenstein_shift"] is not None:
        out.append(f"gorenstein shift: {r['gorenstein_shift']}")
    out.extend(f"reason: {x}" for x in r["reasons"])
    return out


def _render_standard_form(r):
    return _render_certificate(r["result"])


def _render_unravel(r):
    c = r["certificate"]
    out = [f"{i + 1}. {m}" for i, m in enumerate(r["moves_text"])]
    out.append(f"final codimension: {c['final_codimension']}")
    out.append(f"length <= {c['length']}")
    out.append(f"verified: {'yes' if r['verified'] else 'no'}")
    return out


def _render_loop(r):
    out = ["series: " + _fmt_series(r["series"])]
    if r.get("growth"):
        out.append(f"growth degree: {r['growth']['growth_degree']}")
    out.append(f"closed form: {r['form_text']}")
    return out


def _render_duality(r):
    out = []
    if r.get("fit"):
        out.append(f"closed form: {r['fit']['text']}")
    else:
        out.append("no closed form found")
        return out
    v = r["verdict"]
    if v["defect"] is None:
        out.append("no duality detected")
    else:
        out.append(f"defect {v['defect']}, r={v['r']}, a={v['a']}")
        if v["defect"] == 1:
            out.append(f"delta(t) = {r['delta_text']}")
            out.append(f"checked: {v['convention']}")
    out.extend(f"note: {n}" for n in v["notes"])
    return out


def _render_hochschild(r):
    if not r.get("prediction"):
        return [r.get("reason", "no prediction")]
    return [
        "spheres: " + ", ".join(str(n) for n in r["spheres"]),
        f"p_X(t) = {r['fit']['text']}",
        f"predicted series: {r['prediction']['text']}",
    ]


def _render_verify(r):
    out = [f"{c['name']}: {c['passed']}/{c['cases']} passed" for c in r["checks"]]
    out.append("all passed" if r["ok"] else "FAILURES")
    out.extend(f"failure: {f}" for f in r["failures"])
    return out


_TEXT: Dict[str, Callable[[dict], List[str]]] = {
    "cohomology": _render_cohomology,
    "hilbert": _render_hilbert,
    "presentation": _render_presentation,
    "classify": _render_classify,
    "standard-form": _render_standard_form,
    "unravel": _render_unravel,
    "loop-homology": _render_loop,
    "duality": _render_duality,
    "hochschild-predict": _render_hochschild,
    "verify": _render_verify,
}
