"""Command-line front end: ``sullivan COMMAND MODEL [options]``.

Exit status is 0 on success, 1 when the analysis ends in a mathematical
refusal (which is still reported, with its certificate), and 2 on input
errors.  ``MODEL`` is a path to a model file or the name of a bundled model
(see ``sullivan models``).
"""

from __future__ import annotations

import argparse
import random
import sys
from importlib import resources
from pathlib import Path
from typing import List, Optional, Sequence

from .errors import InconclusiveError, ParseError, SullivanError
from .parser import parse_model
from .report import Report, digest, emit, series_to_json

COMMANDS = (
    "cohomology", "hilbert", "presentation", "classify", "standard-form",
    "unravel", "loop-homology", "duality", "hochschild-predict", "verify",
)


class InputError(Exception):
    pass


def bundled_models() -> List[str]:
    folder = resources.files("sullivan") / "models"
    return sorted(p.name[:-4] for p in folder.iterdir() if p.name.endswith(".sul"))


def read_model_text(source: str) -> str:
    path = Path(source)
    if path.is_file():
        return path.read_text()
    folder = resources.files("sullivan") / "models"
    candidate = folder / f"{source}.sul"
    if candidate.is_file():
        return candidate.read_text()
    raise InputError(f"no model file or bundled model named {source!r}")


def _denominators(text: Optional[str]):
    if text is None or text == "auto":
        return None
    try:
        out = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"bad denominator list {text!r}") from None
    if any(d < 1 for d in out):
        raise InputError("denominator degrees must be positive")
    return out


def _fit_json(form) -> dict:
    return {**form.to_dict(), "text": str(form)}


def run(command: str, text: str, options: argparse.Namespace) -> Report:
    """Run one analysis on a model given as text."""
    from . import classify as cl
    from . import cohomology as co
    from . import series as se
    from . import unravel as un

    if command not in COMMANDS:
        raise InputError(f"unknown command {command!r}")
    params = {
        "max_codegree": options.max_codegree,
        "max_degree": options.max_degree,
        "denominator": options.denominator,
        "seed": options.seed,
    }
    if command == "verify" and not text:
        return _self_test(options, params)
    A = parse_model(text)
    res = {"algebra": A.name}
    warnings: List[str] = []
    status = 0
    N = options.max_codegree

    if command == "cohomology":
        table = co.cohomology(A, N, jobs=options.jobs)
        res["dims"] = table.dims
        res["ranks"] = table.ranks
        reps = []
        for n in range(N + 1):
            if table.dims[n]:
                reps.append({"codegree": n, "classes": [str(p) for p in table.representatives(n)]})
        res["representatives"] = reps

    elif command == "hilbert":
        table = co.cohomology(A, N, representatives=False, jobs=options.jobs)
        series = se.hilbert_series(table)
        res["series"] = series_to_json(series)
        if options.denominator is not None:
            try:
                form = _fit(A, series, options.denominator)
            except InconclusiveError as exc:
                warnings.append(f"closed form inconclusive: {exc}")
            else:
                if form:
                    res["fit"] = _fit_json(form)
                else:
                    res["fit_refusal"] = {"denominators": list(form.denominators),
                                          "margin": form.margin}

    elif command == "presentation":
        table = co.cohomology(A, N, jobs=options.jobs)
        P = co.presentation(A, table)
        res["generators"] = [[g.name, g.codegree] for g in P.ring_gens]
        res["representatives"] = [[k, str(v)] for k, v in P.representatives.items()]
        res["relations"] = [str(r) for r in P.relations]
        res["odd_squares"] = [str(r) for r in P.odd_squares]
        res["stable"] = P.stable
        res["window"] = P.window
        warnings.append("stability is a heuristic; a truncation cannot certify finite generation")

    elif command == "classify":
        report = cl.classify(A, N, options.max_degree)
        res.update(report.to_dict())
        warnings.extend(report.warnings)
        status = 0 if report.sci else 1

    elif command == "standard-form":
        result = cl.sci_standard_form(A)
        res["result"] = result.to_dict()
        if isinstance(result, cl.SciCertificate):
            res["replay_ok"] = result.verify(A, min(N, 16))
        else:
            res["refusal_ok"] = result.verify(A)
            status = 1

    elif command == "unravel":
        cert = un.nci_unravel(A)
        res["certificate"] = cert.to_dict()
        res["moves_text"] = [str(m) for m in cert.moves]
        res["verified"] = bool(un.verify_certificate(A, cert))
        if any(m.kind == un.ADJOIN and _is_exact(A, cert, i) for i, m in enumerate(cert.moves)):
            warnings.append("a generator was adjoined against a coboundary")

    elif command == "loop-homology":
        series = se.loop_homology_series(A, options.max_degree)
        res["series"] = series_to_json(series)
        res["form_text"] = str(se.loop_homology_form(A.gens))
        try:
            res["growth"] = se.loop_growth(A, options.max_degree).to_dict()
        except InconclusiveError as exc:
            warnings.append(str(exc))
            res["growth"] = None

    elif command == "duality":
        try:
            form, verdict = cl.duality(A, N, _denominators(options.denominator))
        except InconclusiveError as exc:
            warnings.append(f"closed form inconclusive: {exc}")
            form, verdict = None, None
        if form:
            res["fit"] = _fit_json(form)
            res["verdict"] = verdict.to_dict()
            res["delta_text"] = str(verdict.delta) if verdict.delta is not None else None
            if verdict.defect is None:
                status = 1
        else:
            res["fit"] = None
            status = 1

    elif command == "hochschild-predict":
        result = cl.sci_standard_form(A)
        if not isinstance(result, cl.SciCertificate):
            res["reason"] = f"not sci; {result.describe()}"
            res["prediction"] = None
            status = 1
        else:
            table = co.cohomology(A, N, representatives=False, jobs=options.jobs)
            series = se.hilbert_series(table)
            try:
                form = _fit(A, series, options.denominator or "auto")
            except InconclusiveError as exc:
                form = None
                warnings.append(f"closed form inconclusive: {exc}")
            if not form:
                res["reason"] = "no closed form for the Hilbert series in the window"
                res["prediction"] = None
                status = 1
            else:
                spheres = [g.codegree for g in result.fibre]
                pred = se.hochschild_series_prediction(form, spheres)
                res["spheres"] = spheres
                res["fit"] = _fit_json(form)
                res["prediction"] = _fit_json(pred)

    elif command == "verify":
        return _self_test(options, params, A)

    return Report(command, digest(text), params, res, warnings, status)


def _fit(A, series, denominator):
    from .series import rational_fit, rational_fit_auto

    dens = _denominators(denominator)
    if dens is None:
        evens = [g.codegree for g in A.even_generators]
        return rational_fit_auto(series, evens, len(evens))
    return rational_fit(series, dens)


def _is_exact(A, cert, i) -> bool:
    from .cohomology import Refusal, is_coboundary
    from .unravel import NciMove

    B = A
    for m in cert.moves[:i]:
        B = m.apply(B)
    f = B.poly(cert.moves[i].poly) if cert.moves[i].poly else None
    return f is not None and not isinstance(is_coboundary(B, f), Refusal)


def _self_test(options, params, A=None) -> Report:
    """Randomized consistency checks (seeded)."""
    from .cohomology import cohomology, dense_cohomology_dims
    from .random_models import random_model, random_poly
    from .unravel import nci_unravel

    rng = random.Random(options.seed)
    checks = []
    failures: List[str] = []
    cases = options.cases

    def check(name, fn):
        passed = 0
        for i in range(cases):
            try:
                ok = fn(i)
            except SullivanError as exc:
                ok = False
                failures.append(f"{name} case {i}: {exc}")
            else:
                if not ok:
                    failures.append(f"{name} case {i}")
            passed += bool(ok)
        checks.append({"name": name, "cases": cases, "passed": passed})

    def model(i):
        return A if A is not None and i == 0 else random_model(rng, 5, 7)

    def commutativity(i):
        M = model(i)
        a = random_poly(rng, M.gens, rng.randint(2, 7))
        b = random_poly(rng, M.gens, rng.randint(2, 7))
        if not (a.terms and b.terms):
            return True
        sign = (-1) ** (a.codegree * b.codegree)
        return a * b == (b * a).scale(sign)

    def leibniz(i):
        M = model(i)
        a = random_poly(rng, M.gens, rng.randint(2, 7))
        b = random_poly(rng, M.gens, rng.randint(2, 7))
        if not (a.terms and b.terms):
            return True
        d = M.extend_differential
        return d(a * b) == d(a) * b + (a * d(b)).scale((-1) ** a.codegree)

    def d_squared(i):
        M = model(i)
        return M.validate().d_squared_zero

    def oracle(i):
        M = model(i)
        bound = min(params["max_codegree"], 14)
        return cohomology(M, bound, representatives=False).dims == dense_cohomology_dims(M, bound)

    def replay(i):
        M = model(i)
        c1, c2 = nci_unravel(M), nci_unravel(M)
        return c1.to_dict() == c2.to_dict()

    check("graded-commutativity", commutativity)
    check("leibniz", leibniz)
    check("d-squared", d_squared)
    check("dense-oracle", oracle)
    check("replay-determinism", replay)
    res = {"checks": checks, "failures": failures, "ok": not failures}
    if A is not None:
        res["algebra"] = A.name
    text = A.to_text() if A is not None else ""
    return Report("verify", digest(text), params, res, [], 0 if not failures else 1)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sullivan", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS + ("models",))
    p.add_argument("model", nargs="?", help="model file or bundled model name")
    p.add_argument("--max-codegree", type=int, default=24)
    p.add_argument("--max-degree", type=int, default=24)
    p.add_argument("--denominator", default=None, help="comma-separated degrees or 'auto'")
    p.add_argument("--format", choices=("text", "machine"), default="text")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=20, help="cases per check for 'verify'")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for cohomology")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        options = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if options.command == "models":
        print("\n".join(bundled_models()))
        return 0
    if options.max_codegree < 0 or options.max_degree < 0:
        print("error: bounds must be non-negative", file=sys.stderr)
        return 2
    try:
        text = read_model_text(options.model) if options.model else ""
        if not text and options.command != "verify":
            raise InputError("a model file is required")
        report = run(options.command, text, options)
    except (InputError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(emit(report, options.format))
    return report.status


if __name__ == "__main__":
    sys.exit(main())
