"""Command line front end.

Every subcommand reads a JSON problem file (see :mod:`liext.problem`) and
prints a report.  Exit status: 0 when the checked property holds, 1 when it
fails, 2 on input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .cochain import Cochain, bracket, is_codifferential, jacobi_check
from .cohomology import (
    IntegrityError,
    NeedsInstantiation,
    NotInSpace,
    Slice,
    cohomology_of,
    double_cohomology,
    hom_m,
    hom_w,
    restricted_cohomology,
    triple_cohomology,
)
from .deformation import (
    classify_deformations,
    classify_extension_moduli,
    classify_infinitesimal_extensions,
    classify_rep_deformations_scenario1,
    classify_rep_deformations_scenario2,
    lambda_class_preserved,
    same_tau_orbit,
    tau_orbit_image,
)
from .extension import (
    DiagonalAutomorphism,
    apply_beta,
    conjugate_cleared,
    verify_extension,
)
from .gspace import InputError
from .problem import ProblemError, ProblemFile, _parse_cochain, _scalar, parse_assignment
from .scalar import ConfigurationError, EvaluationError, ParseError, Poly, as_fraction, scalar_is_constant

__all__ = ["main", "run", "Result", "cochain_to_json", "COMMANDS"]

USAGE_ERROR = 2


@dataclass
class Result:
    """``data`` is the JSON-able report, ``raw`` keeps the objects for comparisons."""

    holds: bool
    data: dict
    raw: dict = field(default_factory=dict)
    lines: list = field(default_factory=list)


def cochain_to_json(c: Cochain) -> dict:
    terms = [{"in": [i + 1 for i in mono], "out": t + 1, "coeff": str(v)} for (mono, t), v in c.sorted_items()]
    return {"text": str(c), "terms": terms}


def _bool(x) -> str:
    return "true" if x else "false"


def _cochain_arg(pf: ProblemFile, name: str | None) -> Cochain:
    if name:
        return pf.cochain(name)
    if "d" in pf.cochains:
        return pf.cochain("d")
    return pf.extension().d


def _parse_slice(text: str, parity: str) -> Slice:
    blocks = []
    for part in text.split("+"):
        part = part.strip()
        try:
            nums = [int(x) for x in part.split(",")]
        except ValueError:
            raise InputError(f"--slice: cannot read {part!r}; use k,l or n") from None
        if len(nums) == 2:
            blocks.append(hom_m(*nums))
        elif len(nums) == 1:
            blocks.append(hom_w(nums[0]))
        else:
            raise InputError(f"--slice: cannot read {part!r}; use k,l or n")
    par = {"odd": 1, "even": 0, "any": None}.get(parity)
    if parity not in ("odd", "even", "any"):
        raise InputError("--parity must be odd, even or any")
    return Slice.of(*blocks, parity=par)


def _space_json(space):
    h = space.summary() if hasattr(space, "summary") else {}
    if h:
        h = dict(h)
        h["representatives"] = [cochain_to_json(r) for r in space.representatives]
    return h


# -- handlers --------------------------------------------------------------


def cmd_check(pf, opts) -> Result:
    d = _cochain_arg(pf, opts.get("cochain"))
    chk = is_codifferential(d)
    data = {
        "codifferential": chk.ok,
        "obstruction": cochain_to_json(chk.obstruction),
        "obstruction_coefficients": [str(c) for c in chk.coefficients()],
    }
    raw = {"codifferential": chk.ok, "obstruction": chk.obstruction}
    lines = [f"codifferential: {_bool(chk.ok)}"]
    if not chk.ok:
        lines.append(f"[d,d] = {chk.obstruction}")
        lines.append("obstruction coefficients: " + ", ".join(data["obstruction_coefficients"]))
    elif not d.variables():
        ok = jacobi_check(d)
        data["jacobi"] = raw["jacobi"] = ok
        lines.append(f"jacobi: {_bool(ok)}")
    return Result(chk.ok, data, raw, lines)


def cmd_bracket(pf, opts) -> Result:
    a, b = pf.cochain(opts["a"]), pf.cochain(opts["b"])
    r = bracket(a, b)
    return Result(True, {"bracket": cochain_to_json(r)}, {"bracket": r}, [f"[{opts['a']},{opts['b']}] = {r}"])


def cmd_conjugate(pf, opts) -> Result:
    d = _cochain_arg(pf, opts.get("cochain"))
    det, cleared = conjugate_cleared(d, pf.matrix(opts["matrix"]))
    if scalar_is_constant(det):
        r = cleared / as_fraction(det)
        return Result(True, {"pullback": cochain_to_json(r)}, {"pullback": r}, [f"pullback: {r}"])
    data = {"determinant": str(det), "cleared": cochain_to_json(cleared)}
    lines = [f"determinant: {det}", f"det * pullback: {cleared}"]
    return Result(True, data, {"determinant": det, "cleared": cleared}, lines)


def cmd_verify(pf, opts) -> Result:
    e = pf.extension()
    rep = verify_extension(e)
    conds = {"module": rep.cond_module, "compat": rep.cond_compat, "cocycle": rep.cond_cocycle}
    data = {"extension": rep.ok, **{k: cochain_to_json(v) for k, v in conds.items()}}
    data["constraints"] = [str(c) for c in rep.constraints()]
    lines = [f"extension: {_bool(rep.ok)}"] + [f"{k}: {v}" for k, v in conds.items()]
    if not rep.ok:
        lines.append("constraints: " + ", ".join(data["constraints"]))
    return Result(rep.ok, data, {"extension": rep.ok, **conds}, lines)


def cmd_equiv(pf, opts) -> Result:
    e = pf.extension()
    e2 = apply_beta(e, pf.cochain(opts["beta"]))
    semi = e2.psi.is_zero()
    data = {"lam": cochain_to_json(e2.lam), "psi": cochain_to_json(e2.psi), "semidirect": semi}
    lines = [f"lam': {e2.lam}", f"psi': {e2.psi}", f"semidirect: {_bool(semi)}"]
    return Result(True, data, {"lam": e2.lam, "psi": e2.psi, "semidirect": semi}, lines)


def cmd_cohomology(pf, opts) -> Result:
    e = pf.extension()
    s = _parse_slice(opts.get("slice") or "0,2", opts.get("parity") or "odd")
    op = opts.get("op") or "mu"
    min_m = int(opts.get("min_m") or 0)
    nu = e.delta + e.lam
    if op == "mu":
        h = cohomology_of(e.mu, s, min_m=min_m)
    elif op == "dl":
        h = cohomology_of(nu, s, min_m=min_m)
    elif op == "d":
        h = cohomology_of(e.d, s, min_m=min_m)
    elif op == "restricted":
        h = restricted_cohomology(e.mu, nu, s, min_m=min_m)
    elif op == "double":
        h = double_cohomology(e.mu, nu, s, min_m=min_m)
    elif op == "triple":
        h = triple_cohomology(e.mu, nu, e.psi, s, min_m=min_m)
    else:
        raise InputError(f"unknown --op {op!r}")
    data = {"op": op, "slice": str(s), "dim": h.dim, "space": _space_json(h)}
    raw = {"dim": h.dim}
    lines = [f"H[{op}] on {s}: dim {h.dim}"] + [f"  rep: {r}" for r in h.representatives]
    holds = True
    classes = {}
    for name in opts.get("classes") or ():
        c = pf.cochain(name)
        try:
            coords = h.coordinates(c)
            info = {"cocycle": True, "zero": not any(coords), "coordinates": [str(x) for x in coords]}
            lines.append(f"class of {name}: {'zero' if info['zero'] else 'nonzero'} {info['coordinates']}")
        except NotInSpace:
            info = {"cocycle": False}
            holds = False
            lines.append(f"class of {name}: not a cocycle")
        classes[name] = info
        raw[f"class:{name}"] = info
    if classes:
        data["classes"] = classes
    return Result(holds, data, raw, lines)


def _load_witness(pf, path):
    try:
        w = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ProblemError(f"{path}: cannot read ({exc.strerror})") from None
    except json.JSONDecodeError as exc:
        raise ProblemError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON ({exc.msg})") from None
    where = f"{path}"
    for k in ("m_block", "w_block"):
        if k not in w:
            raise ProblemError(f"{where}: witness needs {k}")
    blocks = {
        k: [[_scalar(x, pf.params, f"{where}: {k}") for x in row] for row in w[k]] for k in ("m_block", "w_block")
    }
    g = DiagonalAutomorphism(blocks["m_block"], blocks["w_block"])
    extra = {}
    for k in ("beta", "tau", "tau2"):
        if k in w:
            extra[k] = _parse_cochain(pf.space, pf.params, w[k], pf.cochains, f"{where}: {k}")
    return g, extra


def cmd_classify(pf, opts) -> Result:
    theorem = str(opts.get("theorem"))
    e = pf.extension()
    if theorem == "3":
        rep = classify_infinitesimal_extensions(e.delta, e.mu)
    elif theorem == "5":
        rep = classify_extension_moduli(e.delta, e.mu, e.lam)
    elif theorem == "8":
        rep = classify_deformations(e)
    elif theorem == "9":
        rep = classify_rep_deformations_scenario1(e)
    elif theorem == "10":
        rep = classify_rep_deformations_scenario2(e)
    else:
        raise InputError("--theorem must be one of 3, 5, 8, 9, 10")
    data = rep.to_dict()
    data["spaces"] = {n: _space_json(s) for n, s in rep.spaces.items()}
    data["witnesses"] = {n: cochain_to_json(w) for n, w in rep.witnesses.items()}
    data["obstructions"] = {n: cochain_to_json(o) for n, o in rep.obstructions.items()}
    raw = {"verdict": rep.verdict, "parameters": rep.parameters, "dims": rep.dims}
    lines = [f"{rep.theorem}: {_bool(rep.verdict)}"]
    for n, s in rep.spaces.items():
        lines.append(f"  {n}: dim {s.dim}")
        lines.extend(f"    rep: {r}" for r in s.representatives)
    for n, w in rep.witnesses.items():
        lines.append(f"  witness {n}: {w}")
    for n, o in rep.obstructions.items():
        lines.append(f"  obstruction {n}: {o}")
    lines.extend(f"  note: {x}" for x in rep.notes)
    holds = rep.verdict
    if opts.get("witness"):
        g, extra = _load_witness(pf, opts["witness"])
        orbit = {"lambda_class_preserved": lambda_class_preserved(e, g)}
        lines.append(f"  lambda class preserved: {_bool(orbit['lambda_class_preserved'])}")
        if "tau" in extra:
            img = tau_orbit_image(e, g, extra["tau"], extra.get("beta"))
            orbit["tau_image"] = cochain_to_json(img)
            raw["tau_image"] = img
            lines.append(f"  tau image: {img}")
            if "tau2" in extra:
                same = same_tau_orbit(e, g, extra["tau"], extra["tau2"], extra.get("beta"))
                orbit["same_orbit"] = same
                holds = holds and same
                lines.append(f"  same orbit: {_bool(same)}")
        data["orbit"] = orbit
        raw.update({k: v for k, v in orbit.items() if not isinstance(v, dict)})
    return Result(holds, data, raw, lines)


def cmd_deform(pf, opts) -> Result:
    rep = classify_deformations(pf.extension())
    data = {"parameters": rep.parameters, "dims": rep.dims}
    data["spaces"] = {n: _space_json(s) for n, s in rep.spaces.items()}
    data["witnesses"] = {n: cochain_to_json(w) for n, w in rep.witnesses.items()}
    lines = [f"deformation parameters: {rep.parameters}"]
    for n, s in rep.spaces.items():
        lines.append(f"  {n}: dim {s.dim}")
        lines.extend(f"    rep: {r}" for r in s.representatives)
    for n, w in rep.witnesses.items():
        lines.append(f"  witness {n}: {w}")
    return Result(rep.verdict, data, {"parameters": rep.parameters, "dims": rep.dims}, lines)


COMMANDS = {
    "check": cmd_check,
    "bracket": cmd_bracket,
    "conjugate": cmd_conjugate,
    "verify-ext": cmd_verify,
    "equiv": cmd_equiv,
    "cohomology": cmd_cohomology,
    "classify": cmd_classify,
    "deform": cmd_deform,
}

INPUT_ERRORS = (InputError, ParseError, ConfigurationError, EvaluationError, NeedsInstantiation, NotInSpace)


def run(pf: ProblemFile, command: str, opts: dict, at: dict | None = None) -> Result:
    """Run one subcommand on a loaded problem, after substituting ``at``."""
    if command not in COMMANDS:
        raise InputError(f"unknown command {command!r}")
    if at:
        pf = pf.at(at)
    return COMMANDS[command](pf, opts)


# -- fixtures ----------------------------------------------------------------


def bundled_fixtures() -> Path:
    return Path(str(resources.files("liext") / "fixtures"))


def _matches(pf: ProblemFile, key, expected, result: Result, where):
    if key in result.raw:
        actual = result.raw[key]
    elif key in result.data:
        actual = result.data[key]
    else:
        return False, "<missing>"
    if isinstance(actual, Cochain):
        want = _parse_cochain(pf.space, pf.params, expected, pf.cochains, where)
        return actual == want, str(actual)
    if isinstance(actual, (Poly, Fraction)):
        return actual == _scalar(expected, pf.params, where), str(actual)
    return actual == expected, json.dumps(actual, sort_keys=True, default=str)


def run_fixture(path: Path) -> list:
    """[(label, ok, detail)] for every check of one fixture file."""
    pf = ProblemFile.load(path)
    out = []
    for i, chk in enumerate(pf.checks):
        label = f"{pf.name}[{i}] {chk.get('command')}"
        if chk.get("label"):
            label += f" ({chk['label']})"
        try:
            at = parse_assignment(chk.get("at", {}))
            inst = pf.at(at) if at else pf
            res = run(pf, chk["command"], dict(chk.get("args", {})), at)
            bad = []
            for key, expected in chk.get("expect", {}).items():
                ok, actual = _matches(inst, key, expected, res, f"{pf.source}: checks[{i}].expect.{key}")
                if not ok:
                    bad.append(f"{key}: expected {json.dumps(expected, default=str)}, got {actual}")
            if "holds" in chk and res.holds != chk["holds"]:
                bad.append(f"holds: expected {chk['holds']}, got {res.holds}")
            out.append((label, not bad, "; ".join(bad) or "ok"))
        except INPUT_ERRORS as exc:
            want = chk.get("error")
            if want and want in str(exc):
                out.append((label, True, "ok (expected error)"))
            else:
                out.append((label, False, f"error: {exc}"))
        except IntegrityError as exc:
            out.append((label, False, f"integrity error: {exc}"))
    return out


def cmd_fixtures(directory, out) -> int:
    d = Path(directory) if directory else bundled_fixtures()
    files = sorted(d.glob("*.json")) if d.is_dir() else []
    if not files:
        print(f"error: no fixture files in {d}", file=sys.stderr)
        return USAGE_ERROR
    failures = 0
    total = 0
    for f in files:
        try:
            rows = run_fixture(f)
        except INPUT_ERRORS as exc:
            print(f"{f.name}: LOAD ERROR {exc}", file=out)
            failures += 1
            continue
        for label, ok, detail in rows:
            total += 1
            failures += not ok
            print(f"{'PASS' if ok else 'FAIL'} {label}: {detail}", file=out)
    print(f"{total - failures}/{total} fixture checks passed", file=out)
    return 0 if failures == 0 else 1


# -- argument parsing ----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="liext", description="Extensions and deformations of graded Lie algebras.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="JSON problem file")
    common.add_argument("--at", action="append", default=[], metavar="P=V", help="instantiate a parameter")
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="is the cochain a codifferential")
    s.add_argument("--cochain", help="cochain name (default: d, or the assembled extension)")
    s = sub.add_parser("bracket", parents=[common], help="graded bracket of two named cochains")
    s.add_argument("a")
    s.add_argument("b")
    s = sub.add_parser("conjugate", parents=[common], help="pullback along a named matrix")
    s.add_argument("--matrix", required=True)
    s.add_argument("--cochain")
    sub.add_parser("verify-ext", parents=[common], help="check the extension conditions")
    s = sub.add_parser("equiv", parents=[common], help="apply a restricted equivalence")
    s.add_argument("--beta", required=True)
    s = sub.add_parser("cohomology", parents=[common], help="compute a cohomology space")
    s.add_argument("--op", choices=["mu", "dl", "d", "restricted", "double", "triple"], default="mu")
    s.add_argument("--slice", default="0,2", help="k,l for Hom(M^k W^l, M) or n for Hom(W^n, W); join with +")
    s.add_argument("--parity", default="odd", choices=["odd", "even", "any"])
    s.add_argument("--min-m", type=int, default=0, dest="min_m")
    s.add_argument("--class", action="append", dest="classes", default=[], metavar="NAME")
    s = sub.add_parser("classify", parents=[common], help="run a classification theorem")
    s.add_argument("--theorem", required=True, choices=["3", "5", "8", "9", "10"])
    s.add_argument("--witness", metavar="FILE", help="automorphism g (and beta, tau) for orbit checks")
    sub.add_parser("deform", parents=[common], help="count infinitesimal deformation parameters")
    s = sub.add_parser("fixtures", help="replay a fixture corpus")
    s.add_argument("dir", nargs="?", help="directory of fixture files (default: bundled corpus)")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and USAGE_ERROR
    if args.command == "fixtures":
        return cmd_fixtures(args.dir, sys.stdout)
    opts = {k: v for k, v in vars(args).items() if k not in ("command", "file", "at", "json")}
    try:
        pf = ProblemFile.load(args.file)
        res = run(pf, args.command, opts, parse_assignment(args.at))
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        if isinstance(exc, NeedsInstantiation):
            print("hint: instantiate parameters with --at name=value", file=sys.stderr)
        return USAGE_ERROR
    if args.json:
        report = {"command": args.command, "file": pf.name, "at": args.at, "holds": res.holds, "result": res.data}
        print(json.dumps(report, indent=2, default=str))
    else:
        print("\n".join(res.lines))
    return 0 if res.holds else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
