"""JSON problem files.

Layout (indices are 1-based, even basis vectors come first)::

    {
      "name": "ex455",
      "space": {"even": [], "odd": ["v1", "v2", "v3"], "module": [3]},
      "params": ["a", "b"],
      "cochains": {
        "delta": [{"in": [1, 2], "out": 1}],
        "lam": [{"in": [1, 3], "out": 3, "coeff": "a"}, {"in": [2, 3], "out": 3, "coeff": "b"}],
        "nu": {"sum": ["delta", "lam"]}
      },
      "matrices": {"g": [["r", "s", "0"], ["0", "1", "0"], ["0", "0", "t"]]},
      "instantiate": [{"b": "-1"}],
      "checks": [...]
    }

A cochain is either a term list, ``{"parity": "odd", "terms": [...]}`` or a
linear combination ``{"sum": [name, ...], "scale": [coeff, ...]}`` of
cochains defined earlier in the file.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path

from .cochain import Cochain, cochain
from .extension import ExtensionData, split
from .gspace import GradedSpace, InputError
from .scalar import ParseError, parse_scalar, scalar_subs

__all__ = ["ProblemFile", "ProblemError", "parse_assignment", "load_problem"]


class ProblemError(InputError):
    """Malformed or inconsistent problem file; the message names the location."""


def _err(where, msg):
    return ProblemError(f"{where}: {msg}")


def parse_assignment(items) -> dict:
    """``["b=-1", "a=1/2"]`` or a mapping -> {name: Fraction}."""
    out = {}
    if isinstance(items, dict):
        items = [f"{k}={v}" for k, v in items.items()]
    for item in items:
        if "=" not in str(item):
            raise ProblemError(f"--at expects name=value, got {item!r}")
        name, value = str(item).split("=", 1)
        try:
            out[name.strip()] = parse_scalar(value.strip())
        except ParseError as exc:
            raise ProblemError(f"value for {name.strip()}: {exc}") from None
    return out


@dataclass
class ProblemFile:
    name: str
    space: GradedSpace
    params: tuple
    cochains: dict
    matrices: dict = field(default_factory=dict)
    instantiate: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    description: str = ""
    source: str = "<memory>"

    # -- loading -------------------------------------------------------
    @classmethod
    def load(cls, path) -> ProblemFile:
        path = Path(path)
        try:
            text = path.read_text()
        except OSError as exc:
            raise ProblemError(f"{path}: cannot read ({exc.strerror})") from None
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ProblemError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON ({exc.msg})") from None
        return cls.from_dict(data, str(path))

    @classmethod
    def from_dict(cls, data: dict, source: str = "<memory>") -> ProblemFile:
        if not isinstance(data, dict):
            raise _err(source, "top level must be an object")
        space = _parse_space(data.get("space"), f"{source}: space")
        params = tuple(data.get("params", ()))
        for p in params:
            try:
                parse_scalar(p, params)
            except ParseError:
                raise _err(f"{source}: params", f"invalid parameter name {p!r}") from None
        cochains: dict = {}
        for name, spec in (data.get("cochains") or {}).items():
            cochains[name] = _parse_cochain(space, params, spec, cochains, f"{source}: cochains.{name}")
        matrices = {}
        for name, rows in (data.get("matrices") or {}).items():
            where = f"{source}: matrices.{name}"
            if not isinstance(rows, list) or len(rows) != space.dim:
                raise _err(where, f"need {space.dim} rows")
            parsed = []
            for i, row in enumerate(rows):
                if not isinstance(row, list) or len(row) != space.dim:
                    raise _err(f"{where}[{i}]", f"need {space.dim} entries")
                parsed.append([_scalar(x, params, f"{where}[{i}]") for x in row])
            matrices[name] = parsed
        inst = [parse_assignment(a) for a in data.get("instantiate", [])]
        for a in inst:
            unknown = set(a) - set(params)
            if unknown:
                raise _err(f"{source}: instantiate", f"unknown parameter(s) {sorted(unknown)}")
        return cls(
            name=data.get("name") or Path(source).stem,
            space=space,
            params=params,
            cochains=cochains,
            matrices=matrices,
            instantiate=inst,
            checks=list(data.get("checks", [])),
            description=data.get("description", ""),
            source=source,
        )

    # -- access ----------------------------------------------------------
    def cochain(self, name: str) -> Cochain:
        if name not in self.cochains:
            known = ", ".join(sorted(self.cochains)) or "none"
            raise ProblemError(f"{self.source}: no cochain named {name!r} (defined: {known})")
        return self.cochains[name]

    def get(self, name: str):
        return self.cochains.get(name)

    def matrix(self, name: str):
        if name not in self.matrices:
            raise ProblemError(f"{self.source}: no matrix named {name!r}")
        return self.matrices[name]

    def at(self, assignment: dict) -> ProblemFile:
        unknown = set(assignment) - set(self.params)
        if unknown:
            raise ProblemError(f"unknown parameter(s) {', '.join(sorted(unknown))}")
        cochains = {n: c.subs(assignment) for n, c in self.cochains.items()}
        matrices = {n: [[scalar_subs(x, assignment) for x in row] for row in m] for n, m in self.matrices.items()}
        return replace(self, cochains=cochains, matrices=matrices)

    def extension(self) -> ExtensionData:
        """The extension named by delta/mu/lam/psi, or the split of ``d``."""
        parts = {n: self.cochains.get(n) for n in ("delta", "mu", "lam", "psi")}
        if any(v is not None for v in parts.values()):
            return ExtensionData.from_parts(self.space, **parts)
        return split(self.cochain("d"))


def load_problem(path) -> ProblemFile:
    return ProblemFile.load(path)


def _parse_space(spec, where) -> GradedSpace:
    if not isinstance(spec, dict):
        raise _err(where, "missing or not an object")
    even = list(spec.get("even", []))
    odd = list(spec.get("odd", []))
    names = even + odd
    if not names:
        raise _err(where, "no basis vectors")
    module = spec.get("module", [])
    for i in module:
        if not isinstance(i, int) or not 1 <= i <= len(names):
            raise _err(f"{where}.module", f"index {i!r} out of range 1..{len(names)}")
    if module and len(module) == len(names):
        raise _err(f"{where}.module", "module part may not be the whole space")
    try:
        return GradedSpace.create([0] * len(even) + [1] * len(odd), module=module, names=names)
    except InputError as exc:
        raise _err(where, str(exc)) from None


def _scalar(x, params, where):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise _err(where, f"coefficient must be a string or integer, got {x!r}")
    try:
        return parse_scalar(x if isinstance(x, str) else Fraction(x), params)
    except ParseError as exc:
        raise _err(where, str(exc)) from None


def _parse_cochain(space, params, spec, defined, where) -> Cochain:
    parity = None
    if isinstance(spec, dict) and "sum" in spec:
        names = spec["sum"]
        scales = spec.get("scale", [1] * len(names))
        if len(scales) != len(names):
            raise _err(where, "sum and scale differ in length")
        total = Cochain(space)
        for i, (n, s) in enumerate(zip(names, scales)):
            if n not in defined:
                raise _err(f"{where}.sum[{i}]", f"{n!r} is not defined earlier in the file")
            total = total + defined[n] * _scalar(s, params, f"{where}.scale[{i}]")
        return total
    if isinstance(spec, dict):
        parity = spec.get("parity")
        spec = spec.get("terms", [])
    if not isinstance(spec, list):
        raise _err(where, "expected a list of terms")
    entries = []
    for i, term in enumerate(spec):
        loc = f"{where}[{i}]"
        if not isinstance(term, dict) or "in" not in term or "out" not in term:
            raise _err(loc, "term needs 'in' and 'out'")
        ins = term["in"]
        if isinstance(ins, int):
            ins = [ins]
        if not ins or not all(isinstance(j, int) and 1 <= j <= space.dim for j in ins):
            raise _err(f"{loc}.in", f"indices must be in 1..{space.dim}")
        out = term["out"]
        if not isinstance(out, int) or not 1 <= out <= space.dim:
            raise _err(f"{loc}.out", f"index must be in 1..{space.dim}")
        coeff = _scalar(term.get("coeff", "1"), params, f"{loc}.coeff")
        try:
            entries.append((tuple(ins), out, coeff))
            cochain(space, [entries[-1]])
        except InputError as exc:
            raise _err(loc, str(exc)) from None
    c = cochain(space, entries)
    if parity is not None:
        want = {"odd": 1, "even": 0}.get(parity)
        if want is None:
            raise _err(f"{where}.parity", "must be 'odd' or 'even'")
        if c.parities() - {want}:
            raise _err(where, f"terms are not all {parity}")
    return c
