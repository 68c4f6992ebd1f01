"""JSON instance documents: schema, parsing and canonical serialization.

A document fixes a polarized Hodge type, a reference flag and an optional
list of commuting nilpotents.  Every scalar is a string literal in the
tower ``Q(i, sqrt d)``; ``sqrt_d`` declares ``d``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

import jsonschema

from .degeneration import NilpotentCone
from .hodge import HodgeType, PeriodDomainSpec, flag
from .linalg import DecreasingFiltration, Matrix, PolarizationForm
from .scalars import Scalar, format_scalar, parse_scalar, square_free_split

__all__ = [
    "InstanceDoc",
    "InstanceError",
    "SCHEMA",
    "parse_instance",
    "load_instance_data",
    "instance_to_json",
    "bundled_instances",
    "resolve_instance_path",
]

_LITERAL = {"type": "string", "minLength": 1}
_VECTOR = {"type": "array", "items": _LITERAL, "minItems": 1}
_MATRIX = {"type": "array", "items": _VECTOR, "minItems": 1}

SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["weight", "hodge_numbers", "form", "filtration"],
    "additionalProperties": False,
    "properties": {
        "name": {"type": "string"},
        "description": {"type": "string"},
        "weight": {"type": "integer", "minimum": 0},
        "hodge_numbers": {
            "type": "object",
            "minProperties": 1,
            "propertyNames": {"pattern": r"^-?[0-9]+,-?[0-9]+$"},
            "additionalProperties": {"type": "integer", "minimum": 0},
        },
        "sqrt_d": {"type": "integer", "minimum": 2},
        "form": _MATRIX,
        "filtration": {
            "type": "object",
            "propertyNames": {"pattern": r"^-?[0-9]+$"},
            "additionalProperties": {"type": "array", "items": _VECTOR},
        },
        "nilpotents": {"type": "array", "items": _MATRIX},
        "mode": {"enum": ["exact", "float"]},
        "precision_bits": {"type": "integer", "minimum": 16},
    },
}


class InstanceError(ValueError):
    """An invalid instance document; ``path`` locates the offending field."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


def _path(parts) -> str:
    out = "$"
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else f".{p}"
    return out


@dataclass(frozen=True)
class InstanceDoc:
    weight: int
    hodge_numbers: dict[tuple[int, int], int]
    form: Matrix
    filtration: dict[int, tuple[tuple[Scalar, ...], ...]]
    nilpotents: tuple[Matrix, ...] = ()
    sqrt_d: int | None = None
    mode: str = "exact"
    precision_bits: int | None = None
    name: str = ""
    description: str = ""
    spec: PeriodDomainSpec = field(init=False, repr=False, compare=False)
    flag: DecreasingFiltration = field(init=False, repr=False, compare=False)
    cone: NilpotentCone | None = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        _check_semantics(self)

    @property
    def n(self) -> int:
        return self.form.nrows


def _check_semantics(doc: InstanceDoc) -> None:
    w = doc.weight
    for (p, q), h in doc.hodge_numbers.items():
        if p + q != w:
            raise InstanceError(f"$.hodge_numbers.{p},{q}", f"p + q must equal the weight {w}")
        if doc.hodge_numbers.get((q, p), 0) != h:
            raise InstanceError(
                f"$.hodge_numbers.{p},{q}",
                f"h^{{{p},{q}}} = {h} differs from h^{{{q},{p}}} = {doc.hodge_numbers.get((q, p), 0)}",
            )
    htype = HodgeType(w, {p: h for (p, _), h in doc.hodge_numbers.items() if h})
    n = doc.form.nrows
    if doc.form.ncols != n:
        raise InstanceError("$.form", "form must be square")
    if n != htype.rank:
        raise InstanceError("$.form", f"form has size {n} but the Hodge numbers sum to {htype.rank}")
    skew = bool(w % 2)
    if doc.form.T != (-doc.form if skew else doc.form):
        want = "skew-symmetric" if skew else "symmetric"
        raise InstanceError("$.form", f"weight {w} needs a {want} form")
    if doc.form.det() == 0:
        raise InstanceError("$.form", "form is degenerate")
    if not doc.form.is_real():
        raise InstanceError("$.form", "form must be real")
    spec = PeriodDomainSpec(htype, PolarizationForm(doc.form, skew))
    for p, vecs in doc.filtration.items():
        for j, v in enumerate(vecs):
            if len(v) != n:
                raise InstanceError(f"$.filtration.{p}[{j}]", f"vector of length {len(v)}, expected {n}")
    try:
        filt = flag({p: list(v) for p, v in doc.filtration.items()}, n)
    except ValueError as exc:
        raise InstanceError("$.filtration", str(exc)) from None
    for k, m in enumerate(doc.nilpotents):
        if m.shape != (n, n):
            raise InstanceError(f"$.nilpotents[{k}]", f"expected a {n}x{n} matrix")
    cone = None
    if doc.nilpotents:
        try:
            cone = NilpotentCone(tuple(doc.nilpotents), spec.form)
        except ValueError as exc:
            raise InstanceError("$.nilpotents", str(exc)) from None
    object.__setattr__(doc, "spec", spec)
    object.__setattr__(doc, "flag", filt)
    object.__setattr__(doc, "cone", cone)


def _literal(text: str, sqrt_d, parts) -> Scalar:
    try:
        return parse_scalar(text, sqrt_d)
    except (ValueError, ZeroDivisionError) as exc:
        raise InstanceError(_path(parts), f"cannot parse scalar {text!r}: {exc}") from None


def _matrix(rows, sqrt_d, parts) -> Matrix:
    width = len(rows[0])
    for i, r in enumerate(rows):
        if len(r) != width:
            raise InstanceError(_path(parts + [i]), f"row of length {len(r)}, expected {width}")
    return Matrix([[_literal(x, sqrt_d, parts + [i, j]) for j, x in enumerate(r)] for i, r in enumerate(rows)])


def load_instance_data(raw: Any) -> InstanceDoc:
    """Validate a decoded JSON object and build the document."""
    validator = jsonschema.Draft202012Validator(SCHEMA)
    errors = sorted(validator.iter_errors(raw), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        raise InstanceError(_path(err.absolute_path), err.message)
    sqrt_d = raw.get("sqrt_d")
    if sqrt_d is not None:
        square, _ = square_free_split(sqrt_d)
        if square != 1:
            raise InstanceError("$.sqrt_d", f"{sqrt_d} is not square-free")
    hodge = {}
    for key, h in raw["hodge_numbers"].items():
        p, q = (int(x) for x in key.split(","))
        hodge[(p, q)] = h
    filtration = {}
    for key, vecs in raw["filtration"].items():
        parts = ["filtration", key]
        filtration[int(key)] = tuple(
            tuple(_literal(x, sqrt_d, parts + [j, k]) for k, x in enumerate(v)) for j, v in enumerate(vecs)
        )
    return InstanceDoc(
        weight=raw["weight"],
        hodge_numbers=hodge,
        form=_matrix(raw["form"], sqrt_d, ["form"]),
        filtration=filtration,
        nilpotents=tuple(_matrix(m, sqrt_d, ["nilpotents", k]) for k, m in enumerate(raw.get("nilpotents", []))),
        sqrt_d=sqrt_d,
        mode=raw.get("mode", "exact"),
        precision_bits=raw.get("precision_bits"),
        name=raw.get("name", ""),
        description=raw.get("description", ""),
    )


def bundled_instances() -> list[str]:
    data = resources.files("hodgeorbit") / "data"
    return sorted(p.name for p in data.iterdir() if p.name.endswith(".json"))


def resolve_instance_path(path: str | Path) -> Path:
    """A filesystem path, or the name of a bundled instance."""
    p = Path(path)
    if p.exists():
        return p
    bundled = resources.files("hodgeorbit") / "data" / p.name
    if bundled.is_file():
        return Path(str(bundled))
    raise FileNotFoundError(f"no instance file {str(path)!r}")


def parse_instance(path: str | Path) -> InstanceDoc:
    p = resolve_instance_path(path)
    try:
        raw = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise InstanceError("", f"{p.name} is not valid JSON: {exc}") from None
    doc = load_instance_data(raw)
    if not doc.name:
        object.__setattr__(doc, "name", p.stem)
    return doc


def _mat_json(m: Matrix) -> list[list[str]]:
    return [[format_scalar(x) for x in r] for r in m.rows]


def instance_to_json(doc: InstanceDoc) -> dict:
    out: dict[str, Any] = {
        "weight": doc.weight,
        "hodge_numbers": {f"{p},{q}": h for (p, q), h in sorted(doc.hodge_numbers.items(), reverse=True)},
        "form": _mat_json(doc.form),
        "filtration": {
            str(p): [[format_scalar(x) for x in v] for v in vecs]
            for p, vecs in sorted(doc.filtration.items(), reverse=True)
        },
    }
    if doc.nilpotents:
        out["nilpotents"] = [_mat_json(m) for m in doc.nilpotents]
    if doc.sqrt_d is not None:
        out["sqrt_d"] = doc.sqrt_d
    if doc.mode != "exact":
        out["mode"] = doc.mode
    if doc.precision_bits is not None:
        out["precision_bits"] = doc.precision_bits
    if doc.name:
        out["name"] = doc.name
    if doc.description:
        out["description"] = doc.description
    return out
