"""Weight three with all Hodge numbers one: degeneration types and worked instances."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .cycles import fixed_point_search, positivity_radius
from .degeneration import MixedHodge, NilpotentCone, deligne_bigrading, is_r_split, verify_nilpotent_orbit, weight_filtration
from .hodge import HodgeType, PeriodDomainSpec, flag
from .linalg import DecreasingFiltration, Matrix, PolarizationForm, nilpotency_index
from .scalars import I
from .sl2 import build_orbit_data

__all__ = [
    "DegenerationType",
    "ExampleInstance",
    "UnsupportedNilpotent",
    "classify",
    "build_example",
    "ab_summary",
    "ab_summary_markdown",
    "HODGE_1111",
    "STANDARD_FORM",
    "BOUNDARY_DIMENSIONS",
]

# reference values of dim(D_sigma - D) per type; documentation only, never computed
BOUNDARY_DIMENSIONS = {"I": 2, "II": 1, "III": 1}

HODGE_1111 = HodgeType(3, {3: 1, 2: 1, 1: 1, 0: 1})
STANDARD_FORM = [[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]


class DegenerationType(str, enum.Enum):
    I = "I"
    II = "II"
    III = "III"


class UnsupportedNilpotent(ValueError):
    """A nilpotent with no degeneration type in the (1,1,1,1) table."""


def classify(n_mat: Matrix) -> DegenerationType:
    if n_mat.shape != (4, 4):
        raise UnsupportedNilpotent("expected a 4x4 matrix")
    if n_mat.is_zero():
        raise UnsupportedNilpotent("N = 0 has no degeneration type")
    try:
        k = nilpotency_index(n_mat)
    except ValueError:
        raise UnsupportedNilpotent("N is not nilpotent") from None
    if k == 2:
        return DegenerationType.I if n_mat.rank() == 1 else DegenerationType.II
    if k == 4:
        return DegenerationType.III
    raise UnsupportedNilpotent("N^2 != 0 = N^3 does not occur in the (1,1,1,1) table")


@dataclass(frozen=True)
class ExampleInstance:
    kind: DegenerationType
    spec: PeriodDomainSpec
    N: Matrix
    base_flag: DecreasingFiltration
    note: str


def _standard_spec() -> PeriodDomainSpec:
    return PeriodDomainSpec(HODGE_1111, PolarizationForm.for_weight(Matrix(STANDARD_FORM), 3))


def build_example(kind: DegenerationType | str) -> ExampleInstance:
    """A validated instance of each type; all share the same antidiagonal form."""
    kind = DegenerationType(kind)
    spec = _standard_spec()
    c = Matrix.identity(4).rows
    if kind is DegenerationType.III:
        n_mat = Matrix([[0, 0, 0, 0], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0]])
        base = flag({3: [c[0]], 2: [c[1]], 1: [c[2]], 0: [c[3]]}, 4)
        note = "single Jordan string e3 -> e2 -> e1 -> -e0"
    elif kind is DegenerationType.I:
        n_mat = Matrix([[0, 0, 0, 0], [0, 0, 0, 0], [0, -1, 0, 0], [0, 0, 0, 0]])
        top = tuple(a + I * b for a, b in zip(c[0], c[3]))
        base = flag({3: [top], 2: [c[1]], 1: [c[2]], 0: [c[3]]}, 4)
        note = "N c1 = -c2; F^3 spanned by c0 + i c3"
    else:
        n_mat = Matrix([[0, 0, 0, 0], [0, 0, 0, 0], [0, 1, 0, 0], [1, 0, 0, 0]])
        v = tuple(a + I * b for a, b in zip(c[0], c[1]))
        nv = n_mat.apply(v)
        vbar = tuple(x.conjugate() for x in v)
        base = flag({3: [v], 2: [nv], 1: [vbar]}, 4)
        note = "v = c0 + i c1 with N c0 = c3, N c1 = c2"
    inst = ExampleInstance(kind, spec, n_mat, base, note)
    _validate(inst)
    return inst


def _validate(inst: ExampleInstance) -> None:
    if classify(inst.N) is not inst.kind:
        raise AssertionError(f"instance does not classify as type {inst.kind.value}")
    cone = NilpotentCone((inst.N,), inst.spec.form)
    if not verify_nilpotent_orbit(cone, inst.base_flag, inst.spec).ok:
        raise AssertionError("instance is not a nilpotent orbit")
    mhs = MixedHodge(weight_filtration(inst.N, 3), inst.base_flag)
    if not is_r_split(mhs, deligne_bigrading(mhs)):
        raise AssertionError("instance is not R-split")


def ab_summary() -> dict[str, dict]:
    """Fixed-point and radius verdicts for each type, computed from the builders."""
    rows = {}
    for kind in DegenerationType:
        inst = build_example(kind)
        data = build_orbit_data(inst.N, inst.base_flag, inst.spec)
        fp = fixed_point_search(data)
        rad = positivity_radius(data)
        rows[kind.value] = {
            "A": fp.found,
            "route": fp.route,
            "B_radius": rad.text,
            "B_holds": rad.radius is not None and rad.approx >= 1,
            "boundary_dim_reference": BOUNDARY_DIMENSIONS[kind.value],
        }
    return rows


def ab_summary_markdown(rows: dict[str, dict]) -> str:
    lines = ["| type | fixed point (A) | radius (B) |", "|---|---|---|"]
    for k, r in rows.items():
        lines.append(f"| {k} | {'yes' if r['A'] else 'no'} | {r['B_radius']} |")
    return "\n".join(lines)
