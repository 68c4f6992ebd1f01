"""Command dispatch and report emission.

Every command produces a :class:`Report` with named boolean verdicts,
exact values rendered as string literals, and optional certificates.
The process exit status is 0 when all verdicts pass, 1 when one fails and
2 for unusable input.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

from . import __version__
from .case1111 import HODGE_1111, UnsupportedNilpotent, ab_summary, ab_summary_markdown, classify
from .cycles import fixed_point_search, m_epsilon_sample, positivity_radius
from .degeneration import (
    MixedHodge,
    NotMixedHodge,
    deligne_bigrading,
    is_r_split,
    verify_nilpotent_orbit,
    weight_filtration,
    weight_filtration_oracle,
)
from .hodge import (
    NotInPeriodDomain,
    check_axioms,
    domain_dimension,
    is_hermitian_symmetric,
    isotropy_dim,
)
from .instance import InstanceDoc, InstanceError, bundled_instances, parse_instance
from .linalg import DecreasingFiltration, IncreasingFiltration, Matrix, Subspace, exp_nilpotent
from .logchart import limit_trajectory, trajectory_csv
from .scalars import I, Scalar, format_scalar
from .sl2 import OrbitDataError, build_orbit_data, maps_hodge_type, unit_vector, xn_relation_check

__all__ = ["Report", "UsageError", "COMMANDS", "run", "emit_report", "main"]

PRECISION_ENV = "HODGEORBIT_PRECISION_BITS"


class UsageError(ValueError):
    """Bad command-line usage: unknown command, missing instance, bad flag value."""


# errors raised by the mathematics on valid input; they become failed verdicts
_DOMAIN_ERRORS = (OrbitDataError, NotMixedHodge, NotInPeriodDomain, UnsupportedNilpotent)


@dataclass
class Report:
    command: str
    instance: str | None = None
    verdicts: dict[str, bool] = field(default_factory=dict)
    values: dict[str, Any] = field(default_factory=dict)
    certificates: dict[str, Any] = field(default_factory=dict)
    timing: float = 0.0
    csv_rows: list | None = None
    markdown: str | None = None

    @property
    def ok(self) -> bool:
        return all(self.verdicts.values())

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def as_dict(self) -> dict:
        # timing is left out so that exact-mode reports are byte-identical
        return {
            "command": self.command,
            "instance": self.instance,
            "ok": self.ok,
            "verdicts": self.verdicts,
            "values": self.values,
            "certificates": self.certificates,
        }


# -- rendering helpers -------------------------------------------------
def _lit(x) -> str:
    if isinstance(x, Scalar):
        return format_scalar(x)
    return str(x)


def _mat(m: Matrix) -> list[list[str]]:
    return [[_lit(x) for x in r] for r in m.rows]


def _vecs(s: Subspace) -> list[list[str]]:
    return [[_lit(x) for x in v] for v in s.basis]


def _flag(f: DecreasingFiltration) -> dict[str, list]:
    return {str(p): _vecs(f[p]) for p in sorted(f.indices(), reverse=True)}


def _wfilt(f: IncreasingFiltration) -> dict[str, Any]:
    return {
        "dims": {str(k): f[k].dim for k in f.indices()},
        "bases": {str(k): _vecs(f[k]) for k in f.indices()},
    }


# -- command implementations ------------------------------------------
@dataclass
class Flags:
    mode: str = "exact"
    samples: int = 8
    epsilon: Fraction = Fraction(1, 10)
    y_grid: tuple[Fraction, ...] | None = None


def _need(doc: InstanceDoc | None, command: str) -> InstanceDoc:
    if doc is None:
        raise UsageError(f"{command} needs an instance file")
    return doc


def _need_nilpotent(doc: InstanceDoc, command: str) -> Matrix:
    if not doc.nilpotents:
        raise UsageError(f"{command} needs at least one nilpotent in the instance")
    return doc.cone.combination([1] * doc.cone.rank)


def _exact_only(flags: Flags, command: str) -> None:
    if flags.mode != "exact":
        raise UsageError(f"{command} runs in exact mode only")


def _orbit_data(doc: InstanceDoc, command: str):
    n_mat = _need_nilpotent(doc, command)
    return build_orbit_data(n_mat, doc.flag, doc.spec)


def cmd_check_hodge(doc: InstanceDoc, flags: Flags, rep: Report) -> None:
    """Period-domain axioms for the reference flag, or along ``exp(iyN)`` for each grid value."""
    points: list[tuple[str, DecreasingFiltration]] = []
    if flags.y_grid is None:
        points.append(("reference", doc.flag))
    else:
        n_mat = _need_nilpotent(doc, "check-hodge --y-grid")
        for y in flags.y_grid:
            points.append((f"y={y}", doc.flag.apply(exp_nilpotent(n_mat, I * Scalar(y)))))
    for label, filt in points:
        if flags.mode == "float":
            filt = filt.to_float()
        ax = check_axioms(doc.spec, filt)
        entry: dict[str, Any] = {k: v for k, v in ax.as_dict().items()}
        entry["block_definiteness"] = {k: v for k, v in ax.details.get("block_definiteness", {}).items()}
        if ax.in_domain and flags.mode == "exact":
            entry["isotropy_dim"] = isotropy_dim(doc.spec, filt)
            entry["domain_dimension"] = domain_dimension(doc.spec, filt)
        rep.values[label] = entry
        prefix = "" if label == "reference" else f"{label}:"
        for axiom in ("H1", "H2", "P1", "P2"):
            rep.verdicts[prefix + axiom] = entry[axiom]
    rep.values["hermitian_symmetric"] = is_hermitian_symmetric(doc.spec.hodge_type)


def cmd_weight_filtration(doc: InstanceDoc, flags: Flags, rep: Report) -> None:
    _exact_only(flags, "weight-filtration")
    n = doc.n
    if doc.nilpotents:
        named = [(f"N{k + 1}", m) for k, m in enumerate(doc.nilpotents)]
        if len(named) > 1:
            named.append(("sum", doc.cone.combination([1] * doc.cone.rank)))
    else:
        named = [("N0", Matrix.zeros(n))]
    for name, m in named:
        wf = weight_filtration(m, doc.weight)
        rep.values[name] = _wfilt(wf)
        rep.verdicts[f"{name}:oracle"] = wf == weight_filtration_oracle(m, doc.weight)
        rep.verdicts[f"{name}:N_lowers_by_2"] = all(wf[k].image(m) <= wf[k - 2] for k in wf.indices())


def cmd_deligne(doc: InstanceDoc, flags: Flags, rep: Report) -> None:
    _exact_only(flags, "deligne")
    n_mat = _need_nilpotent(doc, "deligne")
    mhs = MixedHodge(weight_filtration(n_mat, doc.weight), doc.flag)
    big = deligne_bigrading(mhs)
    parts = {pq: s for pq, s in sorted(big.parts.items(), reverse=True) if s.dim}
    rep.values["dims"] = {f"{p},{q}": s.dim for (p, q), s in parts.items()}
    rep.values["bases"] = {f"{p},{q}": _vecs(s) for (p, q), s in parts.items()}
    rep.values["r_split"] = is_r_split(mhs, big)
    rep.verdicts["direct_sum"] = sum(s.dim for s in parts.values()) == doc.n and big.basis_matrix().det() != 0
    rep.verdicts["flag_reconstruction"] = all(big.flag_part(p) == mhs.F[p] for p in mhs.F.indices())
    rep.verdicts["weight_reconstruction"] = all(big.weight_part(k) == mhs.W[k] for k in mhs.W.indices())


def cmd_sl2(doc: InstanceDoc, flags: Flags, rep: Report) -> None:
    _exact_only(flags, "sl2")
    data = _orbit_data(doc, "sl2")
    rep.values["N"] = _mat(data.N)
    rep.values["H"] = _mat(data.H)
    rep.values["Nplus"] = _mat(data.Nplus)
    rep.values["X"] = _mat(data.X)
    rep.values["F0"] = _flag(data.F0)
    units = {}
    for (p, q), s in sorted(data.decomposition.parts.items(), reverse=True):
        if s.dim == 1:
            with contextlib.suppress(ArithmeticError, ValueError):
                units[f"{p},{q}"] = [_lit(x) for x in unit_vector(data.decomposition, (p, q))]
    rep.values["unit_vectors"] = units
    rep.verdicts["sl2_relations"] = data.triple.relations_hold()
    rep.verdicts["F0_in_D"] = check_axioms(doc.spec, data.F0).in_domain
    rep.verdicts["X_type_-1_1"] = maps_hodge_type(data.X, data.decomposition, -1)
    grid = flags.y_grid if flags.y_grid is not None else (Fraction(1),)
    for y in grid:
        rep.verdicts[f"xn_relation:y={y}"] = xn_relation_check(data, y)


def cmd_verify_orbit(doc: InstanceDoc, flags: Flags, rep: Report) -> None:
    _exact_only(flags, "verify-orbit")
    _need_nilpotent(doc, "verify-orbit")
    res = verify_nilpotent_orbit(doc.cone, doc.flag, doc.spec)
    d = res.as_dict()
    rep.certificates["eventual_positivity"] = d.pop("certificates")
    rep.values.update(d)
    rep.verdicts["horizontal"] = res.horizontal
    rep.verdicts["compact_dual"] = res.compact_dual
    rep.verdicts["nilpotent_orbit"] = res.ok


def cmd_classify(doc: InstanceDoc, flags: Flags, rep: Report) -> None:
    if doc.spec.hodge_type != HODGE_1111:
        raise UsageError("classify-1111 needs Hodge numbers (1,1,1,1) in weight 3")
    _need_nilpotent(doc, "classify-1111")
    for k, m in enumerate(doc.nilpotents):
        name = f"N{k + 1}"
        try:
            rep.values[name] = classify(m).value
            rep.verdicts[f"{name}:classified"] = True
        except UnsupportedNilpotent as exc:
            rep.values[name] = str(exc)
            rep.verdicts[f"{name}:classified"] = False


def cmd_fixed_point(doc: InstanceDoc, flags: Flags, rep: Report) -> None:
    _exact_only(flags, "fixed-point")
    data = _orbit_data(doc, "fixed-point")
    try:
        fp = fixed_point_search(data)
    except ValueError as exc:
        rep.values["error"] = str(exc)
        rep.verdicts["route_applicable"] = False
        return
    rep.values["found"] = fp.found
    rep.values["route"] = fp.route
    rep.values["detail"] = fp.detail
    if fp.found:
        rep.values["F_fix"] = _flag(fp.flag)
        rep.verdicts["exp(X)_fixes_F_fix"] = fp.flag.apply(exp_nilpotent(data.X, 1)) == fp.flag
    rep.verdicts["property_A"] = fp.found


def cmd_cycle_radius(doc: InstanceDoc, flags: Flags, rep: Report) -> None:
    data = _orbit_data(doc, "cycle-radius")
    mode = "exact" if flags.mode == "exact" else "sampled"
    res = positivity_radius(data, samples=flags.samples, mode=mode)
    rep.values.update(res.as_dict())
    # a sampled radius is a lower bracket, good to within its tolerance
    slack = res.tolerance or 0.0
    rep.verdicts["property_B"] = res.approx >= 1 - slack


def cmd_m_epsilon(doc: InstanceDoc, flags: Flags, rep: Report) -> None:
    _exact_only(flags, "m-epsilon")
    data = _orbit_data(doc, "m-epsilon")
    samples, note = m_epsilon_sample(data, flags.epsilon, flags.samples)
    rep.values["epsilon"] = str(flags.epsilon)
    rep.values["samples"] = [s.as_dict() for s in samples]
    rep.values["note"] = note
    rep.verdicts["all_in_cycle_space"] = all(s.verdict.inside for s in samples)


def cmd_trajectory(doc: InstanceDoc, flags: Flags, rep: Report) -> None:
    _exact_only(flags, "trajectory")
    data = _orbit_data(doc, "trajectory")
    grid = flags.y_grid if flags.y_grid is not None else tuple(Fraction(2**k) for k in range(6))
    rows = limit_trajectory(data, grid)
    y0 = data.orbit.y0
    rep.values["y0"] = str(y0)
    rep.values["rows"] = [r.as_dict() for r in rows]
    rep.csv_rows = rows
    ordered = sorted(rows, key=lambda r: r.y)
    rep.verdicts["q_decreasing"] = all(b.q.abs_less(a.q) for a, b in zip(ordered, ordered[1:]))
    rep.verdicts["in_D_beyond_y0"] = all(r.in_D for r in rows if r.y > y0)


def cmd_ab_summary(doc: InstanceDoc | None, flags: Flags, rep: Report) -> None:
    _exact_only(flags, "ab-summary")
    rows = ab_summary()
    rep.values["rows"] = rows
    rep.markdown = ab_summary_markdown(rows)
    rep.verdicts["computed"] = set(rows) == {"I", "II", "III"}


def cmd_examples(doc: InstanceDoc | None, flags: Flags, rep: Report) -> None:
    listing = {}
    for name in bundled_instances():
        try:
            d = parse_instance(name)
            listing[name] = {"weight": d.weight, "description": d.description}
            rep.verdicts[f"{name}:parses"] = True
        except InstanceError as exc:
            listing[name] = {"error": str(exc)}
            rep.verdicts[f"{name}:parses"] = False
    rep.values["instances"] = listing


COMMANDS: dict[str, tuple[Callable, bool]] = {
    "check-hodge": (cmd_check_hodge, True),
    "weight-filtration": (cmd_weight_filtration, True),
    "deligne": (cmd_deligne, True),
    "sl2": (cmd_sl2, True),
    "verify-orbit": (cmd_verify_orbit, True),
    "classify-1111": (cmd_classify, True),
    "fixed-point": (cmd_fixed_point, True),
    "cycle-radius": (cmd_cycle_radius, True),
    "m-epsilon": (cmd_m_epsilon, True),
    "trajectory": (cmd_trajectory, True),
    "ab-summary": (cmd_ab_summary, False),
    "examples": (cmd_examples, False),
}


@contextlib.contextmanager
def _precision(bits: int | None):
    if bits is None or PRECISION_ENV in os.environ:
        yield
        return
    os.environ[PRECISION_ENV] = str(bits)
    try:
        yield
    finally:
        del os.environ[PRECISION_ENV]


def run(command: str, instance: str | InstanceDoc | None = None, flags: Flags | None = None) -> Report:
    """Execute one command; raises :class:`UsageError` or :class:`InstanceError` on bad input."""
    if command not in COMMANDS:
        raise UsageError(f"unknown command {command!r}; expected one of {', '.join(COMMANDS)}")
    fn, needs_instance = COMMANDS[command]
    flags = flags or Flags()
    doc = parse_instance(instance) if isinstance(instance, (str, os.PathLike)) else instance
    if needs_instance:
        doc = _need(doc, command)
    rep = Report(command, doc.name if doc is not None else None)
    start = time.perf_counter()
    with _precision(doc.precision_bits if doc is not None else None):
        try:
            fn(doc, flags, rep)
        except _DOMAIN_ERRORS as exc:
            rep.values["error"] = f"{type(exc).__name__}: {exc}"
            rep.verdicts["preconditions"] = False
    rep.timing = time.perf_counter() - start
    return rep


def _text(rep: Report) -> str:
    lines = [f"command: {rep.command}"]
    if rep.instance:
        lines.append(f"instance: {rep.instance}")
    for name, ok in rep.verdicts.items():
        lines.append(f"{'PASS' if ok else 'FAIL'}  {name}")
    if rep.markdown:
        lines += ["", rep.markdown]
    else:
        lines += ["", json.dumps(rep.values, indent=2, sort_keys=True)]
    if rep.certificates:
        lines += ["", "certificates:", json.dumps(rep.certificates, indent=2, sort_keys=True)]
    lines.append(f"\ntime: {rep.timing:.3f} s")
    return "\n".join(lines) + "\n"


def emit_report(rep: Report, fmt: str = "json") -> bytes:
    if fmt == "json":
        return (json.dumps(rep.as_dict(), indent=2, sort_keys=True) + "\n").encode()
    if fmt == "text":
        return _text(rep).encode()
    if fmt == "csv":
        if rep.csv_rows is None:
            raise UsageError(f"csv output is only available for trajectory, not {rep.command}")
        return trajectory_csv(rep.csv_rows).encode()
    raise UsageError(f"unknown format {fmt!r}")


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _grid(text: str) -> tuple[Fraction, ...]:
    values = tuple(_fraction(t) for t in text.split(",") if t.strip())
    if not values:
        raise argparse.ArgumentTypeError("empty y grid")
    return values


def _positive(text: str) -> int:
    k = int(text)
    if k < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return k


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hodgeorbit", description="Exact checks for degenerations of polarized Hodge structures.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("instance", nargs="?", help="instance JSON file or bundled instance name")
    ap.add_argument("--mode", choices=["exact", "float"], default="exact")
    ap.add_argument("--samples", type=_positive, default=8, help="directions or translates to sample")
    ap.add_argument("--epsilon", type=_fraction, default=Fraction(1, 10), help="rational epsilon in (0, 1)")
    ap.add_argument("--y-grid", type=_grid, default=None, help="comma-separated rational y values")
    ap.add_argument("--format", choices=["json", "text", "csv"], default="json")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    flags = Flags(args.mode, args.samples, args.epsilon, args.y_grid)
    try:
        rep = run(args.command, args.instance, flags)
        out = emit_report(rep, args.format)
    except (UsageError, InstanceError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.buffer.write(out)
    sys.stdout.flush()
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
