"""Walk through the maximal (type III) degeneration of weight three, rank four.

Run with ``python demos/type3_walkthrough.py``.
"""

from __future__ import annotations

from hodgeorbit.cycles import positivity_radius
from hodgeorbit.degeneration import MixedHodge, deligne_bigrading, weight_filtration
from hodgeorbit.instance import parse_instance
from hodgeorbit.scalars import format_scalar
from hodgeorbit.sl2 import build_orbit_data, unit_vector


def show(title, m):
    print(title)
    for row in m.rows:
        print("   ", "  ".join(f"{format_scalar(x):>8}" for x in row))


def main():
    doc = parse_instance("ggk_type3.json")
    n_mat = doc.cone.generators[0]
    show("N", n_mat)

    w = weight_filtration(n_mat, doc.weight)
    print("dim W_k:", {k: w[k].dim for k in range(0, 7)})
    big = deligne_bigrading(MixedHodge(w, doc.flag))
    print("Deligne bigrading:", sorted(big.dims()))

    data = build_orbit_data(n_mat, doc.flag, doc.spec)
    show("H", data.H)
    show("N+", data.Nplus)
    show("2X", data.X * 2)

    u3 = unit_vector(data.decomposition, (3, 0))
    print("u3 =", [format_scalar(x) for x in u3])
    print("h(X u3, X u3) =", format_scalar(data.decomposition.hodge_norm2(data.X.apply(u3))))
    print("X^3 u3 =", [format_scalar(x) for x in (data.X**3).apply(u3)])

    rad = positivity_radius(data)
    print(f"exp(zX) keeps the base cycle in D for |z| < {rad.text} (t* = {rad.t_star})")


if __name__ == "__main__":
    main()
