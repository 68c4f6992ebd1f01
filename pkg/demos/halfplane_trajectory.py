"""Follow exp(iyN)F on the upper half plane as y grows and record the chart coordinate."""

from __future__ import annotations

from hodgeorbit.hodge import isotropy_dim
from hodgeorbit.instance import parse_instance
from hodgeorbit.logchart import limit_trajectory, trajectory_csv
from hodgeorbit.sl2 import build_orbit_data


def main():
    doc = parse_instance("halfplane.json")
    data = build_orbit_data(doc.cone.generators[0], doc.flag, doc.spec)
    print("isotropy dimension at the base point:", isotropy_dim(data.spec, data.F0))
    rows = limit_trajectory(data, [0, 1, 2, 4, 8])
    print(trajectory_csv(rows), end="")


if __name__ == "__main__":
    main()
