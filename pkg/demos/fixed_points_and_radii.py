"""Compare the three (1,1,1,1) degeneration types: fixed points of exp(X) and disc radii."""

from __future__ import annotations

from hodgeorbit.case1111 import DegenerationType, ab_summary, ab_summary_markdown, build_example


def main():
    for kind in DegenerationType:
        inst = build_example(kind)
        print(f"type {kind.value}: {inst.note}")
    print()
    print(ab_summary_markdown(ab_summary()))


if __name__ == "__main__":
    main()
