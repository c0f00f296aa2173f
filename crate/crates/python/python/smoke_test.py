"""Smoke test for the compiled extension.

Build it with `maturin develop` from crates/python, or copy
target/<profile>/libcubic_shadow_py.so next to this file as cubic_shadow_py.so.
"""

import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

import cubic_shadow_py as cs  # noqa: E402


def main() -> None:
    a = cs.GramMatrix([[4, 0], [0, 1]])
    lift = cs.construct_v(a, 10)
    assert lift.v.entries == [1, 20, 200], lift
    assert lift.residual == Fraction(1, 10)
    assert lift.convergence_residual(use_reduction=True) <= Fraction(1, 10)

    assert cs.family("fcc", 1).entries == [1, 2, 4, 7]
    assert cs.family("dm", 2, m=3).entries == [1, 4, 16, 42]
    leech = cs.family("leech", 4)
    assert len(leech) == 25 and leech.entries[-1] > 2**64

    hexagonal = cs.AxisVector([1, 1, 1]).primal_gram()
    reduced, _ = cs.lagrange_reduce_2d(hexagonal)
    assert reduced.entries() == [[Fraction(2, 3), Fraction(1, 3)], [Fraction(1, 3), Fraction(2, 3)]]
    scale, _ = cs.similarity_2d(hexagonal, cs.GramMatrix.catalog("A2"))
    assert scale == Fraction(1, 3)

    norm, witness = cs.shortest_vector(cs.GramMatrix.catalog("E8"))
    assert norm == 2 and any(witness)
    d3 = cs.center_density(cs.GramMatrix.catalog("D3"))
    assert abs(d3["center_density"] - 2 ** -2.5) < 1e-12

    assert cs.prop1_search(20)["counterexamples"] == []
    best = cs.strut_search(3, 3, 3, 1)
    assert best[0]["v"] == [1, 1, 1] and best[0]["min_norm_primal"] == Fraction(2, 3)

    try:
        cs.GramMatrix([[1, 2], [2, 1]])
    except ValueError:
        pass
    else:
        raise AssertionError("indefinite Gram accepted")
    try:
        cs.shortest_vector(cs.GramMatrix.catalog("Leech"))
    except RuntimeError:
        pass
    else:
        raise AssertionError("24-dimensional enumeration was not refused")

    print("smoke test passed")


if __name__ == "__main__":
    main()
