"""Smoke tests for the python bindings; run directly with python3."""

import json
import sys


def main() -> int:
    import _cinfty as cl

    # Mobius parity of the partition lattice
    for n in range(2, 9):
        assert cl.mobius_sum(n) == "0", f"mobius sum nonzero at n={n}"

    # the two-term k_2 expansion
    rows = json.loads(cl.cumulant_expansion(2))
    assert len(rows) == 2
    coeffs = sorted(r["coefficient"] for r in rows)
    assert coeffs == ["-1", "1"]

    # refinement graphs: claims hold, DOT export is deterministic
    for n in range(2, 7):
        assert cl.refinement_graph_claims(n)
    dot = cl.refinement_graph_dot(3)
    assert dot == cl.refinement_graph_dot(3)
    assert dot.count(" -- ") == 6

    # the cumulant cube complexes are contractible
    for n in range(2, 5):
        betti = cl.betti_numbers(n)
        assert betti[0] == 1 and not any(betti[1:]), betti

    # certified transfer on the interval: vertex cochains square to themselves
    t = cl.transfer("interval", degree_bound=4, arity=3)
    m2 = t.operation(2)
    assert m2["v0,v0"] == "1*v0"

    # cumulants through the averaging fixture: k_2(t, t) = 1/12
    avg = cl.transfer("interval", degree_bound=4, arity=3, target="point_average")
    assert avg.cumulant(2)["t,t"] == "1/12*u"
    # the nullhomotopy construction verifies dH_3 = k_3 internally
    assert avg.nullhomotopy(3)

    print("python smoke tests passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
