"""Smoke test for the pydualskel extension module.

Build and install first:  pip install --no-build-isolation ./crates/python
"""
import cmath
import math
import sys

import pydualskel as ds


def check(name, ok):
    print(f"{'ok  ' if ok else 'FAIL'} {name}")
    return ok


def main():
    results = []

    sl5 = ds.RootDatum.from_name("SL(5)")
    results.append(check("center of SL(5) is Z/5", sl5.center() == [5]))
    results.append(check("E8 is centerless", ds.center_of("E8_sc") == "trivial"))
    results.append(check("Spin(8) center is Z/2 x Z/2", ds.RootDatum.from_name("Spin(8)").center() == [2, 2]))

    b3 = ds.RootDatum.semisimple("B3", "sc")
    dual = b3.langlands_dual()
    results.append(check("dual of B3 is C3", dual.algebra == "C3" and dual.is_adjoint()))
    results.append(check("dual is an involution", dual.langlands_dual().is_isomorphic(b3)))

    m1 = ds.SymplecticModule.for_algebra("A1", 1)
    m2 = ds.SymplecticModule.for_algebra("A1", 2)
    results.append(check("3 and 15 Lagrangians for Z/2", len(m1.lagrangians()) == 3 and len(m2.lagrangians()) == 15))
    results.append(check("omega pairs the two cycles", m1.omega([1, 0], [0, 1]) == (1, 2)))
    results.append(check("Lagrangians are their own annihilators",
                         all(m2.annihilator(l) == m2.span(l) for l in m2.lagrangians())))

    k = ds.SymplecticModule.cyclic([2], 1)
    c = k.maslov_scalar([[1, 0]], [[0, 1]], [[1, 1]])
    results.append(check("intertwiner loop scalar has modulus 1", math.isclose(abs(c), 1.0, abs_tol=1e-9)))
    results.append(check("intertwiner loop scalar is e^{i pi/4}", cmath.isclose(c, cmath.exp(1j * math.pi / 4), abs_tol=1e-9)))

    z3 = ds.SymplecticModule.cyclic([3], 1)
    a = z3.absolve([[1, 0]])["partition_function"][0]
    b = z3.absolve([[0, 1]])["partition_function"][0]
    results.append(check("absolved partition functions 1 and 3", math.isclose(a, 1) and math.isclose(b, 3)))

    report = ds.dualize("B2", 1, [[1, 1]])
    results.append(check("B2 dualizes to C2 with all swap checks",
                         report["dual"]["algebra"] == [{"family": "C", "rank": 2}]
                         and all(c["pass"] for c in report["swap_checks"])))
    results.append(check("A1 Lagrangian is self-dual", ds.is_self_dual("A1", 1, [[1, 0]])))
    results.append(check("A2 with trivial subgroup is not self-dual", not ds.is_self_dual("A2", 1, [])))

    sweep = ds.sweep("A3", 1)
    results.append(check("A3 genus 1 sweep has no failures", sweep["subgroups"] == 15 and not sweep["failures"]))
    results.append(check("grading rotation sends (-1,1) to (1,1)", ds.fm_map([(-1, 1, 1)]) == [(1, 1, 1)]))
    results.append(check("regression corpus passes", ds.regressions()))

    try:
        ds.RootDatum.from_name("SL(1)")
        results.append(check("bad names raise", False))
    except ValueError:
        results.append(check("bad names raise", True))

    passed = sum(results)
    print(f"{passed}/{len(results)} smoke checks passed")
    return 0 if passed == len(results) else 1


if __name__ == "__main__":
    sys.exit(main())
