"""Reference defining equations and verdicts for the standard cases.

Each case gives a polytope with spanning vectors. The equations, one per
chart, are written with ``c`` for ``exp(<a, q>)`` where ``q`` is the stored
orthogonal vector. The chart order is arbitrary; comparisons are made
modulo chart relabeling.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import sympy

from toricsub.fixtures import BLOWUP_CP3, CP2, F1

from oracles import atlas_signature, relation_from_expr


@dataclass(frozen=True)
class Case:
    name: str
    polytope: tuple
    p: tuple
    q: tuple  # orthogonal vector behind ``c``
    equations: tuple[tuple[str, ...], ...]  # per chart, sympy syntax in z1..zn and c
    smooth: bool
    offsets: tuple = ((1, 1),)


def _c(E, q) -> Fraction:
    out = Fraction(1)
    for e, x in zip(E, q):
        out *= Fraction(e) ** x
    return out


def reference_signature(case: Case, E):
    n = len(case.polytope[0])
    zs = sympy.symbols(f"z1:{n + 1}")
    c = sympy.Rational(_c(E, case.q))
    loc = {f"z{i + 1}": z for i, z in enumerate(zs)}
    loc["c"] = c
    per_chart = [[relation_from_expr(sympy.sympify(eq, locals=loc), zs) for eq in chart]
                 for chart in case.equations]
    return atlas_signature(per_chart, n)


def computed_signature(equations_per_chart, n):
    per_chart = [[(f.s, f.c) for f in eqs] for eqs in equations_per_chart]
    return atlas_signature(per_chart, n)


def _parametric(alpha: int):
    a = alpha
    return [
        Case(f"cp2 p=(1,{a})", CP2, ((1, a),), (a, -1),
             ((f"z1**{a} - c*z2",), (f"z2**{a} - c*z1**{a - 1}",), (f"1 - c*z1*z2**{a - 1}",)),
             a <= 2, ((1, 1), (2, 3))),
        Case(f"cp2 p=({a},1)", CP2, ((a, 1),), (1, -a),
             (("z1 - c*z2**%d" % a,), ("z1**%d*z2 - c" % (a - 1),), ("z2**%d - c*z1**%d" % (a - 1, a),)),
             a <= 2, ((1, 1), (2, 3))),
        Case(f"cp2 p=(1,-{a})", CP2, ((1, -a),), (a, 1),
             ((f"z1**{a}*z2 - c",), (f"z2**{a} - c*z1**{a + 1}",), (f"z1 - c*z2**{a + 1}",)),
             False, ((1, 1), (2, 3))),
        Case(f"cp2 p=({a},-1)", CP2, ((a, -1),), (1, a),
             ((f"z1*z2**{a} - c",), (f"z2 - c*z1**{a + 1}",), (f"z1**{a} - c*z2**{a + 1}",)),
             False, ((1, 1), (2, 3))),
    ]


FIXED_CASES = [
    Case("cp2 p=(1,1) with a=0", CP2, ((1, 1),), (1, -1),
         (("z1 - z2",), ("z2 - 1",), ("1 - z1",)), True),
    Case("cp2 p=(3,1) with a=0", CP2, ((3, 1),), (1, -3),
         (("z1 - z2**3",), ("z1**2*z2 - 1",), ("z1**3 - z2**2",)), False),
    Case("cp2 p=(1,0)", CP2, ((1, 0),), (0, 1),
         (("z2 - c",), ("1 - c*z1",), ("z1 - c*z2",)), True, ((1, 1), (1, 2))),
    Case("cp2 p=(0,1)", CP2, ((0, 1),), (1, 0),
         (("z1 - c",), ("z2 - c*z1",), ("1 - c*z2",)), True, ((1, 1), (2, 1))),
    Case("cp2 p=(1,1)", CP2, ((1, 1),), (1, -1),
         (("z1 - z2",), ("z2 - 1",), ("1 - z1",)), True),
    # third chart read as z1 - c*z2**2, matching its Jacobian row
    Case("cp2 p=(1,-1)", CP2, ((1, -1),), (1, 1),
         (("z1*z2 - c",), ("z2 - c*z1**2",), ("z1 - c*z2**2",)), True, ((1, 1), (Fraction(1, 2), 1))),
    Case("cp2 p=(1,2)", CP2, ((1, 2),), (2, -1),
         (("z1**2 - c*z2",), ("z2**2 - c*z1",), ("1 - c*z1*z2",)), True, ((1, 1), (1, Fraction(1, 2)))),
    Case("cp2 p=(2,1)", CP2, ((2, 1),), (1, -2),
         (("z1 - c*z2**2",), ("z1*z2 - c",), ("z2 - c*z1**2",)), True, ((1, 1), (Fraction(1, 2), 1))),
    # first chart kept as z1 - 1; its Jacobian row suggests z2 - 1, and
    # coordinate permutation makes the two equivalent
    Case("f1 p=(1,0)", F1, ((1, 0),), (0, 1),
         (("z1 - 1",), ("z1 - z2",), ("1 - z1*z2",), ("1 - z1",)), True),
    Case("blown-up cp3 p=(1,0,-1),(0,1,0)", BLOWUP_CP3, ((1, 0, -1), (0, 1, 0)), (1, 0, 1),
         (("z1*z3 - 1",), ("z3 - z2**2",), ("z2 - z3**2",), ("z2 - z3**2",), ("z1*z2 - 1",), ("z1 - z3**2",)),
         True, ((1, 1, 1),)),
]

PARAMETRIC_CASES = {alpha: _parametric(alpha) for alpha in (2, 3, 4, 5)}

ALL_EQUATION_CASES = FIXED_CASES + [c for cases in PARAMETRIC_CASES.values() for c in cases]

# verdicts stated for the parametric families (alpha values where they apply)
SINGULAR_FAMILIES = {
    "cp2 p=(1,{a})": (3, 4, 5),
    "cp2 p=({a},1)": (3, 4, 5),
    "cp2 p=(1,-{a})": (2, 3, 4),
    "cp2 p=({a},-1)": (3, 4, 5),
}


def singular_cases():
    out = [c for c in FIXED_CASES if not c.smooth]
    for template, alphas in SINGULAR_FAMILIES.items():
        for a in alphas:
            name = template.format(a=a)
            out.extend(c for c in PARAMETRIC_CASES[a] if c.name == name)
    return out


def smooth_cases():
    return [c for c in FIXED_CASES if c.smooth]
