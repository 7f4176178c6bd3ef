"""Builders for the three bundled benchmark problems.

All three are standard coupled Lane-Emden systems from the chemistry
literature with published reference tables; the right-hand sides are
written so that the recursion reproduces those tables (see the README note
on the residual sign convention).
"""

from __future__ import annotations

from .solver import DIRICHLET, NEUMANN_ZERO, ComponentSpec, ProblemSpec


def catalytic_problem(k1=1.0, k2=0.4, k3=0.5, k4=1.0) -> ProblemSpec:
    """Catalytic diffusion reactions: quadratic rates, spherical geometry."""
    c1 = ComponentSpec.make(
        "lane_emden", alpha=2.0, left=NEUMANN_ZERO, a=1.0, b=0.0, c=1.0,
        rhs=f"{k1}*y1^2 + {k2}*y1*y2",
    )
    c2 = ComponentSpec.make(
        "lane_emden", alpha=2.0, left=NEUMANN_ZERO, a=1.0, b=0.0, c=2.0,
        rhs=f"{k3}*y1^2 + {k4}*y1*y2",
    )
    return ProblemSpec(c1, c2, name="catalytic")


def catalytic_symmetric_problem() -> ProblemSpec:
    """Equal-rate variant; the two components differ by the constant 1."""
    p = catalytic_problem(0.5, 0.5, 0.5, 0.5)
    return ProblemSpec(p.component1, p.component2, name="catalytic_symmetric")


def oxygen_problem(alpha: float = 2.0) -> ProblemSpec:
    """Carbon-substrate / oxygen uptake with Michaelis-Menten kinetics.

    The published alpha = 2 and alpha = 3 tables were generated with only
    the dominant substrate term (rate 5) in the first equation, while the
    alpha = 1 table includes the secondary uptake term as well (rate 5.1
    in total); the builders follow the tables.
    """
    rate = 5.1 if alpha == 1.0 else 5.0
    sat = "((0.0001 + y1)*(0.0001 + y2))"
    c1 = ComponentSpec.make(
        "lane_emden", alpha=alpha, left=NEUMANN_ZERO, a=1.0, b=0.0, c=1.0,
        rhs=f"1 - {rate}*y1*y2/{sat}",
    )
    c2 = ComponentSpec.make(
        "lane_emden", alpha=alpha, left=NEUMANN_ZERO, a=1.0, b=0.0, c=1.0,
        rhs=f"-0.1*y1*y2/{sat} - 0.05*y1*y2/{sat}",
    )
    return ProblemSpec(c1, c2, name=f"oxygen_alpha{alpha:g}")


def co2_pge_problem() -> ProblemSpec:
    """Steady-state CO2 / PGE absorption concentrations."""
    sat = "(1 + y1 + 3*y2)"
    c1 = ComponentSpec.make(
        "flat", left=DIRICHLET, left_value=1.0, a=1.0, b=0.0, c=0.5,
        rhs=f"y1*y2/{sat}",
    )
    c2 = ComponentSpec.make(
        "flat", left=NEUMANN_ZERO, a=1.0, b=0.0, c=1.0,
        rhs=f"2*y1*y2/{sat}",
    )
    return ProblemSpec(c1, c2, name="co2_pge")
