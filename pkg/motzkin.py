# motzkin.py
"""
Motzkin-type construction for a candidate Euclidean ideal C.

    A_0 = {R}
    A_i = A_{i-1} + { I in E : for every x in IC - C there is y in C
                                with (x - y)^{-1} IC in A_{i-1} }

C is Euclidean iff the union of the A_i is all of E, and psi(I) = i for
I in A_i - A_{i-1} is then the smallest Euclidean algorithm. A finite run can
only ever explore a norm horizon, so nothing here concludes "Euclidean".
Members inside the reporting horizon max_inverse_norm may only be reachable
through members beyond it, so steps look up to EXPLORE_FACTOR times further.

Two facts keep each step finite:
  * a new member of A_i lies in the class of C^{-i};
  * it has Nm(I^{-1}) <= |units| * |S| + 1, where S is the part of A_{i-1}
    in the class of IC (every (x - y)^{-1} IC lands there).

The definition's x + y and x - y agree since C = -C; this module uses x - y.
"""

import logging
import os
from dataclasses import dataclass, field as dc_field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from multiprocessing import Pool
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from dotenv import load_dotenv

from errors import InvariantViolation, NotInE, StateFormatError
from forms import BinaryQF
from ideals import (
    FracIdeal,
    ideal_class,
    ideal_inverse,
    ideal_norm,
    ideal_power,
    ideal_product,
    ideal_times_element,
    in_E,
    integral_ideals_up_to,
    inverse_norm,
    principal_form,
    quotient_reps,
    unit_ideal,
)
from lattice import lattice_of_ideal, points_in_disk
from quadfield import QuadField, elem_inverse, embed, from_plane, make_field

load_dotenv()

# --- Config ---
DEFAULT_MAX_LEVELS = int(os.getenv("EUCLID_MAX_LEVELS", "200"))
DEFAULT_MAX_INVERSE_NORM = int(os.getenv("EUCLID_MAX_INVERSE_NORM", "47"))
WORKERS = int(os.getenv("EUCLID_WORKERS", "1"))
# candidates are explored up to this multiple of the reporting horizon
EXPLORE_FACTOR = int(os.getenv("EUCLID_EXPLORE_FACTOR", "2"))

STATE_HEADER = "# euclid motzkin state v1"

logger = logging.getLogger("motzkin")


class MotzkinStatus(str, Enum):
    RUNNING = "Running"
    STABILIZED = "Stabilized"
    BUDGET_EXHAUSTED = "BudgetExhausted"


@dataclass
class MotzkinState:
    field: QuadField
    C: FracIdeal
    levels: List[List[FracIdeal]]
    psi: Dict[FracIdeal, int]
    status: MotzkinStatus = MotzkinStatus.RUNNING
    max_levels: int = DEFAULT_MAX_LEVELS
    max_inverse_norm: int = DEFAULT_MAX_INVERSE_NORM
    # largest Nm(I^{-1}) admitted at each level (0 for an empty level)
    growth: List[int] = dc_field(default_factory=list)

    def union(self) -> Set[FracIdeal]:
        return set(self.psi)

    def level_count(self) -> int:
        return len(self.levels) - 1

    def explore_limit(self) -> int:
        """Largest Nm(I^{-1}) a step may consider."""
        return max(self.max_inverse_norm, EXPLORE_FACTOR * self.max_inverse_norm)

    def horizon_reached(self) -> bool:
        return all(I in self.psi for I in enumerate_E_up_to(self.field, self.max_inverse_norm))


def initial_state(
    field: QuadField,
    C: FracIdeal,
    max_levels: int = DEFAULT_MAX_LEVELS,
    max_inverse_norm: int = DEFAULT_MAX_INVERSE_NORM,
) -> MotzkinState:
    R = unit_ideal(field)
    return MotzkinState(
        field=field,
        C=C,
        levels=[[R]],
        psi={R: 0},
        max_levels=max_levels,
        max_inverse_norm=max_inverse_norm,
        growth=[1],
    )


@lru_cache(maxsize=None)
def _E_members(field: QuadField, norm_bound: int) -> Tuple[FracIdeal, ...]:
    members = [ideal_inverse(J) for J in integral_ideals_up_to(field, norm_bound)]
    members.sort(key=lambda I: (inverse_norm(I), I.key()))
    return tuple(members)


def enumerate_E_up_to(
    field: QuadField, norm_bound: int, class_filter: Optional[BinaryQF] = None
) -> List[FracIdeal]:
    """I in E with Nm(I^{-1}) <= norm_bound, ordered by Nm(I^{-1}) then normal form."""
    members = _E_members(field, norm_bound)
    if class_filter is None:
        return list(members)
    return [I for I in members if ideal_class(I) == class_filter]


def _norms_by_class(prior: Iterable[FracIdeal]) -> Dict[BinaryQF, Set[Fraction]]:
    out: Dict[BinaryQF, Set[Fraction]] = {}
    for J in prior:
        out.setdefault(ideal_class(J), set()).add(inverse_norm(J))
    return out


def _member_test(
    I: FracIdeal,
    C: FracIdeal,
    prior: FrozenSet[FracIdeal],
    norms_by_class: Dict[BinaryQF, Set[Fraction]],
) -> bool:
    field = I.field
    IC = ideal_product(I, C)
    reps = quotient_reps(IC, C)[1:]
    if not reps:
        return True

    # (x - y)^{-1} IC = J forces [J] = [IC] and Nm(x - y) = Nm(IC) * Nm(J^{-1})
    allowed = norms_by_class.get(ideal_class(IC))
    if not allowed:
        return False
    n_IC = ideal_norm(IC)
    radius_sq = max(allowed) * n_IC
    lattice_C = lattice_of_ideal(C)

    for x in reps:
        z = embed(x)
        for w in points_in_disk(lattice_C, z, radius_sq):
            diff = z - w
            if diff.norm_sq() / n_IC not in allowed:
                continue
            g = from_plane(field, diff)
            if ideal_times_element(IC, elem_inverse(g)) in prior:
                break
        else:
            logger.debug("D=%s: %s rejected at coset %s", field.D, I, x)
            return False
    return True


def member_test(I: FracIdeal, C: FracIdeal, prior: Iterable[FracIdeal]) -> bool:
    """
    True iff every nonzero class x of IC/C has some y in C with
    (x - y)^{-1} IC in prior. The y are searched in the exact disk
    |x - y|^2 <= Nm(IC) * max Nm(J^{-1}) over class-compatible J in prior.
    """
    if not in_E(I):
        raise NotInE(f"{I} does not contain 1")
    prior = frozenset(prior)
    return _member_test(I, C, prior, _norms_by_class(prior))


def _check_laws(state: MotzkinState, level: int, admitted: List[FracIdeal], bound: int) -> None:
    C_pow = ideal_power(state.C, level)
    principal = principal_form(state.field)
    prev_size = sum(len(lv) for lv in state.levels)
    for I in admitted:
        if ideal_class(ideal_product(I, C_pow)) != principal:
            raise InvariantViolation(f"level {level}: {I} is not in the class of C^-{level}")
        if inverse_norm(I) > bound or inverse_norm(I) > state.field.unit_count * prev_size + 1:
            raise InvariantViolation(
                f"level {level}: Nm({I}^-1) = {inverse_norm(I)} exceeds the unit bound {bound}"
            )


def motzkin_step(state: MotzkinState) -> MotzkinState:
    if state.status is not MotzkinStatus.RUNNING:
        raise ValueError(f"cannot step a run whose status is {state.status.value}")

    field, C = state.field, state.C
    i = len(state.levels)
    class_C = ideal_class(C)
    target = class_C ** (-i)
    previous = class_C ** (-(i - 1))

    union = frozenset(state.psi)
    norms_by_class = _norms_by_class(union)
    S_size = sum(1 for J in union if ideal_class(J) == previous)
    bound = field.unit_count * S_size + 1
    limit = state.explore_limit()
    capped = bound > limit
    bound = min(bound, limit)

    candidates = [I for I in enumerate_E_up_to(field, bound, target) if I not in state.psi]
    if WORKERS > 1 and len(candidates) > 1:
        with Pool(WORKERS) as pool:
            verdicts = pool.starmap(
                _member_test, [(I, C, union, norms_by_class) for I in candidates]
            )
    else:
        verdicts = [_member_test(I, C, union, norms_by_class) for I in candidates]
    admitted = [I for I, ok in zip(candidates, verdicts) if ok]

    _check_laws(state, i, admitted, bound)

    psi = dict(state.psi)
    for I in admitted:
        psi[I] = i
    growth = list(state.growth) + [max((int(inverse_norm(I)) for I in admitted), default=0)]

    status = MotzkinStatus.RUNNING
    if not admitted:
        status = MotzkinStatus.BUDGET_EXHAUSTED if capped else MotzkinStatus.STABILIZED

    logger.info(
        "D=%s level %s: %s candidates up to norm %s, %s admitted%s",
        field.D, i, len(candidates), bound, len(admitted), " (exploration cap)" if capped else "",
    )
    return MotzkinState(
        field=field,
        C=C,
        levels=[list(lv) for lv in state.levels] + [admitted],
        psi=psi,
        status=status,
        max_levels=state.max_levels,
        max_inverse_norm=state.max_inverse_norm,
        growth=growth,
    )


def _drive(state: MotzkinState) -> MotzkinState:
    while state.status is MotzkinStatus.RUNNING:
        if state.level_count() >= state.max_levels:
            logger.warning("D=%s: level budget %s exhausted", state.field.D, state.max_levels)
            state.status = MotzkinStatus.BUDGET_EXHAUSTED
            break
        if state.horizon_reached():
            logger.info(
                "D=%s: every E-member up to norm %s reached after %s levels",
                state.field.D, state.max_inverse_norm, state.level_count(),
            )
            state.status = MotzkinStatus.BUDGET_EXHAUSTED
            break
        state = motzkin_step(state)
    return state


def run_motzkin(
    field: QuadField, C: FracIdeal, max_levels: int, max_inverse_norm: int
) -> MotzkinState:
    if C.field != field:
        raise ValueError(f"{C} is not an ideal of {field}")
    if not C.is_integral():
        raise ValueError(f"{C} is not an integral ideal")
    return _drive(initial_state(field, C, max_levels, max_inverse_norm))


def resume_motzkin(state: MotzkinState, max_levels: int, max_inverse_norm: int) -> MotzkinState:
    """Continue a run under (possibly larger) budgets."""
    state = MotzkinState(
        field=state.field,
        C=state.C,
        levels=[list(lv) for lv in state.levels],
        psi=dict(state.psi),
        status=state.status,
        max_levels=max_levels,
        max_inverse_norm=max_inverse_norm,
        growth=list(state.growth),
    )
    if state.status is MotzkinStatus.BUDGET_EXHAUSTED:
        # an empty trailing level only reflects the old exploration cap
        if len(state.levels) > 1 and not state.levels[-1]:
            state.levels.pop()
            state.growth.pop()
        state.status = MotzkinStatus.RUNNING
    return _drive(state)


def psi_of(state: MotzkinState, I: FracIdeal) -> Optional[int]:
    return state.psi.get(I)


def missing_from_horizon(state: MotzkinState) -> List[FracIdeal]:
    """E-members within the norm horizon that the run has not reached."""
    return [I for I in enumerate_E_up_to(state.field, state.max_inverse_norm) if I not in state.psi]


def growth_profile(state: MotzkinState) -> List[int]:
    return list(state.growth)


def verdict_note(state: MotzkinState) -> str:
    missing = missing_from_horizon(state)
    if state.status is MotzkinStatus.STABILIZED and missing:
        return (
            f"stabilized with {len(missing)} E-members missing up to norm "
            f"{state.max_inverse_norm}: evidence against C being Euclidean"
        )
    if not missing:
        return f"union contains every E-member up to norm {state.max_inverse_norm}"
    return f"{len(missing)} E-members up to norm {state.max_inverse_norm} not reached yet"


def _ideal_fields(I: FracIdeal) -> str:
    return f"{I.scale} {I.a} {I.b}"


def save_state(state: MotzkinState, path: Path) -> None:
    lines = [
        STATE_HEADER,
        f"field {state.field.D}",
        f"ideal {_ideal_fields(state.C)}",
        f"budget {state.max_levels} {state.max_inverse_norm}",
        f"status {state.status.value}",
        f"levels {len(state.levels)}",
    ]
    for i, level in enumerate(state.levels):
        for I in level:
            lines.append(f"member {i} {_ideal_fields(I)}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def load_state(path: Path) -> MotzkinState:
    text = Path(path).read_text(encoding="utf-8")
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != STATE_HEADER:
        raise StateFormatError(f"{path}: missing header {STATE_HEADER!r}")

    header: Dict[str, List[str]] = {}
    members: List[Tuple[int, List[str]]] = []
    try:
        for ln in lines[1:]:
            tag, *rest = ln.split()
            if tag == "member":
                members.append((int(rest[0]), rest[1:]))
            else:
                header[tag] = rest
        field = make_field(int(header["field"][0]))

        def ideal(parts: List[str]) -> FracIdeal:
            return FracIdeal(field, Fraction(parts[0]), int(parts[1]), int(parts[2]))

        C = ideal(header["ideal"])
        max_levels, max_inverse_norm = (int(x) for x in header["budget"])
        status = MotzkinStatus(header["status"][0])
        levels: List[List[FracIdeal]] = [[] for _ in range(int(header["levels"][0]))]
        psi: Dict[FracIdeal, int] = {}
        for i, parts in members:
            I = ideal(parts)
            levels[i].append(I)
            psi[I] = i
    except (KeyError, IndexError, ValueError) as e:
        raise StateFormatError(f"{path}: {e}") from e

    growth = [max((int(inverse_norm(I)) for I in lv), default=0) for lv in levels]
    return MotzkinState(
        field=field,
        C=C,
        levels=levels,
        psi=psi,
        status=status,
        max_levels=max_levels,
        max_inverse_norm=max_inverse_norm,
        growth=growth,
    )
