# classify.py
"""
Which imaginary quadratic fields carry a Euclidean ideal class.

A Euclidean ideal C (D not 1 or 3) must have Nm(C) <= 3 and generate the class
group, so only the degree-one primes over 2 and 3 need checking. Each such
prime is decided by whether the disks of radius sqrt(Nm C) around C cover the
plane. The two extra-unit fields D = 1, 3 have class number one and are
decided on O_K itself.
"""

import logging
import os
from dataclasses import dataclass
from enum import Enum
from multiprocessing import Pool
from typing import List, Optional, Tuple

from dotenv import load_dotenv

from ideals import FracIdeal, class_number, class_order, primes_above, unit_ideal
from lattice import CoverKind, CoverVerdict, covering_verdict
from quadfield import QuadField, make_field, squarefree_up_to

load_dotenv()

# --- Config ---
WORKERS = int(os.getenv("EUCLID_WORKERS", "1"))

CANDIDATE_PRIMES = (2, 3)
EXTRA_UNIT_FIELDS = (1, 3)

logger = logging.getLogger("classify")


class Conclusion(str, Enum):
    HAS_EUCLIDEAN_IDEAL = "HasEuclideanIdeal"
    NO_EUCLIDEAN_IDEAL = "NoEuclideanIdeal"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class Candidate:
    ideal: FracIdeal
    verdict: CoverVerdict
    generates: bool
    subcase: str


@dataclass(frozen=True)
class FieldVerdict:
    D: int
    class_number: int
    candidates: Tuple[Candidate, ...]
    conclusion: Conclusion

    @property
    def witness(self) -> Optional[FracIdeal]:
        """The first candidate proving a Euclidean class, if any."""
        for c in self.candidates:
            if c.generates and c.verdict.kind is CoverKind.COVERED:
                return c.ideal
        return None

    @property
    def norm_euclidean(self) -> bool:
        # every Euclidean class found here is found by the norm covering
        return self.conclusion is Conclusion.HAS_EUCLIDEAN_IDEAL


def subcase_label(field: QuadField, p: int, ramified: bool) -> str:
    D = field.D
    if p == 2:
        if ramified:
            return f"2 ramifies, D≡{D % 4} (mod 4)"
        return "2 splits, D≡7 (mod 8)"
    if p == 3:
        residue = "D≡3 (mod 4)" if D % 4 == 3 else "D≡1,2 (mod 4)"
        return f"3 {'ramifies' if ramified else 'splits'}, {residue}"
    return f"{p} {'ramifies' if ramified else 'splits'}"


def _degree_one_primes(field: QuadField) -> List[Tuple[FracIdeal, int, bool]]:
    out = []
    for p in CANDIDATE_PRIMES:
        primes = [P for P, f in primes_above(field, p) if f == 1]
        if not primes:
            continue
        # conjugate primes give mirror-image lattices; keep the first
        out.append((primes[0], p, len(primes) == 1))
    return out


def candidate_classes(field: QuadField) -> List[FracIdeal]:
    if field.D in EXTRA_UNIT_FIELDS:
        return [unit_ideal(field)]
    return [P for P, _, _ in _degree_one_primes(field)]


def _conclude(candidates: List[Candidate]) -> Conclusion:
    generating = [c for c in candidates if c.generates]
    if any(c.verdict.kind is CoverKind.COVERED for c in generating):
        return Conclusion.HAS_EUCLIDEAN_IDEAL
    if any(c.verdict.kind is CoverKind.BOUNDARY_TOUCH for c in generating):
        return Conclusion.INCONCLUSIVE
    return Conclusion.NO_EUCLIDEAN_IDEAL


def classify_field(D: int) -> FieldVerdict:
    field = make_field(D)
    h = class_number(field)

    if D in EXTRA_UNIT_FIELDS:
        tagged = [(unit_ideal(field), "extra units, O_K")]
    else:
        tagged = [(P, subcase_label(field, p, ram)) for P, p, ram in _degree_one_primes(field)]

    candidates = [
        Candidate(
            ideal=C,
            verdict=covering_verdict(C),
            generates=class_order(C) == h,
            subcase=label,
        )
        for C, label in tagged
    ]
    conclusion = _conclude(candidates)
    logger.debug("D=%s h=%s: %s", D, h, conclusion.value)
    return FieldVerdict(D=D, class_number=h, candidates=tuple(candidates), conclusion=conclusion)


def classify_range(D_max: int, workers: Optional[int] = None) -> List[FieldVerdict]:
    if D_max < 1:
        raise ValueError(f"D_max must be at least 1, got {D_max}")
    workers = WORKERS if workers is None else workers
    ds = squarefree_up_to(D_max)
    logger.info("classifying %s squarefree D up to %s with %s worker(s)", len(ds), D_max, workers)

    if workers > 1:
        with Pool(workers) as pool:
            verdicts = list(pool.imap(classify_field, ds))
    else:
        verdicts = [classify_field(D) for D in ds]

    found = [v.D for v in verdicts if v.conclusion is Conclusion.HAS_EUCLIDEAN_IDEAL]
    logger.info("fields with a Euclidean ideal: %s", found)
    return verdicts


def euclidean_set(verdicts: List[FieldVerdict]) -> List[int]:
    return [v.D for v in verdicts if v.conclusion is Conclusion.HAS_EUCLIDEAN_IDEAL]


def norm_euclidean_rings(D_max: int) -> List[int]:
    """Squarefree D <= D_max whose ring of integers is norm-Euclidean."""
    out = []
    for D in squarefree_up_to(D_max):
        field = make_field(D)
        if covering_verdict(unit_ideal(field)).kind is CoverKind.COVERED:
            out.append(D)
    return out
