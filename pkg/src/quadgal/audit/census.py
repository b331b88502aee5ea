"""Frobenius cycle-type censuses and the degree-6 transitive groups up to order 12."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from ..core.finite_field import degree_pattern
from ..core.integers import primes_up_to
from ..core.polynomial import IntPolynomial, is_squarefree, poly_discriminant

MIN_CENSUS_BOUND = 50

Pattern = tuple[int, ...]


@dataclass(frozen=True)
class TransitiveGroup:
    label: str
    name: str
    order: int
    # cycle type -> number of elements with that type
    cycle_types: dict
    has_normal_order6: bool

    def patterns(self) -> set[Pattern]:
        return set(self.cycle_types)

    def density(self, pattern: Pattern) -> float:
        return self.cycle_types.get(pattern, 0) / self.order


def _ct(**kw) -> dict:
    names = {
        "id": (1, 1, 1, 1, 1, 1),
        "six": (6,),
        "three2": (3, 3),
        "two3": (2, 2, 2),
        "one2two2": (1, 1, 2, 2),
    }
    return {names[k]: v for k, v in kw.items()}


DEGREE6_GROUPS = (
    TransitiveGroup("6T1", "C6", 6, _ct(id=1, six=2, three2=2, two3=1), True),
    TransitiveGroup("6T2", "S3", 6, _ct(id=1, three2=2, two3=3), True),
    TransitiveGroup("6T3", "D6", 12, _ct(id=1, six=2, three2=2, two3=4, one2two2=3), True),
    TransitiveGroup("6T4", "A4", 12, _ct(id=1, three2=8, one2two2=3), False),
)


def cycle_type_census(f: IntPolynomial, prime_bound: int) -> Counter:
    """Factorization degree patterns of f mod p over primes p <= bound not dividing disc f."""
    if prime_bound < MIN_CENSUS_BOUND:
        raise ValueError(f"census bound must be at least {MIN_CENSUS_BOUND}")
    if not is_squarefree(f):
        raise ValueError("census needs a squarefree polynomial")
    disc = poly_discriminant(f)
    counts: Counter = Counter()
    for p in primes_up_to(prime_bound):
        if disc % p == 0 or f.lc % p == 0:
            continue
        counts[degree_pattern(f, p)] += 1
    return counts


def pattern_key(p: Pattern) -> str:
    c = Counter(p)
    return " ".join(f"{k}^{c[k]}" if c[k] > 1 else str(k) for k in sorted(c))


@dataclass
class GroupConsistency:
    observed: dict
    consistent_groups: list[str]
    target: str
    verdict: str

    def as_dict(self) -> dict:
        return {
            "observed": self.observed,
            "consistent_groups": self.consistent_groups,
            "target": self.target,
            "verdict": self.verdict,
        }


def group_consistency(census: Counter, target: str = "6T3") -> GroupConsistency:
    """Compare observed patterns with the embedded groups.

    fail: the target group cannot produce an observed pattern.
    pass: the target is the only embedded group consistent with the census.
    inconclusive: the target is consistent but so is another embedded group.
    """
    observed = set(census)
    consistent = [g.label for g in DEGREE6_GROUPS if observed <= g.patterns()]
    if target not in consistent:
        verdict = "fail"
    elif consistent == [target]:
        verdict = "pass"
    else:
        verdict = "inconclusive"
    obs = {pattern_key(p): n for p, n in sorted(census.items())}
    return GroupConsistency(obs, consistent, target, verdict)


def order12_with_normal_order6() -> list[str]:
    return [g.label for g in DEGREE6_GROUPS if g.order == 12 and g.has_normal_order6]
