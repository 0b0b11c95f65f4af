"""Which finite commuting tables extend to continuous solutions.

A table on the depth-n grid is continuable when some continuous commuting map
restricts to it; by the classification those are exactly the constants 0 and
2/3 and the sawtooth family.  Whether the k-tooth sawtooth sends a
newest-level grid point alpha = (2s+1)/2**(n-1) to beta = p/2**(n-1) is a
congruence on k: the matching k form the residue classes +/-k0 mod 2**n,
where k0 is p times the modular inverse of the odd unit 2s+1.  That solver
makes pointwise continuation constructive, and restriction only depends on
the class of k mod 2**n up to sign, so enumerating k = 1..2**n plus the
constants exhausts all restrictions.

The claimed count of continuable tables (2**(n-1)) is audited against the
enumeration, never assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .commutants import CommutingTable
from .limits import check_depth
from .rationals import TWO_THIRDS, ZERO
from .sawtooth import sawtooth_eval
from .tent import grid_points

_ENUM_BOUND = 10


@dataclass(frozen=True)
class ContinuationProblem:
    """Ask for a continuable table sending alpha (newest level) to beta."""

    n: int
    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"depth must be positive, got {self.n}")
        scale = 1 << (self.n - 1)
        if not (0 <= self.alpha <= 1 and 0 <= self.beta <= 1):
            raise ValueError("alpha and beta must lie in [0, 1]")
        if self.alpha.denominator != scale or self.alpha.numerator % 2 == 0:
            raise ValueError(
                f"alpha must be an odd numerator over 2**{self.n - 1}, got {self.alpha}"
            )
        if scale % self.beta.denominator != 0:
            raise ValueError(f"beta must lie on the depth-{self.n} grid, got {self.beta}")

    @property
    def s(self) -> int:
        """alpha = (2s+1) / 2**(n-1)."""
        return (self.alpha.numerator - 1) // 2

    @property
    def p(self) -> int:
        """beta = p / 2**(n-1)."""
        return self.beta.numerator * ((1 << (self.n - 1)) // self.beta.denominator)


@dataclass(frozen=True)
class ContinuationSolution:
    k0: int
    modulus: int
    classes: frozenset[int]

    def smallest_witness(self) -> int:
        """Least positive k in the classes (the modulus itself for the zero class)."""
        candidates = [c if c > 0 else self.modulus for c in self.classes]
        return min(candidates)


def solve_k0(prob: ContinuationProblem) -> ContinuationSolution:
    """Residue k0 with k0*(2s+1) = p (mod 2**n); matching k are +/-k0."""
    modulus = 1 << prob.n
    inverse = pow(2 * prob.s + 1, -1, modulus)
    k0 = (prob.p * inverse) % modulus
    return ContinuationSolution(
        k0=k0, modulus=modulus, classes=frozenset({k0, (-k0) % modulus})
    )


def sawtooth_matches(prob: ContinuationProblem, k: int) -> bool:
    """Does the k-tooth sawtooth send alpha to beta?  (Exactly the +/-k0 classes.)"""
    if k < 1:
        raise ValueError(f"tooth count must be >= 1, got {k}")
    return sawtooth_eval(k, prob.alpha) == prob.beta


@lru_cache(maxsize=4096)
def _restriction_values(n: int, k: int) -> tuple[tuple[Fraction, Fraction], ...]:
    return tuple((x, sawtooth_eval(k, x)) for x in grid_points(n))


def sawtooth_restriction(n: int, k: int) -> CommutingTable:
    """The k-tooth sawtooth restricted to the depth-n grid."""
    return CommutingTable(n=n, x0=ZERO, values=dict(_restriction_values(n, k)))


def constant_table(n: int, value: Fraction) -> CommutingTable:
    """The constant-0 or constant-2/3 table (the two constant solutions)."""
    if value != ZERO and value != TWO_THIRDS:
        raise ValueError(f"constant solutions take value 0 or 2/3, got {value}")
    return CommutingTable(n=n, x0=value, values={x: value for x in grid_points(n)})


def continuable_from_point(prob: ContinuationProblem) -> CommutingTable:
    """A continuable table with the requested value at alpha.

    Restricts the sawtooth with the smallest positive matching tooth count
    (the class of 0 mod 2**n is realized by k = 2**n, the constant-0
    restriction).
    """
    solution = solve_k0(prob)
    table = sawtooth_restriction(prob.n, solution.smallest_witness())
    if table.values[prob.alpha] != prob.beta:
        raise AssertionError(
            f"solver produced k={solution.smallest_witness()} but the restriction "
            f"misses beta at alpha={prob.alpha}"
        )
    return table


@dataclass(frozen=True)
class ContinuationVerdict:
    continuable: bool
    witness_k: int | None = None
    constant: Fraction | None = None


def is_tent_continuable(t: CommutingTable) -> ContinuationVerdict:
    """Decide continuability by exhausting constants and k = 1..2**n.

    Restrictions only depend on +/-k mod 2**n, so the scan is complete.
    """
    values = dict(t.values)
    for c in (ZERO, TWO_THIRDS):
        if values == dict(constant_table(t.n, c).values):
            return ContinuationVerdict(continuable=True, constant=c)
    for k in range(1, (1 << t.n) + 1):
        if values == dict(sawtooth_restriction(t.n, k).values):
            return ContinuationVerdict(continuable=True, witness_k=k)
    return ContinuationVerdict(continuable=False)


def enumerate_continuable(n: int) -> list[CommutingTable]:
    """All distinct restrictions of continuous solutions to the depth-n grid."""
    check_depth(n, _ENUM_BOUND, "enumerate_continuable")
    seen = set()
    out = []
    for k in range(1, (1 << n) + 1):
        table = sawtooth_restriction(n, k)
        if table.key() not in seen:
            seen.add(table.key())
            out.append(table)
    for c in (ZERO, TWO_THIRDS):
        table = constant_table(n, c)
        if table.key() not in seen:
            seen.add(table.key())
            out.append(table)
    out.sort(key=CommutingTable.key)
    return out


def continuable_audit(n: int) -> dict:
    """Enumerated continuable counts next to the claimed 2**(n-1)."""
    tables = enumerate_continuable(n)
    sawtooth_count = len({sawtooth_restriction(n, k).key() for k in range(1, (1 << n) + 1)})
    claimed = 1 << (n - 1)
    return {
        "n": n,
        "distinct_restrictions": len(tables),
        "sawtooth_restriction_count": sawtooth_count,
        "with_constants": len(tables),
        "claimed": claimed,
        "matches_claim": len(tables) == claimed,
    }
