"""The tent map, skew tents, inverse branches, and fixed-point preimage sets.

The tent map ``f(x) = 2x`` for ``x < 1/2``, ``2 - 2x`` otherwise, has fixed
points 0 and 2/3.  Three families of preimage sets drive everything else in
the package:

* kind ``A``: the depth-n preimages of 0, the dyadic grid ``k / 2**(n-1)``,
* kind ``B``: the depth-n preimages of 2/3, the shifted thirds grid,
* kind ``F``: their union, the preimages of the fixed-point set.

Both a closed-form generator and an inverse-branch pullback are provided and
must agree; tests hold them against each other.

Addresses.  A word ``(j1, ..., jm)`` names the point obtained by feeding a
base point through the inverse branches with ``j1`` applied first (innermost).
Addresses are *not* unique: both branches send 1 to 1/2, so the words (1, 0)
and (1, 1) address the same point.  Code that inverts the address map must
treat fibers as sets, never assume singletons.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .limits import check_depth
from .rationals import (
    HALF,
    ONE,
    TWO_THIRDS,
    UNIT,
    ZERO,
    BinaryExpansion,
    format_rational,
)

PREIMAGE_KINDS = ("A", "B", "F")
_DEFAULT_DEPTH_BOUND = 20


def _require_unit_interval(x: Fraction, name: str = "x") -> None:
    if not (0 <= x <= 1):
        raise ValueError(f"{name} must lie in [0, 1], got {x}")


def tent(x: Fraction) -> Fraction:
    """One step of the tent map, exactly."""
    _require_unit_interval(x)
    if x < HALF:
        return 2 * x
    return 2 - 2 * x


def tent_digits(b):
    """Tent map acting on binary digit streams.

    A leading 0 is dropped; a leading 1 is dropped and the rest of the stream
    is complemented.  Takes and returns either a canonical
    :class:`BinaryExpansion` or the :data:`ONE` marker, and agrees exactly
    with :func:`tent` through the codec.
    """
    if b is ONE:
        return BinaryExpansion()
    if not isinstance(b, BinaryExpansion):
        raise TypeError(f"expected BinaryExpansion or ONE, got {type(b).__name__}")
    rest = b.tail()
    if b.first_bit == 0:
        return rest
    if rest.is_zero():
        # Only 1/2 = 0.1(0) maps to the endpoint.
        return ONE
    return rest.complement()


def skew_tent(x: Fraction, v: Fraction) -> Fraction:
    """Skew tent with vertex at (v, 1): x/v on [0, v], (1-x)/(1-v) after."""
    _require_unit_interval(x)
    if not (0 < v < 1):
        raise ValueError(f"vertex abscissa must lie in (0, 1), got {v}")
    if x <= v:
        return x / v
    return (1 - x) / (1 - v)


def inverse_branch(bit: int, y: Fraction, v: Fraction | None = None) -> Fraction:
    """Inverse branch ``bit`` of the tent map (or of the skew tent when v is given).

    Tent: branch 0 is y/2 onto [0, 1/2], branch 1 is 1 - y/2 onto [1/2, 1].
    Skew: branch 0 is v*y onto [0, v], branch 1 is 1 - (1-v)*y onto [v, 1].
    """
    if bit not in (0, 1):
        raise ValueError(f"branch index must be 0 or 1, got {bit!r}")
    _require_unit_interval(y, "y")
    if v is None:
        return y / 2 if bit == 0 else 1 - y / 2
    if not (0 < v < 1):
        raise ValueError(f"vertex abscissa must lie in (0, 1), got {v}")
    return v * y if bit == 0 else 1 - (1 - v) * y


def address_to_point(
    word: Sequence[int], base: Fraction, v: Fraction | None = None
) -> Fraction:
    """Evaluate the address word at a base point, first letter innermost."""
    if not word:
        raise ValueError("address words must be nonempty")
    _require_unit_interval(base, "base")
    x = base
    for bit in word:
        x = inverse_branch(bit, x, v)
    return x


@dataclass(frozen=True)
class PreimageSet:
    """Sorted exact preimage set of one of the fixed-point targets."""

    n: int
    kind: str
    points: tuple[Fraction, ...]

    def __post_init__(self):
        if self.kind not in PREIMAGE_KINDS:
            raise ValueError(f"kind must be one of {PREIMAGE_KINDS}, got {self.kind!r}")
        if self.n < 1:
            raise ValueError(f"depth must be positive, got {self.n}")
        expected = {
            "A": (1 << (self.n - 1)) + 1,
            "B": 1 << self.n,
            "F": 3 * (1 << (self.n - 1)) + 1,
        }[self.kind]
        if len(self.points) != expected:
            raise ValueError(
                f"kind {self.kind} at depth {self.n} must have {expected} points, "
                f"got {len(self.points)}"
            )
        for left, right in zip(self.points, self.points[1:]):
            if not left < right:
                raise ValueError("points must be strictly increasing")
        if self.points and not (0 <= self.points[0] and self.points[-1] <= 1):
            raise ValueError("points must lie in [0, 1]")

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "kind": self.kind,
            "points": [format_rational(p) for p in self.points],
        }


def _closed_form_points(n: int, kind: str) -> list[Fraction]:
    scale = Fraction(1, 1 << (n - 1))
    if kind == "A":
        return [k * scale for k in range((1 << (n - 1)) + 1)]
    thirds = (Fraction(1, 3), Fraction(2, 3))
    shifted = [(k + kappa) * scale for k in range(1 << (n - 1)) for kappa in thirds]
    if kind == "B":
        return sorted(shifted)
    zeros = [(k + 0) * scale for k in range(1 << (n - 1))]
    return sorted(zeros + shifted + [UNIT])


def _iterated_points(n: int, kind: str) -> list[Fraction]:
    targets = {"A": [ZERO], "B": [TWO_THIRDS], "F": [ZERO, TWO_THIRDS]}[kind]
    current = set(targets)
    for _ in range(n):
        # Both branches collide on the preimage of 1, hence the set.
        current = {inverse_branch(0, y) for y in current} | {
            inverse_branch(1, y) for y in current
        }
    return sorted(current)


def preimage_set(n: int, kind: str, method: str = "closed_form") -> PreimageSet:
    """Depth-n preimage set of 0 (A), 2/3 (B), or both fixed points (F)."""
    if kind not in PREIMAGE_KINDS:
        raise ValueError(f"kind must be one of {PREIMAGE_KINDS}, got {kind!r}")
    if n < 1:
        raise ValueError(f"depth must be positive, got {n}")
    check_depth(n, _DEFAULT_DEPTH_BOUND, "preimage_set")
    if method == "closed_form":
        points = _closed_form_points(n, kind)
    elif method == "iterated":
        points = _iterated_points(n, kind)
    else:
        raise ValueError(f"method must be 'closed_form' or 'iterated', got {method!r}")
    return PreimageSet(n=n, kind=kind, points=tuple(points))


@lru_cache(maxsize=64)
def grid_points(n: int) -> tuple[Fraction, ...]:
    """The kind-A grid at depth n (k / 2**(n-1)), the domain of finite tables."""
    return preimage_set(n, "A").points


@lru_cache(maxsize=64)
def new_grid_points(n: int) -> tuple[Fraction, ...]:
    """Points of the depth-n grid that are not already at depth n-1."""
    if n == 1:
        return (UNIT,)
    prev = set(grid_points(n - 1))
    return tuple(p for p in grid_points(n) if p not in prev)
