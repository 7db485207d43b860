"""Classification of Iwahori and parahoric p-refinements by spin strata.

A refinement of a p-spherical representation of GL(2n) is recorded by its
Weyl-group position, a permutation sigma of {1, ..., 2n} in one-line
notation.  The key notion is the r-spin condition: the first r and last r
one-line values pair off into pairs summing to 2n+1.  Spin conditions are
indexed by subsets of {1, ..., n}, hence by spin parabolics, and every
refinement has a unique optimal (smallest) spin parabolic.

Three equivalent tests for being P-spin are implemented, and kept separate
on purpose so they can be checked against each other:

* weyl: membership of sigma in the set W0 * W_L, decided by enumerating
  the purity-preserving subgroup W0 and comparing coset representatives;
* combinatorial: the r-spin pairing condition for every r in X_P;
* gamma: the canonical pairing function preserves {1, ..., r} for r in X_P.

The switching algorithm repairs a missing spin index with one controlled
transposition at a time, driving any refinement to a fully spin one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .parabolic import SpinParabolic, all_spin_parabolics
from .weyl import (LeviCoset, Perm, coset_min_rep, enumerate_wg0, format_one_line,
                   parse_one_line)

DEFAULT_ENUMERATION_BOUND = 5


class EnumerationBoundError(ValueError):
    """Rank exceeds the configured full-enumeration bound."""


@dataclass(frozen=True)
class Refinement:
    """An Iwahori p-refinement, i.e. a Weyl position sigma in S_{2n}."""

    n: int
    sigma: Perm

    def __post_init__(self) -> None:
        if self.sigma.degree != 2 * self.n:
            raise ValueError(f"sigma has degree {self.sigma.degree}, expected {2 * self.n}")

    @classmethod
    def from_one_line(cls, text: str) -> "Refinement":
        sigma = parse_one_line(text)
        if sigma.degree % 2 != 0:
            raise ValueError(f"degree {sigma.degree} is odd; need a permutation of 1..2n")
        return cls(sigma.degree // 2, sigma)

    @classmethod
    def identity(cls, n: int) -> "Refinement":
        return cls(n, Perm.identity(2 * n))

    def one_line(self) -> str:
        return format_one_line(self.sigma)

    def __repr__(self) -> str:
        return f"Refinement({self.one_line()})"


@dataclass(frozen=True)
class ParahoricRefinement:
    """A P-parahoric refinement: a coset sigma * W_L for the parabolic P."""

    n: int
    parabolic: SpinParabolic
    coset: LeviCoset

    @classmethod
    def of(cls, r: Refinement, p: SpinParabolic) -> "ParahoricRefinement":
        if r.n != p.n:
            raise ValueError("rank mismatch")
        return cls(r.n, p, p.levi_coset(r.sigma))

    def extensions(self) -> list[Refinement]:
        """All Iwahori refinements lying above this parahoric one."""
        return [Refinement(self.n, w) for w in self.coset.members()]


@dataclass(frozen=True)
class GammaMap:
    """The injective pairing map {1..n} -> {1..2n} attached to a refinement.

    values[i-1] is the unique index g with sigma(i) + sigma(2n+1-g) = 2n+1.
    """

    values: tuple[int, ...]

    def __call__(self, i: int) -> int:
        return self.values[i - 1]

    @property
    def n(self) -> int:
        return len(self.values)

    def preserves_prefix(self, r: int) -> bool:
        """Whether {1, ..., r} maps into itself."""
        return all(self.values[i] <= r for i in range(r))


@dataclass(frozen=True)
class SpinProfile:
    """The full spin classification of a refinement."""

    spin_set: frozenset[int]
    optimal: SpinParabolic


def gamma(r: Refinement) -> GammaMap:
    """Pairing function of a refinement: g(i) = 2n+1 - sigma^{-1}(2n+1 - sigma(i))."""
    N = 2 * r.n
    inv = r.sigma.inverse()
    values = tuple(N + 1 - inv(N + 1 - r.sigma(i)) for i in range(1, r.n + 1))
    return GammaMap(values)


def is_r_spin(r: Refinement, k: int) -> bool:
    """The r-spin pairing test on the first and last k one-line values."""
    if not (1 <= k <= r.n):
        raise ValueError(f"spin index {k} outside 1..{r.n}")
    N = 2 * r.n
    img = r.sigma.images
    first = set(img[:k])
    partners = {N + 1 - v for v in img[N - k:]}
    return first == partners


def _images_spin_set(images: tuple[int, ...], n: int) -> frozenset[int]:
    """All spin indices of a one-line word, in one incremental sweep.

    Grows the prefix-value set and the complemented suffix-value set one
    element per step; index k is spin exactly when the two sets coincide,
    i.e. when both pending difference sets are empty.
    """
    N = 2 * n
    pending_a: set[int] = set()
    pending_b: set[int] = set()
    out = []
    for k in range(1, n + 1):
        a = images[k - 1]
        b = N + 1 - images[N - k]
        if a == b:
            pass
        else:
            if a in pending_b:
                pending_b.discard(a)
            else:
                pending_a.add(a)
            if b in pending_a:
                pending_a.discard(b)
            else:
                pending_b.add(b)
        if not pending_a and not pending_b:
            out.append(k)
    return frozenset(out)


@lru_cache(maxsize=None)
def _wg0_minreps(n: int, delta: frozenset[int]) -> frozenset[tuple[int, ...]]:
    """Minimal representatives of the cosets zeta * W_L meeting W0."""
    return frozenset(coset_min_rep(z, delta).images for z in enumerate_wg0(n))


def is_P_spin(r: Refinement, p: SpinParabolic, method: str = "combinatorial") -> bool:
    """Whether the refinement is P-spin, by one of three equivalent tests."""
    p.require_spin()
    if r.n != p.n:
        raise ValueError("rank mismatch")
    if method == "weyl":
        rep = coset_min_rep(r.sigma, p.delta)
        return rep.images in _wg0_minreps(p.n, p.delta)
    if method == "combinatorial":
        return all(is_r_spin(r, k) for k in sorted(p.xp))
    if method == "gamma":
        g = gamma(r)
        return all(g.preserves_prefix(k) for k in sorted(p.xp))
    raise ValueError(f"unknown method {method!r}")


def spin_set(r: Refinement) -> frozenset[int]:
    return _images_spin_set(r.sigma.images, r.n)


def optimal_parabolic(r: Refinement) -> SpinProfile:
    """The unique smallest spin parabolic P with r P-spin."""
    s = spin_set(r)
    return SpinProfile(s, SpinParabolic.from_xp(s, r.n))


def is_B_spin(r: Refinement) -> bool:
    return len(spin_set(r)) == r.n


def stratify(n: int, bound: int = DEFAULT_ENUMERATION_BOUND
             ) -> dict[SpinParabolic, list[Refinement]]:
    """Partition all (2n)! refinements by their optimal spin parabolic.

    Every spin parabolic appears as a key, possibly with an empty stratum;
    members are sorted by one-line notation.
    """
    if n > bound:
        raise EnumerationBoundError(
            f"n={n} exceeds the enumeration bound {bound}; raise the bound explicitly")
    buckets: dict[frozenset[int], list[tuple[int, ...]]] = {
        p.xp: [] for p in all_spin_parabolics(n)}
    for images in itertools.permutations(range(1, 2 * n + 1)):
        buckets[_images_spin_set(images, n)].append(images)
    strata: dict[SpinParabolic, list[Refinement]] = {}
    for p in all_spin_parabolics(n):
        members = buckets[p.xp]
        members.sort()
        strata[p] = [Refinement(n, Perm(images)) for images in members]
    return strata


def parahoric_restrict(r: Refinement, p: SpinParabolic) -> ParahoricRefinement:
    """The unique P-parahoric refinement under an Iwahori refinement."""
    return ParahoricRefinement.of(r, p)


def parahoric_is_spin(pr: ParahoricRefinement) -> bool:
    """Whether a parahoric refinement is P-spin.

    Equivalent to any (hence every) Iwahori extension being P-spin, so the
    minimal coset representative decides.
    """
    pr.parabolic.require_spin()
    return is_P_spin(Refinement(pr.n, pr.coset.rep), pr.parabolic)


class SwitchingInvariantError(RuntimeError):
    """The located transposition fell outside its guaranteed window."""


def improve_spin_step(r: Refinement) -> tuple[int, int, Refinement]:
    """One switching step: add the smallest missing index to the spin set.

    For i the minimal index missing from the spin set, the unique j with
    sigma(j) + sigma(2n+1-i) = 2n+1 satisfies i+1 <= j <= k, where k is
    2n-i when i-1 tops the spin set and otherwise the next spin index
    above i-1.  Right-multiplying by (i, j) yields a refinement whose spin
    set gained i (and kept everything below k).
    """
    n = r.n
    N = 2 * n
    X = spin_set(r)
    if len(X) == n:
        raise ValueError("refinement is already fully spin")
    i = min(m for m in range(1, n + 1) if m not in X)
    above = sorted(m for m in X if m > i - 1)
    k = N - i if not above else above[0]
    j = r.sigma.inverse()(N + 1 - r.sigma(N + 1 - i))
    if not (i + 1 <= j <= k):
        raise SwitchingInvariantError(
            f"transposition target j={j} outside window [{i + 1}, {k}] for {r.one_line()}")
    switched = Refinement(n, r.sigma * Perm.transposition(i, j, N))
    if not is_r_spin(switched, i):
        raise SwitchingInvariantError(f"switch failed to make {r.one_line()} {i}-spin")
    return i, j, switched


def to_B_spin(r: Refinement) -> tuple[list[tuple[int, int]], Refinement]:
    """Drive a refinement to a fully spin one by repeated switching.

    Returns the transpositions tau = [(i_1, j_1), ...] applied in order on
    the right, and the final refinement; the count is at most n minus the
    size of the starting spin set.
    """
    taus: list[tuple[int, int]] = []
    budget = r.n - len(spin_set(r))
    current = r
    while not is_B_spin(current):
        i, j, current = improve_spin_step(current)
        taus.append((i, j))
        if len(taus) > budget:
            raise SwitchingInvariantError(
                f"needed more than {budget} switches for {r.one_line()}")
    return taus, current
