"""Weyl groups of GL(2n) and GSpin(2n+1), and the embedding between them.

Conventions, fixed once and used everywhere downstream:

* A permutation sigma of {1, ..., N} is stored in one-line notation
  (sigma(1), ..., sigma(N)).  Multiplication is composition of functions,
  (sigma * tau)(i) = sigma(tau(i)), so right-multiplying by a transposition
  (i, j) swaps the entries at positions i and j of the one-line word.
* sigma acts on a coordinate vector mu by index composition,
  mu^sigma = (mu_{sigma(1)}, ..., mu_{sigma(N)}), a right action.
* The GSpin Weyl group {+-1}^n x| S_n embeds in S_{2n} as the permutations
  with sigma(i) + sigma(2n+1-i) = 2n+1: the i-th sign swaps i <-> 2n+1-i,
  and the S_n part moves the pairs {i, 2n+1-i} around.

Parabolic coset machinery works with left cosets sigma * W_L, where W_L is
the Young subgroup generated by the adjacent transpositions named by a
subset of {1, ..., N-1}.  Right multiplication by W_L rearranges one-line
entries inside consecutive position blocks, so the Bruhat-minimal coset
representative just sorts each block.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterable, Iterator, Optional

from .rootdata import GSpinCharacter, GSpinCocharacter, RankMismatchError


@dataclass(frozen=True)
class Perm:
    """Permutation of {1, ..., N} in one-line notation."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        N = len(self.images)
        seen = 0
        for v in self.images:
            if not isinstance(v, int) or not (1 <= v <= N) or (seen >> v) & 1:
                raise ValueError(f"not a permutation of 1..{N}: {self.images}")
            seen |= 1 << v

    @classmethod
    def identity(cls, N: int) -> "Perm":
        return cls(tuple(range(1, N + 1)))

    @classmethod
    def transposition(cls, i: int, j: int, N: int) -> "Perm":
        if not (1 <= i <= N and 1 <= j <= N and i != j):
            raise ValueError(f"bad transposition ({i},{j}) for N={N}")
        images = list(range(1, N + 1))
        images[i - 1], images[j - 1] = j, i
        return cls(tuple(images))

    @classmethod
    def simple(cls, i: int, N: int) -> "Perm":
        """The simple reflection s_i = (i, i+1)."""
        return cls.transposition(i, i + 1, N)

    @classmethod
    def longest(cls, N: int) -> "Perm":
        return cls(tuple(range(N, 0, -1)))

    @classmethod
    def from_word(cls, word: Iterable[int], N: int) -> "Perm":
        out = cls.identity(N)
        for i in word:
            out = out * cls.simple(i, N)
        return out

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Perm") -> "Perm":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return Perm(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> "Perm":
        inv = [0] * self.degree
        for pos, val in enumerate(self.images, start=1):
            inv[val - 1] = pos
        return Perm(tuple(inv))

    def length(self) -> int:
        """Bruhat length, the number of inversions."""
        img = self.images
        return sum(1 for a in range(len(img)) for b in range(a + 1, len(img)) if img[a] > img[b])

    def reduced_word(self) -> list[int]:
        """Indices i_1, ..., i_k with self = s_{i_1} * ... * s_{i_k}, k = length."""
        img = list(self.images)
        word: list[int] = []
        done = False
        while not done:
            done = True
            for i in range(len(img) - 1):
                if img[i] > img[i + 1]:
                    img[i], img[i + 1] = img[i + 1], img[i]
                    word.append(i + 1)
                    done = False
                    break
        word.reverse()
        return word

    def act_char(self, coeffs: tuple[int, ...]) -> tuple[int, ...]:
        """mu^sigma = (mu_{sigma(1)}, ..., mu_{sigma(N)})."""
        if len(coeffs) != self.degree:
            raise ValueError("length mismatch")
        return tuple(coeffs[v - 1] for v in self.images)

    def __repr__(self) -> str:
        return f"Perm({format_one_line(self)})"


def format_one_line(p: Perm) -> str:
    """Concatenated digits for N <= 9, comma-separated above that."""
    if p.degree <= 9:
        return "".join(str(v) for v in p.images)
    return ",".join(str(v) for v in p.images)


def parse_one_line(text: str) -> Perm:
    """Parse one-line notation, raising ValueError that names the bad position."""
    text = text.strip()
    if not text:
        raise ValueError("empty permutation string")
    if "," in text:
        parts = text.split(",")
    else:
        parts = list(text)
    images = []
    for pos, part in enumerate(parts, start=1):
        part = part.strip()
        if not part.isdigit():
            raise ValueError(f"position {pos}: {part!r} is not a digit")
        images.append(int(part))
    N = len(images)
    seen = set()
    for pos, v in enumerate(images, start=1):
        if not (1 <= v <= N):
            raise ValueError(f"position {pos}: value {v} outside 1..{N}")
        if v in seen:
            raise ValueError(f"position {pos}: value {v} repeated")
        seen.add(v)
    return Perm(tuple(images))


# ---------------------------------------------------------------------------
# The hyperoctahedral group {+-1}^n x| S_n.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SignedPerm:
    """Element of {+-1}^n x| S_n: a sign vector and a permutation of {1..n}.

    Internally this is the odd bijection f of {-n..-1, 1..n} with
    f(i) = signs[perm(i)] * perm(i) for i > 0; multiplication is
    composition of these bijections.
    """

    signs: tuple[int, ...]
    perm: Perm

    def __post_init__(self) -> None:
        if len(self.signs) != self.perm.degree:
            raise ValueError("sign vector and permutation sizes differ")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +-1")

    @classmethod
    def identity(cls, n: int) -> "SignedPerm":
        return cls((1,) * n, Perm.identity(n))

    @classmethod
    def sign_flip(cls, i: int, n: int) -> "SignedPerm":
        return cls(tuple(-1 if k == i else 1 for k in range(1, n + 1)), Perm.identity(n))

    @classmethod
    def from_perm(cls, p: Perm) -> "SignedPerm":
        return cls((1,) * p.degree, p)

    @property
    def n(self) -> int:
        return self.perm.degree

    def signed_image(self, i: int) -> int:
        """f(i) for i in {-n..-1, 1..n}."""
        if i > 0:
            j = self.perm(i)
            return self.signs[j - 1] * j
        return -self.signed_image(-i)

    def __mul__(self, other: "SignedPerm") -> "SignedPerm":
        if self.n != other.n:
            raise ValueError("size mismatch")
        n = self.n
        new_perm = [0] * n
        new_signs = [1] * n
        for i in range(1, n + 1):
            v = self.signed_image(other.signed_image(i))
            new_perm[i - 1] = abs(v)
            new_signs[abs(v) - 1] = 1 if v > 0 else -1
        return SignedPerm(tuple(new_signs), Perm(tuple(new_perm)))

    def inverse(self) -> "SignedPerm":
        n = self.n
        new_perm = [0] * n
        new_signs = [1] * n
        for i in range(1, n + 1):
            v = self.signed_image(i)
            new_perm[abs(v) - 1] = i
            new_signs[i - 1] = 1 if v > 0 else -1
        return SignedPerm(tuple(new_signs), Perm(tuple(new_perm)))


def enumerate_signed_perms(n: int) -> Iterator[SignedPerm]:
    for images in permutations(range(1, n + 1)):
        for signs in product((1, -1), repeat=n):
            yield SignedPerm(signs, Perm(images))


def embed_wg0(s: SignedPerm, n: int) -> Perm:
    """Embed a signed permutation as an element of S_{2n} preserving purity.

    The pair {i, 2n+1-i} goes to the pair {j, 2n+1-j} for j = perm(i),
    exchanged when signs[j] = -1.
    """
    if s.n != n:
        raise RankMismatchError(f"signed perm has size {s.n}, expected {n}")
    N = 2 * n
    images = [0] * N
    for i in range(1, n + 1):
        j = s.perm(i)
        if s.signs[j - 1] == 1:
            images[i - 1] = j
            images[N - i] = N + 1 - j
        else:
            images[i - 1] = N + 1 - j
            images[N - i] = j
    return Perm(tuple(images))


def in_wg0(sigma: Perm) -> Optional[SignedPerm]:
    """Inverse of embed_wg0 on its image; None off the image.

    The image is cut out by sigma(i) + sigma(2n+1-i) = 2n+1 for all i.
    """
    N = sigma.degree
    if N % 2 != 0:
        return None
    n = N // 2
    for i in range(1, n + 1):
        if sigma(i) + sigma(N + 1 - i) != N + 1:
            return None
    perm = [0] * n
    signs = [1] * n
    for i in range(1, n + 1):
        v = sigma(i)
        if v <= n:
            perm[i - 1] = v
            signs[v - 1] = 1
        else:
            perm[i - 1] = N + 1 - v
            signs[N - v] = -1
    return SignedPerm(tuple(signs), Perm(tuple(perm)))


def enumerate_wg0(n: int) -> list[Perm]:
    """All 2^n n! elements of the purity-preserving subgroup of S_{2n}."""
    return [embed_wg0(s, n) for s in enumerate_signed_perms(n)]


# ---------------------------------------------------------------------------
# Parabolic (Young) subgroups and left cosets.
# ---------------------------------------------------------------------------

def position_blocks(delta: frozenset[int] | set[int], N: int) -> list[range]:
    """Consecutive position blocks of the Young subgroup named by delta.

    delta is a set of simple-reflection indices in {1, ..., N-1}; positions
    i and i+1 sit in one block exactly when i is in delta.
    """
    blocks = []
    start = 1
    for i in range(1, N + 1):
        if i == N or i not in delta:
            blocks.append(range(start, i + 1))
            start = i + 1
    return blocks


def coset_min_rep(sigma: Perm, delta: frozenset[int] | set[int]) -> Perm:
    """Bruhat-minimal representative of the left coset sigma * W_L.

    Sorting the one-line entries inside each position block gives the
    unique minimal-length member; the operation is idempotent.
    """
    images = list(sigma.images)
    for block in position_blocks(delta, sigma.degree):
        lo, hi = block.start - 1, block.stop - 1
        images[lo:hi] = sorted(images[lo:hi])
    return Perm(tuple(images))


@dataclass(frozen=True)
class LeviCoset:
    """Left coset sigma * W_L, canonicalized by its minimal representative."""

    rep: Perm
    delta: frozenset[int]

    @classmethod
    def of(cls, sigma: Perm, delta: Iterable[int]) -> "LeviCoset":
        delta = frozenset(delta)
        return cls(coset_min_rep(sigma, delta), delta)

    @property
    def degree(self) -> int:
        return self.rep.degree

    def members(self) -> Iterator[Perm]:
        """All coset members: entries permuted within each position block."""
        blocks = position_blocks(self.delta, self.degree)
        choices = [permutations(self.rep.images[b.start - 1: b.stop - 1]) for b in blocks]
        for combo in product(*choices):
            flat: list[int] = []
            for piece in combo:
                flat.extend(piece)
            yield Perm(tuple(flat))

    def size(self) -> int:
        out = 1
        for b in position_blocks(self.delta, self.degree):
            for k in range(2, len(b) + 1):
                out *= k
        return out

    def block_values(self) -> tuple[tuple[int, ...], ...]:
        """Sorted one-line values in each position block (a set partition)."""
        return tuple(
            tuple(sorted(self.rep.images[b.start - 1: b.stop - 1]))
            for b in position_blocks(self.delta, self.degree)
        )


class Trichotomy(enum.Enum):
    PERMUTES = "permutes"
    ALL_SHORTER = "all_shorter"
    ALL_LONGER = "all_longer"


def simple_trichotomy(s: int, coset: LeviCoset) -> Trichotomy:
    """How left multiplication by the simple reflection s_s moves a coset.

    Exactly one of three things happens: s_s permutes the coset, or it
    shortens every member, or it lengthens every member.  The verdict can
    be read off the minimal representative alone.
    """
    N = coset.degree
    if not (1 <= s <= N - 1):
        raise ValueError(f"simple reflection index {s} outside 1..{N - 1}")
    w_min = coset.rep
    sw = Perm.simple(s, N) * w_min
    if coset_min_rep(sw, coset.delta) == w_min:
        return Trichotomy.PERMUTES
    if sw.length() < w_min.length():
        return Trichotomy.ALL_SHORTER
    return Trichotomy.ALL_LONGER


def generate_subgroup(gens: list, identity):
    """Closure of a generating set under multiplication (small groups only)."""
    elems = {identity}
    frontier = [identity]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in elems:
                    elems.add(y)
                    new.append(y)
        frontier = new
    return elems


# ---------------------------------------------------------------------------
# Weyl action on the GSpin lattices.
# ---------------------------------------------------------------------------

def _act_sign_char(i: int, coeffs: tuple[int, ...]) -> tuple[int, ...]:
    # sign flip in slot i: f_0 -> f_0 + f_i, f_i -> -f_i, other f_j fixed
    out = list(coeffs)
    out[i] = coeffs[0] - coeffs[i]
    return tuple(out)


def _act_perm_char(p: Perm, coeffs: tuple[int, ...]) -> tuple[int, ...]:
    # f_i -> f_{p^{-1}(i)}, i.e. coefficient vector composes with p
    return (coeffs[0],) + tuple(coeffs[p(i)] for i in range(1, len(coeffs)))


def gspin_weyl_act(w: SignedPerm, chi: GSpinCharacter) -> GSpinCharacter:
    """Right action chi^w on GSpin characters.

    Generator rules: the S_n part permutes f_1, ..., f_n (fixing f_0) and
    the i-th sign sends f_0 to f_0 + f_i and f_i to -f_i.  Composition is
    arranged so that transfer to GL intertwines this with the index action
    there: j(chi^w) = j(chi)^{embed(w)}.
    """
    if w.n != chi.n:
        raise RankMismatchError(f"rank mismatch: element has n={w.n}, character n={chi.n}")
    coeffs = chi.coeffs
    for i in range(1, w.n + 1):
        if w.signs[i - 1] == -1:
            coeffs = _act_sign_char(i, coeffs)
    coeffs = _act_perm_char(w.perm, coeffs)
    return GSpinCharacter(chi.n, coeffs)


def _act_sign_cochar(i: int, coeffs: tuple[int, ...]) -> tuple[int, ...]:
    # sign flip in slot i: f_0* fixed, f_i* -> f_0* - f_i*
    out = list(coeffs)
    out[0] = coeffs[0] + coeffs[i]
    out[i] = -coeffs[i]
    return tuple(out)


def gspin_weyl_act_cochar(w: SignedPerm, nu: GSpinCocharacter) -> GSpinCocharacter:
    """Right action nu^w on GSpin cocharacters (dual to gspin_weyl_act)."""
    if w.n != nu.n:
        raise RankMismatchError(f"rank mismatch: element has n={w.n}, cocharacter n={nu.n}")
    coeffs = nu.coeffs
    for i in range(1, w.n + 1):
        if w.signs[i - 1] == -1:
            coeffs = _act_sign_cochar(i, coeffs)
    coeffs = _act_perm_char(w.perm, coeffs)
    return GSpinCocharacter(nu.n, coeffs)
