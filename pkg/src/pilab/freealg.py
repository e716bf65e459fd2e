"""Free-algebra symbolic layer: multilinear spaces, Capelli polynomials,
layered alternating generators and the alternation operator.

Monomials are integer-coded words: token ``i > 0`` is the variable x_i,
token ``-j < 0`` is the frame variable w_j.  Specializing a frame variable
to 1 simply deletes its token, so the empty word is the constant monomial 1.
The supported working envelope is n <= 8 multilinear variables (8! = 40320
monomials).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from math import factorial
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import NotMultilinearInLayer, Overflow

Word = tuple[int, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)

DEFAULT_LAYER_BOUND = 10


def x(i: int) -> int:
    if i < 1:
        raise ValueError("x-variables are 1-indexed")
    return i


def w(j: int) -> int:
    if j < 1:
        raise ValueError("w-variables are 1-indexed")
    return -j


def token_name(tok: int) -> str:
    return f"x{tok}" if tok > 0 else f"w{-tok}"


class MultilinearPoly:
    """A rational-coefficient polynomial in the free algebra.

    The main citizens are multilinear elements of V_n (each x_i exactly once
    per monomial, frame variables at most once), but substitution may leave
    that subspace; ``is_multilinear`` reports whether the invariant holds.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, Fraction] | None = None):
        t = {}
        if terms:
            for word, coeff in terms.items():
                if coeff:
                    t[tuple(word)] = Fraction(coeff)
        self.terms: dict[Word, Fraction] = t

    # -- construction helpers ------------------------------------------

    @classmethod
    def zero(cls) -> "MultilinearPoly":
        return cls()

    @classmethod
    def monomial(cls, word: Iterable[int], coeff=1) -> "MultilinearPoly":
        return cls({tuple(word): Fraction(coeff)})

    # -- ring-ish operations -------------------------------------------

    def __add__(self, other: "MultilinearPoly") -> "MultilinearPoly":
        out = dict(self.terms)
        for word, c in other.terms.items():
            nv = out.get(word, _ZERO) + c
            if nv:
                out[word] = nv
            else:
                out.pop(word, None)
        res = MultilinearPoly()
        res.terms = out
        return res

    def __sub__(self, other: "MultilinearPoly") -> "MultilinearPoly":
        return self + (-other)

    def __neg__(self) -> "MultilinearPoly":
        res = MultilinearPoly()
        res.terms = {word: -c for word, c in self.terms.items()}
        return res

    def scale(self, coeff) -> "MultilinearPoly":
        coeff = Fraction(coeff)
        res = MultilinearPoly()
        if coeff:
            res.terms = {word: c * coeff for word, c in self.terms.items()}
        return res

    def __mul__(self, other: "MultilinearPoly") -> "MultilinearPoly":
        out: dict[Word, Fraction] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                word = w1 + w2
                nv = out.get(word, _ZERO) + c1 * c2
                if nv:
                    out[word] = nv
                else:
                    out.pop(word, None)
        res = MultilinearPoly()
        res.terms = out
        return res

    def __eq__(self, other):
        return isinstance(other, MultilinearPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        return f"MultilinearPoly({format_poly(self)!r})"

    # -- structure queries ----------------------------------------------

    def variables(self) -> set[int]:
        seen: set[int] = set()
        for word in self.terms:
            seen.update(word)
        return seen

    def x_variables(self) -> set[int]:
        return {tok for tok in self.variables() if tok > 0}

    def w_variables(self) -> set[int]:
        return {-tok for tok in self.variables() if tok < 0}

    def is_multilinear(self) -> bool:
        xs = self.x_variables()
        for word in self.terms:
            counts: dict[int, int] = {}
            for tok in word:
                counts[tok] = counts.get(tok, 0) + 1
            for xv in xs:
                if counts.get(xv, 0) != 1:
                    return False
            if any(tok < 0 and c > 1 for tok, c in counts.items()):
                return False
        return True

    def occurs_once_everywhere(self, tok: int) -> bool:
        return all(word.count(tok) == 1 for word in self.terms)

    def rename(self, mapping: Mapping[int, int]) -> "MultilinearPoly":
        res = MultilinearPoly()
        out: dict[Word, Fraction] = {}
        for word, c in self.terms.items():
            nw = tuple(mapping.get(tok, tok) for tok in word)
            nv = out.get(nw, _ZERO) + c
            if nv:
                out[nw] = nv
            else:
                out.pop(nw, None)
        res.terms = out
        return res

    def swap(self, a: int, b: int) -> "MultilinearPoly":
        return self.rename({a: b, b: a})


# -- Capelli polynomials ------------------------------------------------


def capelli(m: int) -> MultilinearPoly:
    """The m-th Capelli polynomial: the signed sum over S_m of
    w1 x_{s(1)} w2 x_{s(2)} ... w_m x_{s(m)} w_{m+1}; m! terms, coefficients +-1."""
    if m < 1:
        raise ValueError("capelli requires m >= 1")
    terms: dict[Word, Fraction] = {}
    for perm in permutations(range(1, m + 1)):
        word = []
        for slot, xi in enumerate(perm, start=1):
            word.append(w(slot))
            word.append(xi)
        word.append(w(m + 1))
        terms[tuple(word)] = Fraction(perm_sign(perm))
    return MultilinearPoly(terms)


def perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    order = sorted(range(len(perm)), key=lambda i: perm[i])
    for i in range(len(perm)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def specialize_frames(f: MultilinearPoly, ones: Iterable[int]) -> MultilinearPoly:
    """Set the listed frame variables w_j to 1 (their tokens are deleted)."""
    drop = {-j for j in ones}
    out: dict[Word, Fraction] = {}
    for word, c in f.terms.items():
        nw = tuple(tok for tok in word if tok not in drop)
        nv = out.get(nw, _ZERO) + c
        if nv:
            out[nw] = nv
        else:
            out.pop(nw, None)
    res = MultilinearPoly()
    res.terms = out
    return res


def capelli_list(m: int) -> list[MultilinearPoly]:
    """The Capelli list: C_m together with every specialization of a subset
    of its frame variables to 1; 2**(m+1) polynomials, C_m first."""
    base = capelli(m)
    frames = list(range(1, m + 2))
    out = []
    for mask in range(2 ** len(frames)):
        ones = [frames[i] for i in range(len(frames)) if mask >> i & 1]
        out.append(specialize_frames(base, ones))
    return out


# -- alternation ---------------------------------------------------------


def alternate(f: MultilinearPoly, layer: Iterable[int]) -> MultilinearPoly:
    """Signed symmetrization of f over the given x-variable layer."""
    layer = sorted(layer)
    for v in layer:
        if not f.occurs_once_everywhere(v):
            raise NotMultilinearInLayer(f"variable x{v} not uniform in every term")
    out = MultilinearPoly()
    for perm in permutations(layer):
        mapping = dict(zip(layer, perm))
        out = out + f.rename(mapping).scale(perm_sign(_relative_perm(layer, perm)))
    return out


def _relative_perm(base: Sequence[int], image: Sequence[int]) -> list[int]:
    pos = {v: i + 1 for i, v in enumerate(base)}
    return [pos[v] for v in image]


def is_alternating(f: MultilinearPoly, layer: Iterable[int]) -> bool:
    layer = sorted(layer)
    return all(f.swap(a, b) == -f for a, b in combinations(layer, 2))


# -- layered spaces -------------------------------------------------------


@dataclass(frozen=True)
class LayerScheme:
    """Variable layout for M_{mu,t,s}: mu small layers of size t, then s big
    layers of size t+1, numbered consecutively from x1."""

    mu: int
    t: int
    s: int
    free_vars: tuple[int, ...] = ()

    @property
    def small_layers(self) -> list[tuple[int, ...]]:
        return [tuple(range(i * self.t + 1, (i + 1) * self.t + 1))
                for i in range(self.mu)]

    @property
    def big_layers(self) -> list[tuple[int, ...]]:
        base = self.mu * self.t
        size = self.t + 1
        return [tuple(range(base + i * size + 1, base + (i + 1) * size + 1))
                for i in range(self.s)]

    @property
    def layers(self) -> list[tuple[int, ...]]:
        return self.small_layers + self.big_layers

    @property
    def n_layered(self) -> int:
        return self.mu * self.t + self.s * (self.t + 1)


def layered_space_dim(mu: int, t: int, s: int, bound: int = 20) -> int:
    """dim M_{mu,t,s} = N!/(t!^mu (t+1)!^s) with N = mu*t + s*(t+1)."""
    n = mu * t + s * (t + 1)
    if n > bound:
        raise Overflow(f"N = {n} exceeds bound {bound}")
    return factorial(n) // (factorial(t) ** mu * factorial(t + 1) ** s)


def _position_assignments(sizes: Sequence[int], positions: tuple[int, ...]) -> Iterator[list[tuple[int, ...]]]:
    """Ordered partitions of ``positions`` into blocks of the given sizes,
    each block ascending; lexicographic in the block subsets."""
    if not sizes:
        yield []
        return
    first, rest = sizes[0], sizes[1:]
    for block in combinations(positions, first):
        remaining = tuple(p for p in positions if p not in block)
        for tail in _position_assignments(rest, remaining):
            yield [block] + tail


def layered_generators(mu: int, t: int, s: int,
                       frame_policy: str = "keep",
                       bound: int = DEFAULT_LAYER_BOUND) -> Iterator[MultilinearPoly]:
    """Deterministic spanning stream of M_{mu,t,s}(X, W).

    One fully alternated polynomial per coset of S_N modulo the layer group,
    times (with ``frame_policy="subsets"``) one copy per frame-specialization
    subset.  Coset representatives place each layer's variables in ascending
    order on an ascending set of word positions.
    """
    if frame_policy not in ("keep", "subsets"):
        raise ValueError("frame_policy must be 'keep' or 'subsets'")
    scheme = LayerScheme(mu, t, s)
    n = scheme.n_layered
    if n > bound:
        raise Overflow(f"N = {n} exceeds bound {bound}")
    layers = scheme.layers
    sizes = [len(layer) for layer in layers]
    frames = list(range(1, n + 2))
    for blocks in _position_assignments(sizes, tuple(range(1, n + 1))):
        slot_var: dict[int, int] = {}
        for layer, block in zip(layers, blocks):
            for var, pos in zip(layer, block):
                slot_var[pos] = var
        word = []
        for pos in range(1, n + 1):
            word.append(w(pos))
            word.append(slot_var[pos])
        word.append(w(n + 1))
        poly = MultilinearPoly.monomial(word)
        for layer in layers:
            poly = alternate(poly, layer)
        if frame_policy == "keep":
            yield poly
        else:
            for mask in range(2 ** len(frames)):
                ones = [frames[i] for i in range(len(frames)) if mask >> i & 1]
                yield specialize_frames(poly, ones)


# -- substitution ----------------------------------------------------------


def substitute(f: MultilinearPoly, assignment: Mapping[int, Sequence[int]]) -> MultilinearPoly:
    """Replace variables by free-algebra words; the 1-slot is the empty word.

    ``assignment`` maps tokens (positive for x, negative for w) to
    replacement words; unmapped tokens stay.  The result is renormalized and
    may leave the multilinear subspace.
    """
    out: dict[Word, Fraction] = {}
    for word, c in f.terms.items():
        nw: list[int] = []
        for tok in word:
            if tok in assignment:
                nw.extend(assignment[tok])
            else:
                nw.append(tok)
        key = tuple(nw)
        nv = out.get(key, _ZERO) + c
        if nv:
            out[key] = nv
        else:
            out.pop(key, None)
    res = MultilinearPoly()
    res.terms = out
    return res


# -- textual format ---------------------------------------------------------


def format_poly(f: MultilinearPoly) -> str:
    """Render as `coeff tok tok ...` terms joined by ' + '; empty word is 1."""
    if not f.terms:
        return "0"
    parts = []
    for word in sorted(f.terms):
        c = f.terms[word]
        body = " ".join(token_name(tok) for tok in word) if word else "1"
        parts.append(f"{c} {body}")
    return " + ".join(parts)


def parse_poly(text: str) -> MultilinearPoly:
    text = text.strip()
    if text == "0":
        return MultilinearPoly.zero()
    terms: dict[Word, Fraction] = {}
    for chunk in text.split(" + "):
        bits = chunk.split()
        coeff = Fraction(bits[0])
        word: list[int] = []
        for name in bits[1:]:
            if name == "1":
                continue
            if name.startswith("x"):
                word.append(int(name[1:]))
            elif name.startswith("w"):
                word.append(-int(name[1:]))
            else:
                raise ValueError(f"bad token {name!r}")
        key = tuple(word)
        terms[key] = terms.get(key, _ZERO) + coeff
    return MultilinearPoly(terms)
