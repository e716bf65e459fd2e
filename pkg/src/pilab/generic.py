"""Generic elements and relatively free algebras inside A (x) Q[lambda]:
degreewise Hilbert functions, trace tuples and trace rings, the
Cayley-Hamilton vanishing check, and the closed-form dimension formulas.

The relatively free algebra is never presented by normal forms; each graded
piece is the span of evaluated words, so everything reduces to exact ranks
of coefficient matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .algebra import FDAlgebra, ts_index
from .errors import BudgetExceeded, InvalidParams, NotSplit
from .linalg import RowReducer
from .polys import MPoly

_ZERO = Fraction(0)
_ONE = Fraction(1)

DEFAULT_TERM_BUDGET = 2_000_000


@dataclass
class GenericElement:
    """Element of A (x) Q[lambda]: one polynomial per basis coordinate."""
    algebra: FDAlgebra
    coords: tuple[MPoly, ...]

    def __add__(self, other: "GenericElement") -> "GenericElement":
        return GenericElement(self.algebra,
                              tuple(x + y for x, y in zip(self.coords, other.coords)))


def generic_elements(a: FDAlgebra, m: int) -> list[GenericElement]:
    """xi_j = sum_i lambda_{i,j} b_i for j = 1..m; variable (i, j) is slot
    j*dim + i of the polynomial ring."""
    nvars = a.dim * m
    out = []
    for j in range(m):
        coords = tuple(MPoly.variable(nvars, j * a.dim + i) for i in range(a.dim))
        out.append(GenericElement(a, coords))
    return out


def _mult_generic(a: FDAlgebra, x: Sequence[MPoly], j: int, nvars: int) -> list[MPoly]:
    """Right-multiply generic coordinates by the generic element xi_j."""
    out = [MPoly.zero(nvars) for _ in range(a.dim)]
    for l, p in enumerate(x):
        if p.is_zero():
            continue
        row = a.table[l]
        for i in range(a.dim):
            cell = row[i]
            if not cell:
                continue
            factor = p * MPoly.variable(nvars, j * a.dim + i)
            for k, c in cell.items():
                out[k] = out[k] + factor.scale(c)
    return out


def _word_coords(a: FDAlgebra, word: Sequence[int], m: int,
                 cache: dict | None = None) -> list[MPoly]:
    """Coordinates of xi_{word[0]} ... xi_{word[-1]} in A (x) Q[lambda]."""
    nvars = a.dim * m
    word = tuple(word)
    if cache is not None and word in cache:
        return cache[word]
    if len(word) == 1:
        j = word[0]
        coords = [MPoly.variable(nvars, j * a.dim + i) for i in range(a.dim)]
    else:
        prefix = _word_coords(a, word[:-1], m, cache)
        coords = _mult_generic(a, prefix, word[-1], nvars)
    if cache is not None:
        cache[word] = coords
    return coords


@dataclass
class HilbertFunction:
    """Degreewise dimensions, optionally refined by multidegree."""
    dims: dict
    truncation: int
    multigraded: bool
    unital: bool

    def series_prefix(self) -> list[int]:
        if self.multigraded:
            totals: dict[int, int] = {}
            for key, v in self.dims.items():
                totals[sum(key)] = totals.get(sum(key), 0) + v
            return [totals.get(d, 0) for d in range(self.truncation + 1)]
        return [self.dims.get(d, 0) for d in range(self.truncation + 1)]

    def to_json_dict(self) -> dict:
        if self.multigraded:
            dims = [[list(k), v] for k, v in sorted(self.dims.items())]
        else:
            dims = self.series_prefix()
        return {"graded": self.multigraded, "truncation": self.truncation,
                "unital": self.unital, "dims": dims}


def _multidegrees(m: int, d: int) -> list[tuple[int, ...]]:
    out = []

    def rec(rest: int, slot: int, acc: tuple[int, ...]):
        if slot == m - 1:
            out.append(acc + (rest,))
            return
        for take in range(rest + 1):
            rec(rest - take, slot + 1, acc + (take,))

    rec(d, 0, ())
    return out


def _words_of_multidegree(mdeg: tuple[int, ...]) -> Iterable[tuple[int, ...]]:
    counts = list(mdeg)
    total = sum(counts)
    word: list[int] = []

    def rec():
        if len(word) == total:
            yield tuple(word)
            return
        for j, c in enumerate(counts):
            if c:
                counts[j] -= 1
                word.append(j)
                yield from rec()
                word.pop()
                counts[j] += 1

    yield from rec()


def relfree_hilbert(a: FDAlgebra, m: int, d_max: int, multigraded: bool = False,
                    unital: bool | None = None,
                    term_budget: int = DEFAULT_TERM_BUDGET) -> HilbertFunction:
    """Degreewise dimension of the algebra generated by m generic elements.

    Degree d is the rank of the coefficient matrix of all m^d words; the
    rank splits across multidegrees because their coefficient supports are
    disjoint.
    """
    if d_max < 1:
        raise InvalidParams("d_max must be >= 1")
    if unital is None:
        unital = a.has_unit
    dims: dict = {}
    if unital:
        if multigraded:
            dims[(0,) * m] = 1
        else:
            dims[0] = 1
    cache: dict = {}
    spent = 0
    for d in range(1, d_max + 1):
        for mdeg in _multidegrees(m, d):
            red = RowReducer()
            for word in _words_of_multidegree(mdeg):
                coords = _word_coords(a, word, m, cache)
                row = {}
                for k, p in enumerate(coords):
                    for e, c in p.terms.items():
                        row[(k, e)] = c
                spent += max(len(row), 1)
                if spent > term_budget:
                    raise BudgetExceeded("term budget exhausted; lower d_max")
                red.add_row(row)
            if red.rank:
                if multigraded:
                    dims[mdeg] = red.rank
                else:
                    dims[d] = dims.get(d, 0) + red.rank
        # keep only the last level in the cache to bound memory
        cache = {w: v for w, v in cache.items() if len(w) == d}
    return HilbertFunction(dims, d_max, multigraded, unital)


# -- traces -------------------------------------------------------------------


def trace_map(a: FDAlgebra, x) -> tuple:
    """Tuple of traces of left multiplication on each simple block of A/J.

    Accepts a plain coordinate vector (returns Fractions) or a
    GenericElement / coordinate list of MPoly (returns MPoly).
    """
    rep = a.structure
    if rep.t and not rep.block_sizes:
        raise NotSplit("structure report lacks split block data")
    coords = x.coords if isinstance(x, GenericElement) else x
    q = rep.q
    if not q:
        return ()
    first = coords[0]
    if isinstance(first, MPoly):
        out = [MPoly.zero(first.nvars) for _ in range(q)]
        for k, p in enumerate(coords):
            if p.is_zero():
                continue
            tk = rep.block_traces[k]
            for i in range(q):
                if tk[i]:
                    out[i] = out[i] + p.scale(tk[i])
        return tuple(out)
    return rep.block_trace_of(coords)


def trace_ring_hilbert(a: FDAlgebra, m: int, d_max: int,
                       term_budget: int = DEFAULT_TERM_BUDGET) -> HilbertFunction:
    """Degreewise dimension of the subalgebra of Q[lambda]^q generated by
    the trace tuples t(w) of words w in the generic elements.

    Words are deduplicated up to cyclic rotation (trace invariance), ranks
    split by multidegree, and degree 0 is the constants.
    """
    if d_max < 1:
        raise InvalidParams("d_max must be >= 1")
    rep = a.structure
    q = rep.q
    dims: dict[int, int] = {0: 1}
    if q == 0:
        for d in range(1, d_max + 1):
            dims[d] = 0
        return HilbertFunction(dims, d_max, False, True)
    cache: dict = {}
    # trace tuples of necklace words, by length
    necklaces: dict[int, list[tuple[tuple[int, ...], tuple]]] = {}
    spent = 0
    for length in range(1, d_max + 1):
        reps = []
        seen = set()
        for word in product(range(m), repeat=length):
            canon = min(word[i:] + word[:i] for i in range(length))
            if canon in seen:
                continue
            seen.add(canon)
            coords = _word_coords(a, canon, m, cache)
            traces = trace_map(a, coords)
            spent += sum(len(t.terms) for t in traces)
            if spent > term_budget:
                raise BudgetExceeded("term budget exhausted; lower d_max")
            if any(t for t in traces):
                reps.append((canon, traces))
        necklaces[length] = reps
        cache = {w: v for w, v in cache.items() if len(w) == length}

    nvars = a.dim * m
    one_tuple = tuple(MPoly.constant(nvars, 1) for _ in range(q))

    def multiset_products(d: int):
        """Products of trace tuples with total word length d, nondecreasing
        over a fixed enumeration to avoid duplicates."""
        pool: list[tuple[tuple[int, ...], tuple]] = []
        for length in range(1, d + 1):
            pool.extend(necklaces[length])

        def rec(start: int, remaining: int, acc):
            if remaining == 0:
                yield acc
                return
            for idx in range(start, len(pool)):
                word, traces = pool[idx]
                if len(word) > remaining:
                    continue
                prod_traces = tuple(x * y for x, y in zip(acc, traces))
                if not any(prod_traces):
                    continue
                yield from rec(idx, remaining - len(word), prod_traces)

        yield from rec(0, d, one_tuple)

    for d in range(1, d_max + 1):
        groups: dict[tuple[int, ...], RowReducer] = {}
        for traces in multiset_products(d):
            row = {}
            mdeg_key = None
            for i, p in enumerate(traces):
                for e, c in p.terms.items():
                    row[(i, e)] = c
                    if mdeg_key is None:
                        mdeg_key = _lambda_multidegree(e, a.dim, m)
            if not row:
                continue
            red = groups.setdefault(mdeg_key, RowReducer())
            spent += len(row)
            if spent > term_budget:
                raise BudgetExceeded("term budget exhausted; lower d_max")
            red.add_row(row)
        dims[d] = sum(red.rank for red in groups.values())
    return HilbertFunction(dims, d_max, False, True)


def _lambda_multidegree(e: tuple[int, ...], dim: int, m: int) -> tuple[int, ...]:
    out = [0] * m
    for slot, exp in enumerate(e):
        if exp:
            out[slot // dim] += exp
    return tuple(out)


# -- Cayley-Hamilton -----------------------------------------------------------


def _power_sums_to_char_coeffs(psums: list, nvars: int) -> list[MPoly]:
    """Newton's identities: e_k from power sums p_1..p_N (exact)."""
    n = len(psums)
    es = [MPoly.constant(nvars, 1)]
    for k in range(1, n + 1):
        acc = MPoly.zero(nvars)
        for i in range(1, k + 1):
            term = es[k - i] * psums[i - 1]
            acc = acc + (term if i % 2 == 1 else -term)
        es.append(acc.scale(Fraction(1, k)))
    return es


def cayley_hamilton_check(a: FDAlgebra, m: int, word: Sequence[int],
                          term_budget: int = DEFAULT_TERM_BUDGET) -> bool:
    """Verify ((prod_i H_i(xi_w)) xi_w)^{s+1} = 0 in A (x) Q[lambda].

    H_i is the characteristic polynomial of left multiplication on the i-th
    simple block (degree n_i^2), its coefficients recovered from the trace
    tuple via Newton's identities.  Multiplying the product by the element
    itself avoids the constant term (no unit is assumed), and the result
    lies in the radical, whose nilpotency index is s+1.
    """
    if not word:
        raise InvalidParams("word must be nonempty")
    rep = a.structure
    if rep.t and not rep.block_sizes:
        raise NotSplit("split structure unavailable")
    nvars = a.dim * m
    if any(w < 0 or w >= m for w in word):
        raise InvalidParams("word letters must index the m generic elements")
    base = _word_coords(a, tuple(word), m, None)
    degrees = [n * n for n in rep.block_sizes]
    total_deg = sum(degrees)
    powers: list[list[MPoly] | None] = [None, list(base)]
    for _ in range(2, total_deg + 2):
        powers.append(_mult_word(a, powers[-1], base, nvars))
        spent = sum(len(p.terms) for p in powers[-1])
        if spent > term_budget:
            raise BudgetExceeded("characteristic polynomial blow-up")
    # symbolic product of the block characteristic polynomials, low degree
    # first: G[d] multiplies x^d
    g = [MPoly.constant(nvars, 1)]
    for i, n_sq in enumerate(degrees):
        psums = []
        for j in range(1, n_sq + 1):
            psums.append(trace_map(a, powers[j])[i])
        es = _power_sums_to_char_coeffs(psums, nvars)
        h = [(es[n_sq - d] if (n_sq - d) % 2 == 0 else -es[n_sq - d])
             for d in range(n_sq + 1)]
        g = _poly_convolve(g, h, nvars)
    # value = sum_d G[d] * a^{d+1}
    value = [MPoly.zero(nvars) for _ in range(a.dim)]
    for d, coeff in enumerate(g):
        if coeff.is_zero():
            continue
        vec = powers[d + 1]
        for k in range(a.dim):
            if not vec[k].is_zero():
                value[k] = value[k] + vec[k] * coeff
    result = value
    for _ in range(rep.s):
        if all(p.is_zero() for p in result):
            break
        result = _mult_word(a, result, value, nvars)
    return all(p.is_zero() for p in result)


def _poly_convolve(g: list[MPoly], h: list[MPoly], nvars: int) -> list[MPoly]:
    out = [MPoly.zero(nvars) for _ in range(len(g) + len(h) - 1)]
    for i, x in enumerate(g):
        if x.is_zero():
            continue
        for j, y in enumerate(h):
            if not y.is_zero():
                out[i + j] = out[i + j] + x * y
    return out


def _mult_word(a: FDAlgebra, x: Sequence[MPoly], y: Sequence[MPoly],
               nvars: int) -> list[MPoly]:
    out = [MPoly.zero(nvars) for _ in range(a.dim)]
    for l, p in enumerate(x):
        if p.is_zero():
            continue
        row = a.table[l]
        for i, qq in enumerate(y):
            if qq.is_zero() or not row[i]:
                continue
            factor = p * qq
            for k, c in row[i].items():
                out[k] = out[k] + factor.scale(c)
    return out


# -- closed-form dimension formulas ---------------------------------------------


def gk_dimension_formula(t: int, q: int, m: int) -> int:
    """GK dimension (m-1)t + q of the relatively free algebra in m
    variables, for m large."""
    if m < 2:
        raise InvalidParams("formula requires m >= 2")
    return (m - 1) * t + q


def repvariety_dimension(blocks: Sequence[int], m: int) -> int:
    """Dimension m*t - sum(n_i^2 - 1) of the semisimple representation
    variety with the given block pattern; equals (m-1)t + q."""
    if m < 2 or not blocks:
        raise InvalidParams("need m >= 2 and a nonempty block list")
    t = sum(n * n for n in blocks)
    return m * t - sum(n * n - 1 for n in blocks)


def colength_dimension(t: int, q: int) -> int:
    """Pole order (t^2 - t)/2 + q of the colength generating function."""
    return (t * t - t) // 2 + q
