"""The identity engine: polynomial evaluation on algebras, codimensions,
cocharacters, and the Kemer-index search with fundamentality certification.

Multilinearity reduces "all evaluations vanish" to evaluations on basis
tuples, so everything is exact rational linear algebra on evaluation
matrices.  Alternating variable layers are detected symbolically and then
enumerated over strictly increasing basis subsets only (an alternating
polynomial vanishes whenever two layer variables collide), which is what
makes Capelli-sized searches tractable.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product
from math import factorial
import random
from typing import Iterable, Mapping, Sequence

from . import freealg, repsym
from .algebra import FDAlgebra, _mult_sparse, basis_vector, ts_index
from .errors import BudgetExceeded, Overflow, UnitRequired
from .freealg import MultilinearPoly, format_poly
from .linalg import RowReducer
from .rationals import rat_from_json, rat_to_json
from .repsym import Partition, hook_dimension

_ZERO = Fraction(0)
_ONE = Fraction(1)

DEFAULT_DEGREE_BOUND = 7
DEFAULT_KEMER_BUDGET = 200_000
EXHAUSTIVE_N_BOUND = 8


# -- evaluation -------------------------------------------------------------


def evaluate_poly(a: FDAlgebra, f: MultilinearPoly,
                  assignment: Mapping[int, dict[int, Fraction]],
                  unitalize: bool = False) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Evaluate f with tokens bound to sparse algebra vectors.

    Returns (scalar_part, vector); the scalar part is nonzero only when the
    constant monomial occurs, in which case it lives in the unitalization.
    """
    scalar = _ZERO
    out: dict[int, Fraction] = {}
    for word, coeff in f.terms.items():
        if not word:
            if a.has_unit:
                for k, v in enumerate(a.unit_coords):
                    if v:
                        nv = out.get(k, _ZERO) + coeff * v
                        if nv:
                            out[k] = nv
                        else:
                            out.pop(k, None)
            elif unitalize:
                scalar += coeff
            else:
                raise UnitRequired(
                    "constant monomial requires a unit or unitalize=True")
            continue
        value: dict[int, Fraction] | None = None
        for tok in word:
            vec = assignment[tok]
            value = vec if value is None else _mult_sparse(a, value, vec)
            if not value:
                break
        if value:
            for k, v in value.items():
                nv = out.get(k, _ZERO) + coeff * v
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)
    vector = tuple(out.get(k, _ZERO) for k in range(a.dim))
    return scalar, vector


def _alternating_classes(f: MultilinearPoly) -> tuple[list[list[int]], list[int]]:
    """Partition tokens into alternation classes plus leftover singles.

    Tokens qualifying for a class occur exactly once in every term; two
    tokens join when swapping them negates f.  Sign multiplicativity makes
    the relation transitive across a connected component.
    """
    toks = sorted(f.variables(), key=lambda t: (t < 0, abs(t)))
    uniform = [t for t in toks if f.occurs_once_everywhere(t)]
    parent = {t: t for t in uniform}

    def find(t):
        while parent[t] != t:
            parent[t] = parent[parent[t]]
            t = parent[t]
        return t

    neg = -f
    for a, b in combinations(uniform, 2):
        if f.swap(a, b) == neg:
            parent[find(a)] = find(b)
    groups: dict[int, list[int]] = {}
    for t in uniform:
        groups.setdefault(find(t), []).append(t)
    classes = sorted((sorted(g) for g in groups.values() if len(g) > 1),
                     key=lambda g: g[0])
    classed = {t for g in classes for t in g}
    singles = [t for t in toks if t not in classed]
    return classes, singles


def find_witness(a: FDAlgebra, f: MultilinearPoly, unitalize: bool = False,
                 ) -> dict[int, int] | None:
    """First basis assignment (token -> basis index) where f is nonzero.

    Alternating layers are enumerated over increasing basis subsets;
    remaining variables over all basis tuples.  None means f is an identity.
    """
    if f.is_zero():
        return None
    classes, singles = _alternating_classes(f)
    for cls in classes:
        if len(cls) > a.dim:
            return None  # alternation in more variables than dim A
    class_iters = [list(combinations(range(a.dim), len(cls))) for cls in classes]
    basis_vecs = [{i: _ONE} for i in range(a.dim)]
    for class_choice in product(*class_iters):
        for single_choice in product(range(a.dim), repeat=len(singles)):
            assignment_idx: dict[int, int] = {}
            for cls, subset in zip(classes, class_choice):
                for tok, bi in zip(cls, subset):
                    assignment_idx[tok] = bi
            for tok, bi in zip(singles, single_choice):
                assignment_idx[tok] = bi
            assignment = {tok: basis_vecs[bi] for tok, bi in assignment_idx.items()}
            scalar, vec = evaluate_poly(a, f, assignment, unitalize=unitalize)
            if scalar or any(vec):
                return assignment_idx
    return None


def is_identity(a: FDAlgebra, f: MultilinearPoly, unitalize: bool = False) -> bool:
    """True iff every basis-tuple evaluation of f vanishes (sufficient by
    multilinearity)."""
    return find_witness(a, f, unitalize=unitalize) is None


# -- evaluation matrix, codimension, cocharacter -----------------------------


class EvaluationMatrix:
    """Row space of V_n under evaluation on all basis n-tuples.

    Row sigma lists the products b_{tau(sigma(1))} ... b_{tau(sigma(n))}
    over every tuple tau; columns are (tuple, output coordinate) pairs
    encoded as integers.  The row space dimension is c_n(A) and the row
    space carries the S_n action by tuple permutation.
    """

    def __init__(self, a: FDAlgebra, n: int, bound: int = DEFAULT_DEGREE_BOUND,
                 workers: int = 1, track_kernel: bool = False):
        if n < 1 or n > bound:
            raise Overflow(f"degree {n} outside 1..{bound}")
        self.algebra = a
        self.n = n
        dim = a.dim
        # prefix products of all length-n index words, big-endian encoding
        level: list[dict[int, Fraction]] = [{i: _ONE} for i in range(dim)]
        for _ in range(n - 1):
            nxt = []
            for val in level:
                for j in range(dim):
                    nxt.append(_mult_sparse(a, val, {j: _ONE}) if val else {})
            level = nxt
        self.products = level          # index: word as big-endian int
        self.tuples = list(product(range(dim), repeat=n))
        self.reducer = RowReducer(track=track_kernel)
        self.perms = list(permutations(range(n)))
        rows = self._rows(workers)
        for row in rows:
            self.reducer.add_row(row)

    def _row_for(self, sigma: tuple[int, ...]) -> dict[int, Fraction]:
        dim = self.algebra.dim
        n = self.n
        row: dict[int, Fraction] = {}
        for t_index, tau in enumerate(self.tuples):
            w_index = 0
            for i in range(n):
                w_index = w_index * dim + tau[sigma[i]]
            val = self.products[w_index]
            if val:
                base = t_index * dim
                for k, v in val.items():
                    row[base + k] = v
        return row

    def _rows(self, workers: int) -> Iterable[dict[int, Fraction]]:
        if workers and workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                return list(pool.map(self._row_for, self.perms))
        return [self._row_for(sigma) for sigma in self.perms]

    @property
    def rank(self) -> int:
        return self.reducer.rank

    def identity_coefficients(self) -> list[dict[int, Fraction]]:
        """Sparse coefficient vectors (over monomials, permutation order)
        spanning Id(A) cap V_n.  Requires track_kernel=True."""
        if not self.reducer.track:
            raise ValueError("EvaluationMatrix built without track_kernel")
        return [dict(k) for k in self.reducer.kernel]

    def class_trace(self, cycle_type: Partition) -> Fraction:
        """Trace of a permutation with the given cycle type on the quotient
        V_n/(Id cap V_n), computed on the isomorphic row space."""
        tau = _class_representative(cycle_type)
        dim = self.algebra.dim
        n = self.n
        total = _ZERO
        for row, pivot in zip(self.reducer.rows, self.reducer.pivot_cols):
            t_index, k = divmod(pivot, dim)
            tau_digits = self.tuples[t_index]
            w_index = 0
            for i in range(n):
                w_index = w_index * dim + tau_digits[tau[i]]
            total += row.get(w_index * dim + k, _ZERO)
        return total


def _class_representative(cycle_type: Partition) -> tuple[int, ...]:
    n = sum(cycle_type)
    tau = list(range(n))
    pos = 0
    for length in cycle_type:
        for i in range(length):
            tau[pos + i] = pos + (i + 1) % length
        pos += length
    return tuple(tau)


def codimension(a: FDAlgebra, n: int, bound: int = DEFAULT_DEGREE_BOUND,
                workers: int = 1) -> int:
    """c_n(A): rank of the n-th evaluation matrix."""
    return EvaluationMatrix(a, n, bound=bound, workers=workers).rank


@dataclass
class CocharacterResult:
    n: int
    multiplicities: dict[Partition, int]
    codimension: int
    colength: int

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "codimension": self.codimension,
            "colength": self.colength,
            "multiplicities": [[list(lam), m]
                               for lam, m in sorted(self.multiplicities.items(),
                                                    key=lambda kv: repsym.partitions(self.n).index(kv[0]))],
        }


def cocharacter(a: FDAlgebra, n: int, bound: int = DEFAULT_DEGREE_BOUND,
                workers: int = 1) -> CocharacterResult:
    """Multiplicities m_lambda of the n-th cocharacter via class traces on
    the evaluation row space and the class-weighted inner product."""
    matrix = EvaluationMatrix(a, n, bound=bound, workers=workers)
    classes = repsym.partitions(n)
    values = [matrix.class_trace(c) for c in classes]
    mults = repsym.decompose(values, n)
    out: dict[Partition, int] = {}
    for lam, m in mults.items():
        if m:
            if m.denominator != 1 or m < 0:
                raise ArithmeticError(
                    f"non-integral or negative multiplicity {m} at {lam}")
            out[lam] = int(m)
    codim = matrix.rank
    if sum(m * hook_dimension(lam) for lam, m in out.items()) != codim:
        raise ArithmeticError("cocharacter multiplicities disagree with codimension")
    return CocharacterResult(n, out, codim, sum(out.values()))


@dataclass
class ExponentRow:
    n: int
    codimension: int
    root: float


@dataclass
class ExponentDiagnostic:
    rows: list[ExponentRow]
    codim_nondecreasing: bool
    note: str = ("diagnostic only: the integer-exponent limit is far beyond "
                 "desk-scale degrees and is not verified here")

    def to_json_dict(self) -> dict:
        return {"rows": [[r.n, r.codimension, r.root] for r in self.rows],
                "codim_nondecreasing": self.codim_nondecreasing,
                "note": self.note}


def exponent_diagnostic(a: FDAlgebra, n_max: int,
                        bound: int = DEFAULT_DEGREE_BOUND) -> ExponentDiagnostic:
    rows = []
    for n in range(1, n_max + 1):
        c = codimension(a, n, bound=bound)
        rows.append(ExponentRow(n, c, float(c) ** (1.0 / n) if c else 0.0))
    nondec = all(rows[i].codimension <= rows[i + 1].codimension
                 for i in range(len(rows) - 1))
    return ExponentDiagnostic(rows, nondec)


# -- Kemer index search -------------------------------------------------------


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def spend(self, amount: int = 1) -> None:
        self.used += amount
        if self.limit and self.used > self.limit:
            raise BudgetExceeded(f"evaluation budget {self.limit} exhausted")


def _mult_opt(a: FDAlgebra, x, y):
    """Product where None is the multiplicative identity (a kept 1-slot)."""
    if x is None:
        return y
    if y is None:
        return x
    return _mult_sparse(a, x, y)


def _layered_word_value(a: FDAlgebra, layout: Sequence[int],
                        layer_values: Sequence[Sequence[dict]],
                        frames: Sequence) -> dict | None:
    """Evaluate the full layer alternation of one interleaved word.

    ``layout`` names the layer owning each of the N slots of the word
    w0 x w1 x ... x wN; ``frames`` has N+1 sparse vectors (None = slot
    specialized to 1).  The signed sum over all layer permutations is
    evaluated by a Laplace-style DP over per-layer subsets, so its cost is
    polynomial in the number of reachable mask states rather than the
    t!^mu (t+1)!^s size of the expanded polynomial.
    """
    sizes = [len(v) for v in layer_values]
    start = (0,) * len(layer_values)
    current: dict[tuple[int, ...], object] = {start: frames[0]}
    for p, lay in enumerate(layout):
        nxt: dict[tuple[int, ...], dict] = {}
        vals = layer_values[lay]
        for masks, val in current.items():
            base = val if p == 0 else _mult_opt(a, val, frames[p])
            if base is not None and not base:
                continue
            mask = masks[lay]
            k = bin(mask).count("1") + 1
            for i in range(sizes[lay]):
                bit = 1 << i
                if mask & bit:
                    continue
                term = _mult_opt(a, base, vals[i])
                if not term:
                    continue
                below = bin(mask & (bit - 1)).count("1")
                sign = -_ONE if (k - (below + 1)) % 2 else _ONE
                key = masks[:lay] + (mask | bit,) + masks[lay + 1:]
                acc = nxt.get(key)
                if acc is None:
                    nxt[key] = {c: sign * v for c, v in term.items()}
                else:
                    for c, v in term.items():
                        nv = acc.get(c, _ZERO) + sign * v
                        if nv:
                            acc[c] = nv
                        else:
                            acc.pop(c, None)
        current = {m: v for m, v in nxt.items() if v}
        if not current:
            return None
    full = tuple((1 << s) - 1 for s in sizes)
    val = current.get(full)
    if not val:
        return None
    out = _mult_opt(a, val, frames[len(layout)])
    return out if out else None


def _structured_layout(mu: int, s: int, block_squares: Sequence[int]) -> list[int]:
    """The bridged-chain slot layout that realizes Kemer witnesses on
    block-triangular-flavored algebras.

    Each semisimple block gets a segment holding every layer's share of
    slots (n_j^2 each); big layer k contributes its extra slot as the
    bridge between segments k and k+1; leftover extras trail at the end.
    """
    q = len(block_squares)
    nlayers = mu + s
    layout: list[int] = []
    for j, nsq in enumerate(block_squares):
        for lay in range(nlayers):
            layout.extend([lay] * nsq)
        if j < q - 1 and j < s:
            layout.append(mu + j)
    for k in range(max(q - 1, 0), s):
        layout.append(mu + k)
    return layout


def _natural_layouts(mu: int, t: int, s: int) -> Iterable[list[int]]:
    """Layouts in the deterministic coset-representative order."""
    sizes = [t] * mu + [t + 1] * s
    n = sum(sizes)
    for blocks in freealg._position_assignments(sizes, tuple(range(1, n + 1))):
        layout = [0] * n
        for lay, block in enumerate(blocks):
            for pos in block:
                layout[pos - 1] = lay
        yield layout


def _complement_indices(a: FDAlgebra) -> list[int]:
    """Basis indices spanning a complement of the radical (free columns of
    the radical row reduction); they project onto a basis of A/J."""
    red = RowReducer()
    for vec in a.structure.radical_basis:
        red.add_row({i: v for i, v in enumerate(vec) if v})
    pivots = set(red.pivot_cols)
    return [i for i in range(a.dim) if i not in pivots]


@dataclass
class KemerCertificate:
    """Replayable witness: a layered polynomial plus an exact assignment.

    kind "layered-word" stores the slot layout of a single alternated
    generator (the polynomial is the full alternation of that word, too
    large to expand); kind "stream" stores the explicit polynomial text.
    """
    mu: int
    t: int
    s: int
    kind: str                                 # "layered-word" | "stream"
    layout: list[int] | None
    poly_text: str | None
    assignment: dict[int, tuple[Fraction, ...]]    # token -> dense vector
    value: tuple[Fraction, ...]

    def to_json_dict(self) -> dict:
        assign = {freealg.token_name(tok): [rat_to_json(v) for v in vec]
                  for tok, vec in sorted(self.assignment.items())}
        return {
            "mu": self.mu, "t": self.t, "s": self.s, "kind": self.kind,
            "layout": list(self.layout) if self.layout is not None else None,
            "poly": self.poly_text,
            "assignment": assign,
            "value": [rat_to_json(v) for v in self.value],
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "KemerCertificate":
        assignment = {}
        for name, vec in doc["assignment"].items():
            tok = int(name[1:]) if name[0] == "x" else -int(name[1:])
            assignment[tok] = tuple(rat_from_json(v) for v in vec)
        layout = list(doc["layout"]) if doc.get("layout") is not None else None
        return cls(doc["mu"], doc["t"], doc["s"], doc["kind"], layout,
                   doc.get("poly"), assignment,
                   tuple(rat_from_json(v) for v in doc["value"]))


def _scheme_layer_tokens(mu: int, t: int, s: int) -> list[list[int]]:
    scheme = freealg.LayerScheme(mu, t, s)
    return [list(layer) for layer in scheme.layers]


def replay_witness(a: FDAlgebra, cert: KemerCertificate) -> bool:
    """Recompute the certified evaluation and compare exactly."""
    sparse = {tok: {i: v for i, v in enumerate(vec) if v}
              for tok, vec in cert.assignment.items()}
    if cert.kind == "layered-word":
        layers = _scheme_layer_tokens(cert.mu, cert.t, cert.s)
        layer_values = [[sparse[tok] for tok in layer] for layer in layers]
        n = len(cert.layout)
        frames = [sparse.get(-(j + 1)) for j in range(n + 1)]
        value = _layered_word_value(a, cert.layout, layer_values, frames)
        got = tuple((value or {}).get(k, _ZERO) for k in range(a.dim))
    else:
        poly = freealg.parse_poly(cert.poly_text)
        _, vec = evaluate_poly(a, poly, sparse)
        got = vec
    return got == cert.value and any(got)


def _make_layered_certificate(mu, t, s, layout, layer_values, frames, value,
                              dim) -> KemerCertificate:
    layers = _scheme_layer_tokens(mu, t, s)
    assignment: dict[int, tuple[Fraction, ...]] = {}
    for layer, vals in zip(layers, layer_values):
        for tok, vec in zip(layer, vals):
            assignment[tok] = tuple(vec.get(i, _ZERO) for i in range(dim))
    for j, frame in enumerate(frames):
        if frame is not None:
            assignment[-(j + 1)] = tuple(frame.get(i, _ZERO) for i in range(dim))
    dense_value = tuple(value.get(k, _ZERO) for k in range(dim))
    return KemerCertificate(mu, t, s, "layered-word", list(layout), None,
                            assignment, dense_value)


_FRAME_RETRIES = 4
_NATURAL_COSET_CAP = 120


def _witness_layered(a: FDAlgebra, mu: int, t: int, s: int, budget: _Budget,
                     seed: int) -> KemerCertificate | None:
    """Search alternated layered words for a nonzero evaluation.

    Deterministic part: the bridged structured layout plus a capped prefix
    of the coset order; layer slots take the semisimple complement basis
    (big layers add one radical vector).  Frames are sampled from seeded
    generic vectors, so hits replay exactly.
    """
    if t > a.dim:
        return None
    rep = a.structure
    comp = _complement_indices(a)
    if len(comp) != t:
        return None
    small_vals = [{i: _ONE} for i in comp]
    rad_vecs = [{i: v for i, v in enumerate(vec) if v}
                for vec in rep.radical_basis]
    if s > 0 and not rad_vecs:
        return None
    rng = random.Random(seed)
    n = mu * t + s * (t + 1)
    layouts: list[list[int]] = [_structured_layout(mu, s, [b * b for b in rep.block_sizes])]
    for i, layout in enumerate(_natural_layouts(mu, t, s)):
        if i >= _NATURAL_COSET_CAP:
            break
        if layout != layouts[0]:
            layouts.append(layout)
    rad_choices = list(product(range(len(rad_vecs)), repeat=s)) if s else [()]
    # frame patterns: which of the n+1 frame slots stay symbolic (generic
    # random vector) versus get specialized to 1 (dropped); specialization
    # patterns matter for algebras without unit, where they are genuinely
    # different members of the Capelli-list closure
    interior = lambda j: 0 < j < n
    patterns = [
        lambda j: False,            # every frame specialized to 1
        lambda j: True,             # every frame kept
        interior,                   # ends specialized
        lambda j: not interior(j),  # interior specialized
    ]
    for layout in layouts:
        for rad_choice in rad_choices:
            layer_values = [list(small_vals) for _ in range(mu)]
            for z in range(s):
                layer_values.append(list(small_vals) + [rad_vecs[rad_choice[z]]])
            for keep in patterns:
                generic_slots = [j for j in range(n + 1) if keep(j)]
                attempts = _FRAME_RETRIES if generic_slots else 1
                for _ in range(attempts):
                    budget.spend()
                    frames: list[dict | None] = [None] * (n + 1)
                    for j in generic_slots:
                        vec = {i: Fraction(rng.randint(-9, 9))
                               for i in range(a.dim)}
                        frames[j] = {i: v for i, v in vec.items() if v}
                    value = _layered_word_value(a, layout, layer_values, frames)
                    if value:
                        return _make_layered_certificate(
                            mu, t, s, layout, layer_values, frames, value, a.dim)
    return None


def _stream_search(a: FDAlgebra, mu: int, t: int, s: int,
                   budget: _Budget) -> tuple[str, KemerCertificate | None]:
    """Exhaustive search of the layered generator stream.

    Returns ("witness", cert), or ("refuted", None) when every generator
    vanishes on every basis assignment; raises BudgetExceeded when the
    space is too large to finish.
    """
    n = mu * t + s * (t + 1)
    if n > EXHAUSTIVE_N_BOUND:
        raise BudgetExceeded(f"exhaustive layer search infeasible at N={n}")
    scheme = freealg.LayerScheme(mu, t, s)
    layers = scheme.layers
    if any(len(layer) > a.dim for layer in layers):
        return "refuted", None
    basis_vecs = [{i: _ONE} for i in range(a.dim)]
    for poly in freealg.layered_generators(mu, t, s, frame_policy="subsets"):
        if poly.is_zero():
            continue
        wvars = sorted(poly.w_variables())
        subset_iters = [list(combinations(range(a.dim), len(layer)))
                        for layer in layers]
        for subsets in product(*subset_iters):
            assign_layers: dict[int, dict] = {}
            for layer, subset in zip(layers, subsets):
                for xv, bi in zip(layer, subset):
                    assign_layers[xv] = basis_vecs[bi]
            for wchoice in product(range(a.dim), repeat=len(wvars)):
                budget.spend()
                assignment = dict(assign_layers)
                for wv, bi in zip(wvars, wchoice):
                    assignment[-wv] = basis_vecs[bi]
                _, vec = evaluate_poly(a, poly, assignment)
                if any(vec):
                    dense = {tok: tuple(v.get(i, _ZERO) for i in range(a.dim))
                             for tok, v in assignment.items()}
                    cert = KemerCertificate(mu, t, s, "stream", None,
                                            format_poly(poly), dense, vec)
                    return "witness", cert
    return "refuted", None


def _single_variable_witness(a: FDAlgebra) -> KemerCertificate | None:
    """Witness for the degenerate (t=0, s=0) layering: any non-identity."""
    poly = MultilinearPoly.monomial((1,))
    witness = find_witness(a, poly)
    if witness is None:
        return None
    assignment = {1: tuple(basis_vector(a.dim, witness[1]))}
    sparse = {1: {witness[1]: _ONE}}
    _, vec = evaluate_poly(a, poly, sparse)
    return KemerCertificate(1, 0, 0, "stream", None, format_poly(poly),
                            {1: assignment[1]}, vec)


def _witness_for(a: FDAlgebra, mu: int, t: int, s: int, budget: _Budget,
                 seed: int) -> tuple[str, KemerCertificate | None]:
    """("witness", cert) / ("refuted", None) / ("inconclusive", None)."""
    if t == 0 and s == 0:
        cert = _single_variable_witness(a)
        return ("witness", cert) if cert else ("refuted", None)
    try:
        cert = _witness_layered(a, mu, t, s, budget, seed)
    except BudgetExceeded:
        return "inconclusive", None
    if cert is not None:
        return "witness", cert
    try:
        return _stream_search(a, mu, t, s, budget)
    except BudgetExceeded:
        return "inconclusive", None


@dataclass
class MuStatus:
    mu: int
    status: str          # "witness" | "refuted" | "inconclusive"
    method: str | None


@dataclass
class KemerReport:
    ts: tuple[int, int]
    mu_max: int
    per_mu: list[MuStatus]
    kemer_verified: tuple[int, int] | None
    certificate: KemerCertificate | None
    fundamental: str     # "verified" | "refuted" | "inconclusive"
    fundamental_up_to: int | None
    refutation_check: str
    budget_used: int

    def to_json_dict(self) -> dict:
        return {
            "ts": list(self.ts),
            "mu_max": self.mu_max,
            "per_mu": [{"mu": m.mu, "status": m.status, "method": m.method}
                       for m in self.per_mu],
            "kemer_verified": list(self.kemer_verified) if self.kemer_verified else None,
            "certificate": self.certificate.to_json_dict() if self.certificate else None,
            "fundamental": self.fundamental,
            "fundamental_up_to": self.fundamental_up_to,
            "refutation_check": self.refutation_check,
            "budget_used": self.budget_used,
        }


def kemer_index_search(a: FDAlgebra, mu_max: int,
                       budget: int = DEFAULT_KEMER_BUDGET,
                       seed: int = 0) -> KemerReport:
    """Certify or refute that the Kemer index equals the t,s-index.

    For each mu <= mu_max the layered spaces M_{mu,t,s} are searched for a
    non-identity (a mu-Kemer witness).  Witnesses at every mu verify the
    index pair; an exhaustive empty search at some mu refutes it, after
    which the true pair is located by descending t and then s.
    """
    if mu_max < 1:
        raise Overflow("mu_max must be >= 1")
    t, s = ts_index(a)
    tracker = _Budget(budget)
    per_mu: list[MuStatus] = []
    best_cert: KemerCertificate | None = None
    verdict = "verified"
    for mu in range(1, mu_max + 1):
        status, cert = _witness_for(a, mu, t, s, tracker, seed + mu)
        per_mu.append(MuStatus(mu, status, cert.kind if cert else None))
        if status == "witness":
            best_cert = cert
        elif status == "refuted":
            verdict = "refuted"
            break
        else:
            verdict = "inconclusive"
            break

    kemer: tuple[int, int] | None = None
    if verdict == "verified":
        kemer = (t, s)
    elif verdict == "refuted":
        kemer, cert, verdict2 = _descend(a, mu_max, t, s, tracker, seed)
        if verdict2 == "inconclusive":
            verdict = "inconclusive"
            kemer = None
        elif cert is not None:
            best_cert = cert

    refutation = _refutation_check(a, t, s, tracker)
    return KemerReport(
        ts=(t, s), mu_max=mu_max, per_mu=per_mu,
        kemer_verified=kemer, certificate=best_cert,
        fundamental=verdict,
        fundamental_up_to=mu_max if verdict == "verified" else None,
        refutation_check=refutation, budget_used=tracker.used)


def _descend(a: FDAlgebra, mu_max: int, t_a: int, s_a: int, tracker: _Budget,
             seed: int) -> tuple[tuple[int, int] | None, KemerCertificate | None, str]:
    """Locate the true Kemer pair below a refuted t,s-index."""
    beta = None
    cert: KemerCertificate | None = None
    for t_cand in range(t_a, -1, -1):
        status, found = _all_mu(a, mu_max, t_cand, 0, tracker, seed)
        if status == "witness":
            beta = t_cand
            cert = found
            break
        if status == "inconclusive":
            return None, None, "inconclusive"
    if beta is None:
        return None, None, "inconclusive"
    gamma = 0
    for s_cand in range(s_a, 0, -1):
        status, found = _all_mu(a, mu_max, beta, s_cand, tracker, seed)
        if status == "witness":
            gamma = s_cand
            cert = found
            break
        if status == "inconclusive":
            return None, None, "inconclusive"
    return (beta, gamma), cert, "refuted"


def _all_mu(a: FDAlgebra, mu_max: int, t: int, s: int, tracker: _Budget,
            seed: int) -> tuple[str, KemerCertificate | None]:
    """Witness status across every mu <= mu_max at a fixed layering."""
    last = None
    for mu in range(1, mu_max + 1):
        status, cert = _witness_for(a, mu, t, s, tracker, seed + mu)
        if status != "witness":
            return status, None
        last = cert
    return "witness", last


def _refutation_check(a: FDAlgebra, t: int, s: int, tracker: _Budget) -> str:
    """Confirm M_{1,t,s+1} vanishes when that is cheap (a big layer larger
    than dim A makes it immediate)."""
    if t + 1 > a.dim:
        return "refuted"
    n = t + (s + 1) * (t + 1)
    if n > EXHAUSTIVE_N_BOUND:
        return "skipped"
    from math import comb

    cosets = factorial(n) // (factorial(t) * factorial(t + 1) ** (s + 1))
    combos = comb(a.dim, t) * comb(a.dim, t + 1) ** (s + 1)
    estimate = cosets * (2 ** (n + 1)) * combos * (a.dim ** (n + 1))
    if estimate > 20_000:
        return "skipped"
    try:
        status, _ = _stream_search(a, 1, t, s + 1, tracker)
    except BudgetExceeded:
        return "skipped"
    return status if status == "refuted" else "witness_found"
