"""Bitstring-set criteria for graph states and the searches built on them.

For a graph G with adjacency matrix A and a target distance d, the sets are

  Z  = {k : weight(k | A.k) <= d - 1}
  Zp = {h : h.k = 0 for every k in Z}        (orthogonal complement)
  W  = {A.m ^ l : weight(m | l) <= d - 1}
  C  = Zp \\ W, with the zero string always excluded.

C nonempty means the graph state sits inside a distance-d code together with
the graph basis state labelled by any member.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .gf2 import (
    BitString,
    Gf2Matrix,
    SubspaceTooLargeError,
    dot,
    span_iter,
)
from .graphs import FamilySpec, Graph, gen_family

DEFAULT_MAX_MEMBERS = 1024
DEFAULT_MAX_SPAN_DIM = 30


class BudgetExceededError(RuntimeError):
    """Raised when an enumeration exceeds its configured budget."""


class Deadline:
    """Soft wall-clock cap checked inside enumeration loops."""

    __slots__ = ("t0", "seconds")

    def __init__(self, seconds: float):
        self.t0 = time.monotonic()
        self.seconds = seconds

    def check(self) -> None:
        if time.monotonic() - self.t0 > self.seconds:
            raise BudgetExceededError(
                f"time budget of {self.seconds:.3f}s exhausted"
            )


@dataclass(frozen=True)
class Caps:
    """Enumeration budgets: weight classes, span dimension, emitted members."""

    max_weight: Optional[int] = None
    max_span_dim: int = DEFAULT_MAX_SPAN_DIM
    max_members: int = DEFAULT_MAX_MEMBERS


@dataclass(frozen=True)
class SetQuery:
    graph: Graph
    d: int
    caps: Caps = Caps()

    def __post_init__(self):
        if not 1 <= self.d <= self.graph.n + 1:
            raise ValueError(f"need 1 <= d <= n+1, got d={self.d}")


def weight_iter(n: int, w_max: int, deadline: Optional[Deadline] = None) -> Iterator[BitString]:
    """All length-n bitstrings of weight <= w_max, by weight then support order."""
    yield BitString(n, 0)
    for w in range(1, min(w_max, n) + 1):
        for support in itertools.combinations(range(n), w):
            if deadline is not None:
                deadline.check()
            bits = 0
            for i in support:
                bits |= 1 << i
            yield BitString(n, bits)


def sigma(a: Gf2Matrix, k: BitString) -> int:
    """Parity of the number of edges with both endpoints in the support of k."""
    if a.rows != a.cols or a.cols != k.n:
        raise ValueError("dimension mismatch")
    acc = 0
    bits = k.bits
    for j in k.support():
        acc ^= (a.row_bits[j] & bits & ((1 << j) - 1)).bit_count()
    return acc & 1


def graph_basis_inner_analytic(
    a: Gf2Matrix, h: BitString, g: BitString, k: BitString, l: BitString
) -> int:
    """Closed form for <h| X^k Z^l |g> in the graph basis of adjacency a.

    Zero unless A.k ^ l == h ^ g; otherwise (-1)^{h.k + sigma(a, k)}.
    """
    if a.mat_vec(k) ^ l != h ^ g:
        return 0
    return -1 if (dot(h, k) ^ sigma(a, k)) else 1


def in_Z(q: SetQuery, k: BitString) -> bool:
    a = q.graph.adjacency()
    return ((k | a.mat_vec(k)).weight()) <= q.d - 1


def _check_weight_cap(q: SetQuery) -> None:
    if q.caps.max_weight is not None and q.d - 1 > q.caps.max_weight:
        raise BudgetExceededError(
            f"weight class {q.d - 1} exceeds cap {q.caps.max_weight}"
        )


def z_span_basis(q: SetQuery, deadline: Optional[Deadline] = None) -> List[BitString]:
    """Independent set spanning span(Z).

    weight(k) <= weight(k | A.k), so enumerating k up to weight d-1 sees
    every member of Z; vectors are kept rank-incrementally, stopping early
    once the span is the full space.
    """
    _check_weight_cap(q)
    g, d = q.graph, q.d
    a = g.adjacency()
    elim: List[int] = []
    kept: List[BitString] = []
    for k in weight_iter(g.n, d - 1, deadline):
        if k.is_zero():
            continue
        if (k | a.mat_vec(k)).weight() > d - 1:
            continue
        r = k.bits
        for e in elim:
            if r & (e & -e):
                r ^= e
        if r:
            elim.append(r)
            kept.append(k)
            if len(kept) == g.n:
                break
    return kept


def zperp_basis(q: SetQuery, deadline: Optional[Deadline] = None) -> List[BitString]:
    """Kernel basis of the matrix whose rows span Z."""
    rows = z_span_basis(q, deadline)
    return Gf2Matrix.from_rows(rows, cols=q.graph.n).kernel_basis()


def in_W(q: SetQuery, h: BitString, deadline: Optional[Deadline] = None) -> bool:
    """True iff h = A.m ^ l for some weight(m | l) <= d - 1.

    m is enumerated by weight; l is forced to h ^ A.m, never enumerated.
    """
    _check_weight_cap(q)
    a = q.graph.adjacency()
    d = q.d
    for m in weight_iter(q.graph.n, d - 1, deadline):
        l = h ^ a.mat_vec(m)
        if (m | l).weight() <= d - 1:
            return True
    return False


def in_zperp(q: SetQuery, h: BitString, deadline: Optional[Deadline] = None) -> bool:
    return all(dot(h, z) == 0 for z in z_span_basis(q, deadline))


def in_C(q: SetQuery, h: BitString, deadline: Optional[Deadline] = None) -> bool:
    """Membership test without enumerating the whole set."""
    if h.is_zero():
        return False
    return in_zperp(q, h, deadline) and not in_W(q, h, deadline)


@dataclass(frozen=True)
class CSetResult:
    d: int
    z_basis: Tuple[BitString, ...]
    zperp_basis: Tuple[BitString, ...]
    members: Tuple[BitString, ...]
    exhaustive: bool

    @property
    def empty(self) -> bool:
        return not self.members


def c_set(q: SetQuery, deadline: Optional[Deadline] = None) -> CSetResult:
    """Enumerate C by filtering the span of the Z-orthogonal basis.

    Emits at most caps.max_members members (exhaustive flag cleared on
    truncation); emptiness is decided as soon as one member appears, so
    truncation never affects it.
    """
    zb = z_span_basis(q, deadline)
    zp = Gf2Matrix.from_rows(zb, cols=q.graph.n).kernel_basis()
    members: List[BitString] = []
    exhaustive = True
    try:
        for h in span_iter(zp, n=q.graph.n, cap=q.caps.max_span_dim):
            if deadline is not None:
                deadline.check()
            if h.is_zero():
                continue
            if not in_W(q, h, deadline):
                members.append(h)
                if len(members) >= q.caps.max_members:
                    exhaustive = False
                    break
    except SubspaceTooLargeError as exc:
        raise BudgetExceededError(str(exc)) from exc
    members.sort(key=lambda b: b.bits)
    return CSetResult(q.d, tuple(zb), tuple(zp), tuple(members), exhaustive)


def _c_first_member(
    g: Graph, d: int, caps: Caps, deadline: Optional[Deadline]
) -> Optional[BitString]:
    q = SetQuery(g, d, caps)
    zp = zperp_basis(q, deadline)
    try:
        for h in span_iter(zp, n=g.n, cap=caps.max_span_dim):
            if deadline is not None:
                deadline.check()
            if not h.is_zero() and not in_W(q, h, deadline):
                return h
    except SubspaceTooLargeError as exc:
        raise BudgetExceededError(str(exc)) from exc
    return None


def _c_least_member(
    g: Graph, d: int, caps: Caps, deadline: Optional[Deadline]
) -> Optional[BitString]:
    if d == 1:
        # C(G, n, 1) is every nonzero bitstring; no need to span the space.
        return BitString.basis(g.n, 0) if g.n else None
    q = SetQuery(g, d, caps)
    zp = zperp_basis(q, deadline)
    best: Optional[BitString] = None
    try:
        for h in span_iter(zp, n=g.n, cap=caps.max_span_dim):
            if deadline is not None:
                deadline.check()
            if h.is_zero() or (best is not None and h.bits >= best.bits):
                continue
            if not in_W(q, h, deadline):
                best = h
    except SubspaceTooLargeError as exc:
        raise BudgetExceededError(str(exc)) from exc
    return best


@dataclass(frozen=True)
class DMaxResult:
    value: Optional[int]
    certificate: Optional[BitString]
    strategy: str
    # On a budget error: largest d with C known nonempty, smallest known empty.
    bracket: Optional[Tuple[int, Optional[int]]] = None
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.value is not None


def d_max(
    g: Graph,
    strategy: str = "incremental",
    caps: Caps = Caps(),
    deadline: Optional[Deadline] = None,
) -> DMaxResult:
    """Largest d with C(G, n, d) nonempty, plus the canonical-least witness.

    C(G, n, 1) is all nonzero strings and C(G, n, n+1) is empty, so the
    answer lies in [1, n]; ``incremental`` walks up from d = 2, ``bisection``
    halves the bracket.  On budget exhaustion the bracket found so far is
    returned instead of a value.
    """
    if g.n == 0:
        return DMaxResult(None, None, strategy, error="empty graph")
    lo, hi = 1, g.n + 1  # C(lo) nonempty, C(hi) empty
    try:
        if strategy == "incremental":
            d = 2
            while d < hi:
                if _c_first_member(g, d, caps, deadline) is None:
                    hi = d
                    break
                lo = d
                d += 1
        elif strategy == "bisection":
            while hi - lo > 1:
                mid = (lo + hi) // 2
                if _c_first_member(g, mid, caps, deadline) is None:
                    hi = mid
                else:
                    lo = mid
        else:
            raise ValueError(f"unknown strategy {strategy!r}")
        cert = _c_least_member(g, lo, caps, deadline)
        return DMaxResult(lo, cert, strategy)
    except BudgetExceededError as exc:
        return DMaxResult(
            None, None, strategy, bracket=(lo, hi if hi <= g.n else None),
            error=str(exc),
        )


@dataclass(frozen=True)
class VerifyVerdict:
    ok: bool
    witness: Optional[str] = None

    def __bool__(self):
        return self.ok


def verify_codewords(
    g: Graph,
    d: int,
    hs: Sequence[BitString],
    caps: Caps = Caps(),
    deadline: Optional[Deadline] = None,
) -> VerifyVerdict:
    """Check that the labels hs (zero label implicit) span a distance-d code.

    Pass iff every h lies in the Z-orthogonal space and every pairwise xor,
    including each h against the zero label, avoids W.
    """
    hs = list(hs)
    if len(set(hs)) != len(hs):
        return VerifyVerdict(False, "duplicate labels")
    q = SetQuery(g, d, caps)
    zb = z_span_basis(q, deadline)
    for i, h in enumerate(hs):
        if h.is_zero():
            return VerifyVerdict(False, f"label {i} is the zero string")
        if any(dot(h, z) for z in zb):
            return VerifyVerdict(False, f"label {i} not orthogonal to Z: {h.to_text()}")
    full = [BitString.zeros(g.n)] + hs
    for i, j in itertools.combinations(range(len(full)), 2):
        x = full[i] ^ full[j]
        if in_W(q, x, deadline):
            return VerifyVerdict(
                False, f"xor of labels {i},{j} lies in W: {x.to_text()}"
            )
    return VerifyVerdict(True)


@dataclass(frozen=True)
class ClassicalCode:
    """Binary linear code given by a full-row-rank generator matrix."""

    generator: Gf2Matrix

    def __post_init__(self):
        if self.generator.rank() != self.generator.rows:
            raise ValueError("generator matrix must have full row rank")

    @property
    def q(self) -> int:
        return self.generator.cols

    @property
    def k_c(self) -> int:
        return self.generator.rows

    def codewords(self) -> Iterator[BitString]:
        """All 2^k_c codewords, message order."""
        rows = [self.generator.row(i) for i in range(self.k_c)]
        for msg in range(1 << self.k_c):
            bits = 0
            for i in range(self.k_c):
                if (msg >> i) & 1:
                    bits ^= rows[i].bits
            yield BitString(self.q, bits)


def classical_min_distance(code: ClassicalCode) -> int:
    """Minimum nonzero codeword weight, by exhausting all 2^k_c codewords."""
    if code.k_c > 24:
        raise BudgetExceededError(f"k_c = {code.k_c} too large for exhaustion")
    if code.k_c == 0:
        raise ValueError("trivial code has no nonzero codewords")
    return min(c.weight() for c in code.codewords() if not c.is_zero())


def read_classical_code(path: str) -> ClassicalCode:
    """Generator file: one '0'/'1' row per line, '#' comments allowed."""
    rows = []
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if line:
                rows.append(BitString.from_text(line))
    if not rows:
        raise ValueError(f"{path}: no generator rows")
    return ClassicalCode(Gf2Matrix.from_rows(rows))


def ldpc_embed(code: ClassicalCode, m: int) -> List[BitString]:
    """Embed a [q, k_c, d_c] classical code into the q-component multi-star.

    Classical bit i maps to the hub of component i (bit m*i of a q*m-bit
    string); requires d_c >= m.  Returns all 2^k_c labels, zero first.
    """
    d_c = classical_min_distance(code)
    if d_c < m:
        raise ValueError(f"classical distance {d_c} below required {m}")
    out = []
    for c in code.codewords():
        bits = 0
        for i in c.support():
            bits |= 1 << (m * i)
        out.append(BitString(code.q * m, bits))
    return out


@dataclass(frozen=True)
class ScanEntry:
    params: Tuple[int, ...]
    n: int
    d_max: Optional[int]
    error: Optional[str] = None


@dataclass(frozen=True)
class ScanResult:
    family: str
    entries: Tuple[ScanEntry, ...]
    exponent: Optional[float]


def family_scan(
    family: str,
    params_list: Sequence[Tuple[int, ...]],
    caps: Caps = Caps(),
    deadline: Optional[Deadline] = None,
) -> ScanResult:
    """Tabulate d_max across family sizes and fit log d_max vs log n.

    Purely descriptive finite-size evidence; the exponent is a least-squares
    slope, not a claim about asymptotics.
    """
    entries: List[ScanEntry] = []
    for params in params_list:
        g = gen_family(FamilySpec(family, tuple(params)))
        res = d_max(g, caps=caps, deadline=deadline)
        entries.append(ScanEntry(tuple(params), g.n, res.value, res.error))
    pts = [(e.n, e.d_max) for e in entries if e.d_max is not None and e.n > 1]
    exponent = None
    if len(pts) >= 2 and len({n for n, _ in pts}) >= 2:
        xs = np.log([n for n, _ in pts])
        ys = np.log([d for _, d in pts])
        exponent = float(np.polyfit(xs, ys, 1)[0])
    return ScanResult(family, tuple(entries), exponent)
