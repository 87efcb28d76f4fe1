"""Symplectic Pauli and stabilizer-group algebra.

A Pauli is sign * X^x Z^z with the Z factors on the right; signs are tracked
mod +-1 only (the +-i prefactors never arise in products of the Hermitian
generators used here).  Includes the graph-state stabilizers, stabilized
code-pair generators, Hadamard-subset conjugation, the 3D toric-layer code,
and brute-force code distance via minimum-weight normalizer search.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from .gf2 import BitString, Gf2Matrix, dot
from .graphs import Graph, toric3d, toric3d_vertex


@dataclass(frozen=True)
class Pauli:
    x: BitString
    z: BitString
    sign: int = 1

    def __post_init__(self):
        if self.x.n != self.z.n:
            raise ValueError("x/z length mismatch")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @property
    def n(self) -> int:
        return self.x.n

    def weight(self) -> int:
        return (self.x | self.z).weight()

    def is_identity(self) -> bool:
        return self.x.is_zero() and self.z.is_zero()

    def to_text(self) -> str:
        chars = []
        for i in range(self.n):
            chars.append("IXZY"[self.x.bit(i) | (self.z.bit(i) << 1)])
        return ("+" if self.sign == 1 else "-") + "".join(chars)

    @classmethod
    def from_text(cls, text: str) -> "Pauli":
        sign = 1
        if text and text[0] in "+-":
            sign = 1 if text[0] == "+" else -1
            text = text[1:]
        xb = zb = 0
        for i, c in enumerate(text):
            if c in "XY":
                xb |= 1 << i
            if c in "ZY":
                zb |= 1 << i
            if c not in "IXYZ":
                raise ValueError(f"invalid Pauli character {c!r}")
        n = len(text)
        return cls(BitString(n, xb), BitString(n, zb), sign)

    @classmethod
    def identity(cls, n: int) -> "Pauli":
        return cls(BitString.zeros(n), BitString.zeros(n))

    def __repr__(self):
        return f"Pauli({self.to_text()!r})"


def pauli_mul(p: Pauli, q: Pauli) -> Pauli:
    """(X^x1 Z^z1)(X^x2 Z^z2) picks up (-1)^{z1.x2} when reordering."""
    if p.n != q.n:
        raise ValueError("length mismatch")
    sign = p.sign * q.sign * (-1 if dot(p.z, q.x) else 1)
    return Pauli(p.x ^ q.x, p.z ^ q.z, sign)


def commutes(p: Pauli, q: Pauli) -> bool:
    if p.n != q.n:
        raise ValueError("length mismatch")
    return (dot(p.x, q.z) ^ dot(p.z, q.x)) == 0


def _sym_bits(p: Pauli, n: int) -> int:
    return p.x.bits | (p.z.bits << n)


class StabilizerGroup:
    """Pairwise-commuting Pauli generators (need not be independent)."""

    __slots__ = ("n", "generators", "_basis")

    def __init__(self, n: int, generators: Sequence[Pauli]):
        generators = tuple(generators)
        for g in generators:
            if g.n != n:
                raise ValueError("generator length mismatch")
        for a, b in itertools.combinations(generators, 2):
            if not commutes(a, b):
                raise ValueError(
                    f"generators do not commute: {a.to_text()} vs {b.to_text()}"
                )
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "generators", generators)
        object.__setattr__(self, "_basis", None)

    def __setattr__(self, name, value):
        if name == "_basis" and getattr(self, name, None) is None:
            object.__setattr__(self, name, value)
            return
        raise AttributeError("StabilizerGroup is immutable")

    def _reduced_basis(self):
        """Reduced symplectic rows with generator-combination masks, cached."""
        if self._basis is None:
            basis: List[Tuple[int, int, int]] = []  # (pivot, row, comb)
            for idx, g in enumerate(self.generators):
                r, comb = _sym_bits(g, self.n), 1 << idx
                for p, row, c in basis:
                    if (r >> p) & 1:
                        r ^= row
                        comb ^= c
                if r:
                    basis.append(((r & -r).bit_length() - 1, r, comb))
            self._basis = tuple(basis)
        return self._basis

    def rank(self) -> int:
        return len(self._reduced_basis())

    def _reduce(self, p: Pauli) -> Tuple[int, int]:
        r, comb = _sym_bits(p, self.n), 0
        for piv, row, c in self._reduced_basis():
            if (r >> piv) & 1:
                r ^= row
                comb ^= c
        return r, comb

    def in_group(self, p: Pauli, sign_sensitive: bool = False) -> bool:
        """Row-space membership of p's symplectic vector.

        The sign-sensitive variant recomputes the matching generator
        product's sign (well-defined: the generators commute) and compares.
        """
        if p.n != self.n:
            raise ValueError("length mismatch")
        r, comb = self._reduce(p)
        if r:
            return False
        if not sign_sensitive:
            return True
        prod = Pauli.identity(self.n)
        for idx in range(len(self.generators)):
            if (comb >> idx) & 1:
                prod = pauli_mul(prod, self.generators[idx])
        return prod.sign == p.sign

    def in_normalizer(self, p: Pauli) -> bool:
        return all(commutes(p, g) for g in self.generators)


def graph_stabilizers(g: Graph) -> StabilizerGroup:
    """Generator i is X on vertex i and Z on each of its neighbors."""
    a = g.adjacency()
    gens = [
        Pauli(BitString.basis(g.n, i), BitString(g.n, a.columns()[i]))
        for i in range(g.n)
    ]
    return StabilizerGroup(g.n, gens)


def code_pair_stabilizers(g: Graph, h: BitString) -> StabilizerGroup:
    """n-1 independent generators fixing both the graph state and label h.

    Products of graph-state generators over the kernel of r -> r.h; each
    such product fixes the Z^h state because its eigenvalue there is
    (-1)^{r.h} = +1.
    """
    if h.n != g.n:
        raise ValueError("length mismatch")
    if h.is_zero():
        raise ValueError("label must be nonzero")
    base = graph_stabilizers(g).generators
    gens = []
    for r in Gf2Matrix.from_rows([h]).kernel_basis():
        prod = Pauli.identity(g.n)
        for j in r.support():
            prod = pauli_mul(prod, base[j])
        gens.append(prod)
    return StabilizerGroup(g.n, gens)


def hadamard_conjugate(s: StabilizerGroup, b: Iterable[int]) -> StabilizerGroup:
    """Swap the x and z bits of every generator on the qubits in b.

    Signs are left unchanged (valid when no generator carries Y on b, as in
    the constructions here).
    """
    mask = 0
    for q in b:
        if not 0 <= q < s.n:
            raise ValueError(f"qubit {q} out of range")
        mask |= 1 << q
    gens = []
    for g in s.generators:
        xb = (g.x.bits & ~mask) | (g.z.bits & mask)
        zb = (g.z.bits & ~mask) | (g.x.bits & mask)
        gens.append(Pauli(BitString(s.n, xb), BitString(s.n, zb), g.sign))
    return StabilizerGroup(s.n, gens)


def _wrap(c: int, L: int) -> int:
    return (c - 1) % L + 1


def gen_3d_code(L: int) -> StabilizerGroup:
    """Six-local generators on the L^3-vertex 3-torus, (i, j, k) lexicographic.

    Generator (i,j,k): X on (i,j,k) and (i+1,j,k); Z on (i,j,k+1),
    (i,j+1,k+1), (i+1,j,k-1) and (i+1,j-1,k-1); all coordinates mod L.
    Coinciding Z positions cancel, which xor accumulation gives for free.
    """
    if L < 2:
        raise ValueError("need L >= 2")
    n = L**3

    def v(i, j, k):
        return toric3d_vertex(_wrap(i, L), _wrap(j, L), _wrap(k, L), L)

    gens = []
    for i in range(1, L + 1):
        for j in range(1, L + 1):
            for k in range(1, L + 1):
                xb = (1 << v(i, j, k)) ^ (1 << v(i + 1, j, k))
                zb = 0
                for pos in (
                    (i, j, k + 1),
                    (i, j + 1, k + 1),
                    (i + 1, j, k - 1),
                    (i + 1, j - 1, k - 1),
                ):
                    zb ^= 1 << v(*pos)
                gens.append(Pauli(BitString(n, xb), BitString(n, zb)))
    return StabilizerGroup(n, gens)


def gen_3d_code_derived(L: int) -> StabilizerGroup:
    """Same generators derived from the layered toric graph state.

    Multiply neighboring graph-state generators into local products, then
    conjugate by Hadamard on the i = 1 hub plane; with the (i, j, k)
    lexicographic index order this must reproduce gen_3d_code row for row.
    """
    if L < 2:
        raise ValueError("need L >= 2")
    g = toric3d(L)
    base = graph_stabilizers(g).generators

    def s(i, j, k):
        return base[toric3d_vertex(_wrap(i, L), _wrap(j, L), _wrap(k, L), L)]

    prods = []
    for i in range(1, L + 1):
        for j in range(1, L + 1):
            for k in range(1, L + 1):
                if i == 1:
                    p = pauli_mul(pauli_mul(s(2, j, k), s(1, j, k + 1)), s(1, j + 1, k + 1))
                elif i == L:
                    p = pauli_mul(pauli_mul(s(L, j, k), s(1, j, k - 1)), s(1, j - 1, k - 1))
                else:
                    p = pauli_mul(s(i, j, k), s(i + 1, j, k))
                prods.append(p)
    hub_plane = [toric3d_vertex(1, j, k, L) for j in range(1, L + 1) for k in range(1, L + 1)]
    return hadamard_conjugate(StabilizerGroup(g.n, prods), hub_plane)


def logical_strings(L: int) -> List[Pauli]:
    """The L Pauli-X strings along the j axis of the i = 1 hub plane."""
    n = L**3
    out = []
    for k in range(1, L + 1):
        xb = 0
        for j in range(1, L + 1):
            xb |= 1 << toric3d_vertex(1, j, k, L)
        out.append(Pauli(BitString(n, xb), BitString.zeros(n)))
    return out


def _scan_chunk(group, supports, n, w, deadline):
    best = None
    for support in supports:
        if deadline is not None:
            deadline.check()
        for choice in itertools.product((1, 2, 3), repeat=w):
            xb = zb = 0
            for pos, c in zip(support, choice):
                if c & 1:
                    xb |= 1 << pos
                if c & 2:
                    zb |= 1 << pos
            key = (xb, zb)
            if best is not None and key >= best[0]:
                continue
            p = Pauli(BitString(n, xb), BitString(n, zb))
            if group.in_normalizer(p) and not group.in_group(p):
                best = (key, p)
    return best


def normalizer_min_weight(
    s: StabilizerGroup,
    w_max: int,
    threads: int = 1,
    deadline=None,
) -> Optional[Tuple[int, Pauli]]:
    """Least-weight Pauli commuting with all generators but outside the group.

    Scans weight classes in increasing order; within a class the canonical
    (x, z) least operator wins, so the result is independent of how the scan
    is partitioned.  Returns None when nothing of weight <= w_max exists.
    """
    n = s.n
    for w in range(1, min(w_max, n) + 1):
        supports = list(itertools.combinations(range(n), w))
        if threads > 1:
            chunk = max(1, len(supports) // (4 * threads))
            parts = [supports[i : i + chunk] for i in range(0, len(supports), chunk)]
            with ThreadPoolExecutor(max_workers=threads) as ex:
                results = list(
                    ex.map(lambda part: _scan_chunk(s, part, n, w, deadline), parts)
                )
            hits = [r for r in results if r is not None]
            best = min(hits, default=None)
        else:
            best = _scan_chunk(s, supports, n, w, deadline)
        if best is not None:
            return w, best[1]
    return None


@dataclass(frozen=True)
class Code3DReport:
    L: int
    n: int
    constraints_hold: bool
    rank: int
    rank_deficiency: int
    code_dim: int
    logicals_ok: bool
    derivation_ok: bool
    distance: Optional[int]
    distance_operator: Optional[str]
    distance_scanned: bool

    @property
    def k(self) -> int:
        return self.n - self.rank

    @property
    def ok(self) -> bool:
        structural = (
            self.constraints_hold
            and self.rank_deficiency == self.L
            and self.code_dim == 1 << self.L
            and self.logicals_ok
            and self.derivation_ok
        )
        if not self.distance_scanned:
            return structural
        return structural and self.distance == self.L

    def params(self) -> str:
        d = self.distance if self.distance_scanned else "?"
        return f"[[{self.n},{self.k},{d}]]"


def verify_3d_code(
    L: int,
    distance_scan: bool = True,
    threads: int = 1,
    deadline=None,
) -> Code3DReport:
    """Full check of the layered toric code at size L.

    (a) each per-layer product of all generators is +identity;
    (b) symplectic rank is L^3 - L (deficiency exactly L);
    (c) code dimension 2^L;
    (d) each X string commutes with everything, sits outside the group, and
        the L strings stay independent modulo the group;
    (e) minimum normalizer weight is L (scan skipped when distance_scan is
        off);
    plus the derivation-chain equality against the graph-state construction.
    """
    s = gen_3d_code(L)
    n = L**3
    gens = s.generators

    constraints_hold = True
    for k in range(L):
        prod = Pauli.identity(n)
        for i in range(L):
            for j in range(L):
                prod = pauli_mul(prod, gens[(i * L + j) * L + k])
        if not (prod.is_identity() and prod.sign == 1):
            constraints_hold = False

    rank = s.rank()
    code_dim = 1 << (n - rank)

    logicals = logical_strings(L)
    logicals_ok = all(
        s.in_normalizer(p) and not s.in_group(p) for p in logicals
    )
    if logicals_ok:
        combined = StabilizerGroup(n, list(gens) + logicals)
        logicals_ok = combined.rank() == rank + L

    derived = gen_3d_code_derived(L)
    derivation_ok = all(
        a.x == b.x and a.z == b.z for a, b in zip(gens, derived.generators)
    )

    distance = None
    dist_op = None
    if distance_scan:
        hit = normalizer_min_weight(s, L, threads=threads, deadline=deadline)
        if hit is not None:
            distance, op = hit
            dist_op = op.to_text()

    return Code3DReport(
        L,
        n,
        constraints_hold,
        rank,
        n - rank,
        code_dim,
        logicals_ok,
        derivation_ok,
        distance,
        dist_op,
        distance_scan,
    )
