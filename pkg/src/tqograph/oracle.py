"""Dense state-vector reference implementation.

Builds graph states and graph basis states, evaluates Pauli matrix elements,
and brute-force-checks the error-correction conditions.  Everything here is
deliberately independent of the analytic machinery so the two can be compared.

Operator convention: ``X^k Z^l`` applies all Z factors first, so
``X^k Z^l |x> = (-1)^{l.x} |x xor k>``.  Enumerating (k, l) pairs covers Y up
to a global phase, which the phase-insensitive conditions never see.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .gf2 import BitString
from .graphs import Graph

QUBIT_CAP = 14
DEFAULT_TOL = 1e-9


class QubitCapExceededError(RuntimeError):
    """Raised when a state-vector build would exceed the qubit cap."""


class StateVector:
    """Normalized 2^n-dimensional state.  Immutable after construction."""

    __slots__ = ("n", "amps")

    def __init__(self, n: int, amps: np.ndarray):
        amps = np.asarray(amps, dtype=np.complex128)
        if amps.shape != (1 << n,):
            raise ValueError(f"expected {1 << n} amplitudes, got {amps.shape}")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"state not normalized: |psi| = {norm}")
        amps.setflags(write=False)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "amps", amps)

    def __setattr__(self, name, value):
        raise AttributeError("StateVector is immutable")

    def __repr__(self):
        return f"StateVector(n={self.n})"


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise QubitCapExceededError(f"{n} qubits exceeds cap {cap}")


def _sign_table(n: int, mask: int) -> np.ndarray:
    """Entry x is (-1)^{popcount(x & mask)}; vectorized parity fold."""
    v = np.arange(1 << n, dtype=np.uint32) & np.uint32(mask)
    for shift in (16, 8, 4, 2, 1):
        v ^= v >> np.uint32(shift)
    return 1.0 - 2.0 * (v & np.uint32(1)).astype(np.float64)


def build_graph_state(g: Graph, cap: int = QUBIT_CAP) -> StateVector:
    """CZ along every edge applied to the uniform superposition.

    Amplitude of |x> is 2^{-n/2} times (-1)^{#edges inside the support of x}.
    """
    _check_cap(g.n, cap)
    idx = np.arange(1 << g.n, dtype=np.uint32)
    par = np.zeros(1 << g.n, dtype=np.uint32)
    for u, v in g.edges:
        par ^= (idx >> np.uint32(u)) & (idx >> np.uint32(v)) & np.uint32(1)
    amps = (1.0 - 2.0 * par.astype(np.float64)) * 2.0 ** (-g.n / 2)
    return StateVector(g.n, amps)


def graph_basis_state(g: Graph, h: BitString, cap: int = QUBIT_CAP) -> StateVector:
    """Z^h applied to the graph state of g."""
    if h.n != g.n:
        raise ValueError(f"length mismatch: {h.n} vs {g.n} vertices")
    base = build_graph_state(g, cap)
    return StateVector(g.n, base.amps * _sign_table(g.n, h.bits))


def inner(phi: StateVector, psi: StateVector) -> complex:
    if phi.n != psi.n:
        raise ValueError("qubit count mismatch")
    return complex(np.vdot(phi.amps, psi.amps))


def pauli_matrix_element(
    phi: StateVector, psi: StateVector, k: BitString, l: BitString
) -> complex:
    """<phi| X^k Z^l |psi> with the Z factors applied first."""
    if phi.n != psi.n:
        raise ValueError("qubit count mismatch")
    if k.n != phi.n or l.n != phi.n:
        raise ValueError("operator length mismatch")
    idx = np.arange(1 << phi.n, dtype=np.uint32)
    bra = np.conj(phi.amps)[idx ^ np.uint32(k.bits)]
    return complex(np.sum(bra * _sign_table(phi.n, l.bits) * psi.amps))


def pauli_pairs(n: int, w_max: int):
    """All (k, l) with weight(k | l) <= w_max, in canonical (w, k, l) order.

    Count is sum over w of C(n, w) * 3^w: each support position carries X,
    Z, or both.
    """
    out = []
    for w in range(w_max + 1):
        for support in itertools.combinations(range(n), w):
            for choice in itertools.product((1, 2, 3), repeat=w):
                kb = lb = 0
                for pos, c in zip(support, choice):
                    if c & 1:
                        kb |= 1 << pos
                    if c & 2:
                        lb |= 1 << pos
                out.append((w, kb, lb))
    out.sort()
    for w, kb, lb in out:
        yield BitString(n, kb), BitString(n, lb)


@dataclass(frozen=True)
class QeccVerdict:
    ok: bool
    witness: Optional[Tuple[int, int, BitString, BitString]] = None
    operators_checked: int = 0

    def __bool__(self):
        return self.ok


def brute_force_qecc_check(
    codewords: List[StateVector],
    d: int,
    tol: float = DEFAULT_TOL,
    deadline=None,
) -> QeccVerdict:
    """Check the error-correction conditions on a codeword list by enumeration.

    For every O = X^k Z^l with weight(k | l) <= d - 1, all diagonal matrix
    elements must agree and all off-diagonal ones must vanish, within tol.
    The witness (i, j, k, l) identifies the first violation in canonical
    (weight, k, l) order; diagonal witnesses have i == j.
    """
    if not codewords:
        raise ValueError("need at least one codeword")
    n = codewords[0].n
    if any(c.n != n for c in codewords):
        raise ValueError("codeword qubit counts differ")
    if d < 1 or d > n:
        raise ValueError(f"need 1 <= d <= {n}")
    for i, ci in enumerate(codewords):
        for j in range(i, len(codewords)):
            expect = 1.0 if i == j else 0.0
            if abs(inner(ci, codewords[j]) - expect) > tol:
                raise ValueError(f"codewords {i},{j} not orthonormal")

    count = 0
    for k, l in pauli_pairs(n, d - 1):
        if deadline is not None:
            deadline.check()
        count += 1
        diag0 = pauli_matrix_element(codewords[0], codewords[0], k, l)
        for i in range(len(codewords)):
            for j in range(i, len(codewords)):
                val = (
                    diag0
                    if (i, j) == (0, 0)
                    else pauli_matrix_element(codewords[i], codewords[j], k, l)
                )
                if i == j:
                    if abs(val - diag0) > tol:
                        return QeccVerdict(False, (i, i, k, l), count)
                elif abs(val) > tol:
                    return QeccVerdict(False, (i, j, k, l), count)
    return QeccVerdict(True, None, count)


def pauli_expectation(psi: StateVector, k: BitString, l: BitString) -> complex:
    return pauli_matrix_element(psi, psi, k, l)
