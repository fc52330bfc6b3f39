"""Tensor-product Pauli basis for n qubits.

A multi-index is a tuple ``(m_1, ..., m_n)`` with each label in ``{0, 1, 2, 3}``
(0 is the identity, 1/2/3 are sigma_x/y/z).  All coordinate vectors in the
package use lexicographic base-4 order with the all-zero index first, so the
position of an index is simply its base-4 value.
"""

from __future__ import annotations

import itertools
import threading
from functools import lru_cache, reduce

import numpy as np

MAX_PARTIES = 6

MultiIndex = tuple[int, ...]

SIGMA = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)

_cache: dict[int, np.ndarray] = {}
_cache_lock = threading.Lock()


def check_party_count(n: int) -> int:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise TypeError(f"party count must be an integer, got {n!r}")
    if not 1 <= n <= MAX_PARTIES:
        raise ValueError(f"party count must be in [1, {MAX_PARTIES}], got {n}")
    return int(n)


def check_index(m, n: int | None = None) -> MultiIndex:
    m = tuple(int(x) for x in m)
    if len(m) == 0:
        raise ValueError("multi-index must have at least one label")
    if n is not None and len(m) != n:
        raise ValueError(f"multi-index {m} has length {len(m)}, expected {n}")
    if any(x not in (0, 1, 2, 3) for x in m):
        raise ValueError(f"multi-index labels must be in {{0,1,2,3}}, got {m}")
    return m


def enumerate_indices(n: int) -> list[MultiIndex]:
    """All 4**n multi-indices in base-4 order, starting with (0, ..., 0)."""
    n = check_party_count(n)
    return list(itertools.product(range(4), repeat=n))


def index_position(m) -> int:
    """Position of ``m`` in :func:`enumerate_indices` order."""
    pos = 0
    for x in check_index(m):
        pos = 4 * pos + x
    return pos


def n_zero(m) -> int:
    """Number of identity labels in ``m``."""
    return sum(1 for x in check_index(m) if x == 0)


def weight(m) -> int:
    """Number of parties a basis operator acts on non-trivially."""
    m = check_index(m)
    return len(m) - n_zero(m)


def index_to_str(m) -> str:
    return "".join(str(x) for x in check_index(m))


def str_to_index(s: str, n: int | None = None) -> MultiIndex:
    if not isinstance(s, str) or not s.isdigit():
        raise ValueError(f"invalid multi-index string {s!r}")
    return check_index((int(c) for c in s), n)


def pauli_operator(m) -> np.ndarray:
    """Kronecker product ``sigma_{m_1} x ... x sigma_{m_n}`` in party order."""
    m = check_index(m)
    return reduce(np.kron, (SIGMA[x] for x in m))


def basis(n: int) -> np.ndarray:
    """Stacked basis operators, shape ``(4**n, 2**n, 2**n)``; cached, read-only."""
    n = check_party_count(n)
    ops = _cache.get(n)
    if ops is None:
        with _cache_lock:
            ops = _cache.get(n)
            if ops is None:
                ops = np.stack([pauli_operator(m) for m in enumerate_indices(n)])
                ops.flags.writeable = False
                _cache[n] = ops
    return ops


def weights(n: int) -> np.ndarray:
    """Weight of every index, in basis order."""
    return _weights(check_party_count(n)).copy()


@lru_cache(maxsize=None)
def _weights(n: int) -> np.ndarray:
    return np.array([weight(m) for m in enumerate_indices(n)])


def hs_inner(a: np.ndarray, b: np.ndarray) -> float:
    """Hilbert-Schmidt pairing ``Tr(a b)`` of two Hermitian matrices."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    # Tr(ab) = sum_ij a_ij b_ji
    val = np.sum(a * b.T)
    scale = max(1.0, float(np.abs(a).max(initial=0.0) * np.abs(b).max(initial=0.0)) * a.shape[0])
    if abs(val.imag) > 1e-12 * scale:
        raise ValueError(f"Tr(ab) has imaginary part {val.imag:.3e}; inputs are not Hermitian")
    return float(val.real)


def expectations(rho: np.ndarray) -> np.ndarray:
    """``Tr(rho sigma_m)`` for every index, including the identity, in basis order."""
    rho = np.asarray(rho)
    d = rho.shape[0]
    n = d.bit_length() - 1
    ops = basis(n).reshape(4**n, d * d)
    # Tr(rho s) = sum_ij rho_ij conj(s_ij) for Hermitian s
    return (ops.conj() @ rho.reshape(-1)).real


def combine(coeffs: np.ndarray, n: int) -> np.ndarray:
    """``sum_m coeffs[m] sigma_m`` for a full length-4**n coefficient vector."""
    d = 2**n
    return np.tensordot(np.asarray(coeffs, dtype=float), basis(n), axes=1).reshape(d, d)
