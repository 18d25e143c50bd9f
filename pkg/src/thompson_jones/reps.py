"""Matrix coefficients of Jones representations.

Two monoidal structures on Hilbert spaces are covered:

* direct sum: an isometry ``R = A ⊕ B`` with ``A*A + B*B = 1``.  A vector
  placed at the root of a tree travels to the leaves, picking up ``A`` on
  every left edge and ``B`` on every right edge (the operator nearest the leaf
  is applied last);
* tensor product: an isometry ``R: H → H ⊗ H`` applied at every branching,
  with vectors over a finite basis or over a countable index set.

For ``g = (t, π, s)`` the vacuum-type coefficient is the inner product of the
decoration of ``s`` with the decoration of ``t``, leaves matched through ``π``.
Inner products are linear in the first argument.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np
import sympy

from .errors import GrowthError, ValidationError
from .group import TreePair, generator, invert, multiply
from .trees import Tree

__all__ = [
    "DEFAULT_TOL",
    "PythRep",
    "pyth_check",
    "word_for",
    "decorate_direct_sum",
    "coeff_direct_sum",
    "symbolic_terms",
    "symbolic_coefficient",
    "koopman_coeff",
    "koopman_integral",
    "deformed_coeff",
    "TensorRep",
    "decorate_tensor",
    "coeff_tensor",
    "regular_rep",
    "regular_coeff",
    "rotation",
    "property_t_rep",
    "property_t_coeff",
    "AlmostInvariantTerm",
    "almost_invariant_sequence",
    "gram_psd",
    "is_psd",
]

DEFAULT_TOL = 1e-10
DEFAULT_MAX_TERMS = 10**6


def _as_matrix(m, exact: bool):
    if exact:
        return sympy.Matrix(m)
    return np.asarray(m, dtype=complex)


def pyth_check(A, B, tol: float = DEFAULT_TOL, exact: bool = False) -> bool:
    """``‖A*A + B*B − I‖_max ≤ tol`` (exact equality when ``exact``)."""
    A, B = _as_matrix(A, exact), _as_matrix(B, exact)
    if A.shape != B.shape or A.shape[0] != A.shape[1]:
        raise ValidationError(f"A and B must be square of equal size, got {A.shape} and {B.shape}")
    if exact:
        defect = A.H * A + B.H * B - sympy.eye(A.shape[0])
        return all(sympy.simplify(x) == 0 for x in defect)
    defect = A.conj().T @ A + B.conj().T @ B - np.eye(A.shape[0])
    return bool(np.max(np.abs(defect), initial=0.0) <= tol)


@dataclass(frozen=True, eq=False)
class PythRep:
    """A pair ``(A, B)`` satisfying the Pythagorean identity, checked on construction.

    With ``exact=True`` entries are sympy numbers (Gaussian rationals, surds...)
    and all arithmetic is exact.
    """

    A: object
    B: object
    exact: bool = False
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        object.__setattr__(self, "A", _as_matrix(self.A, self.exact))
        object.__setattr__(self, "B", _as_matrix(self.B, self.exact))
        if not pyth_check(self.A, self.B, self.tol, self.exact):
            raise ValidationError("A*A + B*B != 1")

    @property
    def dim(self) -> int:
        return self.A.shape[0]

    @classmethod
    def scalar(cls, v: complex, w: complex, tol: float = DEFAULT_TOL) -> "PythRep":
        return cls([[v]], [[w]], tol=tol)

    def vector(self, xi):
        if self.exact:
            xi = sympy.Matrix(xi)
            shape = xi.shape[0]
        else:
            xi = np.asarray(xi, dtype=complex).reshape(-1)
            shape = xi.shape[0]
        if shape != self.dim:
            raise ValidationError(f"vector has dimension {shape}, representation has {self.dim}")
        return xi

    def inner(self, x, y):
        if self.exact:
            return sympy.simplify((y.H * x)[0, 0])
        return complex(np.vdot(y, x))


def word_for(address: str) -> str:
    """Operator word for a leaf address, written as applied to ξ (leftmost acts last)."""
    return "".join("A" if c == "0" else "B" for c in reversed(address))


def decorate_direct_sum(s: Tree, rep: PythRep, xi) -> list:
    """Vectors sitting on the leaves of ``s`` after pushing ``xi`` up from the root."""
    xi = rep.vector(xi)
    memo = {"": xi}
    out = []
    for addr in s.addresses:
        for k in range(1, len(addr) + 1):
            key = addr[:k]
            if key not in memo:
                op = rep.A if key[-1] == "0" else rep.B
                memo[key] = op * memo[key[:-1]] if rep.exact else op @ memo[key[:-1]]
        out.append(memo[addr])
    return out


def coeff_direct_sum(g: TreePair, rep: PythRep, xi):
    """``Σ_ℓ ⟨v_ℓ, u_π(ℓ)⟩`` with ``v`` the decoration of ``s`` and ``u`` that of ``t``."""
    v = decorate_direct_sum(g.s, rep, xi)
    u = decorate_direct_sum(g.t, rep, xi)
    total = 0
    for i, vec in enumerate(v):
        total = total + rep.inner(vec, u[g.perm[i]])
    return sympy.simplify(total) if rep.exact else complex(total)


def symbolic_terms(g: TreePair) -> list[tuple[str, str]]:
    """(s-side word, t-side word) per leaf, in ``s``-leaf order."""
    ta = g.t.addresses
    return [(word_for(u), word_for(ta[g.perm[i]])) for i, u in enumerate(g.s.addresses)]


def symbolic_coefficient(g: TreePair, vector: str = "ξ") -> str:
    """The coefficient as a sum of formal inner products, e.g. ``⟨Aξ,AAξ⟩+…``."""
    return "+".join(f"⟨{a}{vector},{b}{vector}⟩" for a, b in symbolic_terms(g))


def koopman_coeff(g: TreePair) -> float:
    """``A = B = 1/√2`` on ``C``: ``Σ_ℓ 2^{-(d_s^ℓ + d_t^{π(ℓ)})/2}``."""
    ds, dt = g.s.depths(), g.t.depths()
    return math.fsum(2.0 ** (-(ds[i] + dt[g.perm[i]]) / 2) for i in range(len(ds)))


def koopman_integral(pl) -> float:
    """``∫₀¹ √((f⁻¹)′(x)) dx`` for an exact PL map ``f``, piece by piece."""
    inv = pl.inverse()
    total = []
    for a, b, fa, fb in inv.pieces():
        slope = (fb - fa) / (b - a)
        total.append(float(b - a) * math.sqrt(slope.numerator / slope.denominator))
    return math.fsum(total)


def deformed_coeff(g: TreePair, v: complex, w: complex, tol: float = DEFAULT_TOL) -> complex:
    if abs(abs(v) ** 2 + abs(w) ** 2 - 1) > tol:
        raise ValidationError(f"|v|^2 + |w|^2 = {abs(v) ** 2 + abs(w) ** 2}, expected 1")
    return coeff_direct_sum(g, PythRep.scalar(v, w, tol), [1.0])


class TensorRep:
    """An isometry ``R: H → H ⊗ H``.

    Finite basis: ``R`` is a ``(d², d)`` matrix whose column ``i`` is ``R δ_i``
    in the basis ``δ_j ⊗ δ_k`` (row ``j*d + k``).  Countable basis: ``R`` is a
    callable sending an index to a ``{(j, k): amplitude}`` map; the caller
    guarantees orthonormality of the images.
    """

    def __init__(self, R, tol: float = DEFAULT_TOL):
        self.tol = tol
        if callable(R):
            self.dim = None
            self._apply = R
            self.matrix = None
            return
        M = np.asarray(R, dtype=complex)
        d = M.shape[1] if M.ndim == 2 else -1
        if M.ndim != 2 or M.shape[0] != d * d:
            raise ValidationError(f"R must be (d^2, d), got {M.shape}")
        if np.max(np.abs(M.conj().T @ M - np.eye(d))) > tol:
            raise ValidationError("R is not an isometry")
        self.dim = d
        self.matrix = M
        cols = []
        for i in range(d):
            col = {}
            for r in np.nonzero(np.abs(M[:, i]) > 0)[0]:
                col[(int(r) // d, int(r) % d)] = complex(M[r, i])
            cols.append(col)
        self._cols = cols
        self._apply = lambda i: self._cols[i]

    def apply(self, index) -> Mapping[tuple, complex]:
        if self.dim is not None and not 0 <= index < self.dim:
            raise ValidationError(f"basis index {index} outside 0..{self.dim - 1}")
        return self._apply(index)

    def vector(self, xi) -> dict:
        """Normalise input to a sparse ``{index: amplitude}`` map without zeros."""
        if isinstance(xi, Mapping):
            items = xi.items()
        else:
            items = enumerate(np.asarray(xi).reshape(-1).tolist())
        out = {}
        for k, a in items:
            if a != 0:
                if self.dim is not None and not 0 <= k < self.dim:
                    raise ValidationError(f"basis index {k} outside 0..{self.dim - 1}")
                out[k] = a
        return out


def _decorate_index(tree: Tree, addr: str, index, rep: TensorRep, max_terms: int, memo) -> dict:
    key = (addr, index)
    if key in memo:
        return memo[key]
    if addr in tree.internal:
        out: dict = {}
        for (j, k), c in rep.apply(index).items():
            left = _decorate_index(tree, addr + "0", j, rep, max_terms, memo)
            right = _decorate_index(tree, addr + "1", k, rep, max_terms, memo)
            if len(out) + len(left) * len(right) > max_terms:
                raise GrowthError(f"sparse support exceeds {max_terms} terms")
            for lk, lv in left.items():
                for rk, rv in right.items():
                    idx = lk + rk
                    val = out.get(idx, 0) + c * lv * rv
                    if val == 0:
                        out.pop(idx, None)
                    else:
                        out[idx] = val
    else:
        out = {(index,): 1}
    memo[key] = out
    return out


def decorate_tensor(s: Tree, rep: TensorRep, xi, max_terms: int = DEFAULT_MAX_TERMS) -> dict:
    """``Φ(s) ξ`` as a sparse map from index tuples (leaf order) to amplitudes."""
    xi = rep.vector(xi)
    memo: dict = {}
    out: dict = {}
    for i, a in xi.items():
        for idx, val in _decorate_index(s, "", i, rep, max_terms, memo).items():
            new = out.get(idx, 0) + a * val
            if new == 0:
                out.pop(idx, None)
            else:
                out[idx] = new
        if len(out) > max_terms:
            raise GrowthError(f"sparse support exceeds {max_terms} terms")
    return out


def _conj(z):
    return z.conjugate() if hasattr(z, "conjugate") else z


def coeff_tensor(g: TreePair, rep: TensorRep, xi, eta, max_terms: int = DEFAULT_MAX_TERMS):
    """``⟨σ_π Φ(s)ξ, Φ(t)η⟩``; factor ``ℓ`` of the ``s`` side moves to slot ``π(ℓ)``."""
    left = decorate_tensor(g.s, rep, xi, max_terms)
    right = decorate_tensor(g.t, rep, eta, max_terms)
    n = g.leaf_count
    total = 0
    for idx, a in left.items():
        moved = [None] * n
        for i, x in enumerate(idx):
            moved[g.perm[i]] = x
        b = right.get(tuple(moved))
        if b is not None:
            total += a * _conj(b)
    return total


def regular_rep() -> TensorRep:
    """``ℓ²(N)`` with ``R δ_n = δ_{n+1} ⊗ δ_{n+1}``."""
    return TensorRep(lambda n: {(n + 1, n + 1): 1})


def regular_coeff(g: TreePair) -> int:
    return int(coeff_tensor(g, regular_rep(), {0: 1}, {0: 1}))


def rotation(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def property_t_rep(u, zeta) -> TensorRep:
    """``R x = u x ⊗ ζ`` for an isometry ``u`` and a unit vector ``ζ``."""
    u = np.asarray(u, dtype=complex)
    zeta = np.asarray(zeta, dtype=complex).reshape(-1)
    d = u.shape[1]
    R = np.column_stack([np.kron(u[:, i], zeta) for i in range(d)])
    return TensorRep(R)


def property_t_coeff(g: TreePair, theta: float) -> complex:
    """Vacuum coefficient of ``R x = rotation(θ) x ⊗ e_0`` on ``C²``."""
    zeta = np.array([1.0, 0.0])
    return coeff_tensor(g, property_t_rep(rotation(theta), zeta), zeta, zeta)


@dataclass
class AlmostInvariantTerm:
    theta: float
    rep: TensorRep
    vector: np.ndarray
    coefficients: dict
    defect: float


def almost_invariant_sequence(thetas: Iterable[float], generators: Sequence[TreePair] | None = None):
    """Representations ``R_k x = u_k x ⊗ ζ`` with ``u_k = rotation(θ_k)``.

    Each term records the coefficients on the finite set ``generators``
    (default ``{x0, x1}``) and ``defect = sup |coeff − 1|`` over it, which tends
    to 0 with ``θ_k``.
    """
    gens = list(generators) if generators is not None else [generator(0), generator(1)]
    zeta = np.array([1.0, 0.0])
    out = []
    for theta in thetas:
        rep = property_t_rep(rotation(theta), zeta)
        coeffs = {str(g): coeff_tensor(g, rep, zeta, zeta) for g in gens}
        defect = max((abs(c - 1) for c in coeffs.values()), default=0.0)
        out.append(AlmostInvariantTerm(theta, rep, zeta, coeffs, defect))
    return out


def gram_psd(coeff: Callable[[TreePair], complex], elems: Sequence[TreePair]):
    """Gram matrix ``M[i, j] = coeff(g_i⁻¹ g_j)`` and its smallest eigenvalue."""
    elems = list(elems)
    n = len(elems)
    M = np.zeros((n, n), dtype=complex)
    inverses = [invert(g) for g in elems]
    for i in range(n):
        for j in range(n):
            val = coeff(multiply(inverses[i], elems[j]))
            M[i, j] = complex(val) if not isinstance(val, Fraction) else float(val)
    herm = (M + M.conj().T) / 2
    return M, float(np.linalg.eigvalsh(herm)[0]) if n else 0.0


def is_psd(min_eigenvalue: float, tol: float = 1e-8) -> bool:
    return min_eigenvalue >= -tol
