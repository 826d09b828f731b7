"""Numerical verification engine on skew-Hermitian matrix models.

Everything here runs in compact duals: ``su(n+k)`` for the Grassmannian of
complex k-planes (``k = 1`` giving ``CP^n``), and ``so(m+1)`` for the
sphere ``S^m``.  Totally geodesic submanifolds correspond to Lie triple
systems, so a symbolic classification entry is checked by building the
matching diagonal subspace in the compact models, measuring the triple
bracket residual and comparing sectional curvatures.

Conventions, fixed here once:

* Inner product: ``<X, Y> = Re tr(X^H Y)``, the positive multiple of the
  negative Killing form natural for compact matrix algebras.
* Curvature: in these variables compact-type sectional curvature is
  ``-<[[X, Y], Y], X> / (<X,X><Y,Y> - <X,Y>^2)``, a non-negative number
  (it equals ``|[X, Y]|^2`` over the same denominator).  Reported values
  are rescaled so the ``su(2)`` projective-line model reads exactly 4;
  totally real planes of ``CP^n`` then read 1, spheres ``so(m+1)`` read 1,
  matching the curvature labels used by the exact classification at c = 1.
  The raw pre-rescaling value of the ``su(2)`` model is exposed as
  :func:`calibration_constant`.
* Conjugation ``Theta`` is entrywise complex conjugation; on the canonical
  ``CP^n`` basis it fixes the real directions ``e_i`` and negates ``J e_i``.
* Tolerances: arithmetic identities 1e-12, structural residuals 1e-10,
  constructive checks 1e-9; residuals are relative to the norm of the
  quantity tested.

Quaternionic and octonionic factors have no matrix model here and are
reported as unsupported rather than approximated.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .catalog import Field, RankOneSpace
from .tableaux import ClassifiedSubmanifold, ProductSpace, diagonal_curvature

TOL_ARITHMETIC = 1e-12
TOL_STRUCTURAL = 1e-10
TOL_CONSTRUCTIVE = 1e-9

Matrix = np.ndarray
Element = tuple[Matrix, ...]


# ---------------------------------------------------------------------------
# plain matrix helpers
# ---------------------------------------------------------------------------


def bracket(x: Matrix, y: Matrix) -> Matrix:
    """Matrix commutator ``xy - yx``."""
    if x.shape != y.shape:
        raise ValueError(f"size mismatch: {x.shape} vs {y.shape}")
    return x @ y - y @ x


def check_element(x: Matrix, tol: float = TOL_ARITHMETIC) -> None:
    """Validate skew-Hermitian and traceless, relative to the matrix norm."""
    scale = max(1.0, float(np.linalg.norm(x)))
    if np.linalg.norm(x + x.conj().T) > tol * scale:
        raise ValueError("matrix is not skew-Hermitian")
    if abs(np.trace(x)) > tol * scale:
        raise ValueError("matrix is not traceless")


def random_special_unitary(dim: int, rng: np.random.Generator) -> Matrix:
    """Haar-ish random element of SU(dim) via QR of a complex Gaussian."""
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    q = q @ np.diag(np.diag(r) / np.abs(np.diag(r)))
    det = np.linalg.det(q)
    return q * det ** (-1.0 / dim)


def _e(n: int, i: int, j: int, value: complex) -> Matrix:
    m = np.zeros((n, n), dtype=complex)
    m[i, j] = value
    return m


def _antisym(n: int, i: int, j: int) -> Matrix:
    """E_ij - E_ji as a complex matrix."""
    return _e(n, i, j, 1.0) + _e(n, j, i, -1.0)


# ---------------------------------------------------------------------------
# Cartan decompositions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CartanDecomp:
    """A compact matrix model ``g = k + p`` with orthonormal bases.

    ``kind`` is ``"grassmannian"`` (``su(n+k)`` with ``block_shape=(k, n)``)
    or ``"sphere"`` (``so(m+1)`` with ``block_shape=(1, m)``).  For
    Hermitian models ``J_generator`` is the central element of ``k`` whose
    adjoint action squares to minus the identity on ``p``.
    """

    N: int
    kind: str
    block_shape: tuple[int, int]
    k_basis: tuple[Matrix, ...]
    p_basis: tuple[Matrix, ...]
    J_generator: Matrix | None

    def __post_init__(self) -> None:
        for m in (*self.k_basis, *self.p_basis):
            check_element(m)
        gram = np.array(
            [[_raw_inner(a, b) for b in self.p_basis] for a in self.p_basis]
        )
        if np.max(np.abs(gram - np.eye(len(self.p_basis)))) > TOL_ARITHMETIC:
            raise ValueError("p basis is not orthonormal")
        if self.J_generator is not None:
            for v in self.p_basis:
                jjv = bracket(self.J_generator, bracket(self.J_generator, v))
                if np.linalg.norm(jjv + v) > TOL_STRUCTURAL:
                    raise ValueError("ad(J)^2 is not -identity on p")

    @property
    def p_dim(self) -> int:
        return len(self.p_basis)

    def conjugated(self, g: Matrix) -> "CartanDecomp":
        """The same decomposition transported by a unitary ``g``."""
        conj = lambda m: g @ m @ g.conj().T
        return CartanDecomp(
            self.N,
            self.kind,
            self.block_shape,
            tuple(conj(m) for m in self.k_basis),
            tuple(conj(m) for m in self.p_basis),
            None if self.J_generator is None else conj(self.J_generator),
        )


def _raw_inner(x: Matrix, y: Matrix) -> float:
    return float(np.real(np.vdot(x, y)))


def _orthonormalize_raw(vectors: Iterable[Matrix]) -> list[Matrix]:
    basis: list[Matrix] = []
    for v in vectors:
        w = v.astype(complex)
        for _ in range(2):
            for b in basis:
                w = w - _raw_inner(b, w) * b
        nrm = math.sqrt(_raw_inner(w, w))
        if nrm <= 1e-10 * max(1.0, float(np.linalg.norm(v))):
            raise ValueError("rank-deficient family in orthonormalization")
        basis.append(w / nrm)
    return basis


@functools.lru_cache(maxsize=None)
def grassmannian_decomp(k: int, n: int) -> CartanDecomp:
    """The ``su(n+k)`` model of the Grassmannian of complex k-planes.

    ``k`` is the block-diagonal ``s(u(k) + u(n))``, ``p`` the off-diagonal
    blocks identified with k x n complex matrices.  The complex structure
    generator is the central diagonal element, normalized numerically so
    that its adjoint action squares to minus the identity on ``p``.
    """
    if k < 1 or n < 1:
        raise ValueError("block sizes must be positive")
    N = k + n
    k_raw: list[Matrix] = []
    for lo, hi in ((0, k), (k, N)):
        for a in range(lo, hi):
            for b in range(a + 1, hi):
                k_raw.append(_antisym(N, a, b))
                k_raw.append(_e(N, a, b, 1j) + _e(N, b, a, 1j))
    for a in range(N - 1):
        k_raw.append(_e(N, a, a, 1j) + _e(N, a + 1, a + 1, -1j))
    k_basis = _orthonormalize_raw(k_raw)

    p_basis: list[Matrix] = []
    for a in range(k):
        for b in range(n):
            real = (_e(N, a, k + b, 1.0) + _e(N, k + b, a, -1.0)) / math.sqrt(2)
            imag = (_e(N, a, k + b, 1j) + _e(N, k + b, a, 1j)) / math.sqrt(2)
            p_basis.extend((real, imag))

    z_raw = 1j * np.diag([float(n)] * k + [float(-k)] * n).astype(complex)
    scale = np.linalg.norm(bracket(z_raw, p_basis[0])) / np.linalg.norm(p_basis[0])
    j_generator = z_raw / scale

    decomp = CartanDecomp(
        N, "grassmannian", (k, n), tuple(k_basis), tuple(p_basis), j_generator
    )
    _freeze(decomp)
    return decomp


@functools.lru_cache(maxsize=None)
def sphere_decomp(m: int) -> CartanDecomp:
    """The ``so(m+1)`` model of the sphere ``S^m``.

    ``k = so(m)`` acts on the first m coordinates; ``p`` is the last
    column of antisymmetric real matrices.  No complex structure.
    """
    if m < 2:
        raise ValueError("sphere dimension must be at least 2")
    N = m + 1
    k_basis = [_antisym(N, a, b) / math.sqrt(2) for a in range(m) for b in range(a + 1, m)]
    p_basis = [_antisym(N, a, m) / math.sqrt(2) for a in range(m)]
    decomp = CartanDecomp(N, "sphere", (1, m), tuple(k_basis), tuple(p_basis), None)
    _freeze(decomp)
    return decomp


def _freeze(decomp: CartanDecomp) -> None:
    for m in (*decomp.k_basis, *decomp.p_basis):
        m.setflags(write=False)
    if decomp.J_generator is not None:
        decomp.J_generator.setflags(write=False)


def bracket_relation_residuals(decomp: CartanDecomp) -> dict[str, float]:
    """Relative residuals of [k,k] in k, [k,p] in p and [p,p] in k."""

    def span_residual(target: Sequence[Matrix], pairs) -> float:
        if not pairs:
            return 0.0
        brackets = np.array([bracket(a, b).ravel() for a, b in pairs])
        basis = np.array([v.ravel() for v in target])
        coeffs = brackets @ basis.conj().T  # orthonormal basis: real projections
        remainder = brackets - coeffs.real @ basis
        norms = np.linalg.norm(brackets, axis=1)
        rem_norms = np.linalg.norm(remainder, axis=1)
        ref = max(float(norms.max()), 1.0)
        mask = norms > TOL_ARITHMETIC * ref
        if not mask.any():
            return 0.0
        return float((rem_norms[mask] / norms[mask]).max())

    kk = [(a, b) for i, a in enumerate(decomp.k_basis) for b in decomp.k_basis[i + 1 :]]
    kp = [(a, b) for a in decomp.k_basis for b in decomp.p_basis]
    pp = [(a, b) for i, a in enumerate(decomp.p_basis) for b in decomp.p_basis[i + 1 :]]
    return {
        "kk_in_k": span_residual(decomp.k_basis, kk),
        "kp_in_p": span_residual(decomp.p_basis, kp),
        "pp_in_k": span_residual(decomp.k_basis, pp),
    }


@functools.lru_cache(maxsize=1)
def calibration_constant() -> float:
    """Raw sectional curvature of the ``su(2)`` projective-line model.

    All reported curvatures are rescaled by ``4 / calibration_constant()``,
    anchoring the projective line at 4.
    """
    d = grassmannian_decomp(1, 1)
    model = ProductModel((d,), (1.0,))
    x = model.embed(0, d.p_basis[0])
    y = model.embed(0, d.p_basis[1])
    return _sectional_raw(model, x, y)


# ---------------------------------------------------------------------------
# direct sums and subspaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProductModel:
    """An orthogonal direct sum of compact models with metric weights.

    Elements are tuples holding one matrix per block; the inner product is
    the weighted sum of the blockwise trace forms.  A weight ``w`` scales
    the block metric by ``w`` and therefore its curvatures by ``1/w``.
    """

    blocks: tuple[CartanDecomp, ...]
    weights: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.blocks) != len(self.weights):
            raise ValueError("one weight per block required")
        if not self.blocks:
            raise ValueError("at least one block required")
        if any(w <= 0 for w in self.weights):
            raise ValueError("weights must be positive")

    @classmethod
    def single(cls, decomp: CartanDecomp) -> "ProductModel":
        return cls((decomp,), (1.0,))

    @property
    def hermitian(self) -> bool:
        return all(b.J_generator is not None for b in self.blocks)

    def zero(self) -> Element:
        return tuple(np.zeros((b.N, b.N), dtype=complex) for b in self.blocks)

    def embed(self, index: int, matrix: Matrix) -> Element:
        parts = list(self.zero())
        parts[index] = parts[index] + matrix
        return tuple(parts)

    def add(self, u: Element, v: Element) -> Element:
        return tuple(a + b for a, b in zip(u, v))

    def scale(self, alpha: float, u: Element) -> Element:
        return tuple(alpha * a for a in u)

    def inner(self, u: Element, v: Element) -> float:
        return float(
            sum(w * _raw_inner(a, b) for w, a, b in zip(self.weights, u, v))
        )

    def norm(self, u: Element) -> float:
        return math.sqrt(max(self.inner(u, u), 0.0))

    def bracket(self, u: Element, v: Element) -> Element:
        return tuple(bracket(a, b) for a, b in zip(u, v))

    def J(self, u: Element) -> Element:
        """Blockwise complex structure; defined where the element lives.

        Components on blocks without a complex structure must vanish.
        """
        parts = []
        for b, a in zip(self.blocks, u):
            if b.J_generator is None:
                if np.linalg.norm(a) > TOL_ARITHMETIC:
                    raise ValueError("element has mass on a block with no complex structure")
                parts.append(np.zeros_like(a))
            else:
                parts.append(bracket(b.J_generator, a))
        return tuple(parts)

    def p_basis_elements(self) -> list[Element]:
        """Orthonormal basis of the full tangent space ``p`` of the sum."""
        out = []
        for i, (block, w) in enumerate(zip(self.blocks, self.weights)):
            out.extend(self.embed(i, m / math.sqrt(w)) for m in block.p_basis)
        return out

    def p_residual(self, u: Element) -> float:
        """Relative distance from ``u`` to the tangent space ``p``."""
        nrm = self.norm(u)
        if nrm == 0:
            return 0.0
        rem = u
        for b in self.p_basis_elements():
            rem = self.add(rem, self.scale(-self.inner(b, rem), b))
        return self.norm(rem) / nrm


@dataclass(frozen=True)
class SubspaceBasis:
    """An orthonormal family spanning a candidate Lie triple system."""

    ambient: ProductModel
    vectors: tuple[Element, ...]

    def __post_init__(self) -> None:
        if not self.vectors:
            raise ValueError("empty subspace basis")
        dim = len(self.vectors)
        gram = np.array(
            [[self.ambient.inner(a, b) for b in self.vectors] for a in self.vectors]
        )
        if np.max(np.abs(gram - np.eye(dim))) > TOL_ARITHMETIC:
            raise ValueError("subspace basis is not orthonormal")
        for v in self.vectors:
            if self.ambient.p_residual(v) > TOL_ARITHMETIC:
                raise ValueError("subspace basis does not lie in p")

    @classmethod
    def orthonormalized(
        cls, ambient: ProductModel, raw_vectors: Sequence[Element]
    ) -> "SubspaceBasis":
        """Modified Gram-Schmidt with one reorthogonalization pass.

        Rejects rank-deficient families (relative threshold 1e-10).
        """
        basis: list[Element] = []
        for v in raw_vectors:
            w = v
            for _ in range(2):
                for b in basis:
                    w = ambient.add(w, ambient.scale(-ambient.inner(b, w), b))
            nrm = ambient.norm(w)
            if nrm <= 1e-10 * max(1.0, ambient.norm(v)):
                raise ValueError("rank-deficient basis rejected")
            basis.append(ambient.scale(1.0 / nrm, w))
        return cls(ambient, tuple(basis))

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def project(self, u: Element) -> Element:
        out = self.ambient.zero()
        for b in self.vectors:
            out = self.ambient.add(out, self.ambient.scale(self.ambient.inner(b, u), b))
        return out

    def span_residual(self, u: Element) -> float:
        nrm = self.ambient.norm(u)
        if nrm == 0:
            return 0.0
        rem = self.ambient.add(u, self.ambient.scale(-1.0, self.project(u)))
        return self.ambient.norm(rem) / nrm

    def combination(self, coefficients: Sequence[float]) -> Element:
        out = self.ambient.zero()
        for c, b in zip(coefficients, self.vectors):
            out = self.ambient.add(out, self.ambient.scale(float(c), b))
        return out

    def random_unit_vector(self, rng: np.random.Generator) -> Element:
        coeffs = rng.standard_normal(self.dim)
        coeffs /= np.linalg.norm(coeffs)
        return self.combination(coeffs)

    def conjugated(self, gs: Sequence[Matrix]) -> "SubspaceBasis":
        """Transport basis and ambient by one unitary per block."""
        ambient = ProductModel(
            tuple(b.conjugated(g) for b, g in zip(self.ambient.blocks, gs)),
            self.ambient.weights,
        )
        vectors = tuple(
            tuple(g @ part @ g.conj().T for g, part in zip(gs, v)) for v in self.vectors
        )
        return SubspaceBasis(ambient, vectors)


# ---------------------------------------------------------------------------
# measurements
# ---------------------------------------------------------------------------


def is_lie_triple_system(V: SubspaceBasis, tol: float = TOL_CONSTRUCTIVE) -> tuple[bool, float]:
    """Check ``[[V, V], V]`` inside ``V``; return (verdict, max residual).

    The residual of a triple bracket is the norm of its component
    orthogonal to ``V`` relative to the bracket's own norm; brackets that
    vanish to arithmetic precision are structural zeros and are skipped.
    """
    model = V.ambient
    triples: list[Element] = []
    for i in range(V.dim):
        for j in range(i + 1, V.dim):
            bij = model.bracket(V.vectors[i], V.vectors[j])
            for l in range(V.dim):
                triples.append(model.bracket(bij, V.vectors[l]))
    if not triples:
        return True, 0.0
    ref = max(model.norm(w) for w in triples)
    worst = 0.0
    for w in triples:
        nw = model.norm(w)
        if nw <= TOL_ARITHMETIC * max(ref, 1.0):
            continue
        worst = max(worst, V.span_residual(w))
    return worst <= tol, worst


def _sectional_raw(model: ProductModel, x: Element, y: Element) -> float:
    num = -model.inner(model.bracket(model.bracket(x, y), y), x)
    den = model.inner(x, x) * model.inner(y, y) - model.inner(x, y) ** 2
    if den <= 1e-12 * max(model.inner(x, x) * model.inner(y, y), 1e-300):
        raise ValueError("sectional curvature of linearly dependent vectors")
    return num / den


def sectional_curvature(V: SubspaceBasis, x: Element, y: Element) -> float:
    """Calibrated sectional curvature of the plane spanned by x, y in V.

    Positive on these compact models; the scale is fixed by the
    projective-line anchor (see :func:`calibration_constant`).
    """
    for v in (x, y):
        if V.span_residual(v) > TOL_CONSTRUCTIVE:
            raise ValueError("plane vectors must lie in the subspace")
    return 4.0 / calibration_constant() * _sectional_raw(V.ambient, x, y)


def kahler_angle_of(V: SubspaceBasis, v: Element) -> float:
    """Kahler angle of ``v`` with respect to ``V``, in [0, pi/2].

    Defined by ``|proj_V J v| = cos(angle) * |v|``; 0 for complex
    subspaces, pi/2 for totally real ones.  Computed from the projection
    and its orthogonal remainder via ``atan2``, which stays accurate at
    both endpoints where ``acos`` alone would lose half the precision.
    """
    model = V.ambient
    nrm = model.norm(v)
    if nrm <= 0:
        raise ValueError("Kahler angle of the zero vector")
    if V.span_residual(v) > TOL_CONSTRUCTIVE:
        raise ValueError("vector must lie in the subspace")
    jv = model.J(v)
    tangential = V.project(jv)
    normal = model.add(jv, model.scale(-1.0, tangential))
    return math.atan2(model.norm(normal), model.norm(tangential))


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def _cp_tangent(decomp: CartanDecomp, i: int) -> Matrix:
    """Canonical real direction e_i of a CP^n model (k = 1)."""
    return decomp.p_basis[2 * i]


def _cp_j_tangent(decomp: CartanDecomp, i: int) -> Matrix:
    """The direction J e_i; entrywise conjugation negates it."""
    return decomp.p_basis[2 * i + 1]


def construct_diagonal_cp(k: int, s: int, n: int) -> SubspaceBasis:
    """The k-diagonal copy of ``CP^n`` with ``s`` unconjugated identifications.

    Lives in the direct sum of k projective-space models.  The first ``s``
    copies are identified by the identity, the rest through entrywise
    conjugation, which flips the sign of the ``J e_i`` directions.
    """
    if k < 1 or n < 1:
        raise ValueError("k and n must be positive")
    if not 0 <= s <= k:
        raise ValueError("s must lie in 0..k")
    block = grassmannian_decomp(1, n)
    model = ProductModel((block,) * k, (1.0,) * k)
    raw: list[Element] = []
    for i in range(n):
        v = model.zero()
        w = model.zero()
        for b in range(k):
            sign = 1.0 if b < s else -1.0
            v = model.add(v, model.embed(b, _cp_tangent(block, i)))
            w = model.add(w, model.scale(sign, model.embed(b, _cp_j_tangent(block, i))))
        raw.extend((v, w))
    return SubspaceBasis.orthonormalized(model, raw)


def construct_grassmannian_product(
    partition: Sequence[int], ambient: CartanDecomp
) -> SubspaceBasis:
    """Product of projective spaces along the row blocks of a Grassmannian.

    Part ``n_i`` of the partition occupies the i-th row of the off-diagonal
    block with ``n_i`` consecutive columns; the span is J-invariant and a
    Lie triple system, one ``CP^{n_i}`` per row, with pairwise commuting
    rows.
    """
    if ambient.kind != "grassmannian":
        raise ValueError("ambient must be a Grassmannian model")
    k, n = ambient.block_shape
    parts = tuple(int(p) for p in partition)
    if len(parts) != k or sum(parts) != n or any(p < 1 for p in parts):
        raise ValueError(f"partition {parts} does not fit block shape ({k}, {n})")
    if list(parts) != sorted(parts, reverse=True):
        raise ValueError("partition parts must be weakly decreasing")
    model = ProductModel.single(ambient)
    vectors: list[Element] = []
    offset = 0
    for row, part in enumerate(parts):
        for col in range(offset, offset + part):
            base = 2 * (row * n + col)
            vectors.append(model.embed(0, ambient.p_basis[base]))
            vectors.append(model.embed(0, ambient.p_basis[base + 1]))
        offset += part
    return SubspaceBasis.orthonormalized(model, vectors)


# ---------------------------------------------------------------------------
# bridging exact classification entries into the matrix models
# ---------------------------------------------------------------------------


def _factor_model(space: RankOneSpace) -> tuple[CartanDecomp, float] | None:
    """Compact-dual model and metric weight for one product factor.

    The weight scales the block metric so that the factor's curvature
    labels are reproduced exactly: spheres read c, complex models read c
    on holomorphic planes and c/4 on totally real ones.
    """
    c = float(space.curvature)
    if space.field is Field.R:
        return sphere_decomp(space.n), 1.0 / c
    if space.field is Field.C:
        return grassmannian_decomp(1, space.n), 4.0 / c
    return None


def _box_images(inclusion_sub: RankOneSpace, factor: RankOneSpace, block: CartanDecomp) -> list[Matrix]:
    """Images of the standard tangent basis of the box's submanifold class.

    Each list is the image of one fixed abstract basis under a Lie algebra
    homomorphism into the factor model, so diagonals assembled from these
    images across boxes are Lie triple systems by construction; the
    numerical check below re-verifies that independently.
    """
    sub, amb = inclusion_sub, factor
    N = block.N
    if sub.field is Field.R:
        if amb.field is Field.R:
            # sub-sphere on the first n' coordinates, pole at the last axis
            return [_antisym(N, a, N - 1) for a in range(sub.n)]
        if amb.field is Field.C:
            if 4 * sub.curvature == amb.curvature:
                # totally real projective subspace: real antisymmetric corner
                return [_antisym(N, a + 1, 0) for a in range(sub.n)]
            if sub.curvature == amb.curvature and sub.n == 2:
                # the complex line: explicit so(3) -> su(2) isomorphism
                e = _antisym(N, 0, 1)
                f = _e(N, 0, 1, 1j) + _e(N, 1, 0, 1j)
                return [-0.5 * e, -0.5 * f]
        raise ValueError(f"no matrix model for {sub} inside {amb}")
    if sub.field is Field.C and amb.field is Field.C:
        images: list[Matrix] = []
        for a in range(sub.n):
            images.append(_antisym(N, 0, a + 1))
            images.append(_e(N, 0, a + 1, 1j) + _e(N, a + 1, 0, 1j))
        return images
    raise ValueError(f"no matrix model for {sub} inside {amb}")


@dataclass(frozen=True)
class RowVerification:
    """Numerical verdict for one tableau row."""

    row_index: int
    description: str
    status: str  # "ok" | "fail" | "unsupported"
    reason: str | None
    lie_residual: float | None
    curvature_expected: float | None
    curvature_measured: float | None
    curvature_error: float | None

    def to_dict(self) -> dict:
        return {
            "row": self.row_index,
            "description": self.description,
            "status": self.status,
            "reason": self.reason,
            "lie_residual": self.lie_residual,
            "curvature_expected": self.curvature_expected,
            "curvature_measured": self.curvature_measured,
            "curvature_error": self.curvature_error,
        }


@dataclass(frozen=True)
class EntryVerification:
    """Full report for one classification entry."""

    entry: ClassifiedSubmanifold
    rows: tuple[RowVerification, ...]
    flat_dim: int
    flat_supported: bool
    total_lie_residual: float | None
    total_lie_ok: bool
    unsupported: tuple[str, ...]

    @property
    def failed(self) -> bool:
        return any(r.status == "fail" for r in self.rows) or not self.total_lie_ok

    @property
    def fully_supported(self) -> bool:
        return not self.unsupported and self.flat_supported

    @property
    def status(self) -> str:
        if self.failed:
            return "fail"
        if not self.fully_supported:
            return "unsupported"
        return "pass"

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "isometry_type": self.entry.isometry_type(),
            "rows": [r.to_dict() for r in self.rows],
            "flat_dim": self.flat_dim,
            "flat_supported": self.flat_supported,
            "total_lie_residual": self.total_lie_residual,
            "unsupported": list(self.unsupported),
        }


def verify_classification_entry(
    entry: ClassifiedSubmanifold,
    M: ProductSpace,
    lie_tol: float = TOL_CONSTRUCTIVE,
    curvature_tol: float = 1e-8,
    rng: np.random.Generator | None = None,
) -> EntryVerification:
    """Rebuild one classification entry in compact duals and measure it.

    For every supported row the diagonal Lie triple system is constructed
    explicitly, its triple-bracket residual is checked against ``lie_tol``
    and its sectional curvature is compared with the exact harmonic value
    (holomorphic planes for complex rows, arbitrary planes for real rows).
    With an ``rng`` a few random planes of each row are sampled on top of
    the deterministic basis planes.  Rows or flat directions meeting
    quaternionic or octonionic factors are flagged as unsupported, never
    skipped silently.
    """
    if not entry.tableau.is_adapted_to(M):
        raise ValueError("entry does not belong to the given product space")

    factor_models: dict[int, tuple[CartanDecomp, float]] = {}
    unsupported: list[str] = []
    for i in range(1, M.r + 1):
        fm = _factor_model(M.factor(i))
        if fm is not None:
            factor_models[i] = fm

    flat_factors = [i for i in entry.complement_factors if i in factor_models][: entry.flat_dim]
    flat_supported = len(flat_factors) == entry.flat_dim
    if not flat_supported:
        missing = [i for i in entry.complement_factors if i not in factor_models]
        unsupported.append(
            "flat part needs unsupported factors " + ", ".join(str(M.factor(i)) for i in missing)
        )

    used: list[int] = sorted(
        {b.factor for row in entry.tableau.rows for b in row if b.factor in factor_models}
        | set(flat_factors)
    )
    block_of = {i: pos for pos, i in enumerate(used)}
    model = (
        ProductModel(
            tuple(factor_models[i][0] for i in used),
            tuple(factor_models[i][1] for i in used),
        )
        if used
        else None
    )

    row_reports: list[RowVerification] = []
    all_vectors: list[Element] = []
    for idx, row in enumerate(entry.tableau.rows):
        description = " | ".join(str(b) for b in row)
        bad = [b for b in row if b.factor not in factor_models]
        if bad:
            reason = "no matrix model for factors " + ", ".join(
                str(M.factor(b.factor)) for b in bad
            )
            unsupported.append(f"row {idx}: {reason}")
            row_reports.append(
                RowVerification(idx, description, "unsupported", reason, None, None, None, None)
            )
            continue

        images = [
            _box_images(b.inclusion.sub, M.factor(b.factor), factor_models[b.factor][0])
            for b in row
        ]
        dim = len(images[0])
        raw = []
        for t in range(dim):
            u = model.zero()
            for b, imgs in zip(row, images):
                u = model.add(u, model.embed(block_of[b.factor], imgs[t]))
            raw.append(u)
        V = SubspaceBasis.orthonormalized(model, raw)
        ok, residual = is_lie_triple_system(V, lie_tol)

        expected = float(diagonal_curvature([b.inclusion.sub.curvature for b in row]))
        row_class = row[0].inclusion.sub
        planes: list[tuple[Element, Element]] = []
        if row_class.field is Field.C:
            # the diagonal is J-invariant; holomorphic planes carry the label
            for a in range(row_class.n):
                x = V.vectors[2 * a]
                planes.append((x, model.J(x)))
            if rng is not None:
                for _ in range(3):
                    v = V.random_unit_vector(rng)
                    planes.append((v, model.J(v)))
        else:
            planes.extend(
                (V.vectors[i], V.vectors[j])
                for i in range(V.dim)
                for j in range(i + 1, V.dim)
            )
            if rng is not None:
                for _ in range(3):
                    v = V.random_unit_vector(rng)
                    w = V.random_unit_vector(rng)
                    w = model.add(w, model.scale(-model.inner(v, w), v))
                    nw = model.norm(w)
                    if nw > 1e-6:
                        planes.append((v, model.scale(1.0 / nw, w)))
        measured = [sectional_curvature(V, x, y) for x, y in planes]
        error = max(abs(m - expected) for m in measured)
        curv_ok = error <= curvature_tol

        status = "ok" if ok and curv_ok else "fail"
        reason = None
        if not ok:
            reason = f"Lie triple residual {residual:.3e} exceeds {lie_tol:.1e}"
        elif not curv_ok:
            reason = f"curvature off by {error:.3e}"
        row_reports.append(
            RowVerification(
                idx, description, status, reason, residual, expected, measured[0], error
            )
        )
        all_vectors.extend(V.vectors)

    for i in flat_factors:
        block_index = block_of[i]
        block, weight = factor_models[i]
        all_vectors.append(
            model.embed(block_index, block.p_basis[0] / math.sqrt(weight))
        )

    total_residual = None
    total_ok = True
    if all_vectors:
        total = SubspaceBasis.orthonormalized(model, all_vectors)
        total_ok, total_residual = is_lie_triple_system(total, lie_tol)

    return EntryVerification(
        entry,
        tuple(row_reports),
        entry.flat_dim,
        flat_supported,
        total_residual,
        total_ok,
        tuple(unsupported),
    )
