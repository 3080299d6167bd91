"""Deterministic seeded sampling of exact rational test points.

All randomness flows through a SplitMix64 counter generator so that
identical (seed, stream) inputs reproduce bit-for-bit on every platform:

    state_0 = mix64(seed XOR mix64((stream + 1) * GAMMA))
    next()  : state += GAMMA; return mix64(state)
    randint(lo, hi) = lo + next() mod (hi - lo + 1)

with GAMMA = 0x9E3779B97F4A7C15 and mix64 the SplitMix64 finalizer.

Orthogonal/symplectic group points come from the Cayley transform
g = (E - A)(E + A)^-1 of exact form-skew matrices A, which stays inside
the identity component; the form-preserving swap of coordinates 1 and n
(determinant -1) is available to reach the second orthogonal component.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .linalg import Matrix, SingularMatrixError, det, inverse, nullspace_basis
from .shapes import FlagShape, GroupKind, ShapeError, index_set

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15


class SamplingError(RuntimeError):
    """Raised when the resample budget is exhausted."""


class InternalConsistencyError(RuntimeError):
    """A constructed element failed its defining equation; this is a bug signal."""


class GroupMembershipError(ValueError):
    """Raised when a GroupPoint matrix fails its group's defining equations."""


def _mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class Rng:
    """SplitMix64 stream; same (seed, stream) gives the same draws everywhere."""

    def __init__(self, seed: int, stream: int = 0):
        self.seed = seed & MASK64
        self.stream = stream
        self._state = _mix64(self.seed ^ _mix64(((stream + 1) * GAMMA) & MASK64))

    def next_u64(self) -> int:
        self._state = (self._state + GAMMA) & MASK64
        return _mix64(self._state)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform-ish integer in [lo, hi], inclusive."""
        if hi < lo:
            raise ValueError("empty range")
        return lo + self.next_u64() % (hi - lo + 1)

    def nonzero_int(self, bound: int) -> int:
        """Nonzero integer in [-bound, bound]."""
        while True:
            v = self.randint(-bound, bound)
            if v != 0:
                return v


def anti_identity(n: int) -> Matrix:
    """Ones on the anti-diagonal, zeros elsewhere."""
    return Matrix([[Fraction(int(r + c == n - 1)) for c in range(n)] for r in range(n)])


def symplectic_form(n: int) -> Matrix:
    """The 2m x 2m form [[0, -I~], [I~, 0]] built from anti-identity blocks."""
    if n % 2 != 0:
        raise ShapeError(f"symplectic form needs even size, got {n}")
    rows = [[Fraction(0)] * n for _ in range(n)]
    for r in range(n):
        rows[r][n - 1 - r] = Fraction(-1) if r < n // 2 else Fraction(1)
    return Matrix(rows)


def form_matrix(kind: GroupKind, n: int) -> Matrix:
    """Defining bilinear form of O(n) or Sp(n)."""
    if kind is GroupKind.O:
        return anti_identity(n)
    if kind is GroupKind.SP:
        return symplectic_form(n)
    raise ShapeError(f"no bilinear form for kind {kind.value}")


def defining_equation_holds(kind: GroupKind, m: Matrix) -> bool:
    """Exact membership test in GL / SL / O / Sp."""
    if not m.is_square:
        return False
    if kind is GroupKind.GL:
        return det(m) != 0
    if kind is GroupKind.SL:
        return det(m) == 1
    f = form_matrix(kind, m.nrows)
    return m.transpose() @ f @ m == f


@dataclass(frozen=True)
class GroupPoint:
    """A matrix verified on construction to lie in its shape's group."""

    shape: FlagShape
    matrix: Matrix

    def __post_init__(self):
        if self.matrix.nrows != self.shape.n or self.matrix.ncols != self.shape.n:
            raise GroupMembershipError(
                f"matrix is {self.matrix.nrows}x{self.matrix.ncols}, shape needs {self.shape.n}"
            )
        if not defining_equation_holds(self.shape.kind, self.matrix):
            raise GroupMembershipError(
                f"matrix fails the defining equations of {self.shape.kind.value}({self.shape.n})"
            )


def swap_matrix(n: int) -> Matrix:
    """Permutation swapping coordinates 1 and n; preserves the O(n) form, det -1."""
    perm = list(range(n))
    perm[0], perm[n - 1] = perm[n - 1], perm[0]
    return Matrix([[Fraction(int(perm[r] == c)) for c in range(n)] for r in range(n)])


def cayley(a: Matrix) -> Matrix:
    """Cayley transform (E - A)(E + A)^-1; raises SingularMatrixError if E + A is singular."""
    e = Matrix.identity(a.nrows)
    return (e - a) @ inverse(e + a)


def _strict_upper_positions(shape: FlagShape) -> list[tuple[int, int]]:
    return [
        (i, j)
        for i in range(1, shape.n + 1)
        for j in range(1, shape.n + 1)
        if shape.block_of(i) < shape.block_of(j)
    ]


@lru_cache(maxsize=None)
def lie_algebra_basis(shape: FlagShape, which: str = "group") -> tuple[Matrix, ...]:
    """Exact basis of the group's Lie algebra, or of the radical's.

    GL uses matrix units; SL the trace-zero ones.  Orthogonal/symplectic
    bases solve A^t F + F A = 0 as an exact nullspace over the allowed
    entry positions (all of them, or the strictly-upper block ones for
    the radical).
    """
    if which not in ("group", "radical"):
        raise ValueError(f"which must be 'group' or 'radical', got {which!r}")
    n = shape.n
    if shape.kind in (GroupKind.GL, GroupKind.SL):
        if which == "radical":
            return tuple(Matrix.unit(n, i, j) for i, j in _strict_upper_positions(shape))
        basis = [Matrix.unit(n, i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
        if shape.kind is GroupKind.GL:
            basis = [Matrix.unit(n, i, i) for i in range(1, n + 1)] + basis
        else:
            basis = [
                Matrix.unit(n, k, k) - Matrix.unit(n, k + 1, k + 1) for k in range(1, n)
            ] + basis
        return tuple(basis)
    positions = (
        _strict_upper_positions(shape)
        if which == "radical"
        else [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    )
    f = form_matrix(shape.kind, n)
    # rows: the n^2 entries of A^t F + F A; columns: the allowed positions
    constraints = []
    for r in range(1, n + 1):
        for c in range(1, n + 1):
            row = []
            for (i, j) in positions:
                coeff = Fraction(0)
                # (A^t F)_{rc} picks A_{i r} F_{i c}; (F A)_{rc} picks F_{r i} A_{i c}
                if j == r:
                    coeff += f.rows[i - 1][c - 1]
                if j == c:
                    coeff += f.rows[r - 1][i - 1]
                row.append(coeff)
            constraints.append(row)
    basis = []
    for vec in nullspace_basis(Matrix(constraints)):
        rows = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), v in zip(positions, vec):
            rows[i - 1][j - 1] = v
        basis.append(Matrix(rows))
    return tuple(basis)


def _random_matrix(rng: Rng, nrows: int, ncols: int, bound: int) -> Matrix:
    return Matrix([[Fraction(rng.randint(-bound, bound)) for _ in range(ncols)] for _ in range(nrows)])


def _gl_unipotent(shape: FlagShape, rng: Rng, bound: int) -> Matrix:
    rows = [[Fraction(int(r == c)) for c in range(shape.n)] for r in range(shape.n)]
    for (i, j) in _strict_upper_positions(shape):
        rows[i - 1][j - 1] = Fraction(rng.randint(-bound, bound))
    return Matrix(rows)


def _constrained_block(n0: int, kind: GroupKind, rng: Rng, bound: int) -> Matrix:
    """B with B^sigma = -B (orthogonal) or B^sigma = B (symplectic)."""
    rows = [[Fraction(0)] * n0 for _ in range(n0)]
    for i in range(1, n0 + 1):
        for j in range(1, n0 + 1):
            pi, pj = n0 + 1 - j, n0 + 1 - i  # anti-transpose partner
            if (i, j) == (pi, pj):
                if kind is GroupKind.SP:
                    rows[i - 1][j - 1] = Fraction(rng.randint(-bound, bound))
                continue
            if (i, j) < (pi, pj):
                v = Fraction(rng.randint(-bound, bound))
                rows[i - 1][j - 1] = v
                rows[pi - 1][pj - 1] = -v if kind is GroupKind.O else v
    return Matrix(rows)


def _g0_form(shape: FlagShape) -> Matrix:
    """J_0: the central factor's form (anti-identity for O, J for Sp)."""
    return form_matrix(shape.kind, shape.n0)


def _sub_parabolic_shape(shape: FlagShape) -> FlagShape:
    """GL(N0) flag shape on the leading parts (n_1, ..., n_ell0)."""
    return FlagShape(GroupKind.GL, shape.N0, shape.parts[: shape.ell0])


def _assemble_radical(shape: FlagShape, a: Matrix, b: Matrix, v: Matrix | None) -> Matrix:
    n0 = shape.n0
    big_n0 = shape.N0
    i0 = anti_identity(big_n0)
    a_sigma_inv = inverse(a.anti_transpose())
    if shape.ell % 2 == 0:
        zero = Matrix.zeros(big_n0, big_n0)
        return Matrix.from_blocks([[a, a @ b], [zero, a_sigma_inv]])
    j0 = _g0_form(shape)
    w = -(j0 @ v.transpose() @ i0)
    e0, e_mid = Matrix.identity(big_n0), Matrix.identity(n0)
    z_nn = Matrix.zeros(big_n0, big_n0)
    z_nm = Matrix.zeros(big_n0, n0)
    z_mn = Matrix.zeros(n0, big_n0)
    diag = Matrix.from_blocks(
        [[a, z_nm, z_nn], [z_mn, e_mid, z_mn], [z_nn, z_nm, a_sigma_inv]]
    )
    shear = Matrix.from_blocks(
        [
            [e0, v, (v @ w) * Fraction(1, 2)],
            [z_mn, e_mid, w],
            [z_nn, z_nm, e0],
        ]
    )
    corner = Matrix.from_blocks(
        [[e0, z_nm, b], [z_mn, e_mid, z_mn], [z_nn, z_nm, e0]]
    )
    return diag @ shear @ corner


def sample_unipotent_radical(shape: FlagShape, rng: Rng, bound: int = 10) -> GroupPoint:
    """Random element of the parabolic's unipotent radical."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    if shape.kind in (GroupKind.GL, GroupKind.SL):
        return GroupPoint(shape, _gl_unipotent(shape, rng, bound))
    if shape.ell == 1:  # the parabolic is the whole group; U is trivial
        return GroupPoint(shape, Matrix.identity(shape.n))
    a = _gl_unipotent(_sub_parabolic_shape(shape), rng, bound)
    b = _constrained_block(shape.N0, shape.kind, rng, bound)
    v = _random_matrix(rng, shape.N0, shape.n0, bound) if shape.ell % 2 == 1 else None
    g = _assemble_radical(shape, a, b, v)
    if not defining_equation_holds(shape.kind, g):
        raise InternalConsistencyError("assembled radical element fails the form equation")
    return GroupPoint(shape, g)


def _random_lie_element(shape: FlagShape, rng: Rng, bound: int) -> Matrix:
    total = Matrix.zeros(shape.n, shape.n)
    for base in lie_algebra_basis(shape, "group"):
        total = total + base * Fraction(rng.randint(-bound, bound))
    return total


def sample_group_point(
    shape: FlagShape,
    rng: Rng,
    bound: int = 10,
    second_component: bool = False,
    max_attempts: int = 64,
) -> GroupPoint:
    """Random exact group element (Cayley transform for O/Sp)."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    if second_component and shape.kind is not GroupKind.O:
        raise ShapeError("only the orthogonal group has a second component")
    for _ in range(max_attempts):
        if shape.kind in (GroupKind.GL, GroupKind.SL):
            m = _random_matrix(rng, shape.n, shape.n, bound)
            d = det(m)
            if d == 0:
                continue
            if shape.kind is GroupKind.SL:
                m = Matrix([[x / d for x in m.rows[0]]] + [list(r) for r in m.rows[1:]])
            return GroupPoint(shape, m)
        try:
            g = cayley(_random_lie_element(shape, rng, bound))
        except SingularMatrixError:
            continue
        if second_component:
            g = g @ swap_matrix(shape.n)
        return GroupPoint(shape, g)
    raise SamplingError(f"no valid sample within {max_attempts} attempts")


def slice_pattern(shape: FlagShape, variant: str) -> frozenset[tuple[int, int]]:
    """Positions allowed to be nonzero on the requested slice."""
    gl = index_set(shape.as_gl())
    if variant == "s":
        return frozenset((p.i, p.j) for p in gl.pairs)
    if variant == "s0":
        return frozenset((p.i, p.j) for p in gl.sigma0)
    raise ValueError(f"unknown slice variant {variant!r}")


@lru_cache(maxsize=None)
def resolve_slice_sign(shape: FlagShape) -> int:
    """Sign of the top-right slice block, resolved by testing the form equation."""
    if shape.kind not in (GroupKind.O, GroupKind.SP):
        raise ShapeError("slice sign is an orthogonal/symplectic notion")
    rng = Rng(0x5EED, stream=991)
    for sign in (1, -1):
        candidate = _osp_slice(shape, Rng(rng.seed, rng.stream), bound=3, sign=sign)
        if defining_equation_holds(shape.kind, candidate):
            return sign
    raise InternalConsistencyError("neither sign satisfies the form equation on the slice")


def _random_block_upper(shape0: FlagShape, rng: Rng, bound: int, max_attempts: int = 64) -> Matrix:
    """Random invertible block-upper element of the GL(N0) parabolic."""
    rows = [[Fraction(0)] * shape0.n for _ in range(shape0.n)]
    for seg in shape0.segments:
        for _ in range(max_attempts):
            block = _random_matrix(rng, len(seg), len(seg), bound)
            if det(block) != 0:
                break
        else:
            raise SamplingError("no invertible diagonal block found")
        for r, i in enumerate(seg):
            for c, j in enumerate(seg):
                rows[i - 1][j - 1] = block.rows[r][c]
    for (i, j) in _strict_upper_positions(shape0):
        rows[i - 1][j - 1] = Fraction(rng.randint(-bound, bound))
    return Matrix(rows)


def _osp_slice(shape: FlagShape, rng: Rng, bound: int, sign: int) -> Matrix:
    n0, big_n0 = shape.n0, shape.N0
    if shape.ell == 1:  # whole-group parabolic: the slice degenerates to J_0 * G_0
        a0 = sample_group_point(FlagShape(shape.kind, n0, (n0,)), rng, bound).matrix
        return _g0_form(shape) @ a0
    i0 = anti_identity(big_n0)
    a = _random_block_upper(_sub_parabolic_shape(shape), rng, bound)
    b = _constrained_block(big_n0, shape.kind, rng, bound)
    a_sigma_inv = inverse(a.anti_transpose())
    top_right = (i0 @ a_sigma_inv) * Fraction(sign)
    bottom_left = i0 @ a
    if shape.ell % 2 == 0:
        zero = Matrix.zeros(big_n0, big_n0)
        return Matrix.from_blocks([[zero, top_right], [bottom_left, bottom_left @ b]])
    g0_shape = FlagShape(shape.kind, n0, (n0,))
    a0 = sample_group_point(g0_shape, rng, bound).matrix
    j0 = _g0_form(shape)
    v = _random_matrix(rng, big_n0, n0, bound)
    w = -(j0 @ v.transpose() @ i0)
    mid = j0 @ a0
    z_nn = Matrix.zeros(big_n0, big_n0)
    z_nm = Matrix.zeros(big_n0, n0)
    z_mn = Matrix.zeros(n0, big_n0)
    return Matrix.from_blocks(
        [
            [z_nn, z_nm, top_right],
            [z_mn, mid, mid @ w],
            [bottom_left, bottom_left @ v, bottom_left @ (b + (v @ w) * Fraction(1, 2))],
        ]
    )


def sample_slice(
    shape: FlagShape,
    rng: Rng,
    bound: int = 10,
    variant: str = "s",
    max_attempts: int = 64,
) -> GroupPoint:
    """Random exact point of the slice S, S0 or (for O/Sp) the group slice.

    S and S0 live inside GL(n) whatever the shape's kind, so those points
    carry the GL shape of the same composition.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    n = shape.n
    if variant == "s":
        pattern = slice_pattern(shape, "s")
        for _ in range(max_attempts):
            rows = [[Fraction(0)] * n for _ in range(n)]
            for (i, j) in pattern:
                rows[i - 1][j - 1] = Fraction(rng.randint(-bound, bound))
            m = Matrix(rows)
            if det(m) != 0:
                return GroupPoint(shape.as_gl(), m)
        raise SamplingError(f"no invertible slice point within {max_attempts} attempts")
    if variant == "s0":
        rows = [[Fraction(0)] * n for _ in range(n)]
        for (i, j) in slice_pattern(shape, "s0"):
            rows[i - 1][j - 1] = Fraction(rng.randint(-bound, bound))
        for i in range(1, n + 1):  # the anti-diagonal chain must not vanish
            rows[i - 1][n - i] = Fraction(rng.nonzero_int(bound))
        return GroupPoint(shape.as_gl(), Matrix(rows))
    if variant == "s_circ":
        if shape.kind not in (GroupKind.O, GroupKind.SP):
            raise ShapeError("the group slice exists only for orthogonal/symplectic kinds")
        sign = resolve_slice_sign(shape)
        g = _osp_slice(shape, rng, bound, sign)
        if not defining_equation_holds(shape.kind, g):
            raise InternalConsistencyError("slice sample fails the form equation")
        return GroupPoint(shape, g)
    raise ValueError(f"unknown slice variant {variant!r}")
