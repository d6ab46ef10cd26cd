"""Formula-independent ground truth at desk scale.

Closed-form group orders and q-analog hook-length degrees work for any odd
prime power q.  The matrix-group computations (conjugacy classes, orbits on
form classes, stabilizers, double cosets) are restricted to prime q and
deliberately dumb: enumerate every element and count.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iter_product

from .dualgroup import QContext
from .errors import CapacityError, InvariantViolation
from .params import MultiPartition
from .partitions import Partition

GROUP_ORDER_BUDGET = 1_000_000
MATRIX_SCAN_BUDGET = 5_000_000


@dataclass(frozen=True)
class GroupOrders:
    q: int
    n: int
    gl: int
    sp: int
    o_plus: int
    o_minus: int
    pgl: int
    pgsp: int
    pgo_plus: int
    pgo_minus: int
    index_pgsp: int
    index_pgo_plus: int
    index_pgo_minus: int

    def to_json_dict(self) -> dict:
        return dict(self.__dict__)


def orders(q: int, n: int) -> GroupOrders:
    """Closed-form orders and induced-character degrees (indices) for even n.

    The images of Sp^F and O^F in PGL have index 2 in the form-class
    stabilizers and kernel {+1,-1}, so |PGSp| = |Sp| and |PGO^eps| = |O^eps|.
    """
    if n < 2 or n % 2:
        raise ValueError(f"n must be even and >= 2, got {n}")
    if q < 3 or q % 2 == 0:
        raise ValueError(f"q must be odd and >= 3, got {q}")
    m = n // 2
    gl = 1
    for i in range(n):
        gl *= q**n - q**i
    sp = q ** (m * m)
    for i in range(1, m + 1):
        sp *= q ** (2 * i) - 1
    base = 2 * q ** (m * (m - 1))
    for i in range(1, m):
        base *= q ** (2 * i) - 1
    o_plus = base * (q**m - 1)
    o_minus = base * (q**m + 1)
    pgl = _exact_div(gl, q - 1, "pgl")
    return GroupOrders(
        q,
        n,
        gl,
        sp,
        o_plus,
        o_minus,
        pgl,
        sp,
        o_plus,
        o_minus,
        _exact_div(pgl, sp, "index_pgsp"),
        _exact_div(pgl, o_plus, "index_pgo_plus"),
        _exact_div(pgl, o_minus, "index_pgo_minus"),
    )


def _exact_div(a: int, b: int, what: str) -> int:
    quot, rem = divmod(a, b)
    if rem:
        raise InvariantViolation(f"{what}: {a} is not divisible by {b}")
    return quot


def degree(ctx: QContext, label: MultiPartition) -> int:
    """Degree of the irreducible character with the given label.

    q-analog hook-length formula: prod_(i<=n) (q^i - 1) times, per orbit,
    q^(m * n(rho)) / prod_(cells) (q^(m*hook) - 1), where n(rho) is the sum
    of (row index - 1) * part.  The orientation (n(rho), not n(rho')) is
    pinned by the sum-of-squares consistency tests.
    """
    q = ctx.q
    num = 1
    for i in range(1, label.n + 1):
        num *= q**i - 1
    den = 1
    for data, part in label.orbit_entries():
        t = q**data.m
        num *= t ** sum(i * p for i, p in enumerate(part))
        transpose = part.transpose()
        for i, p in enumerate(part):
            for j in range(p):
                hook = p - j + transpose[j] - i - 1
                den *= t**hook - 1
    return _exact_div(num, den, f"degree({label})")


# Matrix oracle (prime q only).

Matrix = tuple[tuple[int, ...], ...]


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    for d in range(2, int(q**0.5) + 1):
        if q % d == 0:
            return False
    return True


def _mat_mul(a: Matrix, b: Matrix, p: int) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) % p for j in range(n))
        for i in range(n)
    )


def _transpose(a: Matrix) -> Matrix:
    n = len(a)
    return tuple(tuple(a[j][i] for j in range(n)) for i in range(n))


def _scale(a: Matrix, c: int, p: int) -> Matrix:
    return tuple(tuple(v * c % p for v in row) for row in a)


def _normalize(a: Matrix, p: int) -> Matrix:
    """Scale so the first nonzero entry in row-major order is 1."""
    for row in a:
        for v in row:
            if v:
                return _scale(a, pow(v, p - 2, p), p)
    raise ValueError("zero matrix has no projective normalization")


def _det(a: Matrix, p: int) -> int:
    n = len(a)
    if n == 1:
        return a[0][0] % p
    if n == 2:
        return (a[0][0] * a[1][1] - a[0][1] * a[1][0]) % p
    total = 0
    for j in range(n):
        if a[0][j] == 0:
            continue
        minor = tuple(row[:j] + row[j + 1 :] for row in a[1:])
        total += (-1) ** j * a[0][j] * _det(minor, p)
    return total % p


def _inverse(a: Matrix, p: int) -> Matrix:
    n = len(a)
    work = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col]), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        work[col], work[pivot] = work[pivot], work[col]
        inv = pow(work[col][col], p - 2, p)
        work[col] = [v * inv % p for v in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                factor = work[r][col]
                work[r] = [(v - factor * w) % p for v, w in zip(work[r], work[col])]
    return tuple(tuple(row[n:]) for row in work)


class ProjectiveMatrixGroup:
    """PGL_n(F_p) as an explicit list of scalar-normalized matrices."""

    def __init__(self, q: int, n: int, elements: tuple[Matrix, ...]):
        self.q = q
        self.n = n
        self.elements = elements
        self.inverse_of = {g: _normalize(_inverse(g, q), q) for g in elements}

    def __len__(self) -> int:
        return len(self.elements)

    def mul(self, a: Matrix, b: Matrix) -> Matrix:
        return _normalize(_mat_mul(a, b, self.q), self.q)


@lru_cache(maxsize=None)
def projective_group(q: int, n: int) -> ProjectiveMatrixGroup:
    if not _is_prime(q) or q == 2:
        raise ValueError(f"matrix oracle supports odd prime q only, got {q}")
    expected = orders(q, n).pgl
    if expected > GROUP_ORDER_BUDGET:
        raise CapacityError(f"|PGL_{n}(F_{q})| = {expected} exceeds {GROUP_ORDER_BUDGET}")
    if q ** (n * n) > MATRIX_SCAN_BUDGET:
        raise CapacityError(f"scanning {q}^{n*n} matrices exceeds {MATRIX_SCAN_BUDGET}")
    seen = set()
    for flat in iter_product(range(q), repeat=n * n):
        mat = tuple(flat[i * n : (i + 1) * n] for i in range(n))
        if _det(mat, q) == 0:
            continue
        seen.add(_normalize(mat, q))
    if len(seen) != expected:
        raise InvariantViolation(f"found {len(seen)} elements, order formula says {expected}")
    return ProjectiveMatrixGroup(q, n, tuple(sorted(seen)))


def conjugacy_class_count(q: int, n: int) -> int:
    group = projective_group(q, n)
    visited: set[Matrix] = set()
    count = 0
    for g in group.elements:
        if g in visited:
            continue
        count += 1
        for x in group.elements:
            visited.add(group.mul(group.mul(x, g), group.inverse_of[x]))
    return count


@dataclass(frozen=True)
class FormOrbit:
    kind: str  # "pgsp" (skew class), "pgo+" or "pgo-"
    size: int
    stabilizer_order: int
    representative: Matrix

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "size": self.size,
            "stabilizer_order": self.stabilizer_order,
        }


def _form_action(group: ProjectiveMatrixGroup, g: Matrix, h: Matrix) -> Matrix:
    return _normalize(_mat_mul(_mat_mul(g, h, group.q), _transpose(g), group.q), group.q)


def _all_form_classes(q: int, n: int) -> list[Matrix]:
    sym_slots = n * (n + 1) // 2
    if q**sym_slots > MATRIX_SCAN_BUDGET:
        raise CapacityError(f"scanning {q}^{sym_slots} symmetric matrices exceeds the budget")
    classes = set()
    # Symmetric: free upper triangle including the diagonal.
    for flat in iter_product(range(q), repeat=sym_slots):
        mat = [[0] * n for _ in range(n)]
        pos = 0
        for i in range(n):
            for j in range(i, n):
                mat[i][j] = mat[j][i] = flat[pos]
                pos += 1
        mat = tuple(tuple(row) for row in mat)
        if _det(mat, q):
            classes.add(_normalize(mat, q))
    # Skew-symmetric: zero diagonal, negated lower triangle.
    for flat in iter_product(range(q), repeat=n * (n - 1) // 2):
        mat = [[0] * n for _ in range(n)]
        pos = 0
        for i in range(n):
            for j in range(i + 1, n):
                mat[i][j] = flat[pos]
                mat[j][i] = (-flat[pos]) % q
                pos += 1
        mat = tuple(tuple(row) for row in mat)
        if _det(mat, q):
            classes.add(_normalize(mat, q))
    return sorted(classes)


@lru_cache(maxsize=None)
def enumerate_forms(q: int, n: int) -> tuple[FormOrbit, ...]:
    """Orbits of PGL on nondegenerate form classes mod scalars: exactly three.

    The skew classes form one orbit (kind "pgsp"); the symmetric classes
    split into two, matched to pgo+/pgo- by orbit size against the
    closed-form indices.
    """
    group = projective_group(q, n)
    ords = orders(q, n)
    remaining = set(_all_form_classes(q, n))
    orbits = []
    while remaining:
        seed = min(remaining)
        orbit = {_form_action(group, g, seed) for g in group.elements}
        if not orbit <= remaining:
            raise InvariantViolation("form orbits are not disjoint")
        remaining -= orbit
        stab = sum(1 for g in group.elements if _form_action(group, g, seed) == seed)
        if stab * len(orbit) != len(group):
            raise InvariantViolation("orbit-stabilizer mismatch on form classes")
        orbits.append((seed, len(orbit), stab))
    if len(orbits) != 3:
        raise InvariantViolation(f"expected 3 form orbits, found {len(orbits)}")
    out = []
    for seed, size, stab in orbits:
        if _transpose(seed) == _scale(seed, q - 1, q):
            kind = "pgsp"
        elif size == ords.index_pgo_plus:
            kind = "pgo+"
        elif size == ords.index_pgo_minus:
            kind = "pgo-"
        else:
            raise InvariantViolation(f"symmetric orbit size {size} matches neither index")
        out.append(FormOrbit(kind, size, stab, seed))
    if sorted(o.kind for o in out) != ["pgo+", "pgo-", "pgsp"]:
        raise InvariantViolation("form orbits do not split as skew/plus/minus")
    return tuple(out)


@lru_cache(maxsize=None)
def subgroup_elements(q: int, n: int, kind: str) -> tuple[Matrix, ...]:
    """Elements of the stabilizer of a form-class representative of the kind."""
    group = projective_group(q, n)
    for orbit in enumerate_forms(q, n):
        if orbit.kind == kind:
            h = orbit.representative
            elems = tuple(g for g in group.elements if _form_action(group, g, h) == h)
            if len(elems) != orbit.stabilizer_order:
                raise InvariantViolation("stabilizer recount mismatch")
            return elems
    raise ValueError(f"unknown subgroup kind {kind!r}; expected pgsp, pgo+ or pgo-")


def double_cosets(q: int, n: int, kind1: str, kind2: str) -> int:
    """#(H1 \\ PGL / H2) by direct orbit counting."""
    group = projective_group(q, n)
    h1 = subgroup_elements(q, n, kind1)
    h2 = subgroup_elements(q, n, kind2)
    visited: set[Matrix] = set()
    count = 0
    for g in group.elements:
        if g in visited:
            continue
        count += 1
        frontier = [g]
        visited.add(g)
        while frontier:
            x = frontier.pop()
            for h in h1:
                y = group.mul(h, x)
                if y not in visited:
                    visited.add(y)
                    frontier.append(y)
            for h in h2:
                y = group.mul(x, h)
                if y not in visited:
                    visited.add(y)
                    frontier.append(y)
    return count
