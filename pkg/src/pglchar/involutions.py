"""Involutions commuting with a fixed permutation, and the identity checks.

For a partition nu, Z_inv(nu) is the set of involutions (including the
identity) in S_|nu| commuting with a fixed permutation w_nu of cycle type
nu.  Such an involution permutes the cycles of w_nu; each cycle is either
fixed pointwise (type 1), mapped to itself with a half-rotation (type 2,
even length only), or swapped with another cycle of the same length
(type 3, counted in pairs).

Everything here is deliberately naive -- enumerate, filter, count -- since
this module is the oracle side of the route-equality checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as iter_product
from typing import Sequence

from . import params, symchar
from .errors import CapacityError, InvariantViolation
from .params import MultiPartition
from .partitions import Partition, partitions_of

ZINV_SIZE_BOUND = 9


@dataclass(frozen=True)
class CentralizerInvolution:
    """An involution commuting with w_nu, recorded by its cycle statistics."""

    nu: Partition
    type1: tuple[int, ...]  # lengths of pointwise-fixed cycles
    type2: tuple[int, ...]  # lengths of half-rotated cycles (all even)
    type3: tuple[int, ...]  # one length per swapped pair of cycles

    def __post_init__(self) -> None:
        if any(l % 2 for l in self.type2):
            raise InvariantViolation("type-2 cycles must have even length")
        rebuilt = sorted(self.type1 + self.type2 + self.type3 + self.type3, reverse=True)
        if rebuilt != list(self.nu):
            raise InvariantViolation(
                f"cycle lengths {rebuilt} do not reassemble the type {self.nu}"
            )

    @property
    def ell1(self) -> int:
        return len(self.type1)

    @property
    def ell1_odd(self) -> int:
        return sum(1 for l in self.type1 if l % 2)

    @property
    def ell1_2mod4(self) -> int:
        return sum(1 for l in self.type1 if l % 4 == 2)

    @property
    def is_fixed_point_free(self) -> bool:
        return not self.type1


@dataclass(frozen=True)
class IdentityCheckResult:
    name: str
    nu: Partition
    lhs: int
    rhs: int

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs


def base_permutation(nu) -> tuple[int, ...]:
    """w_nu with cycles laid out consecutively in weakly decreasing part order."""
    nu = Partition(nu)
    perm = list(range(nu.size()))
    offset = 0
    for length in nu:
        for i in range(length):
            perm[offset + i] = offset + (i + 1) % length
        offset += length
    return tuple(perm)


def _involutions(m: int) -> list[tuple[int, ...]]:
    """All involutions of S_m (including the identity), as one-line tuples."""
    out: list[tuple[int, ...]] = []
    current = list(range(m))

    def rec(free: tuple[int, ...]) -> None:
        if not free:
            out.append(tuple(current))
            return
        x = free[0]
        rec(free[1:])
        for i in range(1, len(free)):
            y = free[i]
            current[x], current[y] = y, x
            rec(free[1:i] + free[i + 1 :])
            current[x], current[y] = x, y

    rec(tuple(range(m)))
    return out


def _commutes(v: tuple[int, ...], w: tuple[int, ...]) -> bool:
    return all(v[w[i]] == w[v[i]] for i in range(len(v)))


def _cycles_of(w: tuple[int, ...]) -> list[list[int]]:
    seen = [False] * len(w)
    cycles = []
    for start in range(len(w)):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        x = w[start]
        while x != start:
            cyc.append(x)
            seen[x] = True
            x = w[x]
        cycles.append(cyc)
    return cycles


def _classify(v: tuple[int, ...], nu: Partition, cycles: list[list[int]]) -> CentralizerInvolution:
    where = {}
    for idx, cyc in enumerate(cycles):
        for pos, point in enumerate(cyc):
            where[point] = (idx, pos)
    type1: list[int] = []
    type2: list[int] = []
    type3: list[int] = []
    paired: set[int] = set()
    for idx, cyc in enumerate(cycles):
        if idx in paired:
            continue
        length = len(cyc)
        target_idx, target_pos = where[v[cyc[0]]]
        if target_idx == idx:
            shift = target_pos
            if any(where[v[cyc[k]]] != (idx, (k + shift) % length) for k in range(length)):
                raise InvariantViolation("involution does not act by a rotation on a cycle")
            if shift == 0:
                type1.append(length)
            elif 2 * shift == length:
                type2.append(length)
            else:
                raise InvariantViolation(f"rotation shift {shift} on a {length}-cycle")
        else:
            other = cycles[target_idx]
            if len(other) != length or target_idx in paired or idx in paired:
                raise InvariantViolation("swapped cycles must pair up with equal lengths")
            if any(where[v[cyc[k]]] != (target_idx, (k + target_pos) % length) for k in range(length)):
                raise InvariantViolation("involution does not align swapped cycles")
            paired.add(idx)
            paired.add(target_idx)
            type3.append(length)
    return CentralizerInvolution(
        nu,
        tuple(sorted(type1, reverse=True)),
        tuple(sorted(type2, reverse=True)),
        tuple(sorted(type3, reverse=True)),
    )


@lru_cache(maxsize=None)
def _zinv_consecutive(nu_parts: tuple[int, ...]) -> tuple[CentralizerInvolution, ...]:
    nu = Partition(nu_parts)
    w = base_permutation(nu)
    cycles = _cycles_of(w)
    return tuple(
        _classify(v, nu, cycles) for v in _involutions(nu.size()) if _commutes(v, w)
    )


def enumerate_zinv(
    nu, *, base: tuple[int, ...] | None = None, bound: int = ZINV_SIZE_BOUND
) -> tuple[CentralizerInvolution, ...]:
    """All involutions commuting with w_nu (the identity included), with stats.

    ``base`` overrides the fixed w_nu by any permutation of the same cycle
    type; the statistics, and in particular the count, do not depend on it.
    """
    nu = Partition(nu)
    if nu.size() > bound:
        raise CapacityError(f"|nu| = {nu.size()} exceeds the involution bound {bound}")
    if base is None:
        return _zinv_consecutive(tuple(nu))
    cycles = _cycles_of(base)
    if sorted((len(c) for c in cycles), reverse=True) != list(nu):
        raise ValueError(f"base permutation does not have cycle type {nu}")
    return tuple(
        _classify(v, nu, cycles) for v in _involutions(nu.size()) if _commutes(v, base)
    )


def count_fixed_point_free(nu, *, bound: int = ZINV_SIZE_BOUND) -> int:
    return sum(1 for w in enumerate_zinv(nu, bound=bound) if w.is_fixed_point_free)


def weight_sum_all(nu, *, bound: int = ZINV_SIZE_BOUND) -> int:
    """Sum of (-2)^ell1 over all of Z_inv(nu)."""
    return sum((-2) ** w.ell1 for w in enumerate_zinv(nu, bound=bound))


def weight_sum_even_type1(nu, *, bound: int = ZINV_SIZE_BOUND) -> int:
    """Sum of (-2)^ell1 over involutions with no odd-length type-1 cycle."""
    return sum(
        (-2) ** w.ell1 for w in enumerate_zinv(nu, bound=bound) if w.ell1_odd == 0
    )


def weight_sum_signed(nu, *, bound: int = ZINV_SIZE_BOUND) -> int:
    """Sum of (-1)^ell1_2mod4 (-2)^ell1 over involutions with no odd type-1 cycle."""
    return sum(
        (-1) ** w.ell1_2mod4 * (-2) ** w.ell1
        for w in enumerate_zinv(nu, bound=bound)
        if w.ell1_odd == 0
    )


# The four combinatorial identities behind the closed formulas.  Left sides
# are brute-force involution sums, right sides are character sums; either
# side failing would invalidate the formula modules, so both are exposed.


def identity_ff_count(nu, *, bound: int = ZINV_SIZE_BOUND) -> IdentityCheckResult:
    """#(fixed-point-free involutions in Z_inv) = sum of chi over even rho."""
    nu = Partition(nu)
    return IdentityCheckResult(
        "ff-count", nu, count_fixed_point_free(nu, bound=bound), symchar.sum_chi_even(nu)
    )


def identity_weight_all(nu, *, bound: int = ZINV_SIZE_BOUND) -> IdentityCheckResult:
    """Sum of (-2)^ell1 = (-1)^|nu| * sum over rho of prod(m_i+1) chi."""
    nu = Partition(nu)
    rhs = (-1) ** nu.size() * symchar.sum_chi_weighted(nu)
    return IdentityCheckResult("weight-all", nu, weight_sum_all(nu, bound=bound), rhs)


def identity_weight_even_type1(nu, *, bound: int = ZINV_SIZE_BOUND) -> IdentityCheckResult:
    """Restricted (-2)^ell1 sum = sum of chi over rho with even transpose."""
    nu = Partition(nu)
    return IdentityCheckResult(
        "weight-even-type1",
        nu,
        weight_sum_even_type1(nu, bound=bound),
        symchar.sum_chi_transpose_even(nu),
    )


def identity_weight_signed(nu, *, bound: int = ZINV_SIZE_BOUND) -> IdentityCheckResult:
    """Signed restricted sum = signed even-multiplicity character sum."""
    nu = Partition(nu)
    return IdentityCheckResult(
        "weight-signed", nu, weight_sum_signed(nu, bound=bound), symchar.sum_chi_signed_even(nu)
    )


def check_identities(max_size: int, *, bound: int = ZINV_SIZE_BOUND) -> list[IdentityCheckResult]:
    """Run all four identities for every nu of size 1..max_size."""
    if max_size > bound:
        raise CapacityError(f"max_size {max_size} exceeds the involution bound {bound}")
    out = []
    for m in range(1, max_size + 1):
        for nu in partitions_of(m):
            out.append(identity_ff_count(nu, bound=bound))
            out.append(identity_weight_all(nu, bound=bound))
            out.append(identity_weight_even_type1(nu, bound=bound))
            out.append(identity_weight_signed(nu, bound=bound))
    return out


def epsilon_nu(mp: MultiPartition) -> int:
    """Sign of the Frobenius permutation of the torus fixed lines.

    One cycle of length m_xi * part for every orbit xi and part of nu_xi.
    """
    sign = 1
    for data, part in mp.orbit_entries():
        for length in part:
            sign *= (-1) ** (data.m * length - 1)
    return sign


def phi_w(ws: Sequence[CentralizerInvolution], mp: MultiPartition) -> int:
    """The sign of a per-orbit involution tuple, defined on the set Y.

    ws[i] must commute with a permutation of cycle type equal to the i-th
    block of the label.  Raises if some type-1 cycle has m_xi * length odd
    (the tuple then lies outside Y and the sign is undefined).
    """
    entries = mp.orbit_entries()
    if len(ws) != len(entries):
        raise ValueError("one involution per label block is required")
    sign = 1
    for (data, part), w in zip(entries, ws):
        if w.nu != part:
            raise ValueError(f"involution for block {part} has type {w.nu}")
        for length in w.type1:
            if (data.m * length) % 2:
                raise ValueError("tuple lies outside Y: odd m_xi * length on a type-1 cycle")
            sign *= (-1) ** (data.m * length // 2)
        for length in w.type2:
            sign *= data.d ** (data.m * length // 2)
        for length in w.type3:
            sign *= data.d ** (data.m * length)
    return sign


def threeterm_bruteforce(mp: MultiPartition, eps: int, *, bound: int = ZINV_SIZE_BOUND) -> int:
    """Third route to the orthogonal multiplicity, by involution enumeration.

    Evaluates the three-term double-coset count both by per-orbit
    factorization and by direct enumeration of involution tuples; the two
    must agree, and the common value is returned.
    """
    if eps not in (1, -1):
        raise ValueError(f"eps must be +1 or -1, got {eps}")
    if not params.in_P_hat(mp):
        raise ValueError(f"label {mp} has nontrivial norm product")
    entries = mp.orbit_entries()
    for _, part in entries:
        if part.size() > bound:
            raise CapacityError(f"block {part} exceeds the involution bound {bound}")
    factorized = _threeterm_factorized(mp, eps, entries, bound)
    direct = _threeterm_direct(mp, eps, entries, bound)
    if factorized != direct:
        raise InvariantViolation(
            f"three-term routes disagree on {mp}: factorized {factorized}, direct {direct}"
        )
    return factorized


def _middle_condition(mp: MultiPartition) -> bool:
    return (
        all(part.size() % 2 == 0 for _, part in mp.entries)
        and params.half_norm_product(mp) == 0
    )


def _threeterm_factorized(mp, eps, entries, bound) -> int:
    s1 = 1
    for data, part in entries:
        if data.d == 1:
            s1 *= weight_sum_all(part, bound=bound)
        else:
            s1 *= weight_sum_even_type1(part, bound=bound)
    total = Fraction(s1, 4)
    if _middle_condition(mp):
        ff = 1
        for _, part in entries:
            ff *= part.sign() * count_fixed_point_free(part, bound=bound)
        total += Fraction(eps * ff, 2)
    if all((data.m * part.size()) % 2 == 0 for data, part in entries):
        s3 = 1
        for data, part in entries:
            if data.d == 1 and data.m % 2:
                s3 *= weight_sum_signed(part, bound=bound)
            elif data.d == 1:
                s3 *= (-1) ** (data.m * part.size() // 2) * weight_sum_all(part, bound=bound)
            else:
                s3 *= (-1) ** (data.m * part.size() // 2) * weight_sum_even_type1(
                    part, bound=bound
                )
        total += Fraction(params.phi(mp) * s3, 4)
    if total.denominator != 1:
        raise InvariantViolation(f"non-integral three-term value {total} for {mp}")
    return int(total)


def _threeterm_direct(mp, eps, entries, bound) -> int:
    zlists = [enumerate_zinv(part, bound=bound) for _, part in entries]
    data = [d for d, _ in entries]
    s1 = 0
    s3 = 0
    ff_count = 0
    for ws in iter_product(*zlists):
        if any(d.d == -1 and w.ell1_odd for d, w in zip(data, ws)):
            continue  # outside X
        ell1_total = sum(w.ell1 for w in ws)
        s1 += (-2) ** ell1_total
        if all(w.is_fixed_point_free for w in ws):
            ff_count += 1
        in_y = all(d.m % 2 == 0 or w.ell1_odd == 0 for d, w in zip(data, ws))
        if in_y:
            s3 += phi_w(ws, mp) * (-2) ** ell1_total
    total = Fraction(s1, 4)
    if _middle_condition(mp):
        total += Fraction(eps * epsilon_nu(mp) * ff_count, 2)
    if all(d.m * part.size() % 2 == 0 for d, (_, part) in zip(data, entries)):
        total += Fraction(params.phi(mp) * s3, 4)
    if total.denominator != 1:
        raise InvariantViolation(f"non-integral three-term value {total} for {mp}")
    return int(total)
