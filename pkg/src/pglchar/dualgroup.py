"""The dual group of the multiplicative groups of extensions of F_q, in Q/Z.

The direct limit of the character groups of F_{q^e}^x is modeled as the
subgroup of Q/Z of fractions with denominator coprime to q; the q-th power
map sigma acts as multiplication by q mod 1.  All pairings with field
elements are pure exponent arithmetic relative to a norm-compatible system
of generators (g_e = g_{e'}^((q^e'-1)/(q^e-1)) for e | e'), so no finite
field is ever constructed.  The only field elements the formulas pair with
are -1, a fixed non-square beta and its square root; their exponents are
forced to (q-1)/2 at level 1 and (q+1)/2 at level 2.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Mapping

from .errors import CapacityError, InvariantViolation

ORBIT_ELEMENT_BUDGET = 2_000_000

IDENTITY = Fraction(0)
# Unique element of order 2 fixed by sigma: q odd makes denominator 2 legal.
ETA = Fraction(1, 2)

_FRACTION_RE = re.compile(r"\s*(\d+)\s*/\s*(\d+)\s*")


@dataclass(frozen=True)
class QContext:
    """An odd prime power q = p^k with q >= 3."""

    q: int
    p: int
    k: int

    def __post_init__(self) -> None:
        if self.q % 2 == 0 or self.q < 3:
            raise ValueError(f"q must be an odd prime power >= 3, got {self.q}")
        if self.p < 2 or any(self.p % d == 0 for d in range(2, int(self.p**0.5) + 1)):
            raise ValueError(f"{self.p} is not prime")
        if self.k < 1 or self.p**self.k != self.q:
            raise ValueError(f"q = {self.q} is not {self.p}^{self.k}")


def q_context(q: int) -> QContext:
    q = int(q)
    if q < 3 or q % 2 == 0:
        raise ValueError(f"q must be an odd prime power >= 3, got {q}")
    p = q
    for d in range(3, int(q**0.5) + 1, 2):
        if q % d == 0:
            p = d
            break
    k = 0
    rest = q
    while rest % p == 0:
        rest //= p
        k += 1
    if rest != 1:
        raise ValueError(f"q = {q} is not a prime power")
    return QContext(q, p, k)


@dataclass(frozen=True)
class OrbitData:
    """A sigma-orbit: canonical representative, size m, norm N in L^sigma, sign d."""

    rep: Fraction
    m: int
    norm: Fraction
    d: int


def as_dual(ctx: QContext, x) -> Fraction:
    """Normalise x into [0,1) and check its denominator is coprime to q."""
    x = Fraction(x) % 1
    if gcd(x.denominator, ctx.q) != 1:
        raise ValueError(f"{x} has denominator not coprime to q = {ctx.q}")
    return x


def parse_fraction(text: str) -> Fraction:
    """Parse the text form ``a/b`` (identity: ``0/1``)."""
    m = _FRACTION_RE.fullmatch(text)
    if not m:
        raise ValueError(f"cannot parse dual element {text!r}; expected a/b")
    den = int(m.group(2))
    if den < 1:
        raise ValueError(f"denominator must be >= 1 in {text!r}")
    return Fraction(int(m.group(1)), den) % 1


def format_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def sigma(ctx: QContext, x) -> Fraction:
    """The q-th power map: multiplication by q mod 1."""
    return as_dual(ctx, x) * ctx.q % 1


def eta(ctx: QContext) -> Fraction:
    """The unique order-2 element of L^sigma, the fraction 1/2."""
    return ETA


@lru_cache(maxsize=None)
def _mult_order(q: int, den: int) -> int:
    if den == 1:
        return 1
    acc = q % den
    e = 1
    while acc != 1:
        acc = acc * q % den
        e += 1
    return e


def orbit_size(ctx: QContext, x) -> int:
    """m_xi: the smallest e >= 1 with q^e * xi = xi (1 for the identity)."""
    return _mult_order(ctx.q, as_dual(ctx, x).denominator)


def orbit(ctx: QContext, x) -> list[Fraction]:
    """The sigma-orbit of x, starting at x."""
    x = as_dual(ctx, x)
    out = [x]
    y = x * ctx.q % 1
    while y != x:
        out.append(y)
        y = y * ctx.q % 1
    return out


def norm(ctx: QContext, x) -> Fraction:
    """N(xi) = (1 + q + ... + q^(m-1)) * xi, which lands in L^sigma."""
    x = as_dual(ctx, x)
    m = orbit_size(ctx, x)
    return x * ((ctx.q**m - 1) // (ctx.q - 1)) % 1


@lru_cache(maxsize=None)
def canonical_rep(ctx: QContext, x) -> Fraction:
    """Frozen orbit representative: minimal (denominator, numerator) in the orbit.

    All orbit elements share a denominator, so this is the minimal numerator.
    """
    return min(orbit(ctx, x), key=lambda f: (f.denominator, f.numerator))


@lru_cache(maxsize=None)
def orbit_data(ctx: QContext, x) -> OrbitData:
    x = as_dual(ctx, x)
    m = orbit_size(ctx, x)
    nx = norm(ctx, x)
    if (ctx.q - 1) % nx.denominator:
        raise InvariantViolation(f"norm {nx} of {x} is not sigma-fixed")
    # d = <-1, N(xi)>: -1 has exponent (q-1)/2, so the pairing is a parity.
    t = nx.numerator * ((ctx.q - 1) // nx.denominator)
    return OrbitData(canonical_rep(ctx, x), m, nx, -1 if t % 2 else 1)


def orbits_up_to(
    ctx: QContext, n: int, *, element_budget: int = ORBIT_ELEMENT_BUDGET
) -> list[OrbitData]:
    """All sigma-orbits with m_xi <= n, once each, sorted by representative."""
    if n < 1:
        raise ValueError("n must be >= 1")
    estimate = sum(ctx.q**e for e in range(1, n + 1))
    if estimate > element_budget:
        raise CapacityError(
            f"enumerating ~{estimate} dual elements exceeds the budget {element_budget}"
        )
    seen: set[Fraction] = set()
    out: list[OrbitData] = []
    for e in range(1, n + 1):
        level = ctx.q**e - 1
        for a in range(level):
            x = Fraction(a, level)
            if x in seen:
                continue
            orb = orbit(ctx, x)
            seen.update(orb)
            rep = min(orb, key=lambda f: (f.denominator, f.numerator))
            out.append(orbit_data(ctx, rep))
    out.sort(key=lambda od: (od.rep.denominator, od.rep.numerator))
    return out


def pairing_exponent(ctx: QContext, level: int, field_exp: int, x) -> Fraction:
    """Exponent in [0,1) of the root of unity <g_level^field_exp, x>_level.

    Requires x in L^(sigma^level), i.e. denominator dividing q^level - 1.
    """
    if level < 1:
        raise ValueError("level must be >= 1")
    x = as_dual(ctx, x)
    modulus = ctx.q**level - 1
    if modulus % x.denominator:
        raise ValueError(f"{x} is not fixed by sigma^{level}")
    t = x.numerator * (modulus // x.denominator)
    return Fraction(field_exp * t, modulus) % 1


def phi(ctx: QContext, blocks: Mapping[Fraction, int]) -> int:
    """The sign Phi of a label given as a map orbit-representative -> block size.

    Defined when the norm product over the blocks is trivial and every
    m_xi * size is even.  Uses the frozen square root sqrt(beta) = g_2^((q+1)/2),
    so beta = g_1 is a non-square; the result does not depend on that choice.
    """
    return _phi_with_exponent(ctx, blocks, (ctx.q + 1) // 2)


def _phi_with_exponent(ctx: QContext, blocks: Mapping[Fraction, int], sqrt_exponent: int) -> int:
    total = Fraction(0)
    pi_total = Fraction(0)
    for xi, size in blocks.items():
        xi = as_dual(ctx, xi)
        data = orbit_data(ctx, xi)
        if size < 1:
            raise ValueError("block sizes must be positive")
        e = data.m * size
        if e % 2:
            raise ValueError(f"phi needs m_xi * |nu_xi| even; orbit {xi} gives {e}")
        pi_total += size * data.norm
        # <sqrt(beta), xi>_e with sqrt(beta) = g_e^(sqrt_exponent * (q^e-1)/(q^2-1)):
        # the exponent fraction collapses to sqrt_exponent * t_e / (q^2 - 1).
        t = xi.numerator * ((ctx.q**e - 1) // xi.denominator)
        total += Fraction(sqrt_exponent * t, ctx.q**2 - 1)
    if pi_total % 1 != 0:
        raise ValueError("phi needs a trivial norm product over the blocks")
    total %= 1
    if total == 0:
        return 1
    if total == Fraction(1, 2):
        return -1
    # Guaranteed by the trivial norm product: the square of the pairing
    # product is <beta, Pi> = 1.
    raise InvariantViolation(f"phi pairing product exponent {total} is not half-integral")


def in_sigma_tilde(ctx: QContext, x) -> bool:
    """True iff q*x = -x in Q/Z (the 'twisted-fixed' locus)."""
    return (ctx.q + 1) * as_dual(ctx, x) % 1 == 0


def tilde_d(ctx: QContext, x) -> int:
    """Sign comparing the q-power of a square root of x with its inverse.

    For x with q*x = -x, pick zeta with 2*zeta = x; return +1 if
    q*zeta = -zeta and -1 if q*zeta = -zeta + 1/2.  Well-defined since the
    two choices of zeta differ by 1/2 and q is odd.
    """
    x = as_dual(ctx, x)
    if not in_sigma_tilde(ctx, x):
        raise ValueError(f"{x} does not satisfy q*x = -x")
    zeta = x / 2
    r = (ctx.q + 1) * zeta % 1
    if r == 0:
        return 1
    if r == Fraction(1, 2):
        return -1
    raise InvariantViolation(f"tilde_d residue {r} is not half-integral")
