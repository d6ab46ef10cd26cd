"""Multiplicity formulas for Ind(1) from the projective symplectic and
orthogonal subgroups of PGL_n over F_q, plus the route through basic
characters and a batch decomposition driver.

All fractional coefficients (1/4, 1/2, eps/2) are handled in exact rational
arithmetic; a non-integral or negative final multiplicity is a hard internal
error, never a rounding issue.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import product as iter_product
from typing import Optional

from . import oracle, params, symchar
from .dualgroup import QContext
from .errors import InvariantViolation
from .params import MultiPartition, make_label
from .partitions import Partition, partitions_of


class Subgroup(Enum):
    PGSP = "pgsp"
    PGO_PLUS = "pgo+"
    PGO_MINUS = "pgo-"

    @property
    def eps(self) -> Optional[int]:
        if self is Subgroup.PGO_PLUS:
            return 1
        if self is Subgroup.PGO_MINUS:
            return -1
        return None

    @classmethod
    def parse(cls, text: str) -> "Subgroup":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(f"unknown subgroup {text!r}; expected pgsp, pgo+ or pgo-") from None


@dataclass(frozen=True)
class Row:
    label: MultiPartition
    mult: int
    degree: Optional[int] = None


@dataclass(frozen=True)
class DecompositionReport:
    subgroup: Subgroup
    ctx: QContext
    n: int
    rows: tuple[Row, ...]
    sum_mult_times_degree: Optional[int]
    sum_mult_squared: int

    def to_json_dict(self) -> dict:
        rows = []
        for row in self.rows:
            item: dict = {"label": row.label.text(), "mult": row.mult}
            if row.degree is not None:
                item["degree"] = row.degree
            rows.append(item)
        return {
            "schema_version": 1,
            "q": self.ctx.q,
            "n": self.n,
            "subgroup": self.subgroup.value,
            "rows": rows,
            "totals": {
                "sum_md": self.sum_mult_times_degree,
                "sum_m2": self.sum_mult_squared,
            },
        }


def _require_descends(mp: MultiPartition) -> None:
    if not params.in_P_hat(mp):
        raise ValueError(f"label {mp} has nontrivial norm product; it does not descend to PGL")


def _check_eps(eps: int) -> None:
    if eps not in (1, -1):
        raise ValueError(f"eps must be +1 or -1, got {eps}")


def _as_nonneg_int(value: Fraction, context: str) -> int:
    if value.denominator != 1 or value < 0:
        raise InvariantViolation(f"{context} produced non-integral or negative value {value}")
    return int(value)


def _prod_mult_plus_one(p: Partition) -> int:
    out = 1
    for mult in p.multiplicities().values():
        out *= mult + 1
    return out


def _prod_even_mult_plus_one(p: Partition) -> int:
    out = 1
    for part, mult in p.multiplicities().items():
        if part % 2 == 0:
            out *= mult + 1
    return out


def _odd_mults_even(p: Partition) -> bool:
    return all(mult % 2 == 0 for part, mult in p.multiplicities().items() if part % 2)


# Irreducible-character multiplicities.


def mult_pgsp_irr(rho: MultiPartition) -> int:
    """Multiplicity of the irreducible labelled rho in Ind(1) from PGSp_n."""
    _require_descends(rho)
    if not all(part.is_even() for _, part in rho.entries):
        return 0
    return 1 if params.half_norm_product(rho) == 0 else 0


def mult_pgo_irr(rho: MultiPartition, eps: int) -> int:
    """Multiplicity of the irreducible labelled rho in Ind(1) from PGO_n^eps."""
    _require_descends(rho)
    _check_eps(eps)
    entries = rho.orbit_entries()

    total = Fraction(0)
    if all(data.d == 1 or part.transpose().is_even() for data, part in entries):
        prod = 1
        for data, part in entries:
            if data.d == 1:
                prod *= _prod_mult_plus_one(part)
        total += Fraction(prod, 4)

    if (
        all(part.transpose().is_even() for _, part in entries)
        and params.half_norm_product(rho) == 0
    ):
        total += Fraction(eps, 2)

    cond = all(
        _odd_mults_even(part) if (data.d == 1 and data.m % 2) else part.transpose().is_even()
        for data, part in entries
        if not (data.d == 1 and data.m % 2 == 0)
    )
    if cond:
        prod = 1
        sign = (-1) ** (rho.n // 2) * params.phi(rho)
        for data, part in entries:
            if data.d == 1 and data.m % 2:
                prod *= _prod_even_mult_plus_one(part)
                sign *= (-1) ** part.length_stats().ell2mod4
            elif data.d == 1:
                prod *= _prod_mult_plus_one(part)
        total += Fraction(sign * prod, 4)

    return _as_nonneg_int(total, f"mult_pgo_irr({rho}, {eps:+d})")


def mult_irr(rho: MultiPartition, subgroup: Subgroup) -> int:
    if subgroup is Subgroup.PGSP:
        return mult_pgsp_irr(rho)
    return mult_pgo_irr(rho, subgroup.eps)


# Unipotent fast paths (labels supported on the trivial dual element).


def mult_unipotent_pgsp(rho: Partition) -> int:
    """1 iff rho is even: the unipotent constituents from Sp all survive."""
    rho = Partition(rho)
    _check_unipotent_size(rho)
    return 1 if rho.is_even() else 0


def mult_unipotent_gl_o(rho: Partition, eps: int) -> int:
    """GL-level orthogonal multiplicity: (1/2)prod(m_i+1) + eps/2 [rho' even]."""
    rho = Partition(rho)
    _check_unipotent_size(rho)
    _check_eps(eps)
    total = Fraction(_prod_mult_plus_one(rho), 2)
    if rho.transpose().is_even():
        total += Fraction(eps, 2)
    return _as_nonneg_int(total, f"mult_unipotent_gl_o({rho}, {eps:+d})")


def mult_unipotent_pgo(rho: Partition, eps: int) -> int:
    """PGL-level orthogonal multiplicity of the unipotent character chi^rho."""
    rho = Partition(rho)
    _check_unipotent_size(rho)
    _check_eps(eps)
    total = Fraction(_prod_mult_plus_one(rho), 4)
    if rho.transpose().is_even():
        total += Fraction(eps, 2)
    if _odd_mults_even(rho):
        sign = (-1) ** (rho.length_stats().ell1 // 2)
        total += Fraction(sign * _prod_even_mult_plus_one(rho), 4)
    return _as_nonneg_int(total, f"mult_unipotent_pgo({rho}, {eps:+d})")


def mult_unipotent_omega(rho: Partition, subgroup: Subgroup) -> int:
    """Multiplicity in the omega-twisted induction, unipotent case only.

    The GL-level multiplicity splits as Ind(1) + Ind(omega); the twist is
    the difference.  (Identically zero for PGSp.)
    """
    rho = Partition(rho)
    if subgroup is Subgroup.PGSP:
        total = (1 if rho.is_even() else 0) - mult_unipotent_pgsp(rho)
    else:
        total = mult_unipotent_gl_o(rho, subgroup.eps) - mult_unipotent_pgo(rho, subgroup.eps)
    if total < 0:
        raise InvariantViolation(f"negative omega multiplicity for {rho}")
    return total


def _check_unipotent_size(rho: Partition) -> None:
    if rho.size() % 2 or not rho:
        raise ValueError(f"unipotent labels need |rho| = n even and positive, got {rho}")


# Basic-character multiplicities (closed forms).


def mult_pgsp_basic(nu: MultiPartition) -> int:
    """Inner product of the basic character B_nu with Ind(1) from PGSp_n."""
    _require_descends(nu)
    if params.half_norm_product(nu) != 0:
        return 0
    prod = 1
    for _, part in nu.entries:
        prod *= symchar.sum_chi_even(part)
    return prod


def mult_pgo_basic(nu: MultiPartition, eps: int) -> int:
    """Inner product of the basic character B_nu with Ind(1) from PGO_n^eps."""
    _require_descends(nu)
    _check_eps(eps)
    entries = nu.orbit_entries()

    term1 = Fraction(1, 4)
    for data, part in entries:
        if data.d == 1:
            term1 *= (-1) ** part.size() * symchar.sum_chi_weighted(part)
        else:
            term1 *= symchar.sum_chi_transpose_even(part)
    total = term1

    if params.half_norm_product(nu) == 0:
        term2 = Fraction(eps, 2)
        for _, part in entries:
            term2 *= symchar.sum_chi_transpose_even(part)
        total += term2

    if all(data.m * part.size() % 2 == 0 for data, part in entries):
        term3 = Fraction(params.phi(nu), 4)
        for data, part in entries:
            if data.d == 1 and data.m % 2:
                term3 *= symchar.sum_chi_signed_even(part)
            elif data.d == 1:
                term3 *= (-1) ** (part.size() + data.m * part.size() // 2)
                term3 *= symchar.sum_chi_weighted(part)
            else:
                term3 *= (-1) ** (data.m * part.size() // 2)
                term3 *= symchar.sum_chi_transpose_even(part)
        total += term3

    if total.denominator != 1:
        raise InvariantViolation(f"non-integral basic multiplicity {total} for {nu}")
    return int(total)


def mult_basic_via_transition(nu: MultiPartition, subgroup: Subgroup) -> int:
    """Basic-character multiplicity through the irreducible transition matrix.

    Expands B_nu over all irreducible labels with the same block sizes on the
    same orbits; labels with nontrivial norm product do not descend and
    contribute zero (with trivial Pi for nu, none occur, since Pi depends
    only on the block sizes).
    """
    _require_descends(nu)
    keys = [xi for xi, _ in nu.entries]
    blocks = [part for _, part in nu.entries]
    sign = (-1) ** (nu.n + sum(part.size() for part in blocks))
    total = 0
    for rhos in iter_product(*[partitions_of(part.size()) for part in blocks]):
        coeff = 1
        for rho_part, nu_part in zip(rhos, blocks):
            coeff *= symchar.chi(rho_part, nu_part)
            if coeff == 0:
                break
        if coeff == 0:
            continue
        rho_label = make_label(nu.ctx, nu.n, zip(keys, rhos))
        if not params.in_P_hat(rho_label):
            continue
        total += coeff * mult_irr(rho_label, subgroup)
    return sign * total


def mult_basic(nu: MultiPartition, subgroup: Subgroup) -> int:
    if subgroup is Subgroup.PGSP:
        return mult_pgsp_basic(nu)
    return mult_pgo_basic(nu, subgroup.eps)


# Batch driver.


def decompose(
    ctx: QContext,
    n: int,
    subgroup: Subgroup,
    *,
    include_zeros: bool = False,
    with_degrees: bool = False,
    unipotent_only: bool = False,
) -> DecompositionReport:
    """Decomposition of Ind(1) over the labels that descend to PGL_n.

    One row per label with nonzero multiplicity (or all labels with
    include_zeros), in the deterministic enumeration order.  Degrees come
    from the q-analog hook-length formula when requested.
    """
    if unipotent_only:
        labels = [make_label(ctx, n, {Fraction(0): rho}) for rho in partitions_of(n)]
    else:
        labels = params.enumerate_labels(ctx, n, True)
    rows = []
    sum_md = 0 if with_degrees else None
    sum_m2 = 0
    for label in labels:
        mult = mult_irr(label, subgroup)
        if subgroup is Subgroup.PGSP and mult not in (0, 1):
            raise InvariantViolation(f"PGSp multiplicity {mult} outside {{0,1}} at {label}")
        sum_m2 += mult * mult
        if mult == 0 and not include_zeros:
            continue
        degree = None
        if with_degrees:
            degree = oracle.degree(ctx, label)
            sum_md += mult * degree
        rows.append(Row(label, mult, degree))
    return DecompositionReport(subgroup, ctx, n, tuple(rows), sum_md, sum_m2)
