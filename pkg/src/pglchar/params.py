"""Sigma-stable multi-partition labels with trivial norm product.

A label assigns a nonempty partition to finitely many sigma-orbits of the
dual group so that the orbit sizes weighted by partition sizes sum to n.
Labels parametrize both the irreducible characters (rho-labels) and the
basic characters (nu-labels); the subset with trivial norm product consists
of exactly those that descend from GL_n to PGL_n.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional

from . import dualgroup
from .dualgroup import OrbitData, QContext
from .errors import CapacityError
from .partitions import Partition, partitions_of

LABEL_BUDGET = 250_000


@dataclass(frozen=True)
class MultiPartition:
    """Mapping from canonical sigma-orbit representatives to nonempty partitions.

    Entries are stored sorted by (denominator, numerator) of the
    representative, which fixes the text form and the enumeration order.
    Instances are built through make_label()/parse_label(), which validate
    canonicality and the weight condition sum m_xi * |nu_xi| = n.
    """

    ctx: QContext
    n: int
    entries: tuple[tuple[Fraction, Partition], ...]

    def get(self, xi) -> Optional[Partition]:
        xi = dualgroup.canonical_rep(self.ctx, dualgroup.as_dual(self.ctx, xi))
        for key, part in self.entries:
            if key == xi:
                return part
        return None

    def orbit_entries(self) -> tuple[tuple[OrbitData, Partition], ...]:
        return tuple((dualgroup.orbit_data(self.ctx, xi), part) for xi, part in self.entries)

    def block_sizes(self) -> dict[Fraction, int]:
        return {xi: part.size() for xi, part in self.entries}

    def text(self) -> str:
        return " + ".join(
            f"{dualgroup.format_fraction(xi)}:{part}" for xi, part in self.entries
        )

    def __str__(self) -> str:
        return self.text()

    def to_json_dict(self) -> dict:
        return {
            "q": self.ctx.q,
            "n": self.n,
            "entries": [
                {"xi": dualgroup.format_fraction(xi), "partition": list(part)}
                for xi, part in self.entries
            ],
        }


def make_label(ctx: QContext, n: int, entries) -> MultiPartition:
    """Build a validated label; keys are canonicalized to orbit representatives.

    entries may be a mapping or an iterable of (dual element, partition) pairs;
    dual elements may be Fractions or ``a/b`` strings, partitions Partition
    instances or iterables of parts.
    """
    if n < 2 or n % 2:
        raise ValueError(f"n must be even and >= 2, got {n}")
    if isinstance(entries, Mapping):
        pairs: Iterable = entries.items()
    else:
        pairs = entries
    canon: dict[Fraction, Partition] = {}
    for xi, part in pairs:
        if isinstance(xi, str):
            xi = dualgroup.parse_fraction(xi)
        xi = dualgroup.canonical_rep(ctx, dualgroup.as_dual(ctx, xi))
        part = part if isinstance(part, Partition) else Partition(part)
        if not part:
            raise ValueError("label blocks must be nonempty partitions")
        if xi in canon:
            raise ValueError(
                f"duplicate orbit key {dualgroup.format_fraction(xi)} after canonicalization"
            )
        canon[xi] = part
    weight = sum(dualgroup.orbit_size(ctx, xi) * part.size() for xi, part in canon.items())
    if weight != n:
        raise ValueError(f"label weight {weight} does not match n = {n}")
    ordered = tuple(
        sorted(canon.items(), key=lambda kv: (kv[0].denominator, kv[0].numerator))
    )
    return MultiPartition(ctx, n, ordered)


def pi(mp: MultiPartition) -> Fraction:
    """The norm product Pi, written additively: sum of |nu_xi| * N(xi) mod 1."""
    total = Fraction(0)
    for data, part in mp.orbit_entries():
        total += part.size() * data.norm
    return total % 1


def in_P_hat(mp: MultiPartition) -> bool:
    """True iff the label descends to PGL, i.e. Pi is trivial."""
    return pi(mp) == 0


def half_norm_product(mp: MultiPartition) -> Optional[Fraction]:
    """Product of N(xi)^(|nu_xi|/2) when every block size is even, else None.

    For labels with trivial Pi the value is 0 (identity) or 1/2 (eta); the
    multiplicity formulas branch on exactly these three outcomes.
    """
    total = Fraction(0)
    for data, part in mp.orbit_entries():
        size = part.size()
        if size % 2:
            return None
        total += (size // 2) * data.norm
    return total % 1


def phi(mp: MultiPartition) -> int:
    """The sign Phi of the label (requires trivial Pi and all m_xi |nu_xi| even)."""
    return dualgroup.phi(mp.ctx, mp.block_sizes())


def parse_label(ctx: QContext, n: int, text: str) -> MultiPartition:
    """Parse the label grammar: entries ``frac:partition`` joined by ``+``.

    Example: ``0/1:[2,1] + 1/2:[1]``.  Keys are canonicalized; duplicates
    after canonicalization and weight mismatches are rejected.
    """
    chunks = [c.strip() for c in text.split("+")]
    if any(not c for c in chunks):
        raise ValueError(f"empty label entry in {text!r}")
    pairs = []
    for chunk in chunks:
        frac_text, sep, part_text = chunk.partition(":")
        if not sep:
            raise ValueError(f"label entry {chunk!r} is missing ':'")
        pairs.append((dualgroup.parse_fraction(frac_text), Partition.parse(part_text)))
    return make_label(ctx, n, pairs)


def label_from_json_dict(ctx: QContext, data: Mapping) -> MultiPartition:
    if int(data["q"]) != ctx.q:
        raise ValueError(f"label JSON is for q = {data['q']}, not q = {ctx.q}")
    pairs = [(entry["xi"], Partition(entry["partition"])) for entry in data["entries"]]
    return make_label(ctx, int(data["n"]), pairs)


def invert_label(mp: MultiPartition) -> MultiPartition:
    """Apply xi -> xi^(-1) to every orbit key (partitions unchanged)."""
    return make_label(
        mp.ctx, mp.n, [((-xi) % 1, part) for xi, part in mp.entries]
    )


def enumerate_labels(
    ctx: QContext,
    n: int,
    restrict_to_P_hat: bool = True,
    *,
    element_budget: int = dualgroup.ORBIT_ELEMENT_BUDGET,
    label_budget: int = LABEL_BUDGET,
) -> list[MultiPartition]:
    """All labels of weight n, once each, in a fixed deterministic order.

    Orbits are taken sorted by representative; per orbit, block sizes run
    from large to small, partitions of a fixed size in reverse-lexicographic
    order, and "no block" last.  Depth-first composition of those choices
    yields the emission order, so the label {1:[n]} (trivial character when
    restricted) always comes first.
    """
    if n < 2 or n % 2:
        raise ValueError(f"n must be even and >= 2, got {n}")
    orbits = dualgroup.orbits_up_to(ctx, n, element_budget=element_budget)
    out: list[MultiPartition] = []
    acc: list[tuple[Fraction, Partition]] = []

    def rec(start: int, remaining: int) -> None:
        if remaining == 0:
            mp = MultiPartition(ctx, n, tuple(acc))
            if not restrict_to_P_hat or in_P_hat(mp):
                if len(out) >= label_budget:
                    raise CapacityError(f"more than {label_budget} labels at q={ctx.q}, n={n}")
                out.append(mp)
            return
        for i in range(start, len(orbits)):
            data = orbits[i]
            if data.m > remaining:
                continue
            for k in range(remaining // data.m, 0, -1):
                for part in partitions_of(k):
                    acc.append((data.rep, part))
                    rec(i + 1, remaining - data.m * k)
                    acc.pop()

    rec(0, n)
    return out


def random_labels(
    ctx: QContext,
    n: int,
    count: int,
    *,
    restrict_to_P_hat: bool = True,
    seed=None,
    rng: Optional[random.Random] = None,
) -> list[MultiPartition]:
    """Sample labels of weight n by rejection; not uniform, but covers strata.

    Useful where full enumeration is out of the desk-scale envelope.
    """
    if n < 2 or n % 2:
        raise ValueError(f"n must be even and >= 2, got {n}")
    if rng is None:
        rng = random.Random(seed)
    out: list[MultiPartition] = []
    while len(out) < count:
        entries: dict[Fraction, Partition] = {}
        remaining = n
        ok = True
        while remaining:
            m = rng.randint(1, remaining)
            level = ctx.q**m - 1
            for _ in range(64):
                x = Fraction(rng.randrange(level), level)
                if dualgroup.orbit_size(ctx, x) == m:
                    break
            else:
                ok = False
                break
            rep = dualgroup.canonical_rep(ctx, x)
            if rep in entries:
                ok = False
                break
            k = rng.randint(1, remaining // m)
            parts = partitions_of(k)
            entries[rep] = parts[rng.randrange(len(parts))]
            remaining -= m * k
        if not ok:
            continue
        mp = make_label(ctx, n, entries)
        if restrict_to_P_hat and not in_P_hat(mp):
            continue
        out.append(mp)
    return out
