"""Exact symmetric-group character values computed by border-strip recursion.

chi(rho, mu) is the value of the irreducible character of S_m indexed by rho
at a permutation of cycle type mu, normalised so that chi((m), mu) = 1 and
chi(rho', mu) = sign(mu) * chi(rho, mu).  The recursion removes one border
strip per part of mu, working on first-column hook lengths (beta-sets).

Values are memoised in a module-level dict.  Writes are idempotent, so
concurrent use from several threads can at worst duplicate work; workers that
want isolation can snapshot and restore via clear_memo().
"""

from __future__ import annotations

import json

from .errors import CapacityError
from .partitions import Partition, partitions_of

CHARACTER_TABLE_BOUND = 14
CACHE_FORMAT_VERSION = 1

_memo: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = {}


def chi(rho, mu) -> int:
    """Character value chi^rho at cycle type mu; requires |rho| = |mu|."""
    rho = Partition(rho)
    mu = Partition(mu)
    if rho.size() != mu.size():
        raise ValueError(f"size mismatch: |{rho}| = {rho.size()} but |{mu}| = {mu.size()}")
    return _chi(tuple(rho), tuple(mu))


def _chi(rho: tuple[int, ...], mu: tuple[int, ...]) -> int:
    if not mu:
        return 1
    key = (rho, mu)
    cached = _memo.get(key)
    if cached is not None:
        return cached
    strip, rest = mu[0], mu[1:]
    length = len(rho)
    beta = [rho[i] + (length - 1 - i) for i in range(length)]
    present = set(beta)
    total = 0
    for i, b in enumerate(beta):
        lowered = b - strip
        if lowered < 0 or lowered in present:
            continue
        height = sum(1 for c in beta if lowered < c < b)
        newbeta = sorted((lowered if j == i else c for j, c in enumerate(beta)), reverse=True)
        parts = []
        for j, c in enumerate(newbeta):
            v = c - (length - 1 - j)
            if v:
                parts.append(v)
        total += (-1) ** height * _chi(tuple(parts), rest)
    _memo[key] = total
    return total


def character_table(m: int, *, bound: int = CHARACTER_TABLE_BOUND) -> list[list[int]]:
    """Full table for S_m: rows rho, columns mu, both in partitions_of(m) order."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m > bound:
        raise CapacityError(f"character_table({m}) exceeds the bound {bound}")
    parts = partitions_of(m)
    return [[chi(rho, mu) for mu in parts] for rho in parts]


def clear_memo() -> None:
    _memo.clear()


def save_cache(path, up_to_m: int, *, bound: int = CHARACTER_TABLE_BOUND) -> None:
    """Persist the tables for all m <= up_to_m as a versioned JSON file."""
    tables = {}
    for m in range(up_to_m + 1):
        parts = partitions_of(m)
        tables[str(m)] = {
            "partitions": [list(p) for p in parts],
            "values": character_table(m, bound=bound),
        }
    payload = {"format_version": CACHE_FORMAT_VERSION, "tables": tables}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True)


def load_cache(path) -> int:
    """Preload memoised values from a cache file; returns the entry count.

    Cache absence or presence never changes any result: entries only seed the
    memo, and a value conflicting with the table layout is rejected.
    """
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    version = payload.get("format_version")
    if version != CACHE_FORMAT_VERSION:
        raise ValueError(f"character cache format_version {version!r} is not {CACHE_FORMAT_VERSION}")
    count = 0
    for m_text, table in payload.get("tables", {}).items():
        parts = [Partition(p) for p in table["partitions"]]
        if parts != list(partitions_of(int(m_text))):
            raise ValueError(f"character cache row order for m={m_text} does not match")
        for rho, row in zip(parts, table["values"]):
            if len(row) != len(parts):
                raise ValueError(f"character cache table for m={m_text} is ragged")
            for mu, value in zip(parts, row):
                _memo[(tuple(rho), tuple(mu))] = int(value)
                count += 1
    return count


# Weighted chi-sums shared by the closed formulas and the identity checks.


def sum_chi_even(nu) -> int:
    """Sum of chi(rho, nu) over even rho (all parts even)."""
    nu = Partition(nu)
    return sum(chi(rho, nu) for rho in partitions_of(nu.size()) if rho.is_even())


def sum_chi_transpose_even(nu) -> int:
    """Sum of chi(rho, nu) over rho with even transpose (all multiplicities even)."""
    nu = Partition(nu)
    return sum(chi(rho, nu) for rho in partitions_of(nu.size()) if rho.transpose().is_even())


def sum_chi_weighted(nu) -> int:
    """Sum over all rho of prod_i (m_i(rho)+1) times chi(rho, nu)."""
    nu = Partition(nu)
    total = 0
    for rho in partitions_of(nu.size()):
        weight = 1
        for mult in rho.multiplicities().values():
            weight *= mult + 1
        total += weight * chi(rho, nu)
    return total


def sum_chi_signed_even(nu) -> int:
    """Signed sum over rho whose odd parts all have even multiplicity.

    Each such rho contributes
    (-1)^(|rho|/2 + #parts congruent to 2 mod 4) * prod_i (m_2i(rho)+1) * chi(rho, nu).
    """
    nu = Partition(nu)
    total = 0
    for rho in partitions_of(nu.size()):
        mults = rho.multiplicities()
        if any(part % 2 and mult % 2 for part, mult in mults.items()):
            continue
        weight = 1
        for part, mult in mults.items():
            if part % 2 == 0:
                weight *= mult + 1
        sign = (-1) ** (rho.size() // 2 + rho.length_stats().ell2mod4)
        total += sign * weight * chi(rho, nu)
    return total
