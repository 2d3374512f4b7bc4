"""King's (semi)stability test, characters from weight matrices, and the
combinatorial good/great certificates.

A subset S of nodes is the support of a subrepresentation of a point exactly
when no nonzero arrow leaves S, i.e. there is no nonzero arrow with source in
S and target outside S.  A point is chi-semistable iff chi_S <= 0 for every
such support, and chi-stable iff equality holds only for the empty and full
supports.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable

from .points import RepresentationPoint, satisfies_relations
from .quiver import Quiver, QuiverError

DEFAULT_ENUMERATION_CAP = 20


class EnumerationCapError(ValueError):
    """Subset enumeration was requested beyond the configured node cap."""


@dataclass(frozen=True)
class Character:
    """An integer weight vector chi with sum(chi_i * alpha_i) = 0."""

    chi: tuple[int, ...]
    alpha: tuple[int, ...] | None = None

    def __post_init__(self):
        chi = tuple(int(c) for c in self.chi)
        alpha = self.alpha
        if alpha is None:
            alpha = (1,) * len(chi)
        alpha = tuple(int(a) for a in alpha)
        object.__setattr__(self, "chi", chi)
        object.__setattr__(self, "alpha", alpha)
        if len(alpha) != len(chi):
            raise ValueError("alpha and chi have different lengths")
        if any(a <= 0 for a in alpha):
            raise ValueError("alpha entries must be positive")
        if sum(c * a for c, a in zip(chi, alpha)) != 0:
            raise ValueError(f"character {chi} does not satisfy sum(chi*alpha) = 0")

    @property
    def n(self) -> int:
        return len(self.chi)

    def of_subset(self, subset: Iterable[int]) -> int:
        """chi_S: the sum of chi over a node subset (1-indexed)."""
        return sum(self.chi[i - 1] for i in subset)


@dataclass(frozen=True)
class WeightMatrix:
    """Non-negative integers m[i][j] with zero diagonal, generating a character."""

    m: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        m = tuple(tuple(int(x) for x in row) for row in self.m)
        object.__setattr__(self, "m", m)
        n = len(m)
        if any(len(row) != n for row in m):
            raise ValueError("weight matrix must be square")
        for i in range(n):
            if m[i][i] != 0:
                raise ValueError("weight matrix diagonal must vanish")
            for j in range(n):
                if m[i][j] < 0:
                    raise ValueError("weight matrix entries must be non-negative")

    @classmethod
    def zero(cls, n: int) -> "WeightMatrix":
        return cls(tuple((0,) * n for _ in range(n)))

    @classmethod
    def from_entries(cls, n: int, entries: dict[tuple[int, int], int]) -> "WeightMatrix":
        """Build from 1-indexed {(i, j): m_ij} entries."""
        rows = [[0] * n for _ in range(n)]
        for (i, j), v in entries.items():
            rows[i - 1][j - 1] = v
        return cls(tuple(tuple(row) for row in rows))

    @property
    def n(self) -> int:
        return len(self.m)

    def entry(self, i: int, j: int) -> int:
        return self.m[i - 1][j - 1]

    def incremented(self, i: int, j: int, by: int = 1) -> "WeightMatrix":
        rows = [list(row) for row in self.m]
        rows[i - 1][j - 1] += by
        return WeightMatrix(tuple(tuple(row) for row in rows))


@dataclass(frozen=True)
class SupportFamily:
    """The family of subrepresentation supports of a point."""

    n: int
    supports: frozenset[frozenset[int]]

    def __post_init__(self):
        object.__setattr__(
            self, "supports", frozenset(frozenset(s) for s in self.supports)
        )
        full = frozenset(range(1, self.n + 1))
        if frozenset() not in self.supports or full not in self.supports:
            raise ValueError("support family must contain the empty and full sets")

    @property
    def full(self) -> frozenset[int]:
        return frozenset(range(1, self.n + 1))

    def proper(self) -> list[frozenset[int]]:
        """Supports other than the empty and full sets, in canonical order."""
        skip = {frozenset(), self.full}
        return sorted(
            (s for s in self.supports if s not in skip), key=lambda s: sorted(s)
        )

    def sorted_supports(self) -> list[frozenset[int]]:
        return sorted(self.supports, key=lambda s: (len(s), sorted(s)))


# ---------------------------------------------------------------------------
# supports
# ---------------------------------------------------------------------------


def _nonzero_arrows(q: Quiver, p: RepresentationPoint):
    vals = p.as_dict()
    try:
        return [a for a in q.arrows if vals[a.id] != 0]
    except KeyError as exc:
        raise ValueError(f"point is missing a value for arrow {exc.args[0]!r}") from None


def subrep_supports(
    q: Quiver,
    p: RepresentationPoint,
    cap: int = DEFAULT_ENUMERATION_CAP,
    warn: bool = True,
) -> SupportFamily:
    """Exact support family via enumeration of all 2^n node subsets."""
    if q.n > cap:
        raise EnumerationCapError(
            f"subset enumeration over {q.n} nodes exceeds the cap of {cap}"
        )
    if warn and not satisfies_relations(q, p):
        warnings.warn("point does not satisfy the quiver relations", stacklevel=2)
    nonzero = _nonzero_arrows(q, p)
    supports = []
    for bits in range(1 << q.n):
        s = frozenset(i + 1 for i in range(q.n) if bits >> i & 1)
        if all(not (a.source in s and a.target not in s) for a in nonzero):
            supports.append(s)
    return SupportFamily(q.n, frozenset(supports))


def support_generators(q: Quiver, p: RepresentationPoint) -> dict[int, frozenset[int]]:
    """Reachability closure of each single node along nonzero arrows.

    The closure of {v} is the smallest support containing v; every support is
    a union of these generators.
    """
    nonzero = _nonzero_arrows(q, p)
    out: dict[int, frozenset[int]] = {}
    for v in range(1, q.n + 1):
        closure = {v}
        frontier = [v]
        while frontier:
            u = frontier.pop()
            for a in nonzero:
                if a.source == u and a.target not in closure:
                    closure.add(a.target)
                    frontier.append(a.target)
        out[v] = frozenset(closure)
    return out


def supports_from_generators(q: Quiver, p: RepresentationPoint) -> SupportFamily:
    """Support family as the union-closure of the single-node generators.

    Independent of the 2^n enumeration; used as a cross-check oracle.
    """
    gens = list(support_generators(q, p).values())
    family = {frozenset()}
    frontier = [frozenset()]
    while frontier:
        s = frontier.pop()
        for g in gens:
            t = s | g
            if t not in family:
                family.add(t)
                frontier.append(t)
    return SupportFamily(q.n, frozenset(family))


# ---------------------------------------------------------------------------
# stability
# ---------------------------------------------------------------------------


def _check_character(q: Quiver, chi: Character):
    if chi.n != q.n:
        raise ValueError(f"character length {chi.n} != n = {q.n}")
    if any(a != 1 for a in chi.alpha):
        raise ValueError("stability tests support only the all-ones dimension vector")


def violating_support(
    q: Quiver, p: RepresentationPoint, chi: Character, cap: int = DEFAULT_ENUMERATION_CAP
) -> frozenset[int] | None:
    """A support with chi_S > 0, or None if the point is chi-semistable."""
    _check_character(q, chi)
    fam = subrep_supports(q, p, cap=cap)
    worst = max(fam.sorted_supports(), key=lambda s: (chi.of_subset(s), -len(s)))
    if chi.of_subset(worst) > 0:
        return worst
    return None


def is_semistable(
    q: Quiver, p: RepresentationPoint, chi: Character, cap: int = DEFAULT_ENUMERATION_CAP
) -> bool:
    return violating_support(q, p, chi, cap=cap) is None


def is_stable(
    q: Quiver, p: RepresentationPoint, chi: Character, cap: int = DEFAULT_ENUMERATION_CAP
) -> bool:
    """Semistable, with chi_S = 0 only for the empty and full supports."""
    _check_character(q, chi)
    fam = subrep_supports(q, p, cap=cap)
    for s in fam.proper():
        if chi.of_subset(s) >= 0:
            return False
    return True


@dataclass(frozen=True)
class StabilityReport:
    semistable: bool
    stable: bool
    violating_support: tuple[int, ...] | None
    supports_count: int

    def to_dict(self) -> dict:
        return {
            "semistable": self.semistable,
            "stable": self.stable,
            "violating_support": list(self.violating_support)
            if self.violating_support is not None
            else None,
            "supports_count": self.supports_count,
        }


def stability_report(
    q: Quiver, p: RepresentationPoint, chi: Character, cap: int = DEFAULT_ENUMERATION_CAP
) -> StabilityReport:
    _check_character(q, chi)
    fam = subrep_supports(q, p, cap=cap)
    violating = None
    semistable = True
    stable = True
    for s in fam.proper():
        v = chi.of_subset(s)
        if v > 0 and violating is None:
            violating = tuple(sorted(s))
        if v > 0:
            semistable = False
        if v >= 0:
            stable = False
    return StabilityReport(semistable, stable, violating, len(fam.supports))


# ---------------------------------------------------------------------------
# characters from weights, certificates
# ---------------------------------------------------------------------------


def character_from_weights(m: WeightMatrix) -> Character:
    """chi_l = sum_i m[i][l] - sum_j m[l][j]; the result always sums to zero."""
    n = m.n
    chi = tuple(
        sum(m.m[i][l] for i in range(n)) - sum(m.m[l][j] for j in range(n))
        for l in range(n)
    )
    return Character(chi)


@dataclass(frozen=True)
class GoodCertificate:
    """Outcome of the global-generation certificate for a weight matrix.

    ``certified`` means every positive weight sits on a globally generated
    Hom sheaf, which makes the induced character good.  An uncertified
    outcome carries the first offending (i, j) pair; it is *not* a proof
    that the character fails to be good.
    """

    certified: bool
    witness: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.certified


def certify_good(q: Quiver, m: WeightMatrix) -> GoodCertificate:
    if q.gg is None:
        raise QuiverError("good certificate needs the gg table")
    if m.n != q.n:
        raise ValueError(f"weight matrix size {m.n} != n = {q.n}")
    for i in range(1, q.n + 1):
        for j in range(1, q.n + 1):
            if m.entry(i, j) > 0 and not q.globally_generated(i, j):
                return GoodCertificate(False, (i, j))
    return GoodCertificate(True)


@dataclass(frozen=True)
class GreatCertificate:
    certified: bool
    good: GoodCertificate
    unreachable_pair: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.certified


def certify_great(q: Quiver, m: WeightMatrix) -> GreatCertificate:
    """Sufficiency certificate: the good certificate plus strong connectivity
    of the mixed move graph.

    Moves run forward along j -> i whenever Hom(E_i, E_j) is nonzero and
    generated by global sections, and backward along i -> j whenever
    m[i][j] > 0.  Certification requires every ordered node pair to be
    connected by such moves.
    """
    good = certify_good(q, m)
    if not good:
        return GreatCertificate(False, good)
    edges: dict[int, set[int]] = {v: set() for v in range(1, q.n + 1)}
    for i in range(1, q.n + 1):
        for j in range(1, q.n + 1):
            if i == j:
                continue
            if q.globally_generated(i, j) and q.has_path(j, i):
                edges[j].add(i)
            if m.entry(i, j) > 0:
                edges[i].add(j)

    def reachable(start: int) -> set[int]:
        seen = {start}
        frontier = [start]
        while frontier:
            u = frontier.pop()
            for v in edges[u]:
                if v not in seen:
                    seen.add(v)
                    frontier.append(v)
        return seen

    for u in range(1, q.n + 1):
        seen = reachable(u)
        for v in range(1, q.n + 1):
            if v not in seen:
                return GreatCertificate(False, good, (u, v))
    return GreatCertificate(True, good)


# ---------------------------------------------------------------------------
# stability cone
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StabilityCone:
    """King's inequalities in polyhedral form: vectors v with v . chi <= 0,
    together with the equality sum(chi) = 0."""

    n: int
    inequalities: tuple[tuple[int, ...], ...]
    equality: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "inequalities": [list(v) for v in self.inequalities],
            "equality": list(self.equality),
        }


def stability_cone(fam: SupportFamily) -> StabilityCone:
    """Inequalities chi_S <= 0 for the proper supports, deduplicated and sorted."""
    vectors = {
        tuple(1 if i in s else 0 for i in range(1, fam.n + 1)) for s in fam.proper()
    }
    return StabilityCone(
        n=fam.n,
        inequalities=tuple(sorted(vectors)),
        equality=(1,) * fam.n,
    )
