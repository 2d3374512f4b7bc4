"""Spiral extension of chain quivers, canonical characters, and Picard-degree
bookkeeping for the line-bundle data attached to a catalog entry."""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from .quiver import (
    Arrow,
    Quiver,
    QuiverError,
    derive_binomial_relations,
)
from .stability import Character, WeightMatrix, character_from_weights

PicVector = tuple[int, ...]


class NotCollinearError(ValueError):
    """Vectors required to span a single line are not proportional."""


def is_chain(q: Quiver) -> bool:
    """True iff all arrows run from node i+1 to node i with weight zero."""
    return all(a.weight == 0 and a.source == a.target + 1 for a in q.arrows)


def extend_spiral(
    q: Quiver,
    added_dim: int,
    labels: Sequence[str] | None = None,
    rederive_relations: bool | None = None,
) -> Quiver:
    """Extend a chain quiver by added_dim weight-1 arrows from node 1 to node n.

    The new arrows all have path-algebra degree 1 - n + n = 1, so the grading
    certificate survives the extension.  When labels are supplied (or every
    old arrow already carries one and labels are given for the new arrows),
    the binomial relations are re-derived for the extended quiver.
    """
    if not is_chain(q):
        raise QuiverError("spiral extension needs a chain quiver")
    if added_dim < 1:
        raise QuiverError("added_dim must be at least 1")
    if labels is not None and len(labels) != added_dim:
        raise QuiverError(f"expected {added_dim} labels, got {len(labels)}")
    added = tuple(
        Arrow(
            id=f"h{k + 1}",
            source=1,
            target=q.n,
            weight=1,
            label=labels[k] if labels is not None else None,
        )
        for k in range(added_dim)
    )
    extended = Quiver(
        n=q.n,
        arrows=q.arrows + added,
        relations=q.relations,
        gg=None,  # gg describes the base collection; not carried to the total space
        pic=q.pic,
        canonical=q.canonical,
    )
    if rederive_relations is None:
        rederive_relations = all(a.label is not None for a in extended.arrows)
    if rederive_relations:
        extended = replace(
            extended, relations=tuple(derive_binomial_relations(extended))
        )
    return extended


def theorem43_character(m: WeightMatrix) -> Character:
    """The canonical-polarization character: chi_m plus (-1, 0, ..., 0, 1)."""
    base = character_from_weights(m)
    shift = (-1,) + (0,) * (m.n - 2) + (1,)
    return Character(tuple(c + s for c, s in zip(base.chi, shift)))


def e_chi_degree(chi: Character, pic: Sequence[PicVector]) -> PicVector:
    """Picard degree of the character line bundle: sum of chi_i * pic(E_i)."""
    if len(pic) != chi.n:
        raise ValueError(f"{len(pic)} Picard degrees for an n = {chi.n} character")
    ranks = {len(v) for v in pic}
    if len(ranks) != 1:
        raise ValueError("Picard degrees have mixed ranks")
    rank = ranks.pop()
    out = [0] * rank
    for c, v in zip(chi.chi, pic):
        for k in range(rank):
            out[k] += c * v[k]
    return tuple(out)


@dataclass(frozen=True)
class DegreeCheck:
    """Degree-level consistency of a weight matrix with the spiral line bundle.

    This checks only the Picard-degree shadow of the required sheaf
    isomorphism (necessary, not sufficient); reports should label it as a
    degree-level check.
    """

    consistent: bool
    left: PicVector
    right: PicVector

    def __bool__(self) -> bool:
        return self.consistent


def check_prop41_degrees(q: Quiver, m: WeightMatrix) -> DegreeCheck:
    """Check sum_ij m[i][j] * (pic(E_j) - pic(E_i)) == pic(E_1) - pic(E_n) - canonical."""
    if q.pic is None or q.canonical is None:
        raise QuiverError("degree check needs pic and canonical data")
    if m.n != q.n:
        raise ValueError(f"weight matrix size {m.n} != n = {q.n}")
    rank = len(q.canonical)
    left = [0] * rank
    for i in range(1, q.n + 1):
        for j in range(1, q.n + 1):
            w = m.entry(i, j)
            if w:
                for k in range(rank):
                    left[k] += w * (q.pic[j - 1][k] - q.pic[i - 1][k])
    right = tuple(
        q.pic[0][k] - q.pic[q.n - 1][k] - q.canonical[k] for k in range(rank)
    )
    return DegreeCheck(tuple(left) == right, tuple(left), right)


@dataclass(frozen=True)
class LineWitness:
    """A common line for a batch of vectors, or 'ambiguous' over the origin."""

    ambiguous: bool
    line: tuple[Fraction, ...] | None = None


def common_line(vectors: Sequence[Sequence]) -> LineWitness:
    """The common line spanned by pairwise-proportional vectors.

    All-zero input is ambiguous (the blow-up fiber over the origin);
    non-proportional nonzero vectors raise NotCollinearError.  The returned
    line is scaled so its first nonzero entry is 1.
    """
    vecs = [tuple(Fraction(x) for x in v) for v in vectors]
    if not vecs:
        raise ValueError("need at least one vector")
    dims = {len(v) for v in vecs}
    if len(dims) != 1:
        raise ValueError("vectors of mixed dimensions")
    pivot = next((v for v in vecs if any(x != 0 for x in v)), None)
    if pivot is None:
        return LineWitness(ambiguous=True)
    for v in vecs:
        # proportionality: all 2x2 minors with the pivot vanish
        for a, b in zip(pivot, v):
            for c, d in zip(pivot, v):
                if a * d != b * c:
                    raise NotCollinearError(f"vectors {pivot} and {v} are not collinear")
    lead = next(x for x in pivot if x != 0)
    return LineWitness(ambiguous=False, line=tuple(x / lead for x in pivot))
