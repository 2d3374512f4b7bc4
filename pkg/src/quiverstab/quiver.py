"""Quivers with graded, monomial-labeled arrows and admissible relations.

Conventions used throughout the package:

* Nodes are indexed ``1..n``.
* An arrow from node ``j`` to node ``i`` is the combinatorial shadow of a
  basis element of ``Hom(E_i, E_j)`` dual; composition of arrows follows
  travel order, i.e. a path lists its arrows from the path's source onward.
* Each arrow carries a non-negative integer ``weight`` (the fiber-scaling
  eigenvalue) and optionally a monomial ``label`` in named homogeneous
  coordinates.  The degree of an arrow is ``source - target + n * weight``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping


class QuiverError(ValueError):
    """Quiver data violates a structural invariant."""


# ---------------------------------------------------------------------------
# monomial labels
# ---------------------------------------------------------------------------

_TERM_RE = re.compile(r"([A-Za-z_][A-Za-z_0-9]*)(?:\^(\d+))?$")


def parse_monomial(text: str) -> dict[str, int]:
    """Parse a label like ``"x"``, ``"x*y"`` or ``"t1^2*t2"`` into an exponent map."""
    exps: dict[str, int] = {}
    if text in ("", "1"):
        return exps
    for term in text.split("*"):
        m = _TERM_RE.match(term.strip())
        if m is None:
            raise QuiverError(f"malformed monomial term {term!r}")
        var, exp = m.group(1), int(m.group(2) or "1")
        exps[var] = exps.get(var, 0) + exp
    return exps


def format_monomial(exps: Mapping[str, int]) -> str:
    if not exps:
        return "1"
    parts = []
    for var in sorted(exps):
        e = exps[var]
        parts.append(var if e == 1 else f"{var}^{e}")
    return "*".join(parts)


def monomial_key(exps: Mapping[str, int]) -> tuple:
    """Hashable canonical form of an exponent map."""
    return tuple(sorted((v, e) for v, e in exps.items() if e))


# ---------------------------------------------------------------------------
# core types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Arrow:
    id: str
    source: int
    target: int
    weight: int = 0
    label: str | None = None

    def __post_init__(self):
        if self.weight < 0:
            raise QuiverError(f"arrow {self.id}: negative weight {self.weight}")

    def label_exponents(self) -> dict[str, int]:
        if self.label is None:
            raise QuiverError(f"arrow {self.id} has no monomial label")
        return parse_monomial(self.label)


@dataclass(frozen=True)
class Path:
    """A path in a quiver: a base node plus a (possibly empty) arrow list.

    Arrows are listed in travel order, so consecutive arrows satisfy
    ``arrows[k].target == arrows[k + 1].source``.
    """

    base: int
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "arrows", tuple(self.arrows))
        if self.arrows:
            if self.arrows[0].source != self.base:
                raise QuiverError("path base does not match first arrow source")
            for a, b in zip(self.arrows, self.arrows[1:]):
                if a.target != b.source:
                    raise QuiverError(
                        f"arrows {a.id} and {b.id} do not compose head-to-tail"
                    )

    @property
    def source(self) -> int:
        return self.base

    @property
    def target(self) -> int:
        return self.arrows[-1].target if self.arrows else self.base

    def __len__(self) -> int:
        return len(self.arrows)

    @property
    def total_weight(self) -> int:
        return sum(a.weight for a in self.arrows)

    def arrow_ids(self) -> tuple[str, ...]:
        return tuple(a.id for a in self.arrows)

    def label_exponents(self) -> dict[str, int]:
        """Product of the arrow labels along the path."""
        exps: dict[str, int] = {}
        for a in self.arrows:
            for var, e in a.label_exponents().items():
                exps[var] = exps.get(var, 0) + e
        return exps

    def concat(self, other: "Path") -> "Path":
        if other.source != self.target:
            raise QuiverError("cannot concatenate: endpoints do not match")
        return Path(self.base, self.arrows + other.arrows)


@dataclass(frozen=True)
class Relation:
    """A rational linear combination of paths sharing source and target.

    Admissibility requires every path to have length at least two and at
    least one coefficient to be nonzero.
    """

    terms: tuple[tuple[Fraction, Path], ...]

    def __post_init__(self):
        terms = tuple((Fraction(c), p) for c, p in self.terms)
        object.__setattr__(self, "terms", terms)
        if not terms:
            raise QuiverError("relation has no terms")
        if all(c == 0 for c, _ in terms):
            raise QuiverError("relation has no nonzero coefficient")
        src = terms[0][1].source
        tgt = terms[0][1].target
        for _, p in terms:
            if p.source != src or p.target != tgt:
                raise QuiverError("relation paths do not share endpoints")
            if len(p) < 2:
                raise QuiverError("relation contains a path of length < 2")

    @property
    def source(self) -> int:
        return self.terms[0][1].source

    @property
    def target(self) -> int:
        return self.terms[0][1].target


@dataclass(frozen=True)
class Quiver:
    """A quiver with relations, plus the bookkeeping data the stability and
    helix operations rely on.

    ``gg[i-1][j-1]`` records whether the sheaf ``Hom(E_i, E_j)`` is generated
    by global sections; it is supplied data, not computed.  ``pic`` holds the
    Picard-lattice degree of each bundle and ``canonical`` the degree of the
    canonical bundle, when known.
    """

    n: int
    arrows: tuple[Arrow, ...]
    relations: tuple[Relation, ...] = ()
    gg: tuple[tuple[bool, ...], ...] | None = None
    pic: tuple[tuple[int, ...], ...] | None = None
    canonical: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "arrows", tuple(self.arrows))
        object.__setattr__(self, "relations", tuple(self.relations))
        if self.gg is not None:
            object.__setattr__(self, "gg", tuple(tuple(bool(x) for x in row) for row in self.gg))
        if self.pic is not None:
            object.__setattr__(self, "pic", tuple(tuple(int(x) for x in v) for v in self.pic))
        if self.canonical is not None:
            object.__setattr__(self, "canonical", tuple(int(x) for x in self.canonical))
        self._validate()

    def _validate(self):
        if self.n < 1:
            raise QuiverError("quiver needs at least one node")
        seen: set[str] = set()
        for a in self.arrows:
            if not (1 <= a.source <= self.n and 1 <= a.target <= self.n):
                raise QuiverError(f"arrow {a.id} endpoint out of range 1..{self.n}")
            if a.id in seen:
                raise QuiverError(f"duplicate arrow id {a.id}")
            seen.add(a.id)
        by_id = {a.id: a for a in self.arrows}
        for rel in self.relations:
            for _, p in rel.terms:
                for a in p.arrows:
                    if by_id.get(a.id) != a:
                        raise QuiverError(f"relation uses arrow {a.id} not in quiver")
        if self.gg is not None:
            if len(self.gg) != self.n or any(len(row) != self.n for row in self.gg):
                raise QuiverError("gg table must be n x n")
            for i in range(1, self.n + 1):
                for j in range(1, self.n + 1):
                    if i != j and self.gg[i - 1][j - 1] and not self.has_path(j, i):
                        raise QuiverError(
                            f"gg[{i}][{j}] set but Hom(E_{i},E_{j}) has no paths"
                        )
        if self.pic is not None:
            if len(self.pic) != self.n:
                raise QuiverError("pic must list one degree per node")
            ranks = {len(v) for v in self.pic}
            if len(ranks) > 1:
                raise QuiverError("pic degrees have mixed ranks")
            if self.canonical is not None and len(self.canonical) not in ranks:
                raise QuiverError("canonical degree rank mismatch")

    # -- lookups ------------------------------------------------------------

    def arrow(self, arrow_id: str) -> Arrow:
        for a in self.arrows:
            if a.id == arrow_id:
                return a
        raise QuiverError(f"no arrow with id {arrow_id!r}")

    def outgoing(self, node: int) -> list[Arrow]:
        return sorted((a for a in self.arrows if a.source == node), key=lambda a: a.id)

    def has_path(self, src: int, dst: int) -> bool:
        """True iff a path of length >= 1 from src to dst exists."""
        frontier = [a.target for a in self.arrows if a.source == src]
        seen: set[int] = set()
        while frontier:
            v = frontier.pop()
            if v == dst:
                return True
            if v in seen:
                continue
            seen.add(v)
            frontier.extend(a.target for a in self.arrows if a.source == v)
        return False

    def has_cycle(self) -> bool:
        return any(self.has_path(v, v) for v in range(1, self.n + 1))

    def globally_generated(self, i: int, j: int) -> bool:
        if self.gg is None:
            raise QuiverError("quiver has no gg table")
        return self.gg[i - 1][j - 1]

    def empty_path(self, node: int) -> Path:
        if not (1 <= node <= self.n):
            raise QuiverError(f"node {node} out of range 1..{self.n}")
        return Path(node)


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def arrow_degree(q: Quiver, a: Arrow) -> int:
    """Degree of an arrow: source - target + n * weight."""
    found = next((b for b in q.arrows if b.id == a.id), None)
    if found != a:
        raise QuiverError(f"arrow {a.id!r} does not belong to this quiver")
    return a.source - a.target + q.n * a.weight


@dataclass(frozen=True)
class GradingCertificate:
    passed: bool
    witness: Arrow | None = None

    def __bool__(self) -> bool:
        return self.passed


def grading_certificate(q: Quiver) -> GradingCertificate:
    """Check that every arrow has strictly positive degree.

    When this holds, the degree-zero part of the path algebra is spanned by
    the length-zero paths; the first offending arrow (in id order) is
    returned as a witness otherwise.
    """
    for a in sorted(q.arrows, key=lambda a: a.id):
        if arrow_degree(q, a) <= 0:
            return GradingCertificate(False, a)
    return GradingCertificate(True)


def enumerate_paths(q: Quiver, src: int, dst: int, max_len: int) -> list[Path]:
    """All paths from src to dst of length <= max_len.

    Output is ordered lexicographically by arrow-id sequence, with shorter
    prefixes first.
    """
    for node in (src, dst):
        if not (1 <= node <= q.n):
            raise QuiverError(f"node {node} out of range 1..{q.n}")
    if max_len < 0:
        raise QuiverError("max_len must be non-negative")
    out: list[Path] = []

    def walk(at: int, arrows: tuple[Arrow, ...]):
        if at == dst:
            out.append(Path(src, arrows))
        if len(arrows) == max_len:
            return
        for a in q.outgoing(at):
            walk(a.target, arrows + (a,))

    walk(src, ())
    return out


def _paths_up_to_degree(q: Quiver, src: int, max_degree: int) -> Iterator[Path]:
    """All paths out of src with total arrow degree <= max_degree.

    Requires every arrow degree to be positive, so the walk terminates even
    on cyclic quivers.
    """

    def walk(at: int, arrows: tuple[Arrow, ...], deg: int):
        if arrows:
            yield Path(src, arrows)
        for a in q.outgoing(at):
            d = deg + arrow_degree(q, a)
            if d <= max_degree:
                yield from walk(a.target, arrows + (a,), d)

    yield from walk(src, (), 0)


def derive_binomial_relations(q: Quiver, max_degree: int | None = None) -> list[Relation]:
    """Binomial relations induced by coincidences of monomial label products.

    Two paths sharing endpoints, with equal total weight and equal label
    product, compose to the same map of sheaves; each such unordered pair
    yields the relation ``path1 - path2``.  Matching is by path-algebra
    degree (equivalently, by endpoints plus total weight) rather than by raw
    length, since a labeled composite arrow can shortcut a longer path.

    ``max_degree`` bounds the search.  On acyclic quivers the default
    explores all paths; on cyclic quivers it defaults to ``n``, which covers
    one trip around the added helix arrows.
    """
    for a in q.arrows:
        if a.label is None:
            raise QuiverError(f"arrow {a.id} is missing a label")
    cert = grading_certificate(q)
    if not cert:
        raise QuiverError(
            f"relation derivation needs positive arrow degrees; {cert.witness.id} fails"
        )
    if max_degree is None:
        if q.has_cycle():
            max_degree = q.n
        else:
            max_degree = sum(arrow_degree(q, a) for a in q.arrows) or 1

    groups: dict[tuple, list[Path]] = {}
    for src in range(1, q.n + 1):
        for p in _paths_up_to_degree(q, src, max_degree):
            if len(p) < 2:
                continue
            key = (src, p.target, p.total_weight, monomial_key(p.label_exponents()))
            groups.setdefault(key, []).append(p)

    relations: list[Relation] = []
    for key in sorted(groups, key=str):
        paths = sorted(groups[key], key=Path.arrow_ids)
        for i in range(len(paths)):
            for j in range(i + 1, len(paths)):
                relations.append(
                    Relation(((Fraction(1), paths[i]), (Fraction(-1), paths[j])))
                )
    return relations


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------


def quiver_to_dict(q: Quiver) -> dict:
    return {
        "n": q.n,
        "arrows": [
            {"id": a.id, "source": a.source, "target": a.target, "r": a.weight, "label": a.label}
            for a in q.arrows
        ],
        "relations": [
            {
                "terms": [
                    {"coeff": str(c), "path": list(p.arrow_ids())}
                    for c, p in rel.terms
                ]
            }
            for rel in q.relations
        ],
        "gg": [list(row) for row in q.gg] if q.gg is not None else None,
        "pic": [list(v) for v in q.pic] if q.pic is not None else None,
        "canonical": list(q.canonical) if q.canonical is not None else None,
    }


def quiver_from_dict(data: Mapping) -> Quiver:
    try:
        arrows = tuple(
            Arrow(
                id=str(a["id"]),
                source=int(a["source"]),
                target=int(a["target"]),
                weight=int(a.get("r", 0)),
                label=a.get("label"),
            )
            for a in data["arrows"]
        )
        by_id = {a.id: a for a in arrows}
        relations = []
        for rel in data.get("relations") or ():
            terms = []
            for t in rel["terms"]:
                ids = [str(x) for x in t["path"]]
                path = Path(by_id[ids[0]].source, tuple(by_id[x] for x in ids))
                terms.append((Fraction(t["coeff"]), path))
            relations.append(Relation(tuple(terms)))
        return Quiver(
            n=int(data["n"]),
            arrows=arrows,
            relations=tuple(relations),
            gg=data.get("gg"),
            pic=data.get("pic"),
            canonical=data.get("canonical"),
        )
    except (KeyError, TypeError) as exc:
        raise QuiverError(f"malformed quiver description: {exc}") from exc


def quiver_to_json(q: Quiver) -> str:
    return json.dumps(quiver_to_dict(q), indent=2)


def quiver_from_json(text: str) -> Quiver:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise QuiverError(f"invalid JSON: {exc}") from exc
    return quiver_from_dict(data)
