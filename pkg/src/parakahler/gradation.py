"""Fundamental gradations from crossed diagrams, plus Satake-diagram data.

A nonempty subset of simple-root nodes (the crossing set) grades the algebra
by deg(alpha) = sum of the crossed coefficients of alpha.  The grading
element d is the Cartan element with alpha_i(d) = 1 on crossed nodes and 0
elsewhere.  A Satake diagram (black nodes + arrows) is consistent with a
crossing set iff no black node is crossed and arrow-linked nodes are crossed
together.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from fractions import Fraction as Q
from itertools import combinations
from pathlib import Path

from .errors import ConfigError, DomainError
from .rootsys import Root, RootSystem, SimpleType, build_root_system


@dataclass(frozen=True)
class CrossingSet:
    """Crossed simple-root nodes, 1-based."""

    crossed: frozenset[int]

    def __post_init__(self) -> None:
        if not self.crossed:
            raise DomainError(
                "crossing set is empty: the gradation would be trivial and "
                "carry no symplectic form"
            )
        if not all(isinstance(i, int) and i >= 1 for i in self.crossed):
            raise DomainError("crossing nodes must be positive integers")

    @staticmethod
    def of(*nodes: int) -> "CrossingSet":
        return CrossingSet(frozenset(nodes))

    def sorted(self) -> list[int]:
        return sorted(self.crossed)


@dataclass
class Gradation:
    """A fundamental gradation: degree map, depth, grading element.

    Immutable by convention after ``grade_from_crossing`` returns it.
    """

    rs: RootSystem
    crossing: CrossingSet
    degrees: dict[Root, int] = field(repr=False)
    depth: int = 0
    grading_element: tuple[Q, ...] = ()

    def degree(self, root: Root) -> int:
        try:
            return self.degrees[root]
        except KeyError:
            raise DomainError(f"{root} is not a root of {self.rs.type}") from None

    def ksign(self, root: Root) -> int:
        """The para-complex structure on root vectors: sign of the degree."""
        d = self.degree(root)
        return 0 if d == 0 else (1 if d > 0 else -1)

    def roots_of_degree(self, p: int) -> tuple[Root, ...]:
        return tuple(r for r in self.rs.all_roots() if self.degrees[r] == p)

    def zero_degree_positive(self) -> tuple[Root, ...]:
        """R0+: positive roots spanning the semisimple part of g_0."""
        return tuple(r for r in self.rs.positive_roots if self.degrees[r] == 0)

    def nonzero_positive(self) -> tuple[Root, ...]:
        return tuple(r for r in self.rs.positive_roots if self.degrees[r] != 0)

    def nonzero_roots(self) -> tuple[Root, ...]:
        """Roots spanning the tangent complement m, in canonical order."""
        return tuple(r for r in self.rs.all_roots() if self.degrees[r] != 0)


def grade_from_crossing(rs: RootSystem, crossing: CrossingSet) -> Gradation:
    """Grade the root system by the crossed coefficients."""
    if max(crossing.crossed) > rs.rank:
        raise DomainError(
            f"crossed node {max(crossing.crossed)} exceeds rank {rs.rank}"
        )
    crossed0 = [i - 1 for i in crossing.sorted()]
    degrees: dict[Root, int] = {}
    for root in rs.all_roots():
        degrees[root] = sum(root.coeffs[i] for i in crossed0)
    depth = max(degrees.values())
    # Grading element d with alpha_i(d) = [i crossed]; the coroot pairing
    # matrix is the Cartan matrix, so d is a column sum of its inverse,
    # which the root system already carries as the weight matrix.
    coords = [
        sum((rs.weights[j].coords[i] for i in crossed0), Q(0))
        for j in range(rs.rank)
    ]
    return Gradation(
        rs=rs,
        crossing=crossing,
        degrees=degrees,
        depth=depth,
        grading_element=tuple(coords),
    )


def orbit_dimension(g: Gradation) -> int:
    """Dimension of the adjoint orbit: the number of nonzero-degree roots."""
    return len(g.nonzero_roots())


def is_fundamental(g: Gradation) -> bool:
    """Every root of degree p >= 2 splits off a degree-1 root.

    Together with antisymmetry this says g_{+-1} generates the nilpotent
    parts, which holds for every crossing-set gradation; kept as a runtime
    check rather than an assumption.
    """
    by_degree: dict[int, set[tuple[int, ...]]] = {}
    for root, d in g.degrees.items():
        by_degree.setdefault(d, set()).add(root.coeffs)
    for root, d in g.degrees.items():
        if d < 2:
            continue
        found = any(
            (root - Root(one)).coeffs in by_degree.get(d - 1, ())
            for one in by_degree.get(1, ())
        )
        if not found:
            return False
    return True


def enumerate_crossings(rank: int) -> list[CrossingSet]:
    """All 2^rank - 1 nonempty crossing sets, in deterministic order."""
    out = []
    for size in range(1, rank + 1):
        for combo in combinations(range(1, rank + 1), size):
            out.append(CrossingSet(frozenset(combo)))
    return out


# -- Satake diagrams ----------------------------------------------------------


@dataclass(frozen=True)
class SatakeDiagram:
    """Dynkin diagram decorated with black nodes and arrows between nodes."""

    type: SimpleType
    black: frozenset[int]
    arrows: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        rank = self.type.rank
        for i in self.black:
            if not 1 <= i <= rank:
                raise DomainError(f"black node {i} out of range for {self.type}")
        for pair in self.arrows:
            i, j = pair
            if i == j or not (1 <= i <= rank and 1 <= j <= rank):
                raise DomainError(f"bad arrow {pair} for {self.type}")
            if i in self.black or j in self.black:
                raise DomainError(f"arrow {pair} touches a black node")

    @staticmethod
    def make(stype: SimpleType, black=(), arrows=()) -> "SatakeDiagram":
        normal = frozenset(tuple(sorted(p)) for p in arrows)
        return SatakeDiagram(stype, frozenset(black), normal)


def satake_violations(diagram: SatakeDiagram, crossing: CrossingSet) -> list[str]:
    """Human-readable reasons the crossing set is inconsistent, if any."""
    if max(crossing.crossed) > diagram.type.rank:
        raise DomainError(
            f"crossed node {max(crossing.crossed)} exceeds rank of {diagram.type}"
        )
    problems = []
    for i in sorted(diagram.black & crossing.crossed):
        problems.append(f"condition (i): black node {i} is crossed")
    for i, j in sorted(diagram.arrows):
        if (i in crossing.crossed) != (j in crossing.crossed):
            problems.append(
                f"condition (ii): arrow {i}-{j} links a crossed and an "
                f"uncrossed node"
            )
    return problems


def satake_consistent(diagram: SatakeDiagram, crossing: CrossingSet) -> bool:
    """True iff the crossing set defines a gradation of this real form."""
    return not satake_violations(diagram, crossing)


def _builtin_catalog() -> dict[str, SatakeDiagram]:
    cat: dict[str, SatakeDiagram] = {}

    def split(name: str, stype: SimpleType) -> None:
        cat[name] = SatakeDiagram.make(stype)

    for rank in range(1, 9):
        split(f"sl{rank + 1}R", SimpleType("A", rank))
        split(f"a{rank}split", SimpleType("A", rank))
    for rank in range(2, 5):
        split(f"b{rank}split", SimpleType("B", rank))
        split(f"c{rank}split", SimpleType("C", rank))
    for rank in range(3, 5):
        split(f"d{rank}split", SimpleType("D", rank))
    split("g2split", SimpleType("G", 2))
    split("f4split", SimpleType("F", 4))
    # su*(4) = sl(2, H): compact end nodes on the A3 diagram.
    cat["sl2H"] = SatakeDiagram.make(SimpleType("A", 3), black=(1, 3))
    cat["su*4"] = cat["sl2H"]
    return cat


_CATALOG = _builtin_catalog()

CATALOG_ENV = "PARAKAHLER_CATALOG"


def catalog_names() -> list[str]:
    return sorted(_CATALOG)


def catalog_lookup(name: str) -> SatakeDiagram:
    """Find a diagram by name, preferring files in $PARAKAHLER_CATALOG."""
    directory = os.environ.get(CATALOG_ENV)
    if directory:
        for candidate in (Path(directory) / name, Path(directory) / f"{name}.satake"):
            if candidate.is_file():
                diagram, _ = parse_diagram_config(candidate.read_text())
                return diagram
    try:
        return _CATALOG[name]
    except KeyError:
        raise DomainError(f"unknown Satake diagram {name!r}") from None


_KEY_RE = re.compile(r"^\s*([a-zA-Z_]+)\s*=\s*(.*?)\s*$")


def _parse_nodes(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(tok) for tok in re.split(r"[,\s]+", text) if tok]
    except ValueError:
        raise ConfigError(f"expected node indices, got {text!r}") from None


def parse_diagram_config(text: str) -> tuple[SatakeDiagram, CrossingSet | None]:
    """Parse line-oriented ``key = value`` diagram text.

    Keys: ``type`` (family letter), ``rank``, ``black`` (node list),
    ``arrows`` (pairs like ``1-6, 3-5``), ``crossed`` (node list; optional).
    Node indices are 1-based.
    """
    fields: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _KEY_RE.match(line)
        if not m:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key = m.group(1).lower()
        if key in fields:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        fields[key] = m.group(2)
    for required in ("type", "rank"):
        if required not in fields:
            raise ConfigError(f"missing required key {required!r}")
    try:
        rank = int(fields["rank"])
    except ValueError:
        raise ConfigError(f"rank must be an integer, got {fields['rank']!r}") from None
    stype = SimpleType(fields["type"].strip().upper(), rank)
    black = _parse_nodes(fields.get("black", ""))
    arrows = []
    arrow_text = fields.get("arrows", "").strip()
    if arrow_text:
        for chunk in re.split(r"[,\s]+", arrow_text):
            if not chunk:
                continue
            m = re.fullmatch(r"(\d+)-(\d+)", chunk)
            if not m:
                raise ConfigError(f"expected arrow like '1-6', got {chunk!r}")
            arrows.append((int(m.group(1)), int(m.group(2))))
    diagram = SatakeDiagram.make(stype, black=black, arrows=arrows)
    crossing = None
    if fields.get("crossed", "").strip():
        crossing = CrossingSet(frozenset(_parse_nodes(fields["crossed"])))
    return diagram, crossing


def load_diagram(path) -> tuple[SatakeDiagram, CrossingSet | None]:
    return parse_diagram_config(Path(path).read_text())


def gradation_for_diagram(
    diagram: SatakeDiagram, crossing: CrossingSet
) -> Gradation:
    """Grade the complexification after checking Satake consistency."""
    problems = satake_violations(diagram, crossing)
    if problems:
        raise DomainError(
            f"crossing {sorted(crossing.crossed)} is inconsistent with the "
            f"Satake diagram: " + "; ".join(problems)
        )
    return grade_from_crossing(build_root_system(diagram.type), crossing)
