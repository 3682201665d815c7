"""Proximity diagrams of Goursat words and the front-end derived vector.

The diagram for a word of length k has vertices 0..k (vertex 0 is the
unlabeled base point, vertex j carries the j-th symbol), the chain edges
(j, j+1), and, accumulated over the lifting recursion, long edges from
vertex 1 to each vertex of a changed critical block.  Each vertex carries
a multiplicity: m_k = 1 and, moving right to left, m_i is the sum of the
multiplicities of the vertices proximate to i (those joined to i from the
right).  The sequence (m_{k-1}, ..., m_1) is the multiplicity vector of
the corresponding curve germ.
"""

from __future__ import annotations

from dataclasses import dataclass

from .codeword import GoursatWord, as_goursat, lift_chain

Edge = tuple[int, int]


@dataclass(frozen=True)
class ProximityDiagram:
    word: GoursatWord
    edges: frozenset[Edge]  # pairs (i, j) with i < j, chain edges included
    mult: tuple[int, ...]  # m_0 .. m_k

    @property
    def k(self) -> int:
        return self.word.k

    def label(self, v: int) -> str:
        """Symbol at vertex v; the base vertex 0 is unlabeled."""
        return "" if v == 0 else self.word.letter(v)

    def neighbors_right(self, v: int) -> list[int]:
        return sorted(j for (i, j) in self.edges if i == v)


def _critical_block(w: GoursatWord) -> list[int]:
    # Vertices whose labels change under lifting: the V at position 3 plus
    # its maximal T-run.  Empty when symbol 3 is not V (or k < 3).
    if w.k < 3 or w.letter(3) != "V":
        return []
    block = [3]
    pos = 4
    while pos <= w.k and w.letter(pos) == "T":
        block.append(pos)
        pos += 1
    return block


def _multiplicities(edges: frozenset[Edge], k: int) -> tuple[int, ...]:
    m = [0] * (k + 1)
    m[k] = 1
    for i in range(k - 1, -1, -1):
        m[i] = sum(m[j] for (a, j) in edges if a == i)
    for i in range(k):
        assert m[i] >= m[i + 1], f"multiplicity increased at vertex {i}"
    assert m[0] == m[1], "base vertex must copy m_1"
    return tuple(m)


def build_diagram(w: GoursatWord | str) -> ProximityDiagram:
    """Build the proximity diagram by recursion on the lifted word."""
    w = as_goursat(w)
    edges: frozenset[Edge] = frozenset({(0, 1)})
    diagram = ProximityDiagram(GoursatWord("R"), edges, _multiplicities(edges, 1))
    for word in lift_chain(w)[1:]:
        shifted = {(i + 1, j + 1) for (i, j) in diagram.edges}
        shifted.add((0, 1))
        for v in _critical_block(word):
            shifted.add((1, v))
        edges = frozenset(shifted)
        diagram = ProximityDiagram(word, edges, _multiplicities(edges, word.k))
    return diagram


def multiplicity_vector(d: ProximityDiagram) -> tuple[int, ...]:
    """The multiplicity vector (m_{k-1}, ..., m_1); empty for k = 1."""
    return tuple(d.mult[i] for i in range(d.k - 1, 0, -1))


def base_multiplicity(d: ProximityDiagram) -> int:
    """m_0 of the canonical realization; equals m_1 for Goursat words."""
    return d.mult[0]


def derived_frontend(w: GoursatWord | str) -> tuple[int, ...]:
    """The derived vector computed front-end: der(w) = der(lift(w)) + (m_1,)."""
    w = as_goursat(w)
    der = [1]
    for word in lift_chain(w)[1:]:
        der.append(build_diagram(word).mult[1])
    return tuple(der)


def to_dot(d: ProximityDiagram) -> str:
    """Graphviz rendering: vertices left to right, long edges dashed."""
    lines = ["graph proximity {", "  rankdir=LR;"]
    for v in range(d.k + 1):
        lines.append(f'  v{v} [label="{v}:{d.label(v)}:{d.mult[v]}"];')
    for (i, j) in sorted(d.edges):
        if j == i + 1:
            lines.append(f"  v{i} -- v{j};")
        else:
            lines.append(f"  v{i} -- v{j} [style=dashed, constraint=false];")
    lines.append("}")
    return "\n".join(lines) + "\n"
