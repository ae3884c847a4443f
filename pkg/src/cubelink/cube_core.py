"""Combinatorial model of the d-cube.

Vertices of Q_d are d-bit integers, bit i being coordinate i.  Adjacency is
"XOR is a power of two", graph distance is the popcount of the XOR, and faces
are (fixed_mask, fixed_values) word pairs, so every operation here is O(1) or
O(d) word arithmetic.  Serialization uses binary strings with the most
significant coordinate first: in Q3 the vertex 6 reads "110", and the facet
fixing coordinate 2 to 1 reads "1**".

The module also carries the direction/association machinery: the d directions
partition the edge set into parallel classes, a direction is *associated*
with a vertex set Z when Z contains an edge of that class, and a set of at
most d vertices always leaves some direction free.  That free direction is
what the linkage construction uses to split the cube into a facet pair and
project terminals across.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

MAX_DIM = 20


def check_dim(d: int) -> int:
    """Validate a cube dimension (1 <= d <= MAX_DIM) and return it."""
    if not isinstance(d, int) or isinstance(d, bool):
        raise TypeError(f"dimension must be an int, got {d!r}")
    if not 1 <= d <= MAX_DIM:
        raise ValueError(f"dimension {d} outside supported range 1..{MAX_DIM}")
    return d


def check_vertex(d: int, v: int) -> int:
    if not isinstance(v, int) or isinstance(v, bool):
        raise TypeError(f"vertex must be an int, got {v!r}")
    if not 0 <= v < (1 << d):
        raise ValueError(f"vertex {v} outside Q_{d} (need 0 <= v < {1 << d})")
    return v


def vertices(d: int) -> range:
    """All 2^d vertices of Q_d."""
    check_dim(d)
    return range(1 << d)


def neighbors(d: int, v: int) -> list[int]:
    """The d neighbors of v, in ascending coordinate order of the flipped bit."""
    return [v ^ (1 << i) for i in range(d)]


def distance(u: int, v: int) -> int:
    """Graph distance in the cube: the Hamming weight of u XOR v."""
    return (u ^ v).bit_count()


def adjacent(u: int, v: int) -> bool:
    x = u ^ v
    return x != 0 and x & (x - 1) == 0


def opposite(d: int, v: int) -> int:
    """The unique vertex at distance d from v (bitwise complement in d bits)."""
    return v ^ ((1 << d) - 1)


def parse_vertex(d: int, s: str) -> int:
    """Parse a binary string, most significant coordinate first."""
    check_dim(d)
    if len(s) != d or any(c not in "01" for c in s):
        raise ValueError(f"vertex string {s!r} is not a {d}-bit binary word")
    return int(s, 2)


def format_vertex(d: int, v: int) -> str:
    check_vertex(d, v)
    return format(v, f"0{d}b")


# ---------------------------------------------------------------------------
# Faces


@dataclass(frozen=True)
class Face:
    """A subcube, given by the coordinates it fixes and their values.

    fixed_values must be a submask of fixed_mask; membership is the single
    word test (v & fixed_mask) == fixed_values.
    """

    fixed_mask: int
    fixed_values: int

    def __post_init__(self) -> None:
        if self.fixed_values & ~self.fixed_mask:
            raise ValueError(
                f"fixed_values {self.fixed_values:#x} sets bits outside "
                f"fixed_mask {self.fixed_mask:#x}"
            )

    def contains(self, v: int) -> bool:
        return (v & self.fixed_mask) == self.fixed_values

    def dim(self, d: int) -> int:
        """Dimension of the face inside Q_d."""
        return d - self.fixed_mask.bit_count()

    def is_facet(self) -> bool:
        return self.fixed_mask.bit_count() == 1

    def opposite_facet(self) -> Face:
        if not self.is_facet():
            raise ValueError("opposite_facet is defined for facets only")
        return Face(self.fixed_mask, self.fixed_values ^ self.fixed_mask)


def facet(coord: int, value: int) -> Face:
    """The facet fixing one coordinate to 0 or 1."""
    if value not in (0, 1):
        raise ValueError(f"facet value must be 0 or 1, got {value!r}")
    if coord < 0:
        raise ValueError(f"facet coordinate must be nonnegative, got {coord}")
    return Face(1 << coord, value << coord)


def face_vertices(d: int, face: Face) -> Iterator[int]:
    """Iterate the vertices of a face in ascending order."""
    check_dim(d)
    free = [i for i in range(d) if not face.fixed_mask >> i & 1]
    for bits in range(1 << len(free)):
        v = face.fixed_values
        for j, coord in enumerate(free):
            if bits >> j & 1:
                v |= 1 << coord
        yield v


def parse_face(s: str) -> Face:
    """Parse a {0,1,*} pattern, most significant coordinate first."""
    d = len(s)
    check_dim(d)
    mask = 0
    values = 0
    for i, c in enumerate(s):
        coord = d - 1 - i
        if c == "*":
            continue
        if c not in "01":
            raise ValueError(f"face pattern {s!r} has invalid character {c!r}")
        mask |= 1 << coord
        values |= int(c) << coord
    return Face(mask, values)


def format_face(d: int, face: Face) -> str:
    check_dim(d)
    if face.fixed_mask >> d:
        raise ValueError(f"face fixes coordinates outside Q_{d}")
    out = []
    for i in range(d - 1, -1, -1):
        if face.fixed_mask >> i & 1:
            out.append("1" if face.fixed_values >> i & 1 else "0")
        else:
            out.append("*")
    return "".join(out)


def project(v: int, target: Face) -> int:
    """Project v onto a facet: identity inside, the unique neighbor across.

    Restricted to the opposite facet this is a bijection onto the target.
    """
    if not target.is_facet():
        raise ValueError("project requires a facet target")
    return (v & ~target.fixed_mask) | target.fixed_values


# ---------------------------------------------------------------------------
# Directions and association


def associated_pairs(d: int, Z: Iterable[int]) -> set[int]:
    """Directions whose edge class meets the induced subgraph on Z.

    Returns every coordinate i such that some z in Z has z XOR 2^i in Z.
    The count is at most |Z| - 1 (the classes of a spanning forest of the
    induced subgraph).
    """
    check_dim(d)
    zset = frozenset(Z)
    if not zset:
        raise ValueError("associated_pairs requires a nonempty vertex set")
    found: set[int] = set()
    for z in zset:
        check_vertex(d, z)
        for i in range(d):
            if i not in found and z ^ (1 << i) in zset:
                found.add(i)
    return found


def free_direction(d: int, Z: Iterable[int]) -> int:
    """Smallest direction not associated with Z; exists whenever |Z| <= d."""
    zset = frozenset(Z)
    if not zset:
        check_dim(d)
        return 0
    assoc = associated_pairs(d, zset)
    for i in range(d):
        if i not in assoc:
            return i
    raise ValueError(
        f"no free direction: all {d} directions are associated with the "
        f"{len(zset)} given vertices (caller exceeded the |Z| <= d bound)"
    )


# ---------------------------------------------------------------------------
# Cube-backed graphs


@dataclass(frozen=True)
class CubeGraph:
    """Q_d with an optional removed vertex set; adjacency stays implicit."""

    d: int
    removed: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        check_dim(self.d)
        for v in self.removed:
            check_vertex(self.d, v)

    @property
    def vertex_count(self) -> int:
        return (1 << self.d) - len(self.removed)

    def vertex_list(self) -> list[int]:
        if not self.removed:
            return list(range(1 << self.d))
        return [v for v in range(1 << self.d) if v not in self.removed]

    def has_vertex(self, v: int) -> bool:
        return 0 <= v < (1 << self.d) and v not in self.removed

    def neighbors(self, v: int) -> list[int]:
        out = []
        for i in range(self.d):
            w = v ^ (1 << i)
            if w not in self.removed:
                out.append(w)
        return out

    def without(self, extra: Iterable[int]) -> CubeGraph:
        return CubeGraph(self.d, self.removed | frozenset(extra))

    def format_vertex(self, v: int) -> str:
        return format_vertex(self.d, v)

    def parse_vertex(self, s: str) -> int:
        v = parse_vertex(self.d, s)
        if v in self.removed:
            raise ValueError(f"vertex {s} is removed from this host")
        return v


def link_graph(d: int, v: int) -> CubeGraph:
    """The graph of the link of v in Q_d: Q_d minus v and its opposite."""
    check_dim(d)
    if d < 2:
        raise ValueError("link_graph requires d >= 2")
    check_vertex(d, v)
    return CubeGraph(d, frozenset({v, opposite(d, v)}))


# ---------------------------------------------------------------------------
# Coordinate deletion (facet <-> lower-dimensional cube re-indexing)


def delete_coordinate(v: int, coord: int) -> int:
    """Drop one coordinate, shifting the higher ones down."""
    high = v >> (coord + 1)
    low = v & ((1 << coord) - 1)
    return (high << coord) | low


def insert_coordinate(v: int, coord: int, value: int) -> int:
    """Inverse of delete_coordinate: splice a bit back in at position coord."""
    high = v >> coord
    low = v & ((1 << coord) - 1)
    return (high << (coord + 1)) | (value << coord) | low
