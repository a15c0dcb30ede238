"""Graph representation, family generators and graph6 I/O."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "Graph",
    "FamilySpec",
    "GraphError",
    "InvalidParameters",
    "UnknownNamedGraph",
    "Graph6Error",
    "FAMILIES",
    "NAMED_GRAPH6",
    "generate",
    "parse_family_spec",
    "complement",
    "degrees",
    "parse_graph6",
    "write_graph6",
    "read_graph6_lines",
    "from_edges",
]

DEFAULT_MAX_N = 10_000


class GraphError(ValueError):
    pass


class InvalidParameters(GraphError):
    pass


class UnknownNamedGraph(GraphError):
    pass


class Graph6Error(GraphError):
    pass


class MalformedHeader(Graph6Error):
    pass


class TruncatedBitstream(Graph6Error):
    pass


class SizeOverflow(Graph6Error):
    pass


class Graph:
    """Immutable simple undirected graph backed by a dense boolean adjacency matrix.

    Parameters
    ----------
    adj : array_like of shape (n, n)
        Symmetric 0/1 matrix with zero diagonal.
    label : str, optional
        Provenance string (generator spec or corpus line).
    """

    __slots__ = ("n", "adj", "m", "label", "_rows")

    def __init__(self, adj, label: str | None = None, _trusted: bool = False):
        a = np.array(adj, dtype=bool, copy=True)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise InvalidParameters(f"adjacency must be square with n >= 1, got shape {a.shape}")
        if not _trusted:
            if a.diagonal().any():
                raise InvalidParameters("adjacency has loops on the diagonal")
            if not np.array_equal(a, a.T):
                raise InvalidParameters("adjacency is not symmetric")
        a.setflags(write=False)
        self.n = int(a.shape[0])
        self.adj = a
        self.m = int(a.sum()) // 2
        self.label = label
        self._rows = None

    def __repr__(self) -> str:
        tag = f" {self.label!r}" if self.label else ""
        return f"<Graph{tag} n={self.n} m={self.m}>"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.adj, other.adj)

    def __hash__(self) -> int:
        return hash((self.n, np.packbits(self.adj).tobytes()))

    def with_label(self, label: str | None) -> "Graph":
        return Graph(self.adj, label=label, _trusted=True)

    @property
    def rows(self) -> tuple[int, ...]:
        """Neighbourhoods as Python-int bitsets (bit j set iff j ~ i)."""
        if self._rows is None:
            weights = [1 << j for j in range(self.n)]
            rows = []
            for i in range(self.n):
                r = 0
                for j in np.flatnonzero(self.adj[i]):
                    r |= weights[j]
                rows.append(r)
            self._rows = tuple(rows)
        return self._rows

    def neighbors(self, v: int) -> np.ndarray:
        return np.flatnonzero(self.adj[v])

    def edges(self) -> Iterator[tuple[int, int]]:
        iu, ju = np.nonzero(np.triu(self.adj, 1))
        return zip(iu.tolist(), ju.tolist())

    def to_numpy(self, dtype=float) -> np.ndarray:
        return self.adj.astype(dtype)

    @property
    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2


def from_edges(n: int, edges: Iterable[tuple[int, int]], label: str | None = None) -> Graph:
    a = np.zeros((n, n), dtype=bool)
    for u, v in edges:
        if u == v:
            raise InvalidParameters(f"loop at vertex {u}")
        a[u, v] = a[v, u] = True
    return Graph(a, label=label, _trusted=True)


def degrees(g: Graph) -> list[int]:
    return g.adj.sum(axis=1).astype(int).tolist()


def complement(g: Graph) -> Graph:
    a = ~g.adj
    np.fill_diagonal(a, False)
    label = f"complement({g.label})" if g.label else None
    return Graph(a, label=label, _trusted=True)


# ---------------------------------------------------------------------------
# graph6


def _encode_n(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return bytes([126, 63 + (n >> 12 & 63), 63 + (n >> 6 & 63), 63 + (n & 63)])
    if n < 68719476736:
        return bytes([126, 126] + [63 + (n >> s & 63) for s in (30, 24, 18, 12, 6, 0)])
    raise SizeOverflow(f"n={n} exceeds graph6 limit")


def _decode_n(data: bytes) -> tuple[int, int]:
    """Return (n, number of header bytes consumed)."""
    if not data:
        raise MalformedHeader("empty graph6 string")
    if any(b < 63 or b > 126 for b in data):
        raise MalformedHeader("graph6 bytes must lie in 63..126")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise MalformedHeader("truncated 8-byte size header")
        n = 0
        for b in data[2:8]:
            n = (n << 6) | (b - 63)
        return n, 8
    if len(data) < 4:
        raise MalformedHeader("truncated 4-byte size header")
    n = 0
    for b in data[1:4]:
        n = (n << 6) | (b - 63)
    return n, 4


def parse_graph6(line: bytes | str, max_n: int = DEFAULT_MAX_N, label: str | None = None) -> Graph:
    """Decode one graph6 string.

    A leading ``>>graph6<<`` header and surrounding whitespace are stripped.
    """
    if isinstance(line, str):
        line = line.encode("ascii")
    line = line.strip()
    if line.startswith(b">>graph6<<"):
        line = line[len(b">>graph6<<"):]
    n, pos = _decode_n(line)
    if n < 1:
        raise MalformedHeader("graph6 with zero vertices is not supported")
    if n > max_n:
        raise SizeOverflow(f"n={n} exceeds configured maximum {max_n}")
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = line[pos:]
    if len(body) < nbytes:
        raise TruncatedBitstream(f"n={n} needs {nbytes} data bytes, got {len(body)}")
    if len(body) > nbytes:
        raise MalformedHeader(f"trailing data after {nbytes} data bytes")
    raw = np.frombuffer(body, dtype=np.uint8) - 63
    bits = np.unpackbits(raw[:, None], axis=1)[:, 2:].ravel()[:nbits].astype(bool)
    # column-major upper triangle: (0,1),(0,2),(1,2),(0,3),...
    i_idx, j_idx = np.triu_indices(n, 1)
    order = np.lexsort((i_idx, j_idx))
    a = np.zeros((n, n), dtype=bool)
    a[i_idx[order], j_idx[order]] = bits
    a |= a.T
    return Graph(a, label=label, _trusted=True)


def write_graph6(g: Graph) -> bytes:
    n = g.n
    i_idx, j_idx = np.triu_indices(n, 1)
    order = np.lexsort((i_idx, j_idx))
    bits = g.adj[i_idx[order], j_idx[order]].astype(np.uint8)
    pad = (-len(bits)) % 6
    bits = np.concatenate([bits, np.zeros(pad, dtype=np.uint8)]).reshape(-1, 6)
    vals = bits @ np.array([32, 16, 8, 4, 2, 1], dtype=np.uint8) + 63
    return _encode_n(n) + vals.astype(np.uint8).tobytes()


def read_graph6_lines(lines: Iterable[bytes | str], max_n: int = DEFAULT_MAX_N,
                      source: str = "") -> Iterator[Graph]:
    """Yield graphs from graph6 lines.

    Blank lines are skipped. Anything after the first whitespace on a line is
    taken as the graph's label; otherwise the label is ``source:lineno``.
    """
    for lineno, raw in enumerate(lines, start=1):
        if isinstance(raw, bytes):
            raw = raw.decode("ascii")
        raw = raw.strip()
        if not raw:
            continue
        token, _, rest = raw.partition(" ")
        if token == ">>graph6<<" and not rest:
            continue
        label = rest.strip() or f"{source}:{lineno}"
        yield parse_graph6(token, max_n=max_n, label=label)


# ---------------------------------------------------------------------------
# named graphs

# Petersen: networkx.petersen_graph(); Coxeter: 3-subsets of a 7-set that are not
# Fano-plane lines, adjacent iff disjoint; Schlafli: skew graph of the 27 lines
# on a cubic surface. Each literal is pinned by a spectrum test.
NAMED_GRAPH6 = {
    "petersen": b"IheA@GUAo",
    "coxeter": b"[????????????B?K?A_@O?o?EG?Q_?W??o?@S@?D@??W?@?COC?G_G?G_G?COC??",
    "schlafli": b"Z~~{ACbCwV_~NNVVllzjn]]}]^D\\\\LlkmyyNrrXemiizZHfxxKuyyIl}]BLw",
}


# ---------------------------------------------------------------------------
# families

FAMILIES = (
    "complete", "cycle", "wheel", "barbell", "circulant", "kneser",
    "johnson", "gcd", "foldedcube", "complement", "named",
)

_ALIASES = {
    "k": "complete", "c": "cycle", "gcdgraph": "gcd", "folded": "foldedcube",
    "folded_cube": "foldedcube", "complement-of": "complement",
}


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: tuple[int, ...] = ()
    name: str | None = None
    inner: "FamilySpec | None" = field(default=None, compare=True)

    def __str__(self) -> str:
        if self.family == "named":
            return str(self.name)
        if self.family == "complement":
            return f"complement:{self.inner}"
        if self.family in ("circulant", "gcd"):
            return f"{self.family}:{self.params[0]}:" + ",".join(map(str, self.params[1:]))
        return ":".join([self.family, *map(str, self.params)])


def parse_family_spec(text: str) -> FamilySpec:
    """Parse the ``name:arg:arg,arg`` mini-language, e.g. ``circulant:16:1,2,3,4``."""
    text = text.strip()
    head, _, rest = text.partition(":")
    fam = _ALIASES.get(head.lower(), head.lower())
    if fam == "complement":
        if not rest:
            raise InvalidParameters("complement needs an inner family spec")
        return FamilySpec("complement", inner=parse_family_spec(rest))
    if fam == "named" or (fam in NAMED_GRAPH6 and not rest):
        name = rest if fam == "named" else fam
        return FamilySpec("named", name=name.lower())
    if fam not in FAMILIES:
        raise InvalidParameters(f"unknown family {head!r}")
    try:
        params = tuple(int(x) for x in rest.replace(":", ",").split(",") if x != "")
    except ValueError as exc:
        raise InvalidParameters(f"non-integer parameter in {text!r}") from exc
    return FamilySpec(fam, params)


def _arity(spec: FamilySpec, k: int) -> None:
    if len(spec.params) != k:
        raise InvalidParameters(f"{spec.family} takes {k} parameter(s), got {len(spec.params)}")


def _circulant(n: int, offsets: Sequence[int]) -> np.ndarray:
    diff = (np.arange(n)[:, None] - np.arange(n)[None, :]) % n
    return np.isin(np.minimum(diff, n - diff), list(offsets)) & (diff != 0)


def _subset_graph(p: int, k: int, want: int) -> np.ndarray:
    subsets = list(itertools.combinations(range(p), k))
    masks = np.array([sum(1 << x for x in s) for s in subsets], dtype=np.int64)
    inter = masks[:, None] & masks[None, :]
    a = np.bitwise_count(inter) == want
    np.fill_diagonal(a, False)
    return a


def generate(spec: FamilySpec | str) -> Graph:
    """Build the graph described by ``spec`` (a FamilySpec or mini-language string)."""
    if isinstance(spec, str):
        spec = parse_family_spec(spec)
    fam, p = spec.family, spec.params
    label = str(spec)

    if fam == "named":
        lit = NAMED_GRAPH6.get((spec.name or "").lower())
        if lit is None:
            raise UnknownNamedGraph(f"no embedded graph named {spec.name!r}")
        return parse_graph6(lit, label=spec.name)
    if fam == "complement":
        if spec.inner is None:
            raise InvalidParameters("complement needs an inner family spec")
        return complement(generate(spec.inner)).with_label(label)

    if fam == "complete":
        _arity(spec, 1)
        (n,) = p
        if n < 1:
            raise InvalidParameters("complete graph needs n >= 1")
        a = ~np.eye(n, dtype=bool)
    elif fam == "cycle":
        _arity(spec, 1)
        (n,) = p
        if n < 3:
            raise InvalidParameters("cycle needs n >= 3")
        a = _circulant(n, [1])
    elif fam == "wheel":
        _arity(spec, 1)
        (q,) = p
        if q < 4:
            raise InvalidParameters("wheel needs q >= 4 vertices")
        a = np.zeros((q, q), dtype=bool)
        a[1:, 1:] = _circulant(q - 1, [1])
        a[0, 1:] = a[1:, 0] = True
    elif fam == "barbell":
        _arity(spec, 1)
        (k,) = p
        if k < 3:
            raise InvalidParameters("barbell needs k >= 3")
        a = np.zeros((2 * k, 2 * k), dtype=bool)
        a[:k, :k] = a[k:, k:] = True
        np.fill_diagonal(a, False)
        a[k - 1, k] = a[k, k - 1] = True
    elif fam == "circulant":
        if len(p) < 1:
            raise InvalidParameters("circulant needs n and a connection set")
        n, conn = p[0], p[1:]
        if n < 1 or any(not 1 <= s <= n // 2 for s in conn):
            raise InvalidParameters(f"connection set must lie in 1..{n // 2}")
        a = _circulant(n, conn)
    elif fam in ("kneser", "johnson"):
        _arity(spec, 2)
        pp, k = p
        if k < 1 or pp < 2 * k:
            raise InvalidParameters(f"{fam} needs p >= 2k and k >= 1")
        a = _subset_graph(pp, k, 0 if fam == "kneser" else k - 1)
    elif fam == "gcd":
        if len(p) < 2:
            raise InvalidParameters("gcd graph needs n and at least one divisor")
        n, divs = p[0], p[1:]
        if n < 2 or len(set(divs)) != len(divs):
            raise InvalidParameters("gcd graph needs n > 1 and distinct divisors")
        if any(d < 1 or d >= n or n % d for d in divs):
            raise InvalidParameters(f"divisors must be proper divisors of {n}")
        diff = (np.arange(n)[:, None] - np.arange(n)[None, :]) % n
        a = np.isin(np.gcd(diff, n), list(divs)) & (diff != 0)
    elif fam == "foldedcube":
        _arity(spec, 1)
        (d,) = p
        if d < 2:
            raise InvalidParameters("folded cube needs dimension >= 2")
        n = 1 << (d - 1)
        x = np.arange(n)
        xor = x[:, None] ^ x[None, :]
        a = (np.bitwise_count(xor) == 1) | (xor == n - 1)
        np.fill_diagonal(a, False)
    else:
        raise InvalidParameters(f"unknown family {fam!r}")
    return Graph(a, label=label, _trusted=True)
