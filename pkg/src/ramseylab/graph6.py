"""graph6 and edge-list codecs.

graph6 stores the upper triangle of the adjacency matrix column by column
(x(0,1), x(0,2), x(1,2), x(0,3), ...) in 6-bit groups offset by 63.  Orders
up to 62 take one byte, up to 258047 take ``~`` plus three bytes, and larger
orders ``~~`` plus six bytes.
"""

from __future__ import annotations

import numpy as np

from .graph_core import Graph

__all__ = [
    "Graph6Error",
    "parse_graph6",
    "write_graph6",
    "parse_edge_list",
    "write_edge_list",
]

HEADER = ">>graph6<<"
_MAX_ORDER = (1 << 36) - 1
_PYTHON_CUTOVER = 64


class Graph6Error(ValueError):
    """Malformed graph6 input; ``offset`` is the byte position of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


def _encode_order(n: int) -> str:
    if n < 0 or n > _MAX_ORDER:
        raise ValueError(f"graph6 cannot encode order {n}")
    if n <= 62:
        return chr(63 + n)
    if n <= 258047:
        return "~" + "".join(chr(63 + ((n >> s) & 63)) for s in (12, 6, 0))
    return "~~" + "".join(chr(63 + ((n >> s) & 63)) for s in (30, 24, 18, 12, 6, 0))


def _upper_bits(g: Graph) -> np.ndarray | list[int]:
    n = g.order
    if n <= _PYTHON_CUTOVER:
        rows = g.rows
        return [(rows[j] >> i) & 1 for j in range(1, n) for i in range(j)]
    r, c = np.tril_indices(n, -1)
    return g.matrix[r, c]


def write_graph6(g: Graph, header: bool = False) -> str:
    """graph6 string for ``g`` with its own vertex labelling (no relabelling)."""
    n = g.order
    bits = _upper_bits(g)
    prefix = (HEADER if header else "") + _encode_order(n)
    if isinstance(bits, list):
        bits += [0] * (-len(bits) % 6)
        body = "".join(
            chr(63 + (bits[k] << 5 | bits[k + 1] << 4 | bits[k + 2] << 3
                      | bits[k + 3] << 2 | bits[k + 4] << 1 | bits[k + 5]))
            for k in range(0, len(bits), 6)
        )
        return prefix + body
    padded = np.zeros(len(bits) + (-len(bits) % 6), dtype=np.uint8)
    padded[: len(bits)] = bits
    values = padded.reshape(-1, 6) @ np.array([32, 16, 8, 4, 2, 1], dtype=np.uint8)
    return prefix + (values.astype(np.uint8) + 63).tobytes().decode("ascii")


def parse_graph6(s: str | bytes) -> Graph:
    if isinstance(s, bytes):
        try:
            s = s.decode("ascii")
        except UnicodeDecodeError as exc:
            raise Graph6Error("non-ASCII byte", exc.start) from None
    start = 0
    if s.startswith(HEADER):
        start = len(HEADER)
    end = len(s.rstrip("\r\n"))
    data = s[start:end]
    if not data:
        raise Graph6Error("empty graph6 string", start)
    for i, ch in enumerate(data):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"byte {ord(ch)} outside 63..126", start + i)

    def take(k: int, at: int) -> int:
        if at + k > len(data):
            raise Graph6Error("truncated order field", start + len(data))
        v = 0
        for ch in data[at:at + k]:
            v = (v << 6) | (ord(ch) - 63)
        return v

    if data[0] != "~":
        n, pos = ord(data[0]) - 63, 1
    elif len(data) > 1 and data[1] == "~":
        n, pos = take(6, 2), 8
    else:
        n, pos = take(3, 1), 4
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[pos:]
    if len(body) < nbytes:
        raise Graph6Error(f"expected {nbytes} adjacency bytes, found {len(body)}",
                          start + len(data))
    if len(body) > nbytes:
        raise Graph6Error("trailing data after adjacency bytes", start + pos + nbytes)
    if nbytes and nbits % 6:
        pad = 6 - nbits % 6
        if (ord(body[-1]) - 63) & ((1 << pad) - 1):
            raise Graph6Error("non-zero padding bits", start + pos + nbytes - 1)

    if n <= _PYTHON_CUTOVER:
        rows = [0] * n
        k = 0
        j, i = 1, 0
        for ch in body:
            v = ord(ch) - 63
            for shift in range(5, -1, -1):
                if k >= nbits:
                    break
                if (v >> shift) & 1:
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
                k += 1
                i += 1
                if i == j:
                    j, i = j + 1, 0
        return Graph(n, rows, check=False)
    raw = np.frombuffer(body.encode("ascii"), dtype=np.uint8) - 63
    bits = np.unpackbits(raw[:, None], axis=1)[:, 2:].ravel()[:nbits].astype(bool)
    m = np.zeros((n, n), dtype=bool)
    r, c = np.tril_indices(n, -1)
    m[r, c] = bits
    m |= m.T
    return Graph.from_matrix(m, check=False)


def parse_edge_list(text: str) -> Graph:
    """``N`` on the first line, then one 0-indexed ``u v`` pair per line."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("edge list is empty; expected an order header")
    try:
        n = int(lines[0])
    except ValueError:
        raise ValueError(f"bad order header {lines[0]!r}") from None
    edges = []
    for lineno, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'u v', got {ln!r}")
        u, v = int(parts[0]), int(parts[1])
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def write_edge_list(g: Graph) -> str:
    out = [str(g.order)]
    out.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(out) + "\n"
