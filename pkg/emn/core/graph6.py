"""graph6 codec (single-byte size form, n <= 62) on top of networkx.

networkx does the bit packing; this layer adds the byte offsets and the
size limit the CLI reports.
"""

from __future__ import annotations

from typing import Iterable, Iterator

import networkx as nx

from emn.core.graph import Graph, from_networkx, to_networkx
from emn.errors import Graph6Error, UnsupportedSizeError

HEADER = ">>graph6<<"
MAX_GRAPH6_ORDER = 62
BIAS = 63


def _validate(line: str, base: int) -> None:
    for pos, ch in enumerate(line):
        code = ord(ch)
        if not (BIAS <= code <= 126):
            raise Graph6Error(f"Byte {code} outside the graph6 range 63..126", base + pos)

    n = ord(line[0]) - BIAS
    if n > MAX_GRAPH6_ORDER:
        raise UnsupportedSizeError(
            f"graph6 long size form (n > {MAX_GRAPH6_ORDER}) is not supported"
        )

    bit_count = n * (n - 1) // 2
    expected = (bit_count + 5) // 6
    body = line[1:]
    if len(body) < expected:
        raise Graph6Error(
            f"Truncated graph6 data: expected {expected} data bytes for n={n}, got {len(body)}",
            base + len(line),
        )
    if len(body) > expected:
        raise Graph6Error("Trailing garbage after graph6 data", base + 1 + expected)
    # 最后一个字节里多出来的低位必须是 0
    spare = expected * 6 - bit_count
    if body and (ord(body[-1]) - BIAS) & ((1 << spare) - 1):
        raise Graph6Error("Non-zero padding bits", base + len(line) - 1)


def parse_graph6(text: str) -> Graph:
    line = text.strip("\r\n")
    base = 0
    if line.startswith(HEADER):
        base = len(HEADER)
        line = line[base:]
    if not line:
        raise Graph6Error("Empty graph6 string", base)
    _validate(line, base)
    return from_networkx(nx.from_graph6_bytes(line.encode("ascii")))


def write_graph6(g: Graph) -> str:
    if g.n > MAX_GRAPH6_ORDER:
        raise UnsupportedSizeError(
            f"Graphs with {g.n} vertices need the long graph6 size form (limit {MAX_GRAPH6_ORDER})"
        )
    return nx.to_graph6_bytes(to_networkx(g), header=False).decode("ascii").strip()


def read_graph6_lines(lines: Iterable[str]) -> Iterator[Graph]:
    """Parse a graph6 stream, one graph per non-blank line."""
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            graph = parse_graph6(line)
        except Graph6Error as exc:
            raise Graph6Error(f"line {lineno}: {exc.message}", exc.offset) from exc
        except UnsupportedSizeError as exc:
            raise UnsupportedSizeError(f"line {lineno}: {exc}") from exc
        yield graph
