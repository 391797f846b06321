"""
Text file formats.

Sequence file::

    n=7
    1 2 3 4 5 6 7
    7 7 5 3 ...

Cover file: ``n=<n>`` then one generator label per line, line ``r`` (counting
from 0 after the header) holding the label of ``unrank_even(r, n)``.

Perms listing: one permutation per line in visit order, no header.

Long files are tokenised with numpy on the raw bytes; ``str.split`` on an
n = 11 sequence would build twenty million string objects.
"""

from __future__ import annotations

import os
import tempfile
from pathlib import Path

import numpy as np

from . import permcore as pc
from .covers import GenSequence, SuccessorCover

_SPACE = np.frombuffer(b" \t\r\n", dtype=np.uint8)


class FormatError(ValueError):
    pass


# bytes tokenised at a time; bounds the int64 temporaries on big files
PARSE_CHUNK = 1 << 22


def parse_ints(data: bytes) -> np.ndarray:
    """Non-negative decimal integers separated by whitespace."""
    if len(data) <= PARSE_CHUNK:
        return _parse_block(data, 0)
    parts = []
    lo = 0
    while lo < len(data):
        hi = min(lo + PARSE_CHUNK, len(data))
        # never split a token: extend to the next whitespace byte
        while hi < len(data) and data[hi] not in b" \t\r\n":
            hi += 1
        parts.append(_parse_block(data[lo:hi], lo))
        lo = hi
    return np.concatenate(parts)


def _parse_block(data: bytes, offset: int) -> np.ndarray:
    b = np.frombuffer(data, dtype=np.uint8)
    is_digit = (b >= ord("0")) & (b <= ord("9"))
    stray = ~is_digit & ~np.isin(b, _SPACE)
    if stray.any():
        pos = int(np.flatnonzero(stray)[0])
        raise FormatError(f"unexpected character {chr(b[pos])!r} at byte {offset + pos}")
    if not is_digit.any():
        return np.zeros(0, dtype=np.int64)
    idx = np.flatnonzero(is_digit)
    starts = np.ones(idx.size, dtype=bool)
    starts[1:] = idx[1:] != idx[:-1] + 1
    tok = np.cumsum(starts) - 1
    ends = np.zeros(tok[-1] + 1, dtype=np.int64)
    ends[tok] = idx  # last write per token wins: its final digit
    width = ends[tok] - idx
    if width.max() > 17:
        raise FormatError("integer too long")
    digits = (b[idx] - ord("0")).astype(np.int64)
    # digits of one token are contiguous in idx
    return np.add.reduceat(digits * 10**width, np.flatnonzero(starts))


def _header(line: bytes) -> int:
    text = line.decode("ascii", errors="replace").strip()
    if not text.startswith("n="):
        raise FormatError(f"expected header 'n=<n>', got {text[:40]!r}")
    try:
        n = int(text[2:])
    except ValueError:
        raise FormatError(f"bad header {text[:40]!r}") from None
    if not 1 <= n <= 15:
        raise FormatError(f"n={n} outside 1..15")
    return n


def _lines(data: bytes, count: int) -> list[bytes]:
    parts = data.split(b"\n", count - 1)
    while len(parts) < count:
        parts.append(b"")
    return parts


def perm_text(p) -> str:
    return " ".join(str(int(x)) for x in p)


def _ints_text(values: np.ndarray, sep: str = " ") -> str:
    """Join small non-negative integers without building one string per value."""
    values = np.asarray(values, dtype=np.int64)
    if values.size == 0:
        return ""
    if values.min() < 0 or values.max() > 99:
        return sep.join(map(str, values.tolist()))
    # fixed 3-byte cells: tens digit, units digit, separator; unused bytes masked out
    wide = values >= 10
    cells = np.empty((values.size, 3), dtype=np.uint8)
    cells[:, 0] = ord("0") + values // 10
    cells[:, 1] = ord("0") + values % 10
    cells[:, 2] = ord(sep)
    keep = np.ones((values.size, 3), dtype=bool)
    keep[:, 0] = wide
    keep[-1, 2] = False
    return cells[keep].tobytes().decode("ascii")


def format_sequence(seq: GenSequence) -> str:
    return f"n={seq.n}\n{perm_text(seq.start)}\n{_ints_text(seq.gens)}\n"


def parse_sequence(data: bytes | str) -> GenSequence:
    if isinstance(data, str):
        data = data.encode()
    head, start_line, rest = _lines(data, 3)
    n = _header(head)
    start = parse_ints(start_line)
    if start.size != n:
        raise FormatError(f"start line has {start.size} entries, expected {n}")
    gens = parse_ints(rest)
    try:
        return GenSequence(n, tuple(start.tolist()), gens)
    except ValueError as e:
        raise FormatError(str(e)) from None


def format_cover(c: SuccessorCover) -> str:
    return f"n={c.n}\n" + _ints_text(c.succ, "\n") + "\n"


def parse_cover(data: bytes | str) -> SuccessorCover:
    if isinstance(data, str):
        data = data.encode()
    head, rest = _lines(data, 2)
    n = _header(head)
    labels = parse_ints(rest)
    if labels.size != pc.even_count(n):
        raise FormatError(f"cover has {labels.size} labels, expected {pc.even_count(n)}")
    if labels.size and labels.max() > n:
        raise FormatError("label out of range")
    return SuccessorCover(n, labels.astype(np.uint8))


def format_perms(seq: GenSequence) -> str:
    """Visit order of ``seq``; a closed walk lists its start once."""
    codes = pc.walk_codes(seq.start, seq.gens)
    if len(seq) and codes[-1] == codes[0]:
        codes = codes[:-1]
    perms = pc.decode_many(codes, seq.n)
    return "".join(perm_text(row) + "\n" for row in perms.tolist())


def parse_perms(data: bytes | str) -> list[pc.Perm]:
    if isinstance(data, str):
        data = data.encode()
    out = []
    for line in data.splitlines():
        if line.strip():
            out.append(pc.check_perm(parse_ints(line).tolist()))
    return out


def write_atomic(path: str | os.PathLike, text: str) -> None:
    """Write via a temporary file in the same directory and rename it into place."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="ascii") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
