"""Serialization of bitmaps, tables, and curves: PBM, CSV, SVG.

Everything here is deterministic: identical inputs give byte-identical
output (no timestamps, no environment-dependent formatting).
"""
from __future__ import annotations

from typing import Iterable, Sequence

from .fractal import Bitmap


def pbm_p1(bm: Bitmap, comments: Sequence[str] = ()) -> str:
    lines = ["P1"]
    lines += [f"# {c}" for c in comments]
    lines.append(f"{bm.width} {bm.height}")
    for row in bm.rows:
        lines.append(format(row, f"0{bm.width}b")[::-1])
    return "\n".join(lines) + "\n"


def pbm_p4(bm: Bitmap, comments: Sequence[str] = ()) -> bytes:
    header = ["P4"]
    header += [f"# {c}" for c in comments]
    header.append(f"{bm.width} {bm.height}")
    out = bytearray(("\n".join(header) + "\n").encode("ascii"))
    row_bytes = (bm.width + 7) // 8
    for row in bm.rows:
        packed = bytearray(row_bytes)
        bits = row
        col = 0
        while bits:
            if bits & 1:
                packed[col >> 3] |= 0x80 >> (col & 7)
            bits >>= 1
            col += 1
        out += packed
    return bytes(out)


def parse_pbm_popcount(data: bytes) -> int:
    """Set-pixel count of a P1 or P4 image (used by self-checks and tests)."""
    if data.startswith(b"P1"):
        tokens: list[bytes] = []
        for line in data.split(b"\n"):
            tokens += line.split(b"#", 1)[0].split()
        return b"".join(tokens[3:]).count(b"1")  # skip magic, width, height
    if not data.startswith(b"P4"):
        raise ValueError("not a PBM image")
    # header: magic, optional comments, width height, single whitespace
    pos = 2
    fields: list[int] = []
    while len(fields) < 2:
        while data[pos : pos + 1].isspace():
            pos += 1
        if data[pos : pos + 1] == b"#":
            pos = data.index(b"\n", pos) + 1
            continue
        end = pos
        while not data[end : end + 1].isspace():
            end += 1
        fields.append(int(data[pos:end]))
        pos = end
    pos += 1
    width, height = fields
    row_bytes = (width + 7) // 8
    total = 0
    for r in range(height):
        chunk = data[pos + r * row_bytes : pos + (r + 1) * row_bytes]
        total += int.from_bytes(chunk, "big").bit_count()
    return total


def csv_table(header: Sequence[str], rows: Iterable[Sequence[object]]) -> str:
    lines = [",".join(header)]
    lines += [",".join(str(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def svg_curve(
    points: Sequence[tuple[str, str]],
    background: Bitmap | None = None,
    size: int = 512,
) -> str:
    """SVG of a curve over the unit square; points are decimal strings.

    The optional background bitmap is stretched onto the same square with
    its first row at the top, runs of set pixels merged into single rects.
    """
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    if background is not None:
        cw = size / background.width
        ch = size / background.height
        parts.append('<g fill="#bbbbbb">')
        for r, row in enumerate(background.rows):
            y = f"{r * ch:.3f}"
            h = f"{ch:.3f}"
            col = 0
            while row:
                skip = (row & -row).bit_length() - 1
                col += skip
                row >>= skip
                run = (~row & -~row).bit_length() - 1  # trailing 1s
                parts.append(
                    f'<rect x="{col * cw:.3f}" y="{y}" '
                    f'width="{run * cw:.3f}" height="{h}"/>'
                )
                col += run
                row >>= run
        parts.append("</g>")
    coords = " ".join(
        f"{float(x) * size:.3f},{(1.0 - float(y)) * size:.3f}" for x, y in points
    )
    parts.append(
        f'<polyline fill="none" stroke="black" stroke-width="1" points="{coords}"/>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
