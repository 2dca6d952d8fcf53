"""Persistence for templates and vaults, plus a synthetic point generator.

Templates travel as plain text, one "x y" decimal pair per line, with
'#' comments and blank lines ignored; hand-editable and diff-friendly.
Vaults travel as a small binary frame so the encrypted point region stays
bit-exact:

    magic "IFV1" | version 0x01 | n | r (BE16) | c (BE16) | d | epsilon |
    4 reserved zero bytes | (r + c) point records of (a BE16, b BE16)

The header is plaintext; only the point records carry keystream.  The
synthetic generator stands in for an upstream feature extractor, emitting
seeded, well-separated points in the 256x256 canonical space.
"""

from __future__ import annotations

import random
import struct

from .errors import DomainError, FormatError, ParseError, PlacementFailed
from .transform import GRID_SIZE, MinutiaPoint, Template
from .vault import POLY_DEGREE, Vault, VaultParams, VaultPoint

VAULT_MAGIC = b"IFV1"
VAULT_VERSION = 1

_HEADER = struct.Struct(">4sBBHHBB4x")
_POINT = struct.Struct(">HH")

PLACEMENT_TRIES = 10_000


def parse_template(text: str) -> Template:
    """Read points in file order; malformed lines fail with their number."""
    points: Template = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'x y', got {raw!r}")
        try:
            x, y = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer coordinate in {raw!r}") from None
        if not (0 <= x < GRID_SIZE and 0 <= y < GRID_SIZE):
            raise ParseError(
                f"line {lineno}: point ({x}, {y}) outside the {GRID_SIZE}x{GRID_SIZE} space"
            )
        points.append(MinutiaPoint(x, y))
    return points


def write_template(points: Template) -> str:
    """Inverse of parse_template; empty templates serialize to "" ."""
    return "".join(f"{p.x} {p.y}\n" for p in points)


def synth_template(seed: int, count: int, min_dist: float) -> Template:
    """``count`` seeded random points, pairwise at least ``min_dist`` apart.

    Rejection-samples the grid; gives up with PlacementFailed once a single
    point burns through 10,000 rejected draws, which in practice means the
    (count, min_dist) combination does not fit.
    """
    rng = random.Random(seed)
    threshold = min_dist * min_dist
    points: Template = []
    for _ in range(count):
        for _ in range(PLACEMENT_TRIES):
            cand = MinutiaPoint(rng.randrange(GRID_SIZE), rng.randrange(GRID_SIZE))
            if all((cand.x - p.x) ** 2 + (cand.y - p.y) ** 2 >= threshold for p in points):
                points.append(cand)
                break
        else:
            raise PlacementFailed(
                f"could not place point {len(points) + 1} of {count} at spacing {min_dist}"
            )
    return points


def write_vault(vault: Vault) -> bytes:
    """Serialize a vault to the IFV1 frame."""
    p = vault.params
    head = _HEADER.pack(VAULT_MAGIC, VAULT_VERSION, p.n, p.r, p.c, p.d, p.epsilon)
    body = b"".join(_POINT.pack(pt.a, pt.b) for pt in vault.points)
    return head + body


def read_vault(data: bytes) -> Vault:
    """Parse an IFV1 frame; the point region is assumed password-encrypted."""
    if len(data) < _HEADER.size:
        raise FormatError(f"stream of {len(data)} bytes is shorter than the header")
    magic, version, n, r, c, d, epsilon = _HEADER.unpack_from(data)
    if magic != VAULT_MAGIC:
        raise FormatError(f"bad magic {magic!r}, expected {VAULT_MAGIC!r}")
    if version != VAULT_VERSION:
        raise FormatError(f"unsupported version {version}")
    if n != POLY_DEGREE:
        raise FormatError(f"unsupported polynomial degree {n}")
    try:
        params = VaultParams(r=r, c=c, n=n, d=d, epsilon=epsilon)
    except DomainError as exc:
        raise FormatError(f"invalid parameters in header: {exc}") from None
    expected = _HEADER.size + _POINT.size * params.total
    if len(data) != expected:
        raise FormatError(
            f"point region holds {len(data) - _HEADER.size} bytes, "
            f"expected {expected - _HEADER.size} for {params.total} points"
        )
    points = [VaultPoint(a, b) for a, b in _POINT.iter_unpack(data[_HEADER.size:])]
    return Vault(params, points, encrypted=True)
