"""Fuzzy vault core: lock a 128-bit secret under a point template.

Encoding masks the secret with the combined password, appends a 16-bit CRC,
splits the 144-bit payload into nine GF(2^16) coefficients of a degree-8
polynomial, evaluates it at the template's lock units, buries the genuine
points among uniformly random chaff, scrambles the list, and xors a
password-keyed keystream over the point words.

Decoding reverses the path: decrypt, transform the query with the same
password, match its lock units against the vault, and try 9-point subsets
of the candidates (lexicographic over ascending abscissas) until one
interpolates to a payload whose CRC checks out.  The CRC is the sole
acceptance test, as in the underlying scheme; each failing subset has a
2^-16 residual chance of a false accept, which callers must treat as an
accepted design property rather than a bug.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    AuthenticationFailed,
    DomainError,
    DuplicateAbscissaError,
    InsufficientCandidates,
    InsufficientPointsError,
    SearchExhausted,
    SpaceExhaustedError,
    WrongArityError,
)
from .fields import (
    GF_ORDER,
    SECRET_BYTES,
    PAYLOAD_BYTES,
    check_crc,
    append_crc,
    gf_inv,
    gf_mul,
)
from .password import CombinedPassword, derive_blocks, mask_secret, seed_from_password
from .transform import MinutiaPoint, Template, prune_close, transform_template

POLY_DEGREE = 8
N_COEFFS = POLY_DEGREE + 1

DEFAULT_GENUINE = 20
DEFAULT_CHAFF_FACTOR = 10
DEFAULT_PRUNE_DIST = 4
DEFAULT_MAX_COMBINATIONS = 2_000_000


@dataclass(frozen=True)
class VaultParams:
    """Vault shape: genuine count r, chaff count c, degree n, pruning
    distance d, and the match tolerance epsilon (0 = exact lock units)."""

    r: int = DEFAULT_GENUINE
    c: int = DEFAULT_GENUINE * DEFAULT_CHAFF_FACTOR
    n: int = POLY_DEGREE
    d: int = DEFAULT_PRUNE_DIST
    epsilon: int = 0

    def __post_init__(self) -> None:
        if self.n != POLY_DEGREE:
            raise DomainError(f"polynomial degree is fixed at {POLY_DEGREE}, got {self.n}")
        if not self.n + 1 <= self.r <= 0xFFFF:
            raise DomainError(f"genuine count r={self.r} must be in [{self.n + 1}, 65535]")
        if not 0 <= self.c <= 0xFFFF:
            raise DomainError(f"chaff count c={self.c} must be in [0, 65535]")
        if not 0 <= self.d <= 0xFF:
            raise DomainError(f"pruning distance d={self.d} must be in [0, 255]")
        if not 0 <= self.epsilon <= 0xFF:
            raise DomainError(f"epsilon={self.epsilon} must be in [0, 255]")

    @property
    def total(self) -> int:
        return self.r + self.c


@dataclass(frozen=True)
class SecretPolynomial:
    """Nine coefficients, highest degree first (C8 .. C0)."""

    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coefficients) != N_COEFFS:
            raise WrongArityError(
                f"expected {N_COEFFS} coefficients, got {len(self.coefficients)}"
            )
        for c in self.coefficients:
            if not 0 <= c < GF_ORDER:
                raise DomainError(f"coefficient {c} outside GF(2^16)")


class VaultPoint(NamedTuple):
    """A vault element: abscissa and ordinate in GF(2^16)."""

    a: int
    b: int


@dataclass
class Vault:
    """Point list plus its parameters.  While ``encrypted`` is set the
    points hold keystream-xored words and carry no structure."""

    params: VaultParams
    points: list[VaultPoint]
    encrypted: bool = False


def lock_units(points: Sequence[MinutiaPoint], r: int) -> list[int]:
    """First ``r`` of the sorted, deduplicated 16-bit units (x << 8) | y."""
    units = sorted({(p.x << 8) | p.y for p in points})
    if len(units) < r:
        raise InsufficientPointsError(
            f"insufficient points: template yields {len(units)} distinct lock units, need {r}"
        )
    return units[:r]


def encode_secret(payload: bytes) -> SecretPolynomial:
    """Split an 18-byte payload into nine big-endian 16-bit coefficients.

    The first segment becomes the degree-8 coefficient.
    """
    if len(payload) != PAYLOAD_BYTES:
        raise WrongArityError(f"payload must be {PAYLOAD_BYTES} bytes, got {len(payload)}")
    coeffs = tuple(
        (payload[2 * k] << 8) | payload[2 * k + 1] for k in range(N_COEFFS)
    )
    return SecretPolynomial(coeffs)


def decode_secret(poly: SecretPolynomial) -> bytes:
    """Inverse of :func:`encode_secret`."""
    return _coeffs_to_payload(poly.coefficients)


def _coeffs_to_payload(coeffs: Sequence[int]) -> bytes:
    out = bytearray()
    for c in coeffs:
        out.append(c >> 8)
        out.append(c & 0xFF)
    return bytes(out)


def eval_poly(poly: SecretPolynomial, u: int) -> int:
    """Evaluate the polynomial at ``u`` by Horner's rule."""
    acc = 0
    for c in poly.coefficients:
        acc = gf_mul(acc, u) ^ c
    return acc


def lagrange_interpolate(points: Sequence[tuple[int, int]]) -> SecretPolynomial:
    """The unique degree-at-most-8 polynomial through nine points.

    Abscissas must be pairwise distinct; anything other than exactly nine
    points is rejected because a degree-8 reconstruction needs no fewer
    and the vault never supplies more per attempt.
    """
    if len(points) != N_COEFFS:
        raise WrongArityError(f"need exactly {N_COEFFS} points, got {len(points)}")
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    if len(set(xs)) != N_COEFFS:
        raise DuplicateAbscissaError("interpolation abscissas must be pairwise distinct")
    return SecretPolynomial(tuple(_interpolate_coeffs(xs, ys)))


def _interpolate_coeffs(xs: list[int], ys: list[int]) -> list[int]:
    """Monomial coefficients (degree descending) through (xs, ys).

    Newton's divided differences, then expansion of the nested form; in
    characteristic 2 every subtraction is xor.  Assumes distinct xs.
    """
    n = len(xs)
    dd = list(ys)
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            dd[i] = gf_mul(dd[i] ^ dd[i - 1], gf_inv(xs[i] ^ xs[i - level]))
    # coeffs ascending while we expand ((dd[n-1])(x - x[n-2]) + dd[n-2])...
    coeffs = [0] * n
    coeffs[0] = dd[n - 1]
    degree = 0
    for i in range(n - 2, -1, -1):
        root = xs[i]
        degree += 1
        for k in range(degree, 0, -1):
            coeffs[k] = coeffs[k - 1] ^ gf_mul(coeffs[k], root)
        coeffs[0] = gf_mul(coeffs[0], root) ^ dd[i]
    coeffs.reverse()
    return coeffs


def generate_chaff(genuine_us: set[int], poly: SecretPolynomial, count: int,
                   rng: random.Random) -> list[VaultPoint]:
    """Uniform decoy points that avoid genuine abscissas and the polynomial.

    Abscissas are drawn from the full 16-bit space with rejection on
    collision; ordinates are redrawn until they miss the polynomial, so a
    chaff point can never masquerade as genuine.
    """
    if count + len(genuine_us) > GF_ORDER:
        raise SpaceExhaustedError(
            f"{count} chaff + {len(genuine_us)} genuine exceed {GF_ORDER} abscissas"
        )
    used = set(genuine_us)
    chaff: list[VaultPoint] = []
    while len(chaff) < count:
        a = rng.randrange(GF_ORDER)
        if a in used:
            continue
        used.add(a)
        on_curve = eval_poly(poly, a)
        b = rng.randrange(GF_ORDER)
        while b == on_curve:
            b = rng.randrange(GF_ORDER)
        chaff.append(VaultPoint(a, b))
    return chaff


def _keystream_words(seed: int, count: int) -> Iterable[int]:
    """xorshift*-style 64-bit keystream, emitted as 16-bit big-endian words.

    Reproducibility-grade whitening keyed by the password, not a vetted
    cipher; the state must be nonzero, which seed_from_password guarantees.
    """
    mask = (1 << 64) - 1
    s = seed & mask
    emitted = 0
    while emitted < count:
        s ^= s >> 12
        s ^= (s << 25) & mask
        s ^= s >> 27
        out = (s * 0x2545F4914F6CDD1D) & mask
        for shift in (48, 32, 16, 0):
            if emitted == count:
                break
            yield (out >> shift) & 0xFFFF
            emitted += 1


def _cipher_points(points: Sequence[VaultPoint], seed: int) -> list[VaultPoint]:
    # One 64-bit block covers two 4-byte records; xor is its own inverse.
    words = _keystream_words(seed, 2 * len(points))
    return [VaultPoint(p.a ^ next(words), p.b ^ next(words)) for p in points]


def encrypt_vault(vault: Vault, cp: CombinedPassword) -> Vault:
    if vault.encrypted:
        raise ValueError("vault is already encrypted")
    points = _cipher_points(vault.points, seed_from_password(cp))
    return Vault(vault.params, points, encrypted=True)


def decrypt_vault(vault: Vault, cp: CombinedPassword) -> Vault:
    if not vault.encrypted:
        raise ValueError("vault is already decrypted")
    points = _cipher_points(vault.points, seed_from_password(cp))
    return Vault(vault.params, points, encrypted=False)


def build_vault(template: Template, secret: bytes, cp: CombinedPassword,
                params: VaultParams | None = None,
                rng: random.Random | None = None) -> Vault:
    """Lock ``secret`` (16 bytes) under the template and password.

    The template is password-transformed and pruned before its first r
    lock units are taken, so enrollment and query sides always agree on
    the unit derivation.  ``rng`` drives chaff placement and the final
    scramble; the same template, secret, password, params, and rng seed
    reproduce a byte-identical vault.
    """
    if params is None:
        params = VaultParams()
    if rng is None:
        rng = random.Random()
    blocks = derive_blocks(cp)
    ready = prune_close(transform_template(template, blocks), params.d)
    units = lock_units(ready, params.r)
    payload = append_crc(mask_secret(secret, cp))
    poly = encode_secret(payload)
    points = [VaultPoint(u, eval_poly(poly, u)) for u in units]
    points += generate_chaff(set(units), poly, params.c, rng)
    rng.shuffle(points)
    clear = Vault(params, points, encrypted=False)
    return encrypt_vault(clear, cp)


def match_candidates(vault: Vault, query_units: Sequence[int],
                     epsilon: float) -> list[VaultPoint]:
    """Vault points whose decoded (x, y) lie within ``epsilon`` of a query
    unit's decoded point, sorted by ascending abscissa.

    epsilon 0 degenerates to exact unit equality.
    """
    if vault.encrypted:
        raise ValueError("vault must be decrypted before matching")
    if epsilon == 0:
        wanted = set(query_units)
        hits = [p for p in vault.points if p.a in wanted]
    else:
        eps_sq = epsilon * epsilon
        decoded = [(u >> 8, u & 0xFF) for u in query_units]
        hits = []
        for p in vault.points:
            x, y = p.a >> 8, p.a & 0xFF
            if any((x - qx) ** 2 + (y - qy) ** 2 <= eps_sq for qx, qy in decoded):
                hits.append(p)
    hits.sort(key=lambda p: p.a)
    return hits


def open_vault(vault: Vault, query: Template, cp: CombinedPassword,
               params: VaultParams | None = None,
               max_combinations: int = DEFAULT_MAX_COMBINATIONS) -> bytes:
    """Recover the 16-byte secret from a query template and password.

    ``params`` defaults to the vault's own; passing an override lets a
    caller widen epsilon without touching the stored header.  Candidate
    subsets are tried in lexicographic order over ascending abscissas and
    the first CRC-valid payload wins, so the search is deterministic.

    Raises InsufficientCandidates when fewer than nine vault points match,
    SearchExhausted when the combination cap is hit, and
    AuthenticationFailed when every subset fails the checksum.
    """
    if params is None:
        params = vault.params
    clear = decrypt_vault(vault, cp) if vault.encrypted else vault
    blocks = derive_blocks(cp)
    ready = prune_close(transform_template(query, blocks), params.d)
    # A degraded query may offer fewer than r distinct units; matching with
    # what it has keeps the failure on the authentication path instead of
    # turning it into an input error.
    units = sorted({(p.x << 8) | p.y for p in ready})[: params.r]
    candidates = match_candidates(clear, units, params.epsilon)
    if len(candidates) < N_COEFFS:
        raise InsufficientCandidates(
            f"{len(candidates)} candidate points, need at least {N_COEFFS}"
        )
    for index, combo in enumerate(itertools.combinations(candidates, N_COEFFS)):
        if index >= max_combinations:
            raise SearchExhausted(f"gave up after {max_combinations} subsets")
        xs = [p.a for p in combo]
        ys = [p.b for p in combo]
        payload = _coeffs_to_payload(_interpolate_coeffs(xs, ys))
        if check_crc(payload):
            return mask_secret(payload[:SECRET_BYTES], cp)
    raise AuthenticationFailed("no candidate subset produced a valid checksum")
