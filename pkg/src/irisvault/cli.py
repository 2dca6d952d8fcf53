"""Command-line front end: enroll, verify, transform, analyze, synth.

Exit codes: 0 success, 1 authentication failure, 2 usage or input error.
Data goes to stdout (secrets as 32 lowercase hex digits, reports as
"key: value" lines), diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import random
import sys
from dataclasses import replace
from pathlib import Path

from . import security, templates
from .errors import IrisVaultError, UnlockError
from .password import (
    CombinedPassword,
    EyeColor,
    SoftBiometrics,
    UserPassword,
    combine_password,
    derive_blocks,
)
from .transform import quadrant_of, transform_point
from .vault import DEFAULT_MAX_COMBINATIONS, VaultParams, build_vault, open_vault

QUADRANT_NAMES = ("I", "II", "III", "IV")


def _add_password_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("password")
    group.add_argument("--height", type=int, required=True,
                       help="height in cm, 0-255")
    group.add_argument("--eye-color", required=True,
                       choices=[c.value for c in EyeColor])
    group.add_argument("--gender", required=True, choices=["M", "F"])
    group.add_argument("--password", required=True,
                       help="user password, exactly 5 printable ASCII characters")


def _password_from_args(args: argparse.Namespace) -> CombinedPassword:
    soft = SoftBiometrics(args.height, EyeColor(args.eye_color), args.gender)
    return combine_password(soft, UserPassword(args.password))


def _params_from_args(args: argparse.Namespace) -> VaultParams:
    c = args.c if args.c is not None else 10 * args.r
    return VaultParams(r=args.r, c=c, d=args.d, epsilon=args.epsilon)


def _read_template(path: str):
    return templates.parse_template(Path(path).read_text())


def cmd_enroll(args: argparse.Namespace) -> int:
    cp = _password_from_args(args)
    params = _params_from_args(args)
    points = _read_template(args.template)
    rng = random.Random(args.seed)
    if args.secret is not None:
        try:
            secret = bytes.fromhex(args.secret)
        except ValueError:
            raise IrisVaultError(f"--secret must be hex, got {args.secret!r}") from None
        if len(secret) != 16:
            raise IrisVaultError(f"--secret must be 32 hex digits, got {len(secret) * 2}")
    else:
        secret = rng.randbytes(16)
    vault = build_vault(points, secret, cp, params, rng)
    Path(args.vault).write_bytes(templates.write_vault(vault))
    print(f"vault written: {args.vault} ({params.total} points)", file=sys.stderr)
    print(secret.hex())
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    cp = _password_from_args(args)
    vault = templates.read_vault(Path(args.vault).read_bytes())
    points = _read_template(args.template)
    params = vault.params
    if args.epsilon is not None:
        params = replace(params, epsilon=args.epsilon)
    secret = open_vault(vault, points, cp, params,
                        max_combinations=args.max_combinations)
    print(secret.hex())
    return 0


def cmd_transform(args: argparse.Namespace) -> int:
    cp = _password_from_args(args)
    blocks = derive_blocks(cp)
    points = _read_template(args.template)
    print("# quadrant x y tu tv x' y'")
    for p in points:
        q = quadrant_of(p)
        block = blocks[q]
        moved = transform_point(p, block)
        print(f"{QUADRANT_NAMES[q]} {p.x} {p.y} {block.tu} {block.tv} {moved.x} {moved.y}")
    return 0


def cmd_analyze(args: argparse.Namespace) -> int:
    report = security.analyze(args.r, args.c, args.n)
    lo, hi = report.hardened_range_rounded
    print(f"genuine points (r): {report.r}")
    print(f"chaff points (c): {report.c}")
    print(f"total points (t): {report.t}")
    print(f"polynomial degree (n): {report.n}")
    print(f"total combinations: {report.total_combinations}")
    print(f"required combinations: {report.required_combinations}")
    print(f"evaluations: {report.evaluations:.4e}")
    print(f"min-entropy (bits): {report.min_entropy_bits:.4f}")
    print(f"hardened range (bits): {lo} to {hi}")
    return 0


def cmd_synth(args: argparse.Namespace) -> int:
    points = templates.synth_template(args.seed, args.count, args.min_dist)
    Path(args.out).write_text(templates.write_template(points))
    print(f"template written: {args.out} ({len(points)} points)", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="irisvault",
        description="Lock and recover secrets in a password-hardened fuzzy vault "
                    "over biometric point templates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    enroll = sub.add_parser("enroll", help="lock a secret in a new vault")
    enroll.add_argument("--template", required=True, help="enrollment template file")
    enroll.add_argument("--vault", required=True, help="output vault file")
    enroll.add_argument("--secret", help="32 hex digits; generated from --seed if omitted")
    enroll.add_argument("--seed", type=int, default=None,
                        help="seed for chaff, scramble, and secret generation")
    enroll.add_argument("--r", type=int, default=20, help="genuine point count")
    enroll.add_argument("--c", type=int, default=None,
                        help="chaff point count (default 10*r)")
    enroll.add_argument("--d", type=int, default=4, help="pruning distance in pixels")
    enroll.add_argument("--epsilon", type=int, default=0,
                        help="match tolerance stored in the vault header")
    _add_password_flags(enroll)
    enroll.set_defaults(func=cmd_enroll)

    verify = sub.add_parser("verify", help="recover the secret from a vault")
    verify.add_argument("--template", required=True, help="query template file")
    verify.add_argument("--vault", required=True, help="vault file")
    verify.add_argument("--epsilon", type=int, default=None,
                        help="override the vault's stored match tolerance")
    verify.add_argument("--max-combinations", type=int, default=DEFAULT_MAX_COMBINATIONS,
                        help="cap on candidate subsets tried before giving up")
    _add_password_flags(verify)
    verify.set_defaults(func=cmd_verify)

    transform = sub.add_parser(
        "transform", help="show the password transformation of each template point")
    transform.add_argument("--template", required=True, help="template file")
    _add_password_flags(transform)
    transform.set_defaults(func=cmd_transform)

    analyze = sub.add_parser("analyze", help="report vault min-entropy")
    analyze.add_argument("--r", type=int, default=20, help="genuine point count")
    analyze.add_argument("--c", type=int, default=200, help="chaff point count")
    analyze.add_argument("--n", type=int, default=8, help="polynomial degree")
    analyze.set_defaults(func=cmd_analyze)

    synth = sub.add_parser("synth", help="generate a synthetic template")
    synth.add_argument("--out", required=True, help="output template file")
    synth.add_argument("--seed", type=int, default=0)
    synth.add_argument("--count", type=int, default=20)
    synth.add_argument("--min-dist", type=float, default=4.0)
    synth.set_defaults(func=cmd_synth)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UnlockError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (IrisVaultError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
