"""``pasme`` command-line tool.

Exit codes: 0 success, 1 usage error, 2 wrong passphrase, 3 malformed input.
"""
from __future__ import annotations

import argparse
import contextlib
import getpass
import os
import string
import struct
import sys
import tempfile
import time
import zlib

from . import audit, container, stego
from .core import SecurityConfig
from .errors import (
    AttackFailed,
    EmptyPassphrase,
    KeyRejected,
    MalformedCiphertext,
    MalformedContainer,
    MalformedStego,
    IntegrityError,
    PayloadTooLarge,
    ZeroLength,
)
from .hybrid import DEFAULT_SHEET_LEN, HybridContainer, StreamXor, open_sheet, seal_sheet
from .numtheory import RandomSource

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_KEY_REJECTED = 2
EXIT_MALFORMED = 3

TEST_MODE_ENV = "PASME_TEST_MODE"
CHUNK = 1 << 20

BANNER = (
    "pasme: toy cipher, practically breakable (see `pasme audit`). "
    "Do not use it for real secrets."
)

_PASS_ALPHABET = string.ascii_letters + string.digits


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


@contextlib.contextmanager
def _atomic_output(path: str):
    """Write to a temp file next to ``path``; rename on success, delete on failure."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".pasme-", dir=directory)
    try:
        with os.fdopen(fd, "wb") as fh:
            yield fh
        os.replace(tmp, path)
    except BaseException:
        with contextlib.suppress(FileNotFoundError):
            os.unlink(tmp)
        raise


def _rng(args) -> RandomSource:
    seed = getattr(args, "seed", None)
    if seed is None:
        return RandomSource()
    if os.environ.get(TEST_MODE_ENV) != "1":
        raise UsageError(f"--seed is only accepted with {TEST_MODE_ENV}=1")
    return RandomSource(seed)


def _config(args) -> SecurityConfig:
    if args.security_bits < 8:
        raise UsageError("--security-bits must be >= 8")
    return SecurityConfig.scaled(args.security_bits)


def _passphrase(args, rng: RandomSource | None = None, confirm: bool = False) -> bytes:
    if getattr(args, "generate_passphrase", False):
        phrase = "".join(_PASS_ALPHABET[rng.randbelow(len(_PASS_ALPHABET))] for _ in range(20))
        # the user asked for it; stderr keeps it out of redirected stdout
        _note(f"generated passphrase: {phrase}")
        return phrase.encode()
    if args.unsafe_passphrase is not None:
        return args.unsafe_passphrase.encode()
    if args.passphrase_env:
        value = os.environ.get(args.passphrase_env)
        if value is None:
            raise UsageError(f"environment variable {args.passphrase_env} is not set")
        return value.encode()
    phrase = getpass.getpass("Passphrase: ")
    if confirm and getpass.getpass("Repeat passphrase: ") != phrase:
        raise UsageError("passphrases do not match")
    return phrase.encode()


def _add_passphrase_args(p, generate: bool = False) -> None:
    group = p.add_mutually_exclusive_group()
    group.add_argument("--passphrase-env", metavar="VAR", help="read the passphrase from an environment variable")
    group.add_argument(
        "--unsafe-passphrase",
        metavar="TEXT",
        help="passphrase on the command line (visible to other local users)",
    )
    if generate:
        group.add_argument(
            "--generate-passphrase",
            action="store_true",
            help="generate a random passphrase and print it on stderr",
        )


def cmd_encrypt(args) -> int:
    _note(BANNER)
    if args.sheet_len < 1:
        raise UsageError("--sheet-len must be >= 1")
    cfg = _config(args)
    rng = _rng(args)
    phrase = _passphrase(args, rng, confirm=True)
    payload_len = os.path.getsize(args.input)
    sheet, bundle = seal_sheet(phrase, cfg, args.sheet_len, rng)
    checksum = not args.no_checksum
    with open(args.input, "rb") as src, _atomic_output(args.output) as out:
        out.write(container.encode_header(bundle, payload_len, checksum))
        xs = StreamXor(sheet)
        crc = 0
        seen = 0
        for chunk in iter(lambda: src.read(CHUNK), b""):
            crc = zlib.crc32(chunk, crc)
            seen += len(chunk)
            out.write(xs.update(chunk))
        if seen != payload_len:
            raise OSError(f"{args.input} changed size while reading")
        if checksum:
            out.write(struct.pack("<I", crc))
    print(f"encrypted {payload_len} bytes -> {args.output}")
    return EXIT_OK


def cmd_decrypt(args) -> int:
    _note(BANNER)
    phrase = _passphrase(args)
    with open(args.input, "rb") as src:
        bundle, has_checksum, ct_len = container.read_header(src)
        sheet = open_sheet(bundle, phrase)
        with _atomic_output(args.output) as out:
            xs = StreamXor(sheet)
            crc = 0
            left = ct_len
            while left:
                chunk = src.read(min(CHUNK, left))
                left -= len(chunk)
                plain = xs.update(chunk)
                crc = zlib.crc32(plain, crc)
                out.write(plain)
            if has_checksum and container.read_checksum(src) != crc:
                raise IntegrityError("plaintext checksum mismatch")
    print(f"decrypted {ct_len} bytes -> {args.output}")
    return EXIT_OK


def cmd_hide(args) -> int:
    payload_len = os.path.getsize(args.input)
    with open(args.carrier, "rb") as carrier, open(args.input, "rb") as payload, \
            _atomic_output(args.output) as out:
        stego.hide_stream(carrier, payload, out, payload_len)
    print(f"hid {payload_len} bytes in {args.output}")
    return EXIT_OK


def cmd_reveal(args) -> int:
    with open(args.input, "rb") as src, _atomic_output(args.output) as out:
        n = stego.reveal_stream(src, out)
    print(f"revealed {n} bytes -> {args.output}")
    return EXIT_OK


def cmd_inspect(args) -> int:
    with open(args.input, "rb") as fh:
        print(container.inspect(fh.read()))
    return EXIT_OK


def _emit(reports, as_json: bool) -> None:
    for r in reports:
        print(r.to_json() if as_json else str(r))


def cmd_audit(args) -> int:
    _note(BANNER)
    if args.input is None:
        if args.wordlist or args.known_plaintext:
            raise UsageError("--wordlist and --known-plaintext need --in")
        reports = audit.run_suite(args.trials, _config(args), _rng(args), args.decoys)
        _emit(reports, args.json)
        return EXIT_OK

    if not (args.wordlist or args.known_plaintext):
        raise UsageError("with --in, give --wordlist and/or --known-plaintext")
    with open(args.input, "rb") as fh:
        target = container.read_container(fh.read())
    reports = []
    if args.wordlist:
        with open(args.wordlist, "rb") as fh:
            words = [w for w in fh.read().splitlines() if w]
        reports.append(audit.dictionary_attack(target.bundle, words))
    if args.known_plaintext:
        with open(args.known_plaintext, "rb") as fh:
            prefix = fh.read()
        reports.append(_known_prefix_report(target, prefix, args.output))
    _emit(reports, args.json)
    return EXIT_OK


def _known_prefix_report(target: HybridContainer, prefix: bytes, output: str | None):
    t0 = time.perf_counter()
    try:
        payload = audit.break_hybrid(target, prefix)
    except AttackFailed:
        payload = None
    elapsed = time.perf_counter() - t0
    recovered = {}
    if payload is not None:
        recovered["payload_bytes"] = len(payload)
        if target.checksum is not None:
            recovered["checksum_matches"] = zlib.crc32(payload) == target.checksum
        if output:
            with _atomic_output(output) as out:
                out.write(payload)
            recovered["written_to"] = output
    return audit.AttackReport(
        name="known_plaintext_prefix",
        trials=1,
        successes=int(payload is not None),
        seconds_per_trial=elapsed,
        recovered=recovered,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pasme", description="PASME toy cipher: encrypt, hide and audit files.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def seeded(p):
        p.add_argument("--seed", type=int, help=argparse.SUPPRESS)

    def security(p, default=256):
        p.add_argument("--security-bits", type=int, default=default, metavar="N",
                       help=f"bit length of the large random draws (default {default})")

    p = sub.add_parser("encrypt", help="encrypt a file into a .pasme container")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.add_argument("--sheet-len", type=int, default=DEFAULT_SHEET_LEN,
                   help=f"key-sheet length in bytes (default {DEFAULT_SHEET_LEN})")
    p.add_argument("--no-checksum", action="store_true", help="omit the plaintext CRC-32")
    security(p)
    seeded(p)
    _add_passphrase_args(p, generate=True)
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt a .pasme container")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)
    _add_passphrase_args(p)
    p.set_defaults(func=cmd_decrypt)

    p = sub.add_parser("hide", help="append a payload and length trailer to a carrier file")
    p.add_argument("--carrier", required=True)
    p.add_argument("--in", dest="input", required=True, help="payload file")
    p.add_argument("--out", dest="output", required=True)
    p.set_defaults(func=cmd_hide)

    p = sub.add_parser("reveal", help="extract a payload hidden with `hide`")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.set_defaults(func=cmd_reveal)

    p = sub.add_parser("inspect", help="summarize the public values of a container")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("audit", help="run the attack suite")
    p.add_argument("--in", dest="input", help="container to attack")
    p.add_argument("--wordlist", help="candidate passphrases, one per line")
    p.add_argument("--known-plaintext", metavar="FILE", help="known prefix of the payload")
    p.add_argument("--out", dest="output", help="where to write a recovered payload")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--decoys", type=int, default=1000)
    p.add_argument("--json", action="store_true", help="one JSON record per report")
    security(p, default=64)
    seeded(p)
    p.set_defaults(func=cmd_audit)
    return parser


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        _note(f"pasme: {exc}")
        return EXIT_USAGE
    except (EmptyPassphrase, ZeroLength) as exc:
        _note(f"pasme: {exc}")
        return EXIT_USAGE
    except KeyRejected:
        _note("pasme: passphrase rejected")
        return EXIT_KEY_REJECTED
    except (MalformedContainer, MalformedStego, MalformedCiphertext, PayloadTooLarge) as exc:
        _note(f"pasme: malformed input: {exc}")
        return EXIT_MALFORMED
    except OSError as exc:
        _note(f"pasme: {exc.strerror or exc}: {exc.filename or ''}".rstrip(": "))
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
