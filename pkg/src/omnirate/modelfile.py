"""Bit-exact text format for source models.

Two document kinds, selected by the first directive line:

    type=bitpool
    user 1: a b c d f g i j
    user 2: a b c f i j
    ...

    type=table
    H 1 = 2
    H 1,2 = 5/2
    H 2 = 6.5
    ...

Rules:

* Blank lines are ignored; `#` starts a comment (whole line or trailing).
* `type=` must be the first directive; spaces around `=` are allowed.
* Bit-pool: one `user <id>: <token> <token> ...` line per user, ids must
  form 1..n contiguously (any order), tokens are opaque whitespace-free
  names, every user needs at least one token.
* Table: one `H <comma-separated ids> = <value>` line per nonempty subset,
  all 2^n - 1 subsets exactly once, ids must form 1..n contiguously across
  the file.  Values are exact rationals written as `p/q`, an integer, or a
  finite decimal such as `6.5` (parsed exactly).

Parse problems raise ModelFormatError carrying the offending line number.
Axiom violations in tables are *not* raised here; run `model.validate` on
the result.
"""

from __future__ import annotations

import sys
from fractions import Fraction

from .errors import ModelFormatError
from .model import BitPoolSource, EntropyTable, SourceModel


def parse_model(text: str) -> SourceModel:
    lines = text.splitlines()
    directive = None
    body: list[tuple[int, str]] = []
    for no, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if directive is None:
            directive = (no, line)
        else:
            body.append((no, line))
    if directive is None:
        raise ModelFormatError("empty model file")
    no, line = directive
    if "=" not in line or line.split("=", 1)[0].strip() != "type":
        raise ModelFormatError("first directive must be 'type=bitpool' or 'type=table'", no)
    kind = line.split("=", 1)[1].strip()
    if kind == "bitpool":
        return _parse_bitpool(body)
    if kind == "table":
        return _parse_table(body)
    raise ModelFormatError(f"unknown model type {kind!r}", no)


def _parse_user_id(token: str, no: int) -> int:
    try:
        user = int(token)
    except ValueError:
        raise ModelFormatError(f"bad user id {token!r}", no) from None
    if user < 1:
        raise ModelFormatError(f"user ids start at 1, got {user}", no)
    return user


def _check_contiguous(ids, no_hint):
    if not ids:
        raise ModelFormatError("model declares no users")
    expected = set(range(1, max(ids) + 1))
    missing = sorted(expected - set(ids))
    if missing:
        raise ModelFormatError(
            f"user ids must form 1..{max(ids)} contiguously; missing {missing}",
            no_hint,
        )


def _parse_bitpool(body) -> BitPoolSource:
    pools: dict[int, list[str]] = {}
    last_no = None
    for no, line in body:
        last_no = no
        if not line.startswith("user"):
            raise ModelFormatError(f"expected 'user <id>: ...', got {line!r}", no)
        head, sep, tail = line.partition(":")
        if not sep:
            raise ModelFormatError("missing ':' in user line", no)
        parts = head.split()
        if len(parts) != 2 or parts[0] != "user":
            raise ModelFormatError(f"expected 'user <id>: ...', got {line!r}", no)
        user = _parse_user_id(parts[1], no)
        if user in pools:
            raise ModelFormatError(f"duplicate line for user {user}", no)
        tokens = tail.split()
        if not tokens:
            raise ModelFormatError(f"user {user} lists no bits", no)
        pools[user] = tokens
    _check_contiguous(pools.keys(), last_no)
    return BitPoolSource([pools[u] for u in sorted(pools)])


def _parse_table(body) -> EntropyTable:
    entries: dict[frozenset[int], Fraction] = {}
    seen_users: set[int] = set()
    last_no = None
    for no, line in body:
        last_no = no
        if not line.startswith("H"):
            raise ModelFormatError(f"expected 'H <ids> = <value>', got {line!r}", no)
        rest = line[1:].strip()
        lhs, sep, rhs = rest.partition("=")
        if not sep:
            raise ModelFormatError("missing '=' in table line", no)
        ids = frozenset(
            _parse_user_id(tok.strip(), no)
            for tok in lhs.split(",") if tok.strip()
        )
        if not ids:
            raise ModelFormatError("empty subset in table line", no)
        if ids in entries:
            raise ModelFormatError(f"duplicate entry for subset {sorted(ids)}", no)
        try:
            value = Fraction(rhs.strip())
        except (ValueError, ZeroDivisionError):
            raise ModelFormatError(f"bad rational value {rhs.strip()!r}", no) from None
        entries[ids] = value
        seen_users |= ids
    _check_contiguous(seen_users, last_no)
    size = max(seen_users)
    missing = (1 << size) - 1 - len(entries)
    if missing:
        raise ModelFormatError(
            f"table covers {len(entries)} subsets but needs all "
            f"{(1 << size) - 1} nonempty subsets of 1..{size}"
        )
    return EntropyTable(size, entries)


def load_model(path: str) -> SourceModel:
    """Read a model from a file path, or from standard input when path is '-'."""
    if path == "-":
        return parse_model(sys.stdin.read())
    with open(path, "r", encoding="utf-8") as handle:
        return parse_model(handle.read())


def format_bitpool(model: BitPoolSource) -> str:
    lines = ["type=bitpool"]
    for user, pool in enumerate(model.bits_per_user, start=1):
        lines.append(f"user {user}: " + " ".join(sorted(pool)))
    return "\n".join(lines) + "\n"


def format_table(model: SourceModel) -> str:
    """Dump any model as an explicit table document (exact round-trip)."""
    lines = ["type=table"]
    n = model.size
    for mask in range(1, 1 << n):
        users = [u for u in range(1, n + 1) if mask & (1 << (u - 1))]
        lines.append(f"H {','.join(map(str, users))} = {model.entropy(users)}")
    return "\n".join(lines) + "\n"
