"""Reader for PrefLib strict-order files (.soc complete, .soi incomplete).

Both header styles are accepted: the current ``# KEY: value`` metadata
lines with ``count: a,b,c`` orders, and the legacy layout starting with the
number of alternatives, one ``id,name`` line each, a ``voters,sum,unique``
line and ``count,a,b,c`` orders.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from ..core import InputError, VoteProfile

KINDS = ("soc", "soi")

_NAME_KEY = re.compile(r"ALTERNATIVE NAME (\d+)$", re.IGNORECASE)


class PreflibError(InputError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass
class PreflibDocument:
    metadata: dict[str, str] = field(default_factory=dict)
    names: dict[int, str] = field(default_factory=dict)
    # (multiplicity, alternative ids, source line number)
    orders: list[tuple[int, tuple[int, ...], int]] = field(default_factory=list)
    # False when ids were taken from NUMBER ALTERNATIVES without name lines
    named: bool = True

    @property
    def alternatives(self) -> list[int]:
        return sorted(self.names)

    def is_complete(self) -> bool:
        n = len(self.names)
        return all(len(ids) == n for _, ids, _ in self.orders)


def _int(token: str, line: int, what: str) -> int:
    try:
        return int(token.strip())
    except ValueError:
        raise PreflibError(f"expected an integer {what}, got {token.strip()!r}", line) from None


def _parse_ids(text: str, line: int) -> tuple[int, ...]:
    if "{" in text or "}" in text:
        raise PreflibError("tied orders are not supported", line)
    return tuple(_int(tok, line, "alternative id") for tok in text.split(",") if tok.strip())


def read_preflib_document(text: str) -> PreflibDocument:
    """Split a PrefLib file into metadata, alternative names and order lines."""
    lines = [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), start=1)]
    lines = [(i, ln) for i, ln in lines if ln]
    if not lines:
        raise PreflibError("empty document")
    doc = PreflibDocument()
    if lines[0][1].startswith("#"):
        for no, ln in lines:
            if ln.startswith("#"):
                key, _, value = ln.lstrip("#").partition(":")
                key, value = key.strip(), value.strip()
                match = _NAME_KEY.match(key)
                if match:
                    doc.names[int(match.group(1))] = value
                else:
                    doc.metadata[key.upper()] = value
                continue
            count, sep, rest = ln.partition(":")
            if not sep:
                raise PreflibError("order line must look like 'count: a,b,c'", no)
            doc.orders.append((_int(count, no, "multiplicity"), _parse_ids(rest, no), no))
        if not doc.names and "NUMBER ALTERNATIVES" in doc.metadata:
            k = _int(doc.metadata["NUMBER ALTERNATIVES"], None, "alternative count")
            doc.named = False
            doc.names = {i: str(i) for i in range(1, k + 1)}
    else:
        it = iter(lines)
        no, ln = next(it)
        k = _int(ln, no, "alternative count")
        doc.metadata["NUMBER ALTERNATIVES"] = str(k)
        for _ in range(k):
            try:
                no, ln = next(it)
            except StopIteration:
                raise PreflibError("file ends inside the alternative list") from None
            ident, sep, name = ln.partition(",")
            if not sep:
                raise PreflibError("alternative line must look like 'id,name'", no)
            doc.names[_int(ident, no, "alternative id")] = name.strip()
        try:
            no, ln = next(it)
        except StopIteration:
            raise PreflibError("missing 'voters,sum,unique' line") from None
        counts = [_int(tok, no, "voter count") for tok in ln.split(",")]
        if len(counts) != 3:
            raise PreflibError("expected 'voters,sum,unique'", no)
        doc.metadata["NUMBER VOTERS"] = str(counts[0])
        doc.metadata["NUMBER UNIQUE ORDERS"] = str(counts[2])
        for no, ln in it:
            count, sep, rest = ln.partition(",")
            doc.orders.append((_int(count, no, "multiplicity"), _parse_ids(rest, no), no))
    return doc


def _validate(doc: PreflibDocument, kind: str) -> None:
    if not doc.names:
        raise PreflibError("no alternatives declared")
    if not doc.orders:
        raise PreflibError("profile has no votes")
    n = len(doc.names)
    for count, ids, no in doc.orders:
        if count <= 0:
            raise PreflibError(f"multiplicity must be positive, got {count}", no)
        if not ids:
            raise PreflibError("empty order", no)
        unknown = [a for a in ids if a not in doc.names]
        if unknown:
            raise PreflibError(f"unknown alternative id {unknown[0]}", no)
        if len(set(ids)) != len(ids):
            raise PreflibError("alternative repeated in one order", no)
        if kind == "soc" and len(ids) != n:
            raise PreflibError(f"complete order must list all {n} alternatives", no)


def document_kind(doc: PreflibDocument, kind: Optional[str] = None) -> str:
    if kind is None:
        kind = doc.metadata.get("DATA TYPE", "").lower() or None
    if kind is None:
        kind = "soc" if doc.is_complete() else "soi"
    if kind not in KINDS:
        raise PreflibError(f"unsupported data type {kind!r}; expected one of {KINDS}")
    return kind


def profile_from_document(doc: PreflibDocument, kind: Optional[str] = None) -> VoteProfile:
    """Build a profile; missing alternatives of an incomplete vote go last,
    in ascending id order."""
    kind = document_kind(doc, kind)
    _validate(doc, kind)
    ids = doc.alternatives
    index = {a: i for i, a in enumerate(ids)}
    votes = []
    for count, order, _ in doc.orders:
        listed = set(order)
        full = list(order) + [a for a in ids if a not in listed]
        votes.append((tuple(index[a] for a in full), count))
    labels = None if not doc.named else tuple(doc.names[a] for a in ids)
    try:
        return VoteProfile(len(ids), tuple(votes), labels)
    except InputError as exc:
        raise PreflibError(str(exc)) from None


def parse_preflib(text: str, kind: Optional[str] = None) -> VoteProfile:
    return profile_from_document(read_preflib_document(text), kind)


def imputed_pairs(doc: PreflibDocument) -> set[tuple[int, int]]:
    """Internal-index pairs (i < j) whose tally depends on the completion order:
    both alternatives missing from at least one incomplete vote."""
    ids = doc.alternatives
    index = {a: i for i, a in enumerate(ids)}
    out = set()
    for _, order, _ in doc.orders:
        missing = sorted(index[a] for a in ids if a not in set(order))
        out.update((a, b) for i, a in enumerate(missing) for b in missing[i + 1:])
    return out


def load_preflib(path, kind: Optional[str] = None) -> tuple[VoteProfile, PreflibDocument]:
    path = Path(path)
    if kind is None and path.suffix.lower().lstrip(".") in KINDS:
        kind = path.suffix.lower().lstrip(".")
    doc = read_preflib_document(path.read_text(encoding="utf-8"))
    return profile_from_document(doc, kind), doc
