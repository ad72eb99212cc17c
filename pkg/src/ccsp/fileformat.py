"""The ``ccprofile v1`` text format.

::

    ccprofile v1 misrep|approval
    n <N> m <M> [k <K>] [bound <R>]
    axis <candidate ids>          # optional; identity (over kept candidates) if absent
    deleted <candidate ids>       # optional deletion set
    row <M numbers>               # misrep: one line per voter, entry c is r(v, c)
    approve <candidate ids>       # approval: one line per voter, may be empty
    weights cc|pav|av|sqpav       # approval only; or ``weights custom`` followed
    wlist <rationals>             #   by one ``wlist`` line per voter

``#`` starts a comment.  Misrep rows are all integers or all decimals; a file
mixing the two is rejected.  Named weight rules expand to sequences of length
``M``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    RULES,
    ApprovalProfile,
    Axis,
    MisrepProfile,
    ProfileError,
    ThieleWeights,
    restrict_after_deletion,
    rule_sequence,
    verify_candidate_intervals,
    verify_sp_axis,
)

MAGIC = "ccprofile"
VERSION = "v1"
KINDS = ("misrep", "approval")

_INT = re.compile(r"[+-]?\d+\Z")
_RATIONAL = re.compile(r"[+-]?\d+/\d+\Z")


class ProfileFileError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line, self.column, self.message = line, column, message
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class ProfileSyntaxError(ProfileFileError):
    """The text does not follow the grammar."""


class ProfileValidationError(ProfileFileError):
    """Well-formed text describing an invalid instance."""


@dataclass(frozen=True)
class ProfileFile:
    kind: str
    profile: MisrepProfile | ApprovalProfile
    axis: Axis | None = None
    deleted: tuple[int, ...] = ()
    k: int | None = None
    bound: object = None
    weights: ThieleWeights | None = None
    weights_rule: str | None = None  # a rule name, "custom", or None

    @property
    def kept(self) -> tuple[int, ...]:
        gone = set(self.deleted)
        return tuple(c for c in range(1, self.profile.m + 1) if c not in gone)

    def effective_axis(self) -> Axis:
        """The axis over the kept candidates, in original ids."""
        return self.axis if self.axis is not None else Axis(self.kept)

    def misrep(self) -> MisrepProfile:
        return self.profile if self.kind == "misrep" else self.profile.misrep()

    def check_structure(self) -> object:
        """Run the single-peaked / interval check on the kept candidates."""
        keep = self.kept
        local = self.effective_axis().relabel(keep)
        if self.kind == "approval":
            return verify_candidate_intervals(self.profile.restrict(keep), local)
        sub = restrict_after_deletion(self.profile, self.deleted)[0]
        return verify_sp_axis(sub, local)


def _tokens(line: str):
    body = line.split("#", 1)[0]
    return [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", body)]


def _int(tok, lineno, what, lo=None):
    text, col = tok
    if not _INT.match(text):
        raise ProfileSyntaxError(f"{what} must be an integer, got {text!r}", lineno, col)
    val = int(text)
    if lo is not None and val < lo:
        raise ProfileSyntaxError(f"{what} must be at least {lo}, got {val}", lineno, col)
    return val


def _number(tok, lineno):
    text, col = tok
    if _INT.match(text):
        return int(text)
    try:
        return float(text)
    except ValueError:
        raise ProfileSyntaxError(f"expected a number, got {text!r}", lineno, col) from None


def _rational(tok, lineno):
    text, col = tok
    if _INT.match(text) or _RATIONAL.match(text):
        try:
            return Fraction(text)
        except ZeroDivisionError:
            pass
    raise ProfileSyntaxError(f"expected an exact rational like 1/2, got {text!r}", lineno, col)


def _bound(tok, lineno):
    text, col = tok
    if _RATIONAL.match(text):
        return _rational(tok, lineno)
    return _number(tok, lineno)


def _ids(toks, lineno, m):
    ids = [_int(t, lineno, "candidate id", 1) for t in toks]
    for (text, col), c in zip(toks, ids):
        if c > m:
            raise ProfileSyntaxError(f"candidate {c} exceeds m={m}", lineno, col)
    return ids


def parse_profile_file(text: str, *, validate: bool = True) -> ProfileFile:
    """Parse ``text``; with ``validate`` also run the structure check eagerly."""
    lines = [(no, _tokens(raw)) for no, raw in enumerate(text.splitlines(), start=1)]
    lines = [(no, toks) for no, toks in lines if toks]
    if not lines:
        raise ProfileSyntaxError("empty file", 1, 1)
    it = iter(lines)

    no, toks = next(it)
    words = [t for t, _ in toks]
    if len(words) != 3 or words[0] != MAGIC or words[1] != VERSION or words[2] not in KINDS:
        raise ProfileSyntaxError(f"expected '{MAGIC} {VERSION} misrep|approval'", no, 1)
    kind = words[2]

    try:
        no, toks = next(it)
    except StopIteration:
        raise ProfileSyntaxError("missing 'n <N> m <M>' line", no + 1, 1) from None
    header = {}
    if len(toks) % 2:
        raise ProfileSyntaxError("header needs key/value pairs", no, toks[-1][1])
    for (key, col), val in zip(toks[::2], toks[1::2]):
        if key not in ("n", "m", "k", "bound") or key in header:
            raise ProfileSyntaxError(f"unexpected header key {key!r}", no, col)
        header[key] = val
    for key in ("n", "m"):
        if key not in header:
            raise ProfileSyntaxError(f"header lacks {key!r}", no, 1)
    n = _int(header["n"], no, "n", 0)
    m = _int(header["m"], no, "m", 1)
    k = _int(header["k"], no, "k", 1) if "k" in header else None
    bound = _bound(header["bound"], no) if "bound" in header else None
    header_line = no

    axis_ids = deleted = None
    rows, ballots = [], []
    rule = None
    wlists = []
    first_voter_line = None
    for no, toks in it:
        word, col = toks[0]
        rest = toks[1:]
        if word in ("axis", "deleted"):
            if rows or ballots:
                raise ProfileSyntaxError(f"'{word}' must come before the voters", no, col)
            if (axis_ids if word == "axis" else deleted) is not None:
                raise ProfileSyntaxError(f"duplicate '{word}' line", no, col)
            ids = _ids(rest, no, m)
            if len(set(ids)) != len(ids):
                raise ProfileSyntaxError(f"'{word}' repeats a candidate", no, col)
            if word == "axis":
                axis_ids = (ids, no)
            else:
                deleted = (ids, no)
        elif word == "row" and kind == "misrep":
            if len(rest) != m:
                raise ProfileSyntaxError(f"row has {len(rest)} entries, expected m={m}", no, col)
            rows.append([_number(t, no) for t in rest])
            first_voter_line = first_voter_line or no
        elif word == "approve" and kind == "approval":
            ids = _ids(rest, no, m)
            if len(set(ids)) != len(ids):
                raise ProfileSyntaxError("ballot repeats a candidate", no, col)
            ballots.append(ids)
            first_voter_line = first_voter_line or no
        elif word == "weights" and kind == "approval":
            if rule is not None:
                raise ProfileSyntaxError("duplicate 'weights' line", no, col)
            if len(rest) != 1 or rest[0][0] not in RULES + ("custom",):
                raise ProfileSyntaxError(f"expected 'weights {'|'.join(RULES)}|custom'", no, col)
            rule = rest[0][0]
        elif word == "wlist" and rule == "custom":
            wlists.append(([_rational(t, no) for t in rest], no))
        else:
            raise ProfileSyntaxError(f"unexpected {word!r} in a {kind} file", no, col)

    count = len(rows) if kind == "misrep" else len(ballots)
    last = lines[-1][0]
    if count != n:
        raise ProfileSyntaxError(f"header says n={n} voters but {count} were given", last, 1)
    if rule == "custom" and len(wlists) != n:
        raise ProfileSyntaxError(f"custom weights need {n} wlist lines, got {len(wlists)}", last, 1)

    at = first_voter_line or header_line
    try:
        if kind == "misrep":
            profile = MisrepProfile(rows, m=m)
        else:
            profile = ApprovalProfile(m, ballots)
    except ProfileError as exc:
        raise ProfileValidationError(str(exc), at) from None

    weights = None
    if rule == "custom":
        for seq, wno in wlists:
            if k is not None and len(seq) < k:
                raise ProfileValidationError(f"weight list shorter than k={k}", wno)
        try:
            weights = ThieleWeights(seq for seq, _ in wlists)
        except ProfileError as exc:
            raise ProfileValidationError(str(exc), wlists[0][1] if wlists else last) from None
    elif rule is not None:
        weights = ThieleWeights.uniform(rule, n, m)

    gone = tuple(sorted(deleted[0])) if deleted else ()
    if len(gone) >= m:
        raise ProfileValidationError("deletion set removes every candidate", deleted[1])
    keep = [c for c in range(1, m + 1) if c not in set(gone)]
    axis = None
    if axis_ids is not None:
        ids, ano = axis_ids
        if sorted(ids) != keep:
            raise ProfileValidationError(
                "axis must list each candidate outside the deletion set exactly once", ano
            )
        axis = Axis(ids)
    if k is not None and k > m:
        raise ProfileValidationError(f"k={k} exceeds m={m}", header_line)

    result = ProfileFile(kind, profile, axis, gone, k, bound, weights, rule)
    if validate:
        res = result.check_structure()
        if not res:
            what = "candidate intervals" if kind == "approval" else "single-peaked"
            raise ProfileValidationError(
                f"profile is not {what} on the axis (witness {res.witness})", at
            )
    return result


def _fmt(x) -> str:
    return repr(x) if isinstance(x, float) else str(x)


def render_profile_file(pf: ProfileFile) -> str:
    """Canonical text for ``pf``; ``parse_profile_file`` inverts it."""
    prof = pf.profile
    out = [f"{MAGIC} {VERSION} {pf.kind}"]
    header = f"n {prof.n} m {prof.m}"
    if pf.k is not None:
        header += f" k {pf.k}"
    if pf.bound is not None:
        header += f" bound {_fmt(pf.bound)}"
    out.append(header)
    if pf.axis is not None:
        out.append("axis " + " ".join(map(str, pf.axis.order)))
    if pf.deleted:
        out.append("deleted " + " ".join(map(str, pf.deleted)))
    if pf.kind == "misrep":
        for row in prof.rows():
            out.append("row " + " ".join(_fmt(x) for x in row))
    else:
        for ballot in prof.approvals:
            out.append(" ".join(["approve"] + [str(c) for c in sorted(ballot)]))
        if pf.weights_rule is not None:
            out.append(f"weights {pf.weights_rule}")
            if pf.weights_rule == "custom":
                for seq in pf.weights.sequences:
                    out.append(" ".join(["wlist"] + [str(w) for w in seq]))
    return "\n".join(out) + "\n"
