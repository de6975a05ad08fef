"""JSON encoding of rationals and sequences (bit-exact round trip)."""

from __future__ import annotations

import json
from fractions import Fraction

from .sequences import CSeq, L1Seq
from .tails import Tail


def q_to_json(q: Fraction) -> str:
    return str(Fraction(q))


def q_from_json(s) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise ValueError(f"rational must be a 'p/q' string, got {s!r}")
    return Fraction(s)


def tail_to_json(t: Tail) -> dict:
    if t.is_geometric:
        return {"start": t.start, "step": t.step, "coef": q_to_json(t.coef), "ratio": q_to_json(t.ratio)}
    return {
        "start": t.start,
        "step": t.step,
        "terms": [{"ratio": q_to_json(r), "poly": [q_to_json(c) for c in p]} for r, p in t.terms],
    }


def tail_from_json(d: dict) -> Tail:
    if "terms" in d:
        terms = tuple(
            (q_from_json(term["ratio"]), tuple(q_from_json(c) for c in term["poly"]))
            for term in d["terms"]
        )
        return Tail(int(d["start"]), int(d["step"]), terms)
    return Tail.geometric(int(d["start"]), int(d["step"]), q_from_json(d["coef"]), q_from_json(d["ratio"]))


def l1_to_json(f: L1Seq) -> dict:
    out = {"finite": {str(i): q_to_json(v) for i, v in f.finite.items()}}
    if f.tails:
        out["tails"] = [tail_to_json(t) for t in f.tails]
    return out


def l1_from_json(d: dict) -> L1Seq:
    if not isinstance(d, dict):
        raise ValueError("L1Seq must be a JSON object")
    finite = {int(i): q_from_json(v) for i, v in d.get("finite", {}).items()}
    tails = [tail_from_json(t) for t in d.get("tails", [])]
    return L1Seq(finite, tails)


def c_to_json(x: CSeq) -> dict:
    return {"prefix": {str(i): q_to_json(v) for i, v in x.prefix.items()}, "limit": q_to_json(x.limit)}


def c_from_json(d: dict) -> CSeq:
    if not isinstance(d, dict) or "limit" not in d:
        raise ValueError("CSeq must be a JSON object with a 'limit'")
    return CSeq({int(i): q_from_json(v) for i, v in d.get("prefix", {}).items()}, q_from_json(d["limit"]))


def dumps(obj) -> str:
    """Canonical text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
