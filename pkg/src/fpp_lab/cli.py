"""Command-line front end.

Exit codes: 0 success, 1 unparsable input, 2 failed hypothesis or check,
3 result not representable.  Every command is deterministic; sampling
commands take --seed (default from FPP_LAB_SEED or a fixed constant).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import extraction, quotientproj, sampling, witness
from .errors import FppLabError, RepresentabilityError
from .fixtures import NAMED
from .hyperplane import CITATIONS, WfSpace, classify, member
from .seqcore import (
    IndexSeq,
    L1Seq,
    c_from_json,
    c_to_json,
    dumps,
    l1_from_json,
    l1_to_json,
    pair_c,
    q_to_json,
)

# which result each certificate field instantiates
THEOREMS = {
    **CITATIONS,
    "pairing": "c* = l1 duality, Section 1",
    "witness": "Theorem 3.6",
    "shift": "Theorem 3.6",
    "contraction": "Theorem 4.1 (4)=>(3)",
    "c_special": "Theorem 3.2",
    "extraction": "Theorem 4.1 (1)=>(4)",
    "grind": "Theorem 4.1, Step 2",
    "norming": "Theorem 4.1, Step 3",
    "support_sets": "Theorem 4.1, Step 4, Eq. (4.2)",
    "final": "Theorem 4.1, The Final Step",
    "round_trip": "Theorem 4.1 (4)=>(5)",
    "quotient": "Example 3.1, Remark 3.5",
    "projection": "Proposition 3.1",
    "f_eps": "Remark 2.4",
}


class ParseError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let "-1/4" through as a value rather than an unknown flag
        self._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _load(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None


def _l1(path: str) -> L1Seq:
    try:
        return l1_from_json(_load(path))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"{path}: not an l1 sequence ({exc})") from None


def _cseq(path: str):
    try:
        return c_from_json(_load(path))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"{path}: not a convergent sequence ({exc})") from None


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational: {text!r}") from None


def _f_or_named(name: str) -> L1Seq:
    if name in NAMED:
        return NAMED[name]()
    return _l1(name)


def _seed(args) -> int:
    return sampling.default_seed() if args.seed is None else args.seed


# -- commands ------------------------------------------------------------
def cmd_classify(args, out):
    W = WfSpace(_f_or_named(args.f), normalize=args.normalize)
    out.write(dumps({"f": l1_to_json(W.f), "classification": classify(W).to_json()}))


def cmd_pair(args, out):
    f = _f_or_named(args.f)
    x = _cseq(args.x)
    value = pair_c(f, x)
    out.write(dumps({"value": q_to_json(value), "zero": value == 0, "citation": THEOREMS["pairing"]}))


def _dictionary(args) -> witness.GeneratorDict:
    W = WfSpace(_f_or_named(args.f))
    subseq = None
    if args.subseq:
        try:
            subseq = IndexSeq.from_json(json.loads(args.subseq))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad --subseq: {exc}") from None
    return witness.build_witness(W, subseq, cutoff=args.cutoff, seed=_seed(args))


def cmd_witness_build(args, out):
    d = _dictionary(args)
    prov = d.provenance
    margin = d.certify(seed=_seed(args))
    out.write(dumps({
        "w_tilde": l1_to_json(d.w_tilde),
        "nodes": d.nodes.to_json(),
        "e_star": l1_to_json(prov["e_star"]),
        "u0": l1_to_json(prov["u0"]),
        "w0": l1_to_json(prov["w0"]),
        "w0_norm": q_to_json(prov["w0"].l1_norm()),
        "lower_estimate_min_margin": q_to_json(margin),
        "citation": THEOREMS["witness"],
    }))


def cmd_witness_iterate(args, out):
    d = _dictionary(args)
    if args.start == "vertex":
        samples = [witness.SimplexPoint.vertex(1)]
    else:
        r = sampling.rng(_seed(args))
        samples = [witness.SimplexPoint(sampling.simplex_coeffs(r, tail_prob=0.3)) for _ in range(args.samples)]
    report = witness.fixed_point_free_check(args.map, samples, args.steps, d)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["sample", "step", "displacement"])
    for i, row in enumerate(report.displacements):
        for k, v in enumerate(row):
            w.writerow([i, k, q_to_json(v)])
    out.write(buf.getvalue())


def _family(args):
    W = None
    if args.family.startswith("builtin:"):
        name = args.family.split(":", 1)[1]
        if name not in extraction.FAMILIES:
            raise ParseError(f"unknown built-in family {name!r}")
        fam = extraction.FAMILIES[name](args.count)
    else:
        data = _load(args.family)
        try:
            fam = extraction.FunctionalFamily(
                tuple(l1_from_json(m) for m in data["members"]),
                l1_from_json(data["limit_hint"]) if data.get("limit_hint") else None,
            )
            if data.get("f"):
                W = WfSpace(l1_from_json(data["f"]))
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"{args.family}: bad family ({exc})") from None
    if args.f:
        W = WfSpace(_f_or_named(args.f))
    return fam, W


def cmd_extract_run(args, out):
    fam, W = _family(args)
    targets = None if args.targets is None else tuple(_rational(t) for t in args.targets)
    chain = extraction.run_pipeline(fam, W, targets, depth=args.depth)
    final = chain["final"]
    e_star = l1_from_json(final["e_star"])
    basis = IndexSeq.finite(final["basis_indices"])
    W2 = extraction.bad_wf_from_basis_limit(e_star, basis)
    cls = classify(W2)
    chain["round_trip"] = {
        "f": l1_to_json(W2.f),
        "is_bad": cls.is_bad,
        "iso_c": cls.iso_c,
        "citation": THEOREMS["round_trip"],
    }
    for key in ("grind", "norming", "support_sets", "final"):
        chain[key]["citation"] = THEOREMS[key]
    chain["citation"] = THEOREMS["extraction"]
    out.write(dumps(chain))


def _progression(text: str):
    try:
        start, step = (int(p) for p in text.split(":"))
    except ValueError:
        raise ParseError(f"S must be START:STEP, got {text!r}") from None
    return start, step


def cmd_quotient_norm(args, out):
    W = WfSpace(_f_or_named(args.f))
    start, step = _progression(args.S)
    Y = quotientproj.VanishingSubspace(W, start, step)
    v = _cseq(args.v)
    details = quotientproj.quotient_norm_details(Y, v)
    depths = args.truncation or [16, 32, 64]
    oracle = {str(d): q_to_json(quotientproj.quotient_norm_lp(Y, v, d)) for d in depths}
    body = details.to_json()
    body.update({
        "oracle": oracle,
        "oracle_agrees": all(Fraction(o) == details.value for o in oracle.values()),
        "citation": THEOREMS["quotient"],
    })
    out.write(dumps(body))


def cmd_quotient_example31(args, out):
    x = _cseq(args.x)
    Y = quotientproj.example31_space()
    rep = quotientproj.example31_isometry(x)
    q = quotientproj.quotient_norm(Y, rep)
    out.write(dumps({
        "representative": c_to_json(rep),
        "member": member(Y.ambient, rep),
        "quotient_norm": q_to_json(q),
        "sup_norm": q_to_json(x.sup_norm()),
        "isometric": q == x.sup_norm(),
        "citation": THEOREMS["quotient"],
    }))


def cmd_project(args, out):
    P = quotientproj.c_ambient_fixture(args.J)
    x = _cseq(args.x)
    r = sampling.rng(_seed(args))
    samples = [x] + [sampling.cseq(r, 2 * args.J + 4) for _ in range(args.samples)]
    report = quotientproj.projection_checks(P, samples)
    out.write(dumps({
        "projection": c_to_json(quotientproj.projection(P, x)),
        "checks": report.to_json(),
        "citation": THEOREMS["projection"],
    }))


def cmd_fixtures(args, out):
    target = Path(args.out)
    target.mkdir(parents=True, exist_ok=True)
    written = {}
    for name in sorted(NAMED):
        text = dumps(l1_to_json(NAMED[name]()))
        (target / f"{name}.json").write_text(text)
        written[f"{name}.json"] = json.loads(text)
    out.write(dumps({"directory": str(target), "files": written}))


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fpp-lab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_seed(sp):
        sp.add_argument("--seed", type=int, default=None)

    c = sub.add_parser("classify", help="classify W_f")
    c.add_argument("f", help="l1 JSON file or a fixture name")
    c.add_argument("--normalize", action="store_true", help="divide f by its norm first")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("pair", help="evaluate f(x) for f in l1, x in c")
    c.add_argument("f")
    c.add_argument("x")
    c.set_defaults(func=cmd_pair)

    for name, func in (("witness-build", cmd_witness_build), ("witness-iterate", cmd_witness_iterate)):
        c = sub.add_parser(name)
        if name == "witness-iterate":
            c.add_argument("map", choices=sorted(witness.MAPS))
            c.add_argument("--steps", type=int, default=5)
            c.add_argument("--start", choices=["vertex", "random"], default="vertex")
            c.add_argument("--samples", type=int, default=3)
            c.add_argument("--f", default="c_special")
        else:
            c.add_argument("f")
        c.add_argument("--subseq", help='JSON: [n1, n2, ...] or {"head": [...], "progression": {"start": a, "step": d}}')
        c.add_argument("--cutoff", type=int, default=32)
        with_seed(c)
        c.set_defaults(func=func)

    c = sub.add_parser("extract-run", help="run the extraction pipeline")
    c.add_argument("family", help="family JSON file, or builtin:unit / builtin:mixed")
    c.add_argument("--count", type=int, default=8, help="members of a built-in family")
    c.add_argument("--targets", nargs=2, metavar=("S_PLUS", "S_MINUS"))
    c.add_argument("--depth", type=int, default=16)
    c.add_argument("--f", default=None, help="hyperplane driving the norming step")
    c.set_defaults(func=cmd_extract_run)

    c = sub.add_parser("quotient-norm")
    c.add_argument("f")
    c.add_argument("S", help="vanishing progression as START:STEP")
    c.add_argument("v")
    c.add_argument("--truncation", type=int, action="append", help="oracle depth (repeatable)")
    c.set_defaults(func=cmd_quotient_norm)

    c = sub.add_parser("quotient-example31")
    c.add_argument("x")
    c.set_defaults(func=cmd_quotient_example31)

    c = sub.add_parser("project", help="norm-one projection on c")
    c.add_argument("x")
    c.add_argument("--J", type=int, default=8)
    c.add_argument("--samples", type=int, default=16)
    with_seed(c)
    c.set_defaults(func=cmd_project)

    c = sub.add_parser("fixtures", help="write the named fixtures as JSON")
    c.add_argument("--out", default="fixtures")
    c.set_defaults(func=cmd_fixtures)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        args.func(args, out)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except RepresentabilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except FppLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
