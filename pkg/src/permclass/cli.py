"""Command-line front end: ``permclass <verb> ...``.

Output is JSON unless ``--format text`` is given.  Usage errors exit with
status 2, errors raised by the library for bad input exit with status 1.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Sequence

from . import automata, codec, gf_pipeline
from .class_enum import BASIS_APRIME, count_class, count_simple_in_class
from .perm_core import contains, parse, to_text
from .simple_decomp import is_simple, substitution_decompose
from .structure_glue import GlueType, glue, glue_decompose, membership

DEFAULT_ORDER = 12
DEFAULT_MAX_N = 9

GF_NAMES = ("f_A", "f_Aprime", "f_simple_A", "f_simple_Aprime",
            "fibonacci", "catalan", "G", "skew_indec_G")


class DomainError(Exception):
    pass


def _basis(text: str) -> list:
    return [p.strip() for p in text.split(",") if p.strip()]


def _series(name: str, order: int, route: str | None) -> list:
    route = {"closed": "closed_form", None: None}.get(route, route)
    if name == "f_A":
        s = gf_pipeline.gf_class_A(order, route or "pipeline")
    elif name == "f_Aprime":
        s = gf_pipeline.gf_class_Aprime(order, route or "pipeline")
    elif name == "f_simple_A":
        s = gf_pipeline.gf_simple_A(order, route or "automaton")
    elif name == "f_simple_Aprime":
        s = gf_pipeline.gf_simple_Aprime(order, route or "automaton")
    else:
        if route not in (None, "reference"):
            raise DomainError(f"{name} has only the reference route")
        s = gf_pipeline.gf_reference(name, order)
    return s.ints()


def _lines(items: Sequence[str]) -> list:
    """Inputs from argv, or with "-" from stdin: a JSON list or one per line."""
    if list(items) != ["-"]:
        return list(items)
    text = sys.stdin.read()
    if text.lstrip().startswith("["):
        try:
            data = json.loads(text)
        except json.JSONDecodeError:
            data = None
        if isinstance(data, list) and all(isinstance(x, str) for x in data):
            return data
    return [ln.strip() for ln in text.splitlines() if ln.strip()]


def _codec_sample(max_n: int, k: int, seed: int) -> dict:
    """Round-trip phi' on k members of H' drawn with a seeded generator."""
    from .class_enum import simple_members
    rng = random.Random(seed)
    pool = [p for n in range(4, max_n + 1) for p in simple_members(BASIS_APRIME, n)
            if membership(p, "H_prime")]
    picks = rng.sample(pool, min(k, len(pool)))
    bad = [to_text(p) for p in picks if codec.psi_prime(codec.phi_prime(p)) != p]
    return {"seed": seed, "sampled": len(picks), "failures": bad}


# --- verbs -----------------------------------------------------------------------

def cmd_count(a):
    basis = _basis(a.basis)
    if a.simple:
        counts = [count_simple_in_class(basis, n) for n in range(a.max_n + 1)]
    else:
        counts = list(count_class(basis, a.max_n).counts)
    return {"basis": basis, "counts": counts}, ",".join(map(str, counts))


def cmd_contains(a):
    r = contains(parse(a.perm), parse(a.pattern))
    return {"perm": a.perm, "pattern": a.pattern, "contains": r}, str(r).lower()


def cmd_simple(a):
    p = parse(a.perm)
    out = {"perm": to_text(p), "simple": is_simple(p)}
    if p.n:
        d = substitution_decompose(p)
        out["skeleton"] = to_text(d.skeleton)
        out["parts"] = [to_text(q) for q in d.parts]
    return out, str(out["simple"]).lower()


def cmd_decompose(a):
    d = glue_decompose(parse(a.perm))
    return json.loads(d.to_json()), str(d)


def cmd_glue(a):
    r = glue(parse(a.left), parse(a.right), GlueType.of(a.type))
    return to_text(r), to_text(r)


def cmd_encode(a):
    enc = codec.encode_A if a.cls == "A" else codec.phi_prime
    words = [str(enc(parse(t))) for t in _lines(a.perm)]
    out = words if a.perm == ["-"] or len(words) > 1 else words[0]
    return out, "\n".join(words)


def cmd_decode(a):
    dec = codec.decode_A if a.cls == "A" else codec.psi_prime
    items = _lines(a.word)
    perms = [to_text(dec(w)) for w in items]
    out = perms if a.word == ["-"] or len(perms) > 1 else perms[0]
    return out, "\n".join(perms)


def cmd_automaton(a):
    m = automata.load(a.name)
    if a.count is not None:
        words = [" ".join(w) for w in automata.accepted_words(m, a.count, a.initial)]
        return {"n": a.count, "accepted": len(words), "words": words}, "\n".join(words)
    word = codec.parse_word(a.word or "", list(m.alphabet))
    ok = automata.accepts(m, list(word), a.initial)
    return {"word": str(word), "accepted": ok}, str(ok).lower()


def cmd_gf(a):
    if a.name not in GF_NAMES:
        raise DomainError(f"unknown series {a.name!r}; choose from {', '.join(GF_NAMES)}")
    coeffs = _series(a.name, a.order, a.route)
    return {"name": a.name, "order": a.order, "route": a.route or "default",
            "coeffs": coeffs}, ",".join(map(str, coeffs))


def cmd_verify(a):
    rep = gf_pipeline.verify_all(a.max_n)
    out = json.loads(rep.to_json())
    text = rep.table()
    ok = rep.ok
    if a.samples:
        s = _codec_sample(a.max_n, a.samples, a.seed)
        out["codec_sample"] = s
        ok = ok and not s["failures"]
        text += f"\ncodec roundtrip on {s['sampled']} samples (seed {a.seed}): " \
                f"{'ok' if not s['failures'] else 'FAILED'}"
    out["ok"] = ok
    return out, text, 0 if ok else 1


# --- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="permclass",
                                 description="Counting and encoding tools for two permutation classes.")
    ap.add_argument("--format", choices=("json", "text"), default="json")
    # accepted after the verb as well
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    sub = ap.add_subparsers(dest="verb", required=True)
    _add = sub.add_parser
    sub.add_parser = lambda *a, **k: _add(*a, parents=[common], **k)

    p = sub.add_parser("count", help="brute-force class counts for n = 0..max-n")
    p.add_argument("--basis", default=",".join(BASIS_APRIME))
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    p.add_argument("--simple", action="store_true", help="count simple members only")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("contains", help="pattern containment test")
    p.add_argument("perm")
    p.add_argument("pattern")
    p.set_defaults(func=cmd_contains)

    p = sub.add_parser("simple", help="simplicity and substitution decomposition")
    p.add_argument("perm")
    p.set_defaults(func=cmd_simple)

    p = sub.add_parser("decompose", help="glue decomposition of a member of H or H'")
    p.add_argument("perm")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("glue", help="glue sum of two simple permutations")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--type", required=True, help="e.g. NW1-0 or SE3-0")
    p.set_defaults(func=cmd_glue)

    for verb, fn, arg in (("encode", cmd_encode, "perm"), ("decode", cmd_decode, "word")):
        p = sub.add_parser(verb, help=f"{verb} with phi (class A) or phi' (class A')")
        p.add_argument("--class", dest="cls", choices=("A", "Aprime"), default="Aprime")
        p.add_argument(arg, nargs="+", help="one or more inputs, or - to read lines from stdin")
        p.set_defaults(func=fn)

    p = sub.add_parser("automaton", help="run a shipped automaton")
    p.add_argument("--name", default="mprime.txt", help="table file, e.g. m.txt or mprime.txt")
    p.add_argument("--initial", default=None)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--word")
    g.add_argument("--count", type=int, help="list accepted words of this length")
    p.set_defaults(func=cmd_automaton)

    p = sub.add_parser("gf", help="generating-function coefficients")
    p.add_argument("--name", required=True)
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)
    p.add_argument("--route", default=None,
                   choices=("pipeline", "automaton", "closed", "closed_form", "reference"))
    p.set_defaults(func=cmd_gf)

    p = sub.add_parser("verify", help="cross-check every series against its other routes")
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    p.add_argument("--samples", type=int, default=0, help="also round-trip this many codec samples")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        a = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        res = a.func(a)
    except (ValueError, ArithmeticError, DomainError, FileNotFoundError) as e:
        print(json.dumps({"error": type(e).__name__, "message": str(e)}), file=sys.stderr)
        return 1
    out, text, code = res if len(res) == 3 else (*res, 0)
    if a.format == "json":
        print(json.dumps(out, indent=1 if isinstance(out, dict) else None))
    else:
        print(text)
    return code


run_cli = main

if __name__ == "__main__":
    sys.exit(main())
