#!/usr/bin/env python3
"""Independent reference for the While instantiation.

Parses constructor-term programs, runs them under set-valued semantics,
and brute-forces the interval examples. Writes tests/golden/derived.json.
"""

import itertools
import json
import math
import re
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[2]
INF = math.inf

# ---- program terms ----

TOKEN = re.compile(r'\s*(?:(-?\d+)|"([^"]*)"|([A-Za-z_][A-Za-z0-9_\']*)|(.))')


def tokenize(text):
    out = []
    for m in TOKEN.finditer(text):
        num, s, ident, punct = m.groups()
        if num is not None:
            out.append(("int", int(num)))
        elif s is not None:
            out.append(("str", s))
        elif ident is not None:
            out.append(("id", ident))
        elif punct is not None and not punct.isspace():
            out.append(("p", punct))
    return out


class Parser:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, val=None):
        t = self.peek()
        if (kind and t[0] != kind) or (val is not None and t[1] != val):
            raise SyntaxError(f"unexpected {t} at {self.i}")
        self.i += 1
        return t

    def term(self):
        kind, v = self.peek()
        if kind in ("int", "str"):
            self.i += 1
            return v
        name = self.take("id")[1]
        args = []
        if self.peek() == ("p", "("):
            self.take()
            if self.peek() != ("p", ")"):
                args.append(self.term())
                while self.peek() == ("p", ","):
                    self.take()
                    args.append(self.term())
            self.take("p", ")")
        elif self.peek()[0] in ("int", "str"):
            args.append(self.term())
        return (name, *args)


def parse(text):
    p = Parser(text)
    t = p.term()
    if p.i != len(p.toks):
        raise SyntaxError("trailing input")
    return t


# ---- collecting semantics ----

def freeze(store):
    return tuple(sorted(store.items()))


def eval_expr(s, e):
    tag = e[0]
    if tag == "Const":
        return {e[1]}
    if tag == "Var":
        return {s[e[1]]} if e[1] in s else set()
    if tag == "Plus":
        return {a + b for a in eval_expr(s, e[1]) for b in eval_expr(s, e[2])}
    if tag == "Leq":
        return {1 if a < b else 0 for a in eval_expr(s, e[1]) for b in eval_expr(s, e[2])}
    if tag == "Rand":
        return set(range(e[1], e[2] + 1))
    raise ValueError(tag)


def eval_stmt(s, t, depth=0):
    if depth > 5000:
        raise RecursionError("fuel")
    tag = t[0]
    if tag == "Skip":
        return {freeze(s)}
    if tag == "Assign":
        return {freeze({**s, t[1]: v}) for v in eval_expr(s, t[2])}
    if tag == "Seq":
        out = set()
        for s1 in eval_stmt(s, t[1], depth + 1):
            out |= eval_stmt(dict(s1), t[2], depth + 1)
        return out
    if tag == "If":
        out = set()
        for c in eval_expr(s, t[1]):
            out |= eval_stmt(s, t[2] if c != 0 else t[3], depth + 1)
        return out
    if tag == "While":
        out = set()
        for c in eval_expr(s, t[1]):
            if c == 0:
                out.add(freeze(s))
            else:
                for s1 in eval_stmt(s, t[2], depth + 1):
                    out |= eval_stmt(dict(s1), t, depth + 1)
        return out
    raise ValueError(tag)


def run(text):
    results = eval_stmt({}, parse(text))
    return sorted(({k: v for k, v in r} for r in results), key=lambda d: sorted(d.items()))


# ---- intervals ----

def hull(values):
    return [min(values), max(values)] if values else None


def widen(a, b):
    return [a[0] if a[0] <= b[0] else -INF, a[1] if b[1] <= a[1] else INF]


def join(a, b):
    return [min(a[0], b[0]), max(a[1], b[1])]


def members(i, lo=-8, hi=8):
    return range(max(i[0], lo), min(i[1], hi) + 1)


def ilt_bruteforce(a, b):
    return hull({1 if x < y else 0 for x in members(a) for y in members(b)})


def not_zero_bruteforce(i):
    return any(x != 0 for x in members(i))


def bound(x):
    if x == INF:
        return "+inf"
    if x == -INF:
        return "-inf"
    return int(x)


def interval_json(i):
    return None if i is None else [bound(i[0]), bound(i[1])]


def main():
    corpus = {}
    for path in sorted((ROOT / "tests" / "corpus").glob("*.prg")):
        corpus[path.name] = run(path.read_text())

    ilt_cases = [([0, 1], [2, 3]), ([0, 5], [3, 4]), ([4, 6], [1, 4]), ([-2, 2], [-2, 2])]
    widen_cases = [([0, 1], [0, 2]), ([0, 5], [0, 3]), ([1, 4], [0, 4])]

    # Widening chains: each bound jumps at most once, so three steps suffice.
    pts = [-INF] + list(range(-2, 3)) + [INF]
    ivs = [[lo, hi] for lo in pts for hi in pts if lo <= hi and lo != INF and hi != -INF]
    worst = 0
    for a in ivs:
        for b1, b2, b3 in itertools.product(ivs, repeat=3):
            chain = [a]
            for b in (b1, b2, b3):
                chain.append(widen(chain[-1], join(chain[-1], b)))
            changes = sum(1 for x, y in zip(chain, chain[1:]) if x != y)
            worst = max(worst, changes)
        if worst > 2:
            break

    derived = {
        "rand": {"3,1": sorted(range(3, 2)), "1,3": list(range(1, 4))},
        "lt": {"1,2": 1 if 1 < 2 else 0},
        "ilt": [{"a": interval_json(a), "b": interval_json(b), "result": interval_json(ilt_bruteforce(a, b))}
                for a, b in ilt_cases],
        "iisNotZero": [{"i": interval_json(i), "defined": not_zero_bruteforce(i)} for i in ([0, 0], [0, 3], [1, 5])],
        "iisZero": [{"i": interval_json(i), "defined": 0 in members(i)} for i in ([1, 5], [0, 3])],
        "widen": [{"old": interval_json(a), "new": interval_json(b), "result": interval_json(widen(a, b))}
                  for a, b in widen_cases],
        "widen_chain_max_changes": worst,
        "hooks": {
            "first_in": {"x": interval_json([0, 0])},
            "second_in": {"x": interval_json(widen([0, 0], [0, 1]))},
            "out": {"x": interval_json(join([3, 3], [0, 0]))},
        },
        "corpus": corpus,
    }
    out = ROOT / "tests" / "golden" / "derived.json"
    text = json.dumps(derived, indent=2, sort_keys=True) + "\n"
    if "--check" in sys.argv:
        if out.read_text() != text:
            print(f"{out.relative_to(ROOT)} is stale; rerun without --check")
            return 1
        print(f"{out.relative_to(ROOT)} up to date: {len(corpus)} programs")
        return 0
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text)
    print(f"wrote {out.relative_to(ROOT)}: {len(corpus)} programs")
    return 0


if __name__ == "__main__":
    sys.setrecursionlimit(100000)
    sys.exit(main())
