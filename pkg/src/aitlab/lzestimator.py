"""LZ78 bit costs as a computable stand-in for complexity on long strings.

Token cost model: the i-th token (1-indexed) of a parse that starts from a
dictionary of ``d0`` phrases costs ``ceil(log2(d0 + i))`` bits for the
phrase reference plus one bit for the appended literal.  A terminal token
that is a bare reference to an existing phrase carries no literal.
"""
from __future__ import annotations

import csv
import io
import os
import random
from pathlib import Path

from .machine import BitString


class UndefinedInput(ValueError):
    pass


class PhraseDictionary:
    """Binary trie of phrases; node 0 is the empty phrase."""

    def __init__(self):
        self.children: list[list[int]] = [[-1, -1]]
        self.phrases: list[str] = [""]

    def __len__(self) -> int:
        return len(self.phrases) - 1  # the empty phrase is implicit

    def add(self, node: int, bit: str) -> int:
        new = len(self.phrases)
        self.children[node][int(bit)] = new
        self.children.append([-1, -1])
        self.phrases.append(self.phrases[node] + bit)
        return new

    def insert_closed(self, phrase: str) -> None:
        node = 0
        for b in phrase:
            nxt = self.children[node][int(b)]
            node = nxt if nxt >= 0 else self.add(node, b)


def parse(x: BitString, dictionary: PhraseDictionary | None = None) -> list[tuple[int, str]]:
    """LZ78 tokens ``(reference, literal)``; the literal is "" only for a
    final bare reference.  ``dictionary`` is extended in place."""
    d = dictionary if dictionary is not None else PhraseDictionary()
    children = d.children
    tokens = []
    node = 0
    for b in x:
        nxt = children[node][b == "1"]
        if nxt >= 0:
            node = nxt
        else:
            tokens.append((node, b))
            d.add(node, b)
            node = 0
    if node:
        tokens.append((node, ""))
    return tokens


def decode(tokens: list[tuple[int, str]], dictionary: PhraseDictionary | None = None) -> BitString:
    phrases = list(dictionary.phrases) if dictionary is not None else [""]
    out = []
    for ref, lit in tokens:
        s = phrases[ref] + lit
        out.append(s)
        if lit:
            phrases.append(s)
    return "".join(out)


def _token_costs(tokens, d0: int) -> int:
    total = 0
    for i, (_, lit) in enumerate(tokens, start=1):
        total += (d0 + i - 1).bit_length() + (1 if lit else 0)  # ceil(log2(d0+i))
    return total


def lz_cost(x: BitString) -> int:
    return _token_costs(parse(x), 0)


def primed_dictionary(y: BitString) -> PhraseDictionary:
    d = PhraseDictionary()
    for phrase in _phrases_of(y):
        d.insert_closed(phrase)
    return d


def _phrases_of(y: BitString) -> list[str]:
    d = PhraseDictionary()
    return [d.phrases[ref] + lit for ref, lit in parse(y, d)]


def lz_cost_cond(x: BitString, y: BitString) -> int:
    d = primed_dictionary(y)
    d0 = len(d)
    return _token_costs(parse(x, d), d0)


def lz_info(x: BitString, y: BitString) -> int:
    """Bits saved on ``x`` by priming with ``y``."""
    return lz_cost(x) - lz_cost_cond(x, y)


def ncd(x: BitString, y: BitString) -> float:
    if not x and not y:
        raise UndefinedInput("ncd is undefined for two empty strings")
    cx, cy = lz_cost(x), lz_cost(y)
    return (lz_cost(x + y) - min(cx, cy)) / max(cx, cy)


def asymmetry(x: BitString, y: BitString) -> float:
    a, b = lz_info(x, y), lz_info(y, x)
    return abs(a - b) / max(1, abs(a), abs(b))


# -- corpus ----------------------------------------------------------------


def de_bruijn(n: int) -> str:
    """Binary de Bruijn sequence of order ``n`` (Lyndon-word construction)."""
    a = [0] * (n + 1)
    seq: list[int] = []

    def db(t, p):
        if t > n:
            if n % p == 0:
                seq.extend(a[1:p + 1])
        else:
            a[t] = a[t - p]
            db(t + 1, p)
            for j in range(a[t - p] + 1, 2):
                a[t] = j
                db(t + 1, t)

    db(1, 1)
    return "".join(map(str, seq))


def builtin_corpus(seed: int = 0) -> dict[str, BitString]:
    """Periodic, de Bruijn-like and pseudo-random strings of 1-16 KiB of bits."""
    rng = random.Random(seed)
    kib = 1024
    corpus = {}
    for n, period in ((1, "01"), (4, "0010"), (16, "0110100110010110"), (2, "000111")):
        corpus[f"periodic-{period}"] = (period * (n * kib // len(period) + 1))[:n * kib]
    for order, n in ((10, 1), (12, 4), (13, 8)):
        s = de_bruijn(order)
        corpus[f"debruijn-{order}"] = (s * (n * kib // len(s) + 1))[:n * kib]
    for n in (1, 4, 16):
        corpus[f"random-{n}k"] = "".join(rng.choice("01") for _ in range(n * kib))
    return corpus


def read_corpus(directory: str | os.PathLike) -> dict[str, BitString]:
    """Each file holds ASCII 0/1 lines; whitespace is ignored."""
    corpus = {}
    for path in sorted(Path(directory).iterdir()):
        if not path.is_file():
            continue
        bits = "".join(path.read_text(encoding="ascii").split())
        if set(bits) - {"0", "1"}:
            raise ValueError(f"{path}: corpus files may contain only 0/1 lines")
        corpus[path.name] = bits
    return corpus


def distance_matrix_csv(corpus: dict[str, BitString]) -> str:
    names = list(corpus)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([""] + names)
    for a in names:
        w.writerow([a] + [f"{ncd(corpus[a], corpus[b]):.6f}" for b in names])
    return buf.getvalue()
