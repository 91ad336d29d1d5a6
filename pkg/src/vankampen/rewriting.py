"""Knuth-Bendix completion for group presentations under the shortlex order.

Generator ``k`` is encoded as the character ``chr(BASE + 2k)`` and its inverse
as ``chr(BASE + 2k + 1)``, so Python string comparison of equal-length words
is the shortlex tie-break ``x0 < X0 < x1 < X1 < ...``. Rewriting uses
``str.replace``, which keeps the inner loop in C.
"""

from __future__ import annotations

import heapq
import time

BASE = 0x100


def encode(word) -> str:
    return "".join(chr(BASE + 2 * (l - 1)) if l > 0 else chr(BASE + 2 * (-l - 1) + 1) for l in word)


def decode(s: str) -> tuple:
    out = []
    for ch in s:
        c = ord(ch) - BASE
        out.append(c // 2 + 1 if c % 2 == 0 else -(c // 2 + 1))
    return tuple(out)


def _greater(a: str, b: str) -> bool:
    return (len(a), a) > (len(b), b)


class RewritingSystem:
    """A shortlex rewriting system for ``<x_0..x_{n-1} | relators>``.

    ``complete()`` runs Knuth-Bendix and reports whether a confluent system was
    reached within the limits; only then does ``normal_form`` decide equality.
    """

    def __init__(self, ngens: int, relators, max_rules: int = 400, max_seconds: float = 2.0,
                 max_length: int = 80):
        self.ngens = ngens
        self.max_rules = max_rules
        self.max_seconds = max_seconds
        self.max_length = max_length
        self.rules: dict[str, str] = {}
        self.confluent = False
        self.failure = None
        self._pending: list = []
        self._counter = 0
        for k in range(ngens):
            x, X = chr(BASE + 2 * k), chr(BASE + 2 * k + 1)
            self._push(x + X, "")
            self._push(X + x, "")
        for r in relators:
            s = encode(r)
            half = len(s) // 2
            # r = uv  <=>  u = v^-1
            self._push(s[:half] if half else s, _inverse(s[half:]) if half else "")

    def _push(self, a, b):
        self._counter += 1
        heapq.heappush(self._pending, (max(len(a), len(b)), self._counter, a, b))

    def reduce(self, s: str) -> str:
        rules = self.rules
        while True:
            before = s
            for lhs, rhs in rules.items():
                if lhs in s:
                    s = s.replace(lhs, rhs)
            if s == before:
                return s

    def normal_form(self, word) -> tuple:
        return decode(self.reduce(encode(word)))

    def _add_rule(self, lhs, rhs):
        for old in [l for l in self.rules if l != lhs and lhs in l]:
            self._push(old, self.rules.pop(old))
        self.rules[lhs] = rhs
        for l in self.rules:
            self.rules[l] = self.reduce_rhs(self.rules[l])
        for l2, r2 in list(self.rules.items()):
            for l1, r1, la, lb in ((lhs, rhs, l2, r2), (l2, r2, lhs, rhs)):
                for k in range(1, min(len(l1), len(la))):
                    if l1[-k:] == la[:k]:
                        self._push(r1 + la[k:], l1[:-k] + lb)

    def reduce_rhs(self, s):
        return self.reduce(s)

    def complete(self) -> bool:
        if self.confluent:
            return True
        start = time.monotonic()
        while self._pending:
            if time.monotonic() - start > self.max_seconds:
                self.failure = f"timeout after {self.max_seconds}s"
                return False
            _, _, a, b = heapq.heappop(self._pending)
            a, b = self.reduce(a), self.reduce(b)
            if a == b:
                continue
            lhs, rhs = (a, b) if _greater(a, b) else (b, a)
            if len(lhs) > self.max_length:
                self.failure = f"rule longer than {self.max_length}"
                return False
            self._add_rule(lhs, rhs)
            if len(self.rules) > self.max_rules:
                self.failure = f"more than {self.max_rules} rules"
                return False
        self.confluent = True
        return True

    def rule_list(self):
        return sorted((decode(l), decode(r)) for l, r in self.rules.items())


def _inverse(s: str) -> str:
    return "".join(chr(((ord(ch) - BASE) ^ 1) + BASE) for ch in reversed(s))
