"""Integer-word group presentations and Tietze simplification.

A presentation here is ``(ngens, relators)`` with relators tuples of nonzero
ints (see :mod:`vankampen.groups`), each meaning ``relator = 1``. All moves
preserve the group up to the recorded isomorphism, so every fingerprint
(abelian invariants, homomorphism counts) is unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass


def free_reduce(word) -> tuple:
    out: list = []
    for l in word:
        if out and out[-1] == -l:
            out.pop()
        else:
            out.append(l)
    return tuple(out)


def cyclic_reduce(word) -> tuple:
    w = free_reduce(word)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == -w[j - 1]:
        i += 1
        j -= 1
    return w[i:j]


def inverse(word) -> tuple:
    return tuple(-l for l in reversed(word))


def canonical_relator(r) -> tuple:
    """Representative of ``r`` up to cyclic rotation and inversion."""
    r = cyclic_reduce(r)
    if not r:
        return r
    best = None
    for w in (r, inverse(r)):
        for i in range(len(w)):
            c = w[i:] + w[:i]
            if best is None or c < best:
                best = c
    return best


def substitute(word, images) -> tuple:
    """Replace letter ``+-(k+1)`` by ``images[k]`` (or its inverse) and reduce."""
    out: list = []
    for l in word:
        img = images[l - 1] if l > 0 else inverse(images[-l - 1])
        for x in img:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
    return tuple(out)


def exponent_matrix(ngens: int, relators) -> list:
    rows = []
    for r in relators:
        row = [0] * ngens
        for l in r:
            row[abs(l) - 1] += 1 if l > 0 else -1
        rows.append(row)
    return rows


@dataclass(frozen=True)
class Simplification:
    ngens: int
    relators: tuple
    images: tuple  # images[k] = word over the new generators for old generator k
    kept: tuple  # old index of each new generator


def simplify(ngens: int, relators, growth: int = 20) -> Simplification:
    """Eliminate generators that occur exactly once in some relator.

    Shortest relators are used first; elimination stops early if the total
    relator length would exceed ``growth`` times the starting length.
    """
    rels: dict[int, tuple] = {}
    seen = set()
    for r in relators:
        c = canonical_relator(r)
        if c and c not in seen:
            seen.add(c)
            rels[len(rels)] = c
    present = set(rels.values())
    start_total = sum(map(len, rels.values()))
    limit = max(growth * start_total, 2000)
    occurs: dict[int, set] = {k: set() for k in range(ngens)}
    for rid, r in rels.items():
        for l in r:
            occurs[abs(l) - 1].add(rid)
    defs: dict[int, tuple] = {}

    def candidates(r):
        counts: dict[int, int] = {}
        for l in r:
            counts[abs(l) - 1] = counts.get(abs(l) - 1, 0) + 1
        return [k for k, c in counts.items() if c == 1]

    total = start_total
    while True:
        best = None
        for rid, r in rels.items():
            if best is not None and len(r) >= best[0]:
                continue
            cands = candidates(r)
            if cands:
                # prefer the generator touching the fewest other relators
                k = min(cands, key=lambda k: (len(occurs[k]), k))
                best = (len(r), rid, k)
        if best is None:
            break
        _, rid, k = best
        r = rels.pop(rid)
        i = next(i for i, l in enumerate(r) if abs(l) - 1 == k)
        rot = r[i:] + r[:i]
        rest = rot[1:]
        value = inverse(rest) if rot[0] > 0 else rest
        growth_here = (len(value) - 1) * sum(
            sum(1 for l in rels[o] if abs(l) - 1 == k) for o in occurs[k] if o != rid
        )
        if total + growth_here > limit:
            rels[rid] = r
            break
        defs[k] = value
        present.discard(r)
        for l in r:
            occurs[abs(l) - 1].discard(rid)
        for o in sorted(occurs[k]):
            old = rels[o]
            new = canonical_relator(_subst_one(old, k, value))
            for l in old:
                occurs[abs(l) - 1].discard(o)
            total += len(new) - len(old)
            present.discard(old)
            if not new or new in present:
                del rels[o]
                continue
            present.add(new)
            rels[o] = new
            for l in new:
                occurs[abs(l) - 1].add(o)
        occurs[k] = set()
        total -= len(r)

    alive = [k for k in range(ngens) if k not in defs]
    new_index = {k: i for i, k in enumerate(alive)}
    cache: dict[int, tuple] = {}

    def resolve(k):
        if k in cache:
            return cache[k]
        if k in new_index:
            out = (new_index[k] + 1,)
        else:
            acc: list = []
            for l in defs[k]:
                sub = resolve(abs(l) - 1)
                acc.extend(sub if l > 0 else inverse(sub))
            out = free_reduce(acc)
        cache[k] = out
        return out

    for k in sorted(defs):
        resolve(k)
    images = tuple(resolve(k) for k in range(ngens))
    final = []
    seen = set()
    for r in sorted(rels.values(), key=lambda r: (len(r), r)):
        c = canonical_relator(substitute(r, images))
        if c and c not in seen:
            seen.add(c)
            final.append(c)
    return Simplification(len(alive), tuple(final), images, tuple(alive))


def _subst_one(word, k, value):
    out: list = []
    inv = inverse(value)
    for l in word:
        if abs(l) - 1 == k:
            seq = value if l > 0 else inv
        else:
            seq = (l,)
        for x in seq:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
    return tuple(out)


# -- random moves, used by the invariance property tests ----------------------------


def random_word(ngens: int, length: int, rng) -> tuple:
    if ngens == 0:
        return ()
    return free_reduce(rng.choice((1, -1)) * rng.randrange(1, ngens + 1) for _ in range(length))


def random_tietze_moves(ngens: int, relators, rng, moves: int = 4):
    """Apply random presentation-preserving moves; returns ``(ngens, relators)``.

    Moves: add a consequence relator, add a defined generator, rotate or invert
    a relator, permute generators, eliminate a generator.
    """
    rels = [tuple(r) for r in relators]
    n = ngens
    for _ in range(moves):
        kind = rng.choice(["consequence", "new_generator", "rotate", "permute", "eliminate"])
        if kind == "consequence" and rels:
            a = rng.choice(rels)
            b = rng.choice(rels)
            w = random_word(n, rng.randrange(0, 4), rng)
            rels.append(free_reduce(w + a + inverse(w) + (inverse(b) if rng.random() < 0.5 else b)))
        elif kind == "new_generator":
            w = random_word(n, rng.randrange(0, 5), rng)
            n += 1
            rels.append(free_reduce((n,) + inverse(w)))
        elif kind == "rotate" and rels:
            i = rng.randrange(len(rels))
            r = rels[i]
            if r:
                j = rng.randrange(len(r))
                r = r[j:] + r[:j]
            rels[i] = inverse(r) if rng.random() < 0.5 else r
        elif kind == "permute" and n:
            perm = list(range(n))
            rng.shuffle(perm)
            rels = [tuple((perm[abs(l) - 1] + 1) * (1 if l > 0 else -1) for l in r) for r in rels]
        elif kind == "eliminate":
            for idx, r in enumerate(rels):
                r = cyclic_reduce(r)
                counts: dict[int, int] = {}
                for l in r:
                    counts[abs(l) - 1] = counts.get(abs(l) - 1, 0) + 1
                once = [k for k, c in counts.items() if c == 1]
                if not once:
                    continue
                k = once[0]
                i = next(i for i, l in enumerate(r) if abs(l) - 1 == k)
                rot = r[i:] + r[:i]
                value = inverse(rot[1:]) if rot[0] > 0 else rot[1:]
                others = [_subst_one(s, k, value) for j, s in enumerate(rels) if j != idx]
                # renumber generators above k
                def shift(l):
                    g = abs(l) - 1
                    g = g - 1 if g > k else g
                    return (g + 1) * (1 if l > 0 else -1)
                rels = [tuple(shift(l) for l in s) for s in others]
                n -= 1
                break
    return n, rels
