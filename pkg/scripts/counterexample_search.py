"""Look at random covers whose base set violates the component hypothesis.

For such an instance the fork cannot be built as usual, since the fiber over S
misses some component of E x_B E. This script keeps only the components it
does meet, coequalizes that truncated fork, and compares vertex-group
fingerprints with pi1(B, S). A differing fingerprint is a candidate instance
where the hypothesis cannot simply be dropped; agreement proves nothing.
The script only lists what it finds.

    python3 scripts/counterexample_search.py --seed 0 --trials 200
"""

import argparse
import random

from vankampen.colimits import coequalize, fingerprint, retraction
from vankampen.complex import check_hypothesis, cover_to_map, fiber_product, star_pieces
from vankampen.groups import small_groups
from vankampen.pi1 import path_word, pi1
from vankampen.presentation import PresentationMorphism, format_id
from vankampen.vkcheck import Bounds, random_complex, random_pieces


def induced(src, dst, m):
    objects = {o: m.vmap[o] for o in src.presentation.objects}
    arrows = {g: path_word(dst, m.map_path(w)) for g, w in src.witness.items()}
    return PresentationMorphism(src.presentation, dst.presentation, objects, arrows)


def truncated_comparison(c, S, groups):
    """Fingerprint pairs per base vertex, or a reason the comparison is undefined."""
    B, E, p = c.base, c.total, c.map
    if any(not comp & S for comp in B.components()):
        return "S misses a component of B"
    fiber = p.fiber(S)
    if any(not comp & fiber for comp in E.components()):
        return "fiber misses a component of E"
    P2, pr1, pr2 = fiber_product(p, p)
    lower_fiber = pr1.then(p).fiber(S)
    met = [comp for comp in P2.components() if comp & lower_fiber]
    vs = set().union(*met) if met else set()
    sub = P2.subcomplex(vs, [e for e, (a, _) in P2.edges.items() if a in vs],
                        [f for f in P2.faces if P2.boundary(f).source in vs])
    lower = pi1(sub, lower_fiber)
    middle = pi1(E, fiber)
    target = pi1(B, S)
    q = coequalize(lower.presentation, middle.presentation,
                   induced(lower, middle, pr1), induced(lower, middle, pr2))
    out = {}
    for rep, members in q.classes.items():
        images = {p.vmap[o] for o in members}
        if len(images) != 1:
            return "coequalizer identifies vertices over different base points"
        (b,) = images
        if b in out:
            return "two coequalizer objects over one base point"
        out[b] = (fingerprint(retraction(q.presentation, rep).group, groups),
                  fingerprint(retraction(target.presentation, b).group, groups))
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--max-order", type=int, default=6)
    args = ap.parse_args()
    groups = small_groups(args.max_order)
    bounds = Bounds(5, 8, 3, 5)
    violating = candidates = 0
    for seed in range(args.seed, args.seed + args.trials):
        rng = random.Random(seed)
        B = random_complex(rng, bounds)
        pieces = star_pieces(B) if rng.random() < 0.5 else random_pieces(B, rng)
        c = cover_to_map(B, pieces)
        S = frozenset(rng.sample(B.vertices, rng.randint(1, len(B.vertices))))
        if check_hypothesis(c, S).ok:
            continue
        violating += 1
        result = truncated_comparison(c, S, groups)
        if isinstance(result, str):
            print(f"seed {seed:5d}  {B.describe()}  skipped: {result}")
            continue
        differ = [b for b, (x, y) in result.items() if x != y]
        if differ:
            candidates += 1
            print(f"seed {seed:5d}  {B.describe()}  S={{{', '.join(map(format_id, sorted(S)))}}}  "
                  f"fingerprints differ at {', '.join(map(format_id, differ))}")
            for b in differ:
                x, y = result[b]
                print(f"    truncated coequalizer {x}\n    pi1(B, S)             {y}")
        else:
            print(f"seed {seed:5d}  {B.describe()}  fingerprints agree")
    print(f"\n{violating} hypothesis-violating instances, {candidates} with differing fingerprints")


if __name__ == "__main__":
    main()
