"""Quick oracle-agreement suite behind ``eaqmds selfcheck``."""

from __future__ import annotations

import random

from eaqmds import cyclic, families, gfield
from eaqmds.verify import gram_rank
from eaqmds.zmod import decompose


def _agreement(q: int, n: int) -> tuple[bool, str]:
    tower = gfield.make_tower(q)
    bad = []
    s = (n + 1) // 2
    for k in range(s - 1):
        T = cyclic.build_T(cyclic.ConsecutiveSpec(q, n, k))
        code = cyclic.build_code(T, tower)
        g, c = gram_rank(tower.base, code.H, q), len(decompose(T).tss)
        if g != c:
            bad.append((k, g, c))
    return not bad, f"{s - 1} run indices, disagreements {bad}"


def _axioms(F: gfield.Field, trials: int, seed: int = 0) -> tuple[bool, str]:
    rng = random.Random(seed)
    for _ in range(trials):
        a, b, c = (rng.randrange(F.order) for _ in range(3))
        if F.mul(a, F.add(b, c)) != F.add(F.mul(a, b), F.mul(a, c)):
            return False, f"distributivity fails at {(a, b, c)}"
        if F.mul(F.mul(a, b), c) != F.mul(a, F.mul(b, c)):
            return False, f"associativity fails at {(a, b, c)}"
        if a and F.mul(a, F.inv(a)) != 1:
            return False, f"inverse fails at {a}"
    return True, f"{trials} random triples in GF({F.order})"


def _anchor(res: families.FamilyResult, expected: list[str]) -> tuple[bool, str]:
    got = [r.label for r in res.records]
    ok = got == expected and all(
        r.saturation == "saturated" and r.gram_rank == r.tss_size == 4 for r in res.records
    )
    return ok, ", ".join(got)


def run_all() -> list[tuple[str, bool, str]]:
    out = []
    out.append(("gram rank = |T_ss|, q=13", *_agreement(13, 17)))
    out.append(("gram rank = |T_ss|, q=17", *_agreement(17, 29)))
    out.append(("field axioms GF(13^2)", *_axioms(gfield.quadratic_field(13), 200)))
    f1 = families.family1(3, 1)
    out.append(("Table 1 anchor q=13", *_anchor(f1, ["[[17,9,7;4]]_13", "[[17,5,9;4]]_13", "[[17,1,11;4]]_13"])))
    f2 = families.family2(7, 1)
    out.append(("Table 2 anchor q=17", *_anchor(f2, ["[[29,17,9;4]]_17", "[[29,13,11;4]]_17", "[[29,9,13;4]]_17"])))
    kinds = {r.kind for r in f2.reports}
    out.append(("discrepancies detected at F2(7,1)", kinds == {"rangeMismatch", "tssFormulaMismatch"}, str(sorted(kinds))))
    return out
