"""Command-line front end.

    eaqmds cosets --n 17 --q 13
    eaqmds decompose --n 17 --q 13 --k 4
    eaqmds code --family 1 --l 3 --m 1 --d 7
    eaqmds verify --family 2 --l 7 --m 1 --all-d
    eaqmds tables --which 2
    eaqmds sweep --family 1 --l-range 3..5 --m-range 1..4
    eaqmds selfcheck

stdout carries the payload (json by default), stderr the logs.  Exit codes:
0 success, 1 failed verification or discrepancy under ``--strict``, 2 usage.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from eaqmds import __version__, cyclic, families, gfield, zmod
from eaqmds.verify import DEFAULT_MINOR_CAP, EAQMDSRecord, eaqmds_record

log = logging.getLogger("eaqmds")

RECORD_FIELDS = ["q", "n", "k", "d", "c", "saturation", "mdsVerified", "gramRank", "tssSize", "runIndex"]


@dataclass
class RunConfig:
    command: str
    output: str
    cap: int
    jobs: int
    strict: bool


@dataclass
class Outcome:
    params: dict
    records: list[EAQMDSRecord]
    reports: list[families.DiscrepancyReport]
    extra: dict
    text: str
    failed: bool = False


def _int_range(text: str) -> range:
    try:
        lo, hi = (int(x) for x in text.split(".."))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(lo, hi + 1)


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output", choices=["json", "csv", "text"], default="json")
    common.add_argument("--cap", type=_positive, default=DEFAULT_MINOR_CAP,
                        help="largest number of column subsets the MDS check will enumerate")
    common.add_argument("--jobs", type=_positive, default=1, help="worker processes for sweeps")
    common.add_argument("--strict", action="store_true",
                        help="exit 1 on any failed verification or reported discrepancy")
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="eaqmds", description=__doc__.split("\n\n")[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cosets", parents=[common], help="q^2-cyclotomic cosets modulo n")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--q", type=_positive, required=True)

    p = sub.add_parser("decompose", parents=[common], help="split T = C_s u ... u C_{s+k}")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--q", type=_positive, required=True)
    p.add_argument("--k", type=int, required=True)

    def family_args(p):
        p.add_argument("--family", type=int, choices=[1, 2], required=True)
        p.add_argument("--l", type=int, required=True)
        p.add_argument("--m", type=int, required=True)

    p = sub.add_parser("code", parents=[common], help="one cyclic code and its EA record")
    family_args(p)
    p.add_argument("--d", type=int, required=True)

    p = sub.add_parser("verify", parents=[common], help="verify a family member")
    family_args(p)
    p.add_argument("--all-d", action="store_true", help="every odd d in range, not just the ends")

    p = sub.add_parser("tables", parents=[common], help="regenerate a published table")
    p.add_argument("--which", type=int, choices=[1, 2, 3], required=True)
    p.add_argument("--full-max-q", type=int, default=31)

    p = sub.add_parser("sweep", parents=[common], help="grid over (l, m)")
    p.add_argument("--family", type=int, choices=[1, 2], required=True)
    p.add_argument("--l-range", type=_int_range, required=True)
    p.add_argument("--m-range", type=_int_range, required=True)
    p.add_argument("--full", action="store_true", help="build matrices for every instance")

    sub.add_parser("selfcheck", parents=[common], help="built-in oracle agreement suite")
    return ap


# ---------------------------------------------------------------------------
# commands


def _coset_json(c: zmod.CyclotomicCoset) -> list[int]:
    return list(c.elements)


def cmd_cosets(args, cfg: RunConfig) -> Outcome:
    cosets = zmod.all_cosets(args.n, args.q)
    text = "\n".join(f"C_{c.representative} = {c}" for c in cosets)
    return Outcome({"n": args.n, "q": args.q}, [], [], {"cosets": [_coset_json(c) for c in cosets]}, text)


def cmd_decompose(args, cfg: RunConfig) -> Outcome:
    spec = cyclic.ConsecutiveSpec(args.q, args.n, args.k)
    T = cyclic.build_T(spec)
    dec = zmod.decompose(T)
    witnesses = [
        {"kind": w.kind, "rep": w.rep, **({"partner": w.partner} if w.kind == "asymmetric_pair" else {})}
        for w in dec.witnesses
    ]
    extra = {
        "T": T.sorted_elements(),
        "tss": [_coset_json(c) for c in dec.tss.cosets],
        "tsas": [_coset_json(c) for c in dec.tsas.cosets],
        "tssSize": len(dec.tss),
        "witnesses": witnesses,
    }
    pairs = [w for w in dec.witnesses if isinstance(w, zmod.SkewAsymmetricPair)]
    text = "\n".join(
        [
            f"T = {T.sorted_elements()}",
            f"|T_ss| = {len(dec.tss)}: " + " u ".join(map(str, dec.tss.cosets)),
            f"|T_sas| = {len(dec.tsas)}",
        ]
        + [f"pair C_{w.rep} <-> C_{w.partner}" for w in pairs]
        + [f"skew symmetric C_{w.rep}" for w in dec.witnesses if isinstance(w, zmod.SkewSymmetric)]
    )
    return Outcome({"n": args.n, "q": args.q, "k": args.k}, [], [], extra, text)


def _params(args) -> families.FamilyParams:
    return families.FamilyParams(f"F{args.family}", args.l, args.m)


def _record_bad(r: EAQMDSRecord) -> bool:
    return (
        r.saturation != "saturated"
        or r.mds_verified == "notMds"
        or (r.gram_rank is not None and r.gram_rank != r.tss_size)
    )


def cmd_code(args, cfg: RunConfig) -> Outcome:
    p = _params(args)
    if args.d % 2 == 0 or args.d < 3:
        raise UsageError(f"d={args.d} must be odd and >= 3")
    k = (args.d - 3) // 2
    T = cyclic.build_T(cyclic.ConsecutiveSpec(p.q, p.n, k))
    tower = gfield.make_tower(p.q)
    code = cyclic.build_code(T, tower)
    rec = eaqmds_record(T, tower.base, code.H, code.designed_distance, cfg.cap, run_index=k)
    F = tower.base
    extra = {
        "field": {"p": F.p, "e": F.e, "modulus": list(F.modulus)},
        "T": T.sorted_elements(),
        "generator": [list(F.to_coeffs(c)) for c in code.g],
        "dimension": code.dimension,
        "designedDistance": code.designed_distance,
        "checkMatrix": code.H.tolist(),
    }
    text = "\n".join(
        [
            f"{p}: T = C_{p.s} u ... u C_{p.s + k} ({len(T)} residues)",
            f"classical code [{p.n},{code.dimension},{code.designed_distance}] over GF({F.order})",
            f"g(x) of degree {len(code.g) - 1}",
            f"{rec.label}: gram rank {rec.gram_rank}, |T_ss| {rec.tss_size}, "
            f"{rec.saturation}, MDS check {rec.mds_verified}",
        ]
    )
    return Outcome(p.to_json() | {"d": args.d}, [rec], [], extra, text, failed=_record_bad(rec))


def _family_text(res: families.FamilyResult) -> str:
    lines = [str(res.params)]
    for name, claim in res.claims.items():
        if claim is not None:
            ok = res.agreements.get(name)
            mark = "" if ok is None else ("  agrees" if ok else "  DISAGREES")
            lines.append(f"  {name:<9} {claim.render()}{mark}")
    for r in res.records:
        lines.append(
            f"  {r.label}: c(gram)={r.gram_rank} c(coset)={r.tss_size} {r.saturation} mds={r.mds_verified}"
        )
    for rep in res.reports:
        lines.append(f"  [{rep.kind}] claimed {rep.paper}; computed {rep.computed}")
    return "\n".join(lines)


def cmd_verify(args, cfg: RunConfig) -> Outcome:
    p = _params(args)
    res = families.family(p, full=True, cap=cfg.cap, records=False)
    comp = res.claims["computed"]
    if comp is not None:
        ks = range(int(comp.k_min), int(comp.k_max) + 1)
        if not args.all_d:
            ks = sorted({ks[0], ks[-1]})
        tower = gfield.make_tower(p.q)
        for k in ks:
            T = cyclic.build_T(cyclic.ConsecutiveSpec(p.q, p.n, k))
            code = cyclic.build_code(T, tower)
            res.records.append(
                eaqmds_record(T, tower.base, code.H, code.designed_distance, cfg.cap, run_index=k)
            )
    failed = comp is None or any(_record_bad(r) for r in res.records)
    extra = {
        "claims": {k: (v.to_json() if v else None) for k, v in res.claims.items()},
        "agreements": res.agreements,
        "tss": [_coset_json(c) for c in res.tss],
    }
    return Outcome(p.to_json(), res.records, res.reports, extra, _family_text(res), failed)


def cmd_tables(args, cfg: RunConfig) -> Outcome:
    tab = families.reproduce_tables(args.which, full_max_q=args.full_max_q, cap=cfg.cap)
    failed = any(_record_bad(r) for r in tab.records)
    return Outcome({"which": args.which}, tab.records, tab.reports, {"rows": tab.rows}, tab.render(), failed)


def _sweep_task(task):
    return families.sweep_one(*task)


def cmd_sweep(args, cfg: RunConfig) -> Outcome:
    tag = f"F{args.family}"
    tasks = [(tag, l, m, args.full, cfg.cap) for l in args.l_range for m in args.m_range]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            entries = list(pool.map(_sweep_task, tasks))
    else:
        entries = [_sweep_task(t) for t in tasks]
    records, reports, grid, lines = [], [], [], []
    for e in entries:
        if e.result is None:
            grid.append({"l": e.l, "m": e.m, "skipped": e.skipped})
            lines.append(f"l={e.l} m={e.m}: skipped ({e.skipped})")
            continue
        res = e.result
        records += res.records
        reports += res.reports
        comp = res.claims["computed"]
        grid.append(
            {
                "l": e.l,
                "m": e.m,
                "q": res.params.q,
                "n": res.params.n,
                "computed": comp.to_json() if comp else None,
                "agreements": res.agreements,
            }
        )
        lines.append(_family_text(res))
    failed = any(_record_bad(r) for r in records)
    params = {"family": tag, "lRange": [args.l_range[0], args.l_range[-1]],
              "mRange": [args.m_range[0], args.m_range[-1]], "full": args.full}
    return Outcome(params, records, reports, {"grid": grid}, "\n".join(lines), failed)


def cmd_selfcheck(args, cfg: RunConfig) -> Outcome:
    from eaqmds import selfcheck

    results = selfcheck.run_all()
    lines = [f"{'PASS' if ok else 'FAIL'}  {name}: {detail}" for name, ok, detail in results]
    extra = {"checks": [{"name": n, "pass": ok, "detail": d} for n, ok, d in results]}
    return Outcome({}, [], [], extra, "\n".join(lines), failed=not all(ok for _, ok, _ in results))


COMMANDS = {
    "cosets": cmd_cosets,
    "decompose": cmd_decompose,
    "code": cmd_code,
    "verify": cmd_verify,
    "tables": cmd_tables,
    "sweep": cmd_sweep,
    "selfcheck": cmd_selfcheck,
}


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# output


def render(cfg: RunConfig, out: Outcome) -> str:
    if cfg.output == "text":
        return out.text + "\n"
    if cfg.output == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=RECORD_FIELDS, lineterminator="\n")
        w.writeheader()
        for r in out.records:
            w.writerow(r.to_json())
        return buf.getvalue()
    payload = {
        "version": __version__,
        "command": cfg.command,
        "params": out.params,
        "records": [r.to_json() for r in out.records],
        "reports": [r.to_json() for r in out.reports],
        "failed": out.failed,
        **out.extra,
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def run(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    cfg = RunConfig(args.command, args.output, args.cap, args.jobs, args.strict)
    try:
        out = COMMANDS[args.command](args, cfg)
    except (UsageError, families.SkipInstance, zmod.InvalidModulusError, gfield.NotPrimePowerError) as exc:
        print(f"eaqmds {args.command}: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        # bad flag combinations caught by the constructors (e.g. k out of range)
        print(f"eaqmds {args.command}: {exc}", file=sys.stderr)
        return 2
    stdout.write(render(cfg, out))
    if cfg.strict and (out.failed or out.reports):
        return 1
    return 0


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
