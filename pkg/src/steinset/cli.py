"""Command-line front end.

Exit status: 0 for success (a Fails verdict is a result, not an error),
1 for verification failures (invalid witnesses, store corruption, failed
independence checks), 2 for usage or literal parse errors.

Set literals are ``"n:{a,b,c}"``, sequence specs
``"prefix=[...] cycle=[...]"``, thick family specs
``"sets=[{..},{..}] a_max=N"``, and sign vectors either compact ("+-+")
or comma separated ("+1,-1,+1").

The default store directory is ``./steinset-store``, overridable with
--store-dir or the STEINSET_STORE_DIR environment variable.
"""

from __future__ import annotations

import argparse
import json
import sys
import os
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .groups import CyclicSet
from .haight import (
    HaightWitness,
    SearchConfig,
    exhaustive_search,
    minimal_modulus,
    stochastic_search,
    verify_witness,
)
from .store import (
    StoreVerificationError,
    WitnessStore,
    make_haight_record,
    make_verdict_record,
    make_xi_record,
)
from .sumsets import iterated_sumset, pm_product, signed_product, sumset
from .thick import (
    DEFAULT_TUPLE_CAP,
    BudgetExceededError,
    ThickFamilySpec,
    independence_check,
    thick_intervals,
    xi_sequence,
)
from .verdicts import (
    NotSymmetricError,
    SeqSpec,
    Verdict,
    WitnessChainError,
    eps_verdict,
    example_family_c2n1,
    pm_verdict,
    sym_verdict,
    verify_haight_sequence,
)

DEFAULT_STORE_DIR = "steinset-store"
STORE_DIR_ENV = "STEINSET_STORE_DIR"


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    store_dir: Path
    output: str
    threads: int
    seed: int
    no_timestamp: bool

    def timestamp(self) -> int | None:
        return 0 if self.no_timestamp else None

    def open_store(self) -> WitnessStore:
        return WitnessStore(self.store_dir)


def _parse_literal(parse, text: str):
    try:
        return parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def parse_signs(text: str) -> tuple[int, ...]:
    """Sign vector from "+-+" or "+1,-1,+1" (or "1,-1")."""
    text = text.strip()
    if not text:
        raise UsageError("empty sign vector")
    if "," in text or text.lstrip("+-").startswith("1"):
        out = []
        for tok in text.split(","):
            tok = tok.strip()
            if tok in ("+1", "1"):
                out.append(1)
            elif tok == "-1":
                out.append(-1)
            else:
                raise UsageError(f"bad sign entry {tok!r}")
        return tuple(out)
    if set(text) <= {"+", "-"}:
        return tuple(1 if ch == "+" else -1 for ch in text)
    raise UsageError(f"bad sign vector {text!r}")


def emit(cfg: CliConfig, obj: dict, lines: list[str]) -> None:
    if cfg.output == "structured":
        print(json.dumps(obj, sort_keys=True, separators=(",", ":")))
    else:
        for line in lines:
            print(line)


def _verdict_obj(v: Verdict) -> dict:
    out: dict = {"holds": v.holds}
    if v.holds:
        out["k0"] = v.k0
        if v.sign_class is not None:
            out["sign_class"] = list(v.sign_class)
    else:
        out["witnesses"] = list(v.witnesses)
    return out


def _verdict_lines(v: Verdict) -> list[str]:
    if v.holds:
        lines = [f"verdict: Holds (k0={v.k0})"]
        if v.sign_class is not None:
            lines.append(f"sign class: ({v.sign_class[0]},{v.sign_class[1]})")
        return lines
    return [f"verdict: Fails (cycle positions {','.join(map(str, v.witnesses))})"]


def _emit_set_result(cfg: CliConfig, command: str, params: dict, result: CyclicSet) -> None:
    obj = {
        "command": command,
        **params,
        "modulus": result.modulus,
        "result": list(result.members()),
        "full": result.is_full(),
    }
    lines = [
        f"result: {result.to_literal()}",
        f"full: {'yes' if result.is_full() else 'no'}",
    ]
    emit(cfg, obj, lines)


# ---------------------------------------------------------------- handlers


def cmd_sumset(args, cfg: CliConfig) -> int:
    a = _parse_literal(CyclicSet.parse, args.a)
    b = _parse_literal(CyclicSet.parse, args.b)
    _emit_set_result(cfg, "sumset", {"a": a.to_literal(), "b": b.to_literal()}, sumset(a, b))
    return 0


def cmd_ksum(args, cfg: CliConfig) -> int:
    a = _parse_literal(CyclicSet.parse, args.a)
    _emit_set_result(cfg, "ksum", {"a": a.to_literal(), "k": args.k}, iterated_sumset(a, args.k))
    return 0


def cmd_signed(args, cfg: CliConfig) -> int:
    a = _parse_literal(CyclicSet.parse, args.a)
    signs = parse_signs(args.eps)
    _emit_set_result(
        cfg, "signed", {"a": a.to_literal(), "eps": list(signs)}, signed_product(a, signs)
    )
    return 0


def cmd_pm(args, cfg: CliConfig) -> int:
    a = _parse_literal(CyclicSet.parse, args.a)
    _emit_set_result(cfg, "pm", {"a": a.to_literal(), "m": args.m}, pm_product(a, args.m))
    return 0


def _run_verdict(args, cfg: CliConfig, op: str) -> int:
    spec = _parse_literal(SeqSpec.parse, args.spec)
    if op == "eps":
        param = parse_signs(args.eps)
        verdict = eps_verdict(spec, param)
    elif op == "pm":
        param = args.m
        verdict = pm_verdict(spec, args.m)
    else:
        param = args.m
        verdict = sym_verdict(spec, args.m)
    obj = {
        "command": f"verdict-{op}",
        "spec": spec.to_literal(),
        ("eps" if op == "eps" else "m"): (list(param) if op == "eps" else param),
        **_verdict_obj(verdict),
    }
    emit(cfg, obj, _verdict_lines(verdict))
    if getattr(args, "store", False):
        record = make_verdict_record(op, spec, param, verdict, producer=_producer(cfg), created_at=cfg.timestamp())
        cfg.open_store().append(record)
    return 0


def cmd_verdict_eps(args, cfg: CliConfig) -> int:
    return _run_verdict(args, cfg, "eps")


def cmd_verdict_pm(args, cfg: CliConfig) -> int:
    return _run_verdict(args, cfg, "pm")


def cmd_verdict_sym(args, cfg: CliConfig) -> int:
    return _run_verdict(args, cfg, "sym")


def cmd_example_c2n1(args, cfg: CliConfig) -> int:
    n = args.n
    spec = example_family_c2n1(n)
    holds = sym_verdict(spec, n)
    fails = pm_verdict(spec, n - 1)
    obj = {
        "command": "example-c2n1",
        "n": n,
        "spec": spec.to_literal(),
        "sym_m": n,
        "sym": _verdict_obj(holds),
        "pm_m": n - 1,
        "pm": _verdict_obj(fails),
    }
    lines = [
        f"family: {spec.to_literal()}",
        f"sym verdict at m={n}: {holds.kind()}",
        f"pm verdict at m={n - 1}: {fails.kind()}",
    ]
    emit(cfg, obj, lines)
    return 0


def _producer(cfg: CliConfig, **extra) -> dict:
    return {"version": __version__, "seed": cfg.seed, **extra}


def _emit_witness_records(cfg: CliConfig, witnesses, producer: dict, store: bool) -> None:
    records = [
        make_haight_record(w, producer=producer, created_at=cfg.timestamp())
        for w in witnesses
    ]
    if store:
        st = cfg.open_store()
        for record in records:
            st.append(record)
    if cfg.output == "structured":
        for record in records:
            print(record.to_json_line())
    else:
        for w in witnesses:
            print(f"witness k={w.k} n={w.modulus} set={w.subset.to_literal()} cert={w.certificate}")


def cmd_haight_search(args, cfg: CliConfig) -> int:
    lo, hi = _parse_range(args.n_range)
    search_cfg = SearchConfig(
        k=args.k,
        n_range=(lo, hi),
        mode=args.mode,
        budget=args.budget,
        seed=args.search_seed if args.search_seed is not None else cfg.seed,
        max_set_size=args.max_set_size,
    )
    if args.mode == "exhaustive":
        witnesses = exhaustive_search(search_cfg, threads=cfg.threads)
    else:
        witnesses = stochastic_search(search_cfg, threads=cfg.threads)
    producer = _producer(
        cfg, mode=args.mode, budget=search_cfg.budget, k=args.k, seed=search_cfg.seed
    )
    _emit_witness_records(cfg, witnesses, producer, store=not args.no_store)
    summary = {"command": "haight-search", "k": args.k, "count": len(witnesses)}
    emit(cfg, summary, [f"found {len(witnesses)} witness class(es)"])
    return 0


def cmd_haight_verify(args, cfg: CliConfig) -> int:
    path = Path(args.file)
    if not path.exists():
        raise UsageError(f"no such file: {path}")
    witnesses: list[HaightWitness] = []
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
            payload = obj["payload"] if "payload" in obj else obj
            witnesses.append(HaightWitness.from_json_obj(payload))
        except (ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"line {lineno}: malformed witness: {exc}") from exc
    failures = []
    for i, w in enumerate(witnesses):
        ok, reason = verify_witness(w)
        if not ok:
            failures.append((i, reason))
    obj = {
        "command": "haight-verify",
        "total": len(witnesses),
        "valid": len(witnesses) - len(failures),
        "failures": [{"position": i, "reason": r} for i, r in failures],
    }
    lines = [f"checked {len(witnesses)} witness(es), {len(failures)} invalid"]
    lines += [f"  position {i}: {r}" for i, r in failures]
    if not failures and _is_complete_chain(witnesses):
        report = verify_haight_sequence(witnesses)
        obj["sequence"] = {
            "pm2_holds": report.pm2.holds,
            "pm2_class": list(report.pm2.sign_class) if report.pm2.sign_class else None,
            "tail_failures": {str(m): list(w) for m, w in report.tail_failures.items()},
            "ok": report.ok,
        }
        lines.append(
            f"chain k=1..{report.count}: pm verdict at 2 {report.pm2.kind()}"
            f" via {report.pm2.sign_class}, all-plus verdicts fail up to m={report.count}"
        )
    emit(cfg, obj, lines)
    return 1 if failures else 0


def _is_complete_chain(witnesses: list[HaightWitness]) -> bool:
    return bool(witnesses) and all(w.k == i + 1 for i, w in enumerate(witnesses))


def cmd_haight_minimal(args, cfg: CliConfig) -> int:
    found = minimal_modulus(args.k, args.cap)
    if found is None:
        emit(
            cfg,
            {"command": "haight-minimal", "k": args.k, "cap": args.cap, "n": None},
            [f"no witness for k={args.k} with modulus <= {args.cap}"],
        )
        return 0
    n, witness = found
    producer = _producer(cfg, mode="exhaustive", k=args.k)
    _emit_witness_records(cfg, [witness], producer, store=not args.no_store)
    emit(
        cfg,
        {"command": "haight-minimal", "k": args.k, "cap": args.cap, "n": n},
        [f"minimal modulus for k={args.k}: n={n}"],
    )
    return 0


def cmd_lemma1_xi(args, cfg: CliConfig) -> int:
    xi, big_xi = xi_sequence(args.m)
    obj = {"command": "lemma1-xi", "m": args.m, "xi": xi, "Xi": str(big_xi)}
    emit(cfg, obj, [f"xi({args.m}) = {xi}", f"Xi({args.m}) = {big_xi}"])
    if args.store:
        cfg.open_store().append(
            make_xi_record(args.m, producer=_producer(cfg), created_at=cfg.timestamp())
        )
    return 0


def cmd_lemma1_intervals(args, cfg: CliConfig) -> int:
    spec = _parse_literal(ThickFamilySpec.parse, args.spec)
    blocks = thick_intervals(spec)
    obj = {
        "command": "lemma1-intervals",
        "spec": spec.to_literal(),
        "sets": [
            [{"a": b.index, "lo": str(b.lo), "hi": str(b.hi)} for b in chunk]
            for chunk in blocks
        ],
    }
    lines = []
    for i, chunk in enumerate(blocks):
        lines.append(f"set {i}:")
        lines += [f"  a={b.index}: [{b.lo}, {b.hi}]" for b in chunk]
    emit(cfg, obj, lines)
    return 0


def cmd_lemma1_independence(args, cfg: CliConfig) -> int:
    spec = _parse_literal(ThickFamilySpec.parse, args.spec)
    result = independence_check(spec, args.m, tuple_cap=args.tuple_cap)
    obj = {
        "command": "lemma1-independence",
        "spec": spec.to_literal(),
        "m": args.m,
        "passed": result.passed,
        "tuples_checked": result.tuples_checked,
    }
    lines = [
        f"independence check at m={args.m}: {'pass' if result.passed else 'FAIL'}",
        f"tuples checked: {result.tuples_checked}",
    ]
    if result.counterexample is not None:
        ce = result.counterexample
        obj["counterexample"] = {
            "set_indices": list(ce.set_indices),
            "points": [str(x) for x in ce.points],
            "coefficients": list(ce.coefficients),
        }
        lines.append(
            f"zero sum: sets {list(ce.set_indices)}, points {list(ce.points)},"
            f" coefficients {list(ce.coefficients)}"
        )
    emit(cfg, obj, lines)
    return 0 if result.passed else 1


def cmd_store_reverify(args, cfg: CliConfig) -> int:
    report = cfg.open_store().reverify_all()
    obj = {
        "command": "store-reverify",
        "total": report.total,
        "ok": report.ok,
        "failures": [{"position": p, "reason": r} for p, r in report.failures],
        "malformed_lines": report.malformed_lines,
    }
    lines = [
        f"records: {report.total}, verified: {report.ok},"
        f" failures: {len(report.failures)}, malformed lines: {report.malformed_lines}"
    ]
    lines += [f"  position {p}: {r}" for p, r in report.failures]
    emit(cfg, obj, lines)
    return 0 if report.clean else 1


# ---------------------------------------------------------------- parser


def _parse_range(text: str) -> tuple[int, int]:
    try:
        lo_s, hi_s = text.split("..")
        return int(lo_s), int(hi_s)
    except ValueError as exc:
        raise UsageError(f"bad modulus range {text!r}, expected LO..HI") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="steinset",
        description="Sumsets, eventual-fullness verdicts, witness search and thick-set checks over cyclic groups.",
    )
    parser.add_argument("--version", action="version", version=f"steinset {__version__}")
    parser.add_argument(
        "--store-dir",
        default=os.environ.get(STORE_DIR_ENV, DEFAULT_STORE_DIR),
        help=f"result store directory (default: ${STORE_DIR_ENV} or ./{DEFAULT_STORE_DIR})",
    )
    parser.add_argument("--output", choices=("table", "structured"), default="table")
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--seed", type=int, default=0, help="default search seed")
    parser.add_argument(
        "--no-timestamp", action="store_true", help="record created_at=0 (reproducible output)"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sumset", help="A + B")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_sumset)

    p = sub.add_parser("ksum", help="k-fold sumset kA")
    p.add_argument("a")
    p.add_argument("k", type=int)
    p.set_defaults(func=cmd_ksum)

    p = sub.add_parser("signed", help="signed product along a sign vector")
    p.add_argument("a")
    p.add_argument("eps")
    p.set_defaults(func=cmd_signed)

    p = sub.add_parser("pm", help="m-fold sumset of A u (-A)")
    p.add_argument("a")
    p.add_argument("m", type=int)
    p.set_defaults(func=cmd_pm)

    p = sub.add_parser("verdict-eps", help="eventual fullness along a sign vector")
    p.add_argument("spec")
    p.add_argument("eps")
    p.add_argument("--store", action="store_true")
    p.set_defaults(func=cmd_verdict_eps)

    p = sub.add_parser("verdict-pm", help="eventual fullness of some sign-count class")
    p.add_argument("spec")
    p.add_argument("m", type=int)
    p.add_argument("--store", action="store_true")
    p.set_defaults(func=cmd_verdict_pm)

    p = sub.add_parser("verdict-sym", help="eventual fullness of the m-fold sumset (symmetric entries)")
    p.add_argument("spec")
    p.add_argument("m", type=int)
    p.add_argument("--store", action="store_true")
    p.set_defaults(func=cmd_verdict_sym)

    p = sub.add_parser("example-c2n1", help="the {-1,0,1} mod 2n+1 family and its two verdicts")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_example_c2n1)

    haight = sub.add_parser("haight", help="witness search and verification")
    hsub = haight.add_subparsers(dest="haight_command", required=True)

    p = hsub.add_parser("search", help="search an inclusive modulus range")
    p.add_argument("k", type=int)
    p.add_argument("--n-range", required=True, help="inclusive range LO..HI")
    p.add_argument("--mode", choices=("exhaustive", "stochastic"), default="exhaustive")
    p.add_argument("--budget", type=int, default=100_000)
    p.add_argument(
        "--seed", type=int, default=None, dest="search_seed", help="overrides the global --seed"
    )
    p.add_argument("--max-set-size", type=int, default=None)
    p.add_argument("--no-store", action="store_true")
    p.set_defaults(func=cmd_haight_search)

    p = hsub.add_parser("verify", help="verify witnesses from a JSON-lines file")
    p.add_argument("file")
    p.set_defaults(func=cmd_haight_verify)

    p = hsub.add_parser("minimal", help="least modulus admitting a witness")
    p.add_argument("k", type=int)
    p.add_argument("--cap", type=int, required=True)
    p.add_argument("--no-store", action="store_true")
    p.set_defaults(func=cmd_haight_minimal)

    lemma = sub.add_parser("lemma1", help="thick-set thresholds and checks")
    lsub = lemma.add_subparsers(dest="lemma1_command", required=True)

    p = lsub.add_parser("xi", help="threshold pair (xi, Xi) for a coefficient bound")
    p.add_argument("m", type=int)
    p.add_argument("--store", action="store_true")
    p.set_defaults(func=cmd_lemma1_xi)

    p = lsub.add_parser("intervals", help="expand a family spec into exact blocks")
    p.add_argument("spec")
    p.set_defaults(func=cmd_lemma1_intervals)

    p = lsub.add_parser("independence", help="exhaustive non-vanishing combination check")
    p.add_argument("spec")
    p.add_argument("m", type=int)
    p.add_argument("--tuple-cap", type=int, default=DEFAULT_TUPLE_CAP)
    p.set_defaults(func=cmd_lemma1_independence)

    storep = sub.add_parser("store", help="result store maintenance")
    ssub = storep.add_subparsers(dest="store_command", required=True)
    p = ssub.add_parser("reverify", help="recompute every stored record's verification")
    p.set_defaults(func=cmd_store_reverify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = CliConfig(
        store_dir=Path(args.store_dir),
        output=args.output,
        threads=max(1, args.threads),
        seed=args.seed,
        no_timestamp=args.no_timestamp,
    )
    try:
        return args.func(args, cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NotSymmetricError, StoreVerificationError, WitnessChainError) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1
    except BudgetExceededError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
