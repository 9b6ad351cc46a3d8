"""Command-line front end.

Every verb prints one report (JSON by default) to stdout. Exit status is 0
for confirmed/value/exploratory verdicts, 1 for refuted, 2 for usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field

from . import __version__
from .characters import annihilator, chi_sum, decompose_union, is_zero
from .core import ResidueSet, format_set, parse_int_list
from .factorization import (
    find_complements,
    is_complete_residue_system,
    is_factorization,
    stabilizer,
    sumset_profile,
)
from .harness import DEFAULT_TARGET, FAMILIES, FILTERS, SCANS, ScanSpec, run_scan
from .splitting import (
    discrete_log_set,
    is_nonsingular,
    is_splitting,
    multiplier_set,
    search_splitting_sets,
    tightness_construction,
)

VERBS = (
    "verify-fact",
    "complements",
    "crs",
    "stabilizer",
    "chi",
    "annihilator",
    "decompose",
    "split-verify",
    "split-search",
    "dlog-bridge",
    "tightness",
    "scan",
)
EXIT_CODES = {"confirmed": 0, "value": 0, "exploratory": 0, "refuted": 1}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _set_literal(text: str) -> list[int]:
    try:
        return parse_int_list(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _int_range(text: str) -> tuple[int, int]:
    vals = text.strip().split("..")
    try:
        if len(vals) == 1:
            lo = hi = int(vals[0])
        elif len(vals) == 2:
            lo, hi = int(vals[0]), int(vals[1])
        else:
            raise ValueError
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed range {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"range {text!r} has lower bound above upper bound")
    return lo, hi


@dataclass
class Command:
    verb: str
    arguments: dict
    output_format: str = "json"
    argv: list[str] = field(default_factory=list)


@dataclass
class ReportEnvelope:
    command: str
    verdict: str
    payload: dict
    counterexamples: list = field(default_factory=list)
    rows: list[dict] | None = None
    tool_version: str = __version__

    def __post_init__(self):
        if self.verdict == "refuted" and not self.counterexamples:
            raise ValueError("a refuted report needs at least one counterexample")

    def to_dict(self) -> dict:
        return {
            "tool_version": self.tool_version,
            "command": self.command,
            "verdict": self.verdict,
            "payload": self.payload,
            "counterexamples": self.counterexamples,
        }

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.verdict]


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=("json", "csv", "table"), default="json")

    parser = _Parser(prog="cycfact", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="verb", metavar="VERB")
    sub.required = True

    def verb(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text)

    p = verb("verify-fact", "check that A + B factorizes Z_omega")
    p.add_argument("--omega", type=int, required=True)
    p.add_argument("--a", type=_set_literal, required=True)
    p.add_argument("--b", type=_set_literal, required=True)

    p = verb("complements", "list every B with A + B = Z_omega")
    p.add_argument("--omega", type=int, required=True)
    p.add_argument("--a", type=_set_literal, required=True)
    p.add_argument("--normalized", action="store_true", help="only complements containing 0")
    p.add_argument("--max", dest="max_results", type=int, default=None)

    p = verb("crs", "is A a complete residue system mod n")
    p.add_argument("--a", type=_set_literal, required=True)
    p.add_argument("--n", type=int, required=True)

    p = verb("stabilizer", "stable subgroup and coset representatives of A")
    p.add_argument("--omega", type=int, required=True)
    p.add_argument("--a", type=_set_literal, required=True)

    p = verb("chi", "exact character sum chi_t(A)")
    p.add_argument("--omega", type=int, required=True)
    p.add_argument("--a", type=_set_literal, required=True)
    p.add_argument("--t", type=int, required=True)

    p = verb("annihilator", "characters vanishing on A")
    p.add_argument("--omega", type=int, required=True)
    p.add_argument("--a", type=_set_literal, required=True)

    p = verb("decompose", "write A as a disjoint union (H + E) u (K + F)")
    p.add_argument("--omega", type=int, required=True)
    p.add_argument("--h", type=_set_literal, required=True)
    p.add_argument("--k", type=_set_literal, required=True)
    p.add_argument("--a", type=_set_literal, required=True)

    p = verb("split-verify", "check that M S splits Z_g \\ {0}")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--m", type=_set_literal, required=True)
    p.add_argument("--s", type=_set_literal, required=True)

    p = verb("split-search", "list splitting sets of Z_g for M")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--m", type=_set_literal, required=True)
    p.add_argument("--max", dest="max_results", type=int, default=None)

    p = verb("dlog-bridge", "exponent set of M in Z_ord_p(m) and its complements")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--mset", type=_set_literal, required=True)
    p.add_argument("--max", dest="max_results", type=int, default=None)

    p = verb("tightness", "the n = 2k splitting whose exponents are not CRS mod n")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--m", type=int, required=True)

    p = verb("scan", "exhaustive family scan")
    p.add_argument("--config", help="key=value file; flags override its values")
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--target", choices=sorted(SCANS))
    p.add_argument("--omega", type=_int_range)
    p.add_argument("--n", type=_int_range)
    p.add_argument("--k", type=_int_range)
    p.add_argument("--filter", action="append", choices=FILTERS)
    p.add_argument("--allow-tight", action="store_true", default=None)
    p.add_argument("--summary", action="store_true", help="omit per-instance rows from JSON")
    return parser


CONFIG_KEYS = {"family", "target", "omega", "n", "k", "filter", "allow_tight"}


def read_config(path: str) -> dict:
    out: dict = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in CONFIG_KEYS:
                raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
            try:
                if key in ("omega", "n", "k"):
                    out[key] = _int_range(value)
                elif key == "filter":
                    out[key] = [f.strip() for f in value.split(",") if f.strip()]
                elif key == "allow_tight":
                    out[key] = value.lower() in ("1", "true", "yes")
                else:
                    out[key] = value
            except argparse.ArgumentTypeError as exc:
                raise UsageError(f"{path}:{lineno}: {exc}") from None
    return out


def _scan_spec(args: dict) -> tuple[ScanSpec, str]:
    merged = read_config(args["config"]) if args.get("config") else {}
    for key in CONFIG_KEYS:
        if args.get(key) is not None:
            merged[key] = args[key]
    for key in ("family", "omega", "n"):
        if key not in merged:
            raise UsageError(f"scan needs --{key} (flag or config)")
    try:
        spec = ScanSpec(
            family=merged["family"],
            omega_range=merged["omega"],
            n_range=merged["n"],
            k_range=merged.get("k", (1, 1)),
            filters=tuple(merged.get("filter") or ("none",)),
            allow_tight=bool(merged.get("allow_tight", False)),
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    target = merged.get("target") or DEFAULT_TARGET[spec.family]
    if target not in SCANS:
        raise UsageError(f"argument --target: unknown scan {target!r}")
    return spec, target


def parse_command(argv: list[str]) -> Command:
    ns = build_parser().parse_args(argv)
    args = vars(ns)
    verb = args.pop("verb")
    fmt = args.pop("output_format")
    if fmt == "csv" and verb != "scan":
        raise UsageError(f"argument --format: csv output is only available for scan, not {verb}")
    for key in ("omega", "g", "p") if verb != "scan" else ():
        if key in args and args[key] is not None and args[key] < 1:
            raise UsageError(f"argument --{key}: modulus must be positive")
    if verb == "scan":
        args["spec"], args["target"] = _scan_spec(args)
    return Command(verb, args, fmt, list(argv))


def _residues(flag: str, values: list[int], omega: int, nonempty: bool = True) -> ResidueSet:
    if len({v % omega for v in values}) != len(values):
        raise UsageError(f"argument --{flag}: elements collide modulo {omega}")
    if nonempty and not values:
        raise UsageError(f"argument --{flag}: set must be nonempty")
    return ResidueSet.of(omega, values)


def _sets(sets) -> list[list[int]]:
    return [s.to_list() for s in sets]


def dispatch(cmd: Command) -> ReportEnvelope:
    a = cmd.arguments
    echo = " ".join(cmd.argv)
    v = cmd.verb

    if v == "verify-fact":
        A = _residues("a", a["a"], a["omega"])
        B = _residues("b", a["b"], a["omega"])
        ok = is_factorization(A, B)
        payload = {"omega": a["omega"], "A": A.to_list(), "B": B.to_list(), "is_factorization": ok}
        if ok:
            return ReportEnvelope(echo, "confirmed", payload)
        g = sumset_profile(A, B).first_defect()
        mult = sumset_profile(A, B).multiplicity[g]
        cx = [{"g": g, "multiplicity": mult, "reason": "duplicate_sum" if mult > 1 else "uncovered"}]
        return ReportEnvelope(echo, "refuted", payload, cx)

    if v == "complements":
        A = _residues("a", a["a"], a["omega"])
        comps = find_complements(A, normalized_only=a["normalized"], max_results=a["max_results"])
        payload = {
            "omega": a["omega"],
            "A": A.to_list(),
            "normalized_only": a["normalized"],
            "count": len(comps),
            "complements": _sets(comps),
        }
        return ReportEnvelope(echo, "value", payload)

    if v == "crs":
        if len(a["a"]) != a["n"]:
            raise UsageError(f"argument --n: set has {len(a['a'])} elements, not {a['n']}")
        n = a["n"]
        if n < 1:
            raise UsageError("argument --n: must be positive")
        # Any multiple of n wider than the spread of A keeps the integers distinct.
        spread = max(a["a"]) - min(a["a"]) + 1
        A = ResidueSet.of(n * -(-spread // n), a["a"])
        payload = {"A": sorted(a["a"]), "n": n, "residues": [x % n for x in a["a"]], "crs": is_complete_residue_system(A, n)}
        return ReportEnvelope(echo, "value", payload)

    if v == "stabilizer":
        A = _residues("a", a["a"], a["omega"])
        rep = stabilizer(A)
        payload = {
            "omega": a["omega"],
            "A": A.to_list(),
            "stabilizer": rep.stabilizer.to_list(),
            "is_periodic": rep.is_periodic,
            "coset_reps": rep.coset_reps.to_list(),
        }
        return ReportEnvelope(echo, "value", payload)

    if v == "chi":
        A = _residues("a", a["a"], a["omega"], nonempty=False)
        x = chi_sum(A, a["t"])
        payload = {
            "omega": a["omega"],
            "A": A.to_list(),
            "t": a["t"] % a["omega"],
            "coeffs": list(x.coeffs),
            "order": x.order(),
            "is_zero": is_zero(x),
        }
        return ReportEnvelope(echo, "value", payload)

    if v == "annihilator":
        A = _residues("a", a["a"], a["omega"])
        return ReportEnvelope(echo, "value", {"omega": a["omega"], "A": A.to_list(), "annihilator": sorted(annihilator(A))})

    if v == "decompose":
        omega = a["omega"]
        H, K = _residues("h", a["h"], omega), _residues("k", a["k"], omega)
        A = _residues("a", a["a"], omega)
        try:
            dec = decompose_union(H, K, A)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        payload = {"omega": omega, "H": H.to_list(), "K": K.to_list(), "A": A.to_list()}
        payload["decomposition"] = None if dec is None else {"E": dec[0].to_list(), "F": dec[1].to_list()}
        return ReportEnvelope(echo, "value", payload)

    if v == "split-verify":
        M = _multipliers(a["m"])
        S = _residues("s", a["s"], a["g"], nonempty=False)
        ok = is_splitting(M, S, a["g"])
        payload = {"g": a["g"], "M": list(M), "S": S.to_list(), "nonsingular": is_nonsingular(M, a["g"]), "is_splitting": ok}
        if ok:
            return ReportEnvelope(echo, "confirmed", payload)
        return ReportEnvelope(echo, "refuted", payload, [_split_defect(M, S, a["g"])])

    if v == "split-search":
        M = _multipliers(a["m"])
        found = search_splitting_sets(M, a["g"], max_results=a["max_results"])
        return ReportEnvelope(echo, "value", {"g": a["g"], "M": list(M), "count": len(found), "splitting_sets": _sets(found)})

    if v == "dlog-bridge":
        M = _multipliers(a["mset"])
        try:
            A = discrete_log_set(M, a["m"], a["p"])
        except ValueError as exc:
            raise UsageError(f"argument --m: {exc}") from None
        payload = {"p": a["p"], "m": a["m"], "M": list(M), "exponents": None, "order": None, "complements": []}
        if A is not None:
            payload["exponents"] = A.to_list()
            payload["order"] = A.omega
            payload["complements"] = _sets(find_complements(A, normalized_only=True, max_results=a["max_results"]))
        return ReportEnvelope(echo, "value", payload)

    if v == "tightness":
        try:
            rep = tightness_construction(a["k"], a["p"], a["m"])
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        payload = {
            "k": rep.k,
            "p": rep.p,
            "m": rep.m,
            "M": list(rep.M),
            "S": rep.S.to_list(),
            "exponents": rep.exponents.to_list(),
            "order": rep.exponents.omega,
            "is_splitting": rep.splits,
            "exponents_crs": rep.exponents_crs,
        }
        if rep.confirms_tightness:
            return ReportEnvelope(echo, "confirmed", payload)
        return ReportEnvelope(echo, "refuted", payload, [{"reason": "construction_failed", **payload}])

    if v == "scan":
        report = run_scan(a["spec"], a["target"])
        body = report.to_dict(include_instances=not a["summary"])
        cx = body.pop("counterexamples")
        verdict = body.pop("verdict")
        print(f"scan {report.name}: {report.instances_checked} instances in {report.elapsed:.2f}s", file=sys.stderr)
        return ReportEnvelope(echo, verdict, body, cx, rows=report.instances or cx)

    raise UsageError(f"unknown verb {v!r}")


def _multipliers(values: list[int]) -> tuple[int, ...]:
    try:
        return multiplier_set(values)
    except ValueError as exc:
        raise UsageError(f"argument --m: {exc}") from None


def _split_defect(M, S: ResidueSet, g_mod: int) -> dict:
    counts = [0] * g_mod
    for s in S.members():
        for m in M:
            counts[m * s % g_mod] += 1
    if counts[0]:
        return {"g": 0, "multiplicity": counts[0], "reason": "zero_represented"}
    g = next(x for x in range(1, g_mod) if counts[x] != 1)
    return {"g": g, "multiplicity": counts[g], "reason": "duplicate_product" if counts[g] > 1 else "unrepresented"}


def _cell(v) -> str:
    if isinstance(v, list) and all(isinstance(x, int) for x in v):
        if all(x < y for x, y in zip(v, v[1:])):
            return format_set(v)
        return ",".join(map(str, v))
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True)
    return str(v)


def emit_report(env: ReportEnvelope, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(env.to_dict(), sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        rows = env.rows or []
        cols = sorted({k for r in rows for k in r})
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([_cell(r.get(c, "")) for c in cols])
        return buf.getvalue()
    lines = [f"verdict  {env.verdict}"]
    items = [(k, v) for k, v in sorted(env.payload.items()) if k != "instances"]
    width = max((len(k) for k, _ in items), default=0)
    lines += [f"{k.ljust(width)}  {_cell(v)}" for k, v in items]
    for cx in env.counterexamples:
        lines.append("counterexample  " + _cell(cx))
    return "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        cmd = parse_command(argv)
        env = dispatch(cmd)
    except (UsageError, ValueError) as exc:
        print(f"cycfact: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(emit_report(env, cmd.output_format))
    return env.exit_code


if __name__ == "__main__":
    sys.exit(main())
