"""Command-line interface.

    indexdiv divset --poly "x^13+x^3+5" --N 200
    indexdiv graph --trinomial 13,3,5 --N 35 --format dot
    indexdiv zsig --trinomial 3,2,1 --n-max 6
    indexdiv perm --trinomial 5,3,7 --p 13
    indexdiv survey --family "x^3+x+c" --c 1..100 --N 5000
    indexdiv primes --P 100
    indexdiv density --P 1000000

Exit codes: 0 ok, 1 usage error, 2 computation budget exceeded,
3 invariant violation detected.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
import time
from dataclasses import asdict, dataclass

from . import __version__
from .divgraph import build_graph, export_graph, open_question_scan
from .divset import check_closure_properties, div_set_window
from .orbit import BitBudgetExceeded, UndecidedError, orbit_mod
from .permlocal import (
    density_scan,
    prime_in_divset_via_period,
    profile_mod_p,
    restriction_predicates,
)
from .poly import IntPolynomial, PolySyntaxError, parse_poly, render, trinomial
from .primes import is_prime, prime_sieve
from .zsigmondy import (
    DEFAULT_BIT_BUDGET,
    DEFAULT_N_MAX,
    RigidityViolation,
    check_growth,
    finiteness_verdict,
    primitive_split_prefix,
)

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_INVARIANT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class InvariantViolation(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    poly: str | None = None
    trinomial: tuple[int, int, int] | None = None
    N: int = 1000
    P: int = 1000
    p: int | None = None
    n_max: int = DEFAULT_N_MAX
    bit_budget: int = DEFAULT_BIT_BUDGET
    workers: int = 1
    format: str = "records"
    output: str | None = None
    family: str | None = None
    c: str | None = None
    timing: bool = False

    def polynomial(self) -> IntPolynomial:
        if (self.poly is None) == (self.trinomial is None):
            raise UsageError("give exactly one of --poly or --trinomial")
        if self.poly is not None:
            return parse_poly(self.poly)
        d, e, c = self.trinomial
        return IntPolynomial.from_trinomial(d, e, c)

    def validate(self) -> None:
        if self.N < 1:
            raise UsageError("--N must be >= 1")
        if self.n_max < 1:
            raise UsageError("--n-max must be >= 1")
        if self.workers < 1:
            raise UsageError("--workers must be >= 1")
        if self.bit_budget < 1:
            raise UsageError("--bit-budget must be >= 1")

    def echo(self) -> dict:
        out = {k: v for k, v in asdict(self).items() if v is not None and k not in ("output", "timing")}
        if self.trinomial is not None:
            out["trinomial"] = list(self.trinomial)
        return out


def _triple(text: str) -> tuple[int, int, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected d,e,c")
    try:
        return tuple(int(x) for x in parts)
    except ValueError:
        raise argparse.ArgumentTypeError("expected integers d,e,c") from None


def parse_int_range(text: str) -> list[int]:
    """``"1..100"``, ``"-3..3"``, ``"1,2,7"`` or mixtures like ``"1..5,10"``."""
    out = []
    for part in text.split(","):
        part = part.strip()
        m = re.fullmatch(r"(-?\d+)\.\.(-?\d+)", part)
        if m:
            lo, hi = int(m.group(1)), int(m.group(2))
            out.extend(range(lo, hi + 1))
        else:
            try:
                out.append(int(part))
            except ValueError:
                raise UsageError(f"bad integer range {text!r}") from None
    return out


def instantiate_family(template: str, c: int) -> IntPolynomial:
    """Substitute the parameter ``c`` into a polynomial template such as ``"x^3+x+c"``."""
    if not re.search(r"\bc\b", template):
        raise UsageError("family template must mention the parameter c")
    text = re.sub(r"\bc\b", str(c), template)
    text = text.replace("+-", "-").replace("--", "+")
    return parse_poly(text)


def read_config_file(path: str) -> list[str]:
    """key=value lines -> equivalent long flags. ``#`` starts a comment."""
    args = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            flag = "--" + key.replace("_", "-")
            if value.lower() in ("true", "yes") and key == "timing":
                args.append(flag)
            else:
                args += [flag, value]
    return args


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="indexdiv", description="Index divisibility sets of integer polynomials.")
    parser.add_argument("--version", action="version", version=f"indexdiv {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, poly=True, fmts=("records", "csv")):
        if poly:
            p.add_argument("--poly", help='polynomial, e.g. "x^13+x^3+5"')
            p.add_argument("--trinomial", type=_triple, help="d,e,c for x^d+x^e+c")
        p.add_argument("--config", help="key=value file; command-line flags take precedence")
        p.add_argument("--format", choices=fmts, default=fmts[0])
        p.add_argument("--output", "-o", help="write here instead of stdout")
        p.add_argument("--timing", action="store_true", help="add wall-clock time to the record")
        p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("divset", help="members of D in [1, N]")
    common(p)
    p.add_argument("--N", type=int, default=1000)
    p.add_argument("--closure", action="store_true", help="also check the closure properties of D")

    p = sub.add_parser("graph", help="index divisibility graph in [1, N]")
    common(p, fmts=("records", "dot", "csv"))
    p.add_argument("--N", type=int, default=1000)

    p = sub.add_parser("zsig", help="primitive parts, Zsigmondy set, growth, finiteness")
    common(p)
    p.add_argument("--n-max", type=int, default=DEFAULT_N_MAX)
    p.add_argument("--bit-budget", type=int, default=DEFAULT_BIT_BUDGET)
    p.add_argument("--N", type=int, default=1000, help="window for the finiteness check")

    p = sub.add_parser("perm", help="local analysis of f mod p")
    common(p)
    p.add_argument("--p", type=int, required=False)

    p = sub.add_parser("survey", help="open-question scan over a one-parameter family")
    common(p, poly=False)
    p.add_argument("--family", required=False, help='template with parameter c, e.g. "x^3+x+c"')
    p.add_argument("--c", required=False, help='parameter values, e.g. "1..100"')
    p.add_argument("--N", type=int, default=1000)

    p = sub.add_parser("primes", help="primes <= P")
    common(p, poly=False)
    p.add_argument("--P", type=int, default=100)

    p = sub.add_parser("density", help="share of primes p <= P with p = 1 mod 8 and ord_p(2) odd")
    common(p, poly=False)
    p.add_argument("--P", type=int, default=10**6)
    return parser


def _expand_argv(argv: list[str]) -> list[str]:
    """Splice config-file flags in right after the subcommand so later flags override them."""
    for i, a in enumerate(argv):
        path = None
        if a == "--config" and i + 1 < len(argv):
            path, rest = argv[i + 1], argv[:i] + argv[i + 2 :]
        elif a.startswith("--config="):
            path, rest = a.split("=", 1)[1], argv[:i] + argv[i + 1 :]
        if path is not None:
            cmd_idx = next((j for j, s in enumerate(rest) if not s.startswith("-")), 0)
            return rest[: cmd_idx + 1] + read_config_file(path) + rest[cmd_idx + 1 :]
    return argv


def _config_from(ns: argparse.Namespace) -> RunConfig:
    fields = RunConfig.__dataclass_fields__
    cfg = RunConfig(**{k: v for k, v in vars(ns).items() if k in fields})
    cfg.validate()
    return cfg


# --- commands ---------------------------------------------------------------


def cmd_divset(cfg: RunConfig, closure: bool = False) -> tuple[dict, str]:
    f = cfg.polynomial()
    window = div_set_window(f, cfg.N, cfg.workers)
    rows = []
    for n in window.members:
        orb = orbit_mod(f, n)
        rows.append({"n": n, "tail": orb.tail, "cycle": orb.cycle})
    result = {
        "polynomial": render(f),
        "bound": cfg.N,
        "degenerate": window.degenerate,
        "members": list(window.members),
        "periods": rows,
    }
    if closure:
        rep = check_closure_properties(f, window)
        result["closure"] = {
            "ok": rep.ok,
            "checked": rep.checked,
            "counterexamples": {k: [list(t) for t in v] for k, v in rep.counterexamples.items()},
            "skipped": rep.skipped,
        }
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "tail", "cycle"])
    for r in rows:
        w.writerow([r["n"], r["tail"], r["cycle"]])
    return result, buf.getvalue()


def cmd_graph(cfg: RunConfig):
    f = cfg.polynomial()
    g = build_graph(f, cfg.N)
    if cfg.format == "dot":
        return None, export_graph(g, "dot").decode()
    return json.loads(export_graph(g, "records")), export_graph(g, "csv").decode()


def cmd_zsig(cfg: RunConfig):
    f = cfg.polynomial()
    splits = primitive_split_prefix(f, cfg.n_max, cfg.bit_budget)
    result = {
        "polynomial": render(f),
        "n_max": cfg.n_max,
        "splits": [
            {"n": s.n, "primitive": str(s.primitive), "non_primitive": str(s.non_primitive)} for s in splits
        ],
        "zsigmondy": sorted(s.n for s in splits if s.primitive == 1),
    }
    tri = trinomial(f)
    if tri is not None:
        result["growth"] = [asdict(r) for r in check_growth(f, cfg.n_max, cfg.bit_budget)]
        v = finiteness_verdict(*tri, cfg.N)
        result["finiteness"] = {
            "classification": v.classification.value,
            "bound": v.bound,
            "members": list(v.members),
            "consistent": v.consistent,
        }
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "primitive", "non_primitive"])
    for s in splits:
        w.writerow([s.n, s.primitive, s.non_primitive])
    return result, buf.getvalue()


def cmd_perm(cfg: RunConfig):
    if cfg.p is None:
        raise UsageError("--p is required")
    if not is_prime(cfg.p):
        raise UsageError(f"--p {cfg.p} is not prime")
    f = cfg.polynomial()
    prof = profile_mod_p(f, cfg.p)
    result = {
        "polynomial": render(f),
        "p": cfg.p,
        "in_divset": prime_in_divset_via_period(f, cfg.p),
        "profile": {
            "is_permutation": prof.is_permutation,
            "cycle_type": list(prof.cycle_type),
            "parity": prof.parity.value,
            "zero_tail": prof.zero_tail,
            "zero_cycle": prof.zero_cycle,
        },
    }
    tri = cfg.trinomial or trinomial(f)
    if tri is not None:
        rep = restriction_predicates(*tri, cfg.p)
        result["restrictions"] = {
            "fired": sorted(r.value for r in rep.fired),
            "excluded": rep.excluded,
            "reduced_exponents": list(rep.reduced),
        }
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["p", "in_divset", "is_permutation", "parity", "zero_tail", "zero_cycle", "excluded"])
    w.writerow(
        [
            cfg.p,
            result["in_divset"],
            prof.is_permutation,
            prof.parity.value,
            prof.zero_tail,
            prof.zero_cycle,
            result.get("restrictions", {}).get("excluded", ""),
        ]
    )
    return result, buf.getvalue()


def cmd_survey(cfg: RunConfig):
    if not cfg.family or not cfg.c:
        raise UsageError("--family and --c are required")
    family = [instantiate_family(cfg.family, c) for c in parse_int_range(cfg.c)]
    results = open_question_scan(family, cfg.N, cfg.workers)
    rows = [
        {
            "polynomial": r.polynomial,
            "members": r.members,
            "edges": r.edges,
            "type1_only": r.type1_only,
            "type2_only": r.type2_only,
            "both": r.both,
            "counterexamples": [list(e) for e in r.counterexamples],
        }
        for r in results
    ]
    escaped = [(r.polynomial, e) for r in results for e in r.escaped]
    if escaped:
        raise InvariantViolation(f"rule-generated edges outside D: {escaped[:5]}")
    result = {
        "family": cfg.family,
        "bound": cfg.N,
        "polynomials": len(rows),
        "total_counterexamples": sum(len(r.counterexamples) for r in results),
        "rows": rows,
    }
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["polynomial", "members", "edges", "type1_only", "type2_only", "both", "counterexamples"])
    for r in results:
        w.writerow([r.polynomial, r.members, r.edges, r.type1_only, r.type2_only, r.both, len(r.counterexamples)])
    return result, buf.getvalue()


def cmd_primes(cfg: RunConfig):
    ps = prime_sieve(cfg.P)
    return {"bound": cfg.P, "count": len(ps), "primes": ps}, "p\n" + "".join(f"{p}\n" for p in ps)


def cmd_density(cfg: RunConfig):
    r = density_scan(cfg.P)
    result = {
        "bound": cfg.P,
        "qualifying": r.qualifying,
        "primes": r.total,
        "fraction": float(r.fraction),
        "reference": 1 / 24,
    }
    return result, f"bound,qualifying,primes,fraction\n{cfg.P},{r.qualifying},{r.total},{float(r.fraction)!r}\n"


COMMANDS = {
    "divset": cmd_divset,
    "graph": cmd_graph,
    "zsig": cmd_zsig,
    "perm": cmd_perm,
    "survey": cmd_survey,
    "primes": cmd_primes,
    "density": cmd_density,
}


def run(argv: list[str] | None = None, stdout=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    stdout = stdout or sys.stdout
    try:
        argv = _expand_argv(argv)
        ns = build_parser().parse_args(argv)
        cfg = _config_from(ns)
        start = time.perf_counter()
        if cfg.command == "divset":
            result, table = cmd_divset(cfg, ns.closure)
        else:
            result, table = COMMANDS[cfg.command](cfg)
        elapsed = time.perf_counter() - start
    except SystemExit as exc:  # argparse usage errors, --help, --version
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except (UsageError, PolySyntaxError, OSError) as exc:
        print(f"indexdiv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BitBudgetExceeded, UndecidedError) as exc:
        print(f"indexdiv: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (RigidityViolation, InvariantViolation, ArithmeticError) as exc:
        print(f"indexdiv: invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except ValueError as exc:
        print(f"indexdiv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if cfg.format == "records":
        doc = {
            "command": cfg.command,
            "config": {k: v for k, v in cfg.echo().items() if k in vars(ns)},
            "result": result,
            "provenance": {"package": "indexdiv", "version": __version__},
        }
        if cfg.timing:
            doc["provenance"]["seconds"] = round(elapsed, 3)
        text = json.dumps(doc, indent=2) + "\n"
    else:
        text = table
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
