"""Command-line front end: ``tclab <command> --ring FILE ...``.

Every command prints one JSON document with ``--json`` (a short text
rendering otherwise). Ideal outputs are the sorted string forms of the
reduced Groebner basis under the ring's order, so outputs diff cleanly.

Exit codes: 0 success, 1 usage, 2 math-domain error, 3 verification-gate
failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

from . import charp
from .charp import CharPContext
from .differentials import (
    caveats_for,
    fitting_chain,
    fitting_ideal,
    jacobian_ideal,
    jacobian_matrix,
    rank_at_prime,
    regular_at,
    singular_locus,
)
from .dimension import (
    ComponentData,
    PrimeWitness,
    big_height,
    components_of,
    height,
    is_equiheight,
    krull_dim,
)
from .errors import AlgebraError, DomainError
from .groebner import Ideal
from .parse import parse_polynomial, split_top_level
from .ringfile import RingFile, parse_ring_file, read_components

SCHEMA = 1
EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_VERIFY = 0, 1, 2, 3
EXIT_FOR_CODE = {
    "E_ARG": EXIT_USAGE,
    "E_PARSE": EXIT_USAGE,
    "E_DOMAIN": EXIT_DOMAIN,
    "E_OVERFLOW": EXIT_DOMAIN,
    "E_VERIFY": EXIT_VERIFY,
}

COMMANDS = (
    "gb", "dim", "height", "min-primes", "equiheight", "jacobian", "fitting",
    "jacobian-ideal", "rank-at", "regular-at", "sing-locus", "frob-power",
    "tc-certify", "tc-refute", "frob-closure", "harness", "krull-check",
    "truncate", "sweep", "golden",
)
SWEEP_QUERIES = ("tc-certify", "tc-refute", "frob-closure", "harness")
CSV_COLUMNS = ("instance", "p", "query", "status", "bound_e", "witness", "caveats", "error", "wall_time")


class UsageError(AlgebraError):
    code = "E_ARG"


@dataclass
class JobSpec:
    command: str
    args: dict = field(default_factory=dict)  # option name -> string value


class Context:
    """A parsed ring file plus argument resolution against its names."""

    def __init__(self, rf: RingFile, components_text: str | None = None):
        self.rf = rf
        self.ring = rf.ring()
        self.algebra = rf.algebra()
        self.bindings = rf.bindings(self.ring)
        self._components_text = components_text
        self._components = None

    def poly(self, text: str):
        text = text.strip()
        if text in self.rf.polys:
            return self.bindings[text]
        return parse_polynomial(text, self.ring, self.bindings)

    def ideal(self, text: str | None) -> Ideal:
        if text is None:
            return self.algebra.defining_ideal
        text = text.strip()
        if text in self.rf.ideals:
            return self.rf.named_ideal(text, self.ring)
        if text.startswith("(") and text.endswith(")") and _balanced(text[1:-1]):
            text = text[1:-1]
        return Ideal(self.ring, [self.poly(p) for p, _ in split_top_level(text)])

    def polys(self, text: str) -> list:
        return [self.poly(p) for p, _ in split_top_level(text)]

    def components(self, required: bool = True) -> ComponentData | None:
        if self._components is None:
            if self._components_text is not None:
                claimed = read_components(self._components_text, self.ring)
            else:
                claimed = self.rf.component_ideals(self.ring)
            try:
                self._components = components_of(self.algebra, claimed or None)
            except AlgebraError:
                if required:
                    raise
                return None
        return self._components


def _balanced(text: str) -> bool:
    depth = 0
    for ch in text:
        depth += ch == "("
        depth -= ch == ")"
        if depth < 0:
            return False
    return depth == 0


def ideal_json(I: Ideal) -> list:
    return I.canonical()


def ring_summary(ctx: Context) -> dict:
    rf = ctx.rf
    return {
        "char": rf.char,
        "vars": list(rf.vars),
        "order": rf.order,
        "ideal": ideal_json(ctx.algebra.defining_ideal),
        "flags": sorted(rf.flags),
    }


def _component_caveats(comp: ComponentData | None) -> list:
    if comp is not None and comp.provenance == "user-supplied":
        return ["minimal primes user-supplied: containment, radical and minimality verified; primality asserted"]
    return []


def _flag_caveats(ctx: Context) -> list:
    return [f"user assertion recorded: {f}" for f in sorted(ctx.rf.flags)]


def _int(args: dict, name: str, default=None, minimum=None) -> int:
    raw = args.get(name)
    if raw is None:
        if default is None:
            raise UsageError(f"missing --{name}")
        return default
    try:
        value = int(raw)
    except (TypeError, ValueError):
        raise UsageError(f"--{name} must be an integer, got {raw!r}") from None
    if minimum is not None and value < minimum:
        raise UsageError(f"--{name} must be at least {minimum}")
    return value


def _need(args: dict, name: str) -> str:
    if args.get(name) in (None, ""):
        raise UsageError(f"missing --{name}")
    return args[name]


def _ctx_charp(ctx: Context, args: dict) -> CharPContext:
    if ctx.algebra.char == 0:
        raise DomainError("this command needs a ring of positive characteristic")
    return CharPContext(ctx.algebra.char, _int(args, "e-max", 3, 0))


def run_command(job: JobSpec, ctx: Context) -> tuple[dict, int]:
    """Execute one job; returns the JSON document and the exit status."""
    cmd, a = job.command, job.args
    R = ctx.algebra
    caveats: list = []
    status = EXIT_OK
    if cmd == "gb":
        I = ctx.ideal(a.get("ideal"))
        gb = I.groebner()
        result = {"generators": ideal_json(I), "leading_monomials": [ctx.ring.format_monomial(m) or "1" for m in sorted(gb.leading_monomials)]}
    elif cmd == "dim":
        result = {"krull_dim": krull_dim(R)}
    elif cmd == "height":
        I = ctx.ideal(a.get("ideal"))
        R.require_proper() if a.get("ideal") is None else None
        result = {"height": height(I)}
    elif cmd == "min-primes":
        comp = ctx.components()
        caveats += _component_caveats(comp)
        result = {
            "minimal_primes": [ideal_json(P) for P in comp.minimal_primes],
            "heights": list(comp.heights),
            "provenance": comp.provenance,
        }
    elif cmd == "equiheight":
        comp = ctx.components()
        caveats += _component_caveats(comp)
        result = {"equiheight": is_equiheight(R, comp), "heights": list(comp.heights)}
    elif cmd == "jacobian":
        M = jacobian_matrix(R)
        result = {"matrix": M.strings(), "rows": M.row_labels, "cols": M.col_labels}
    elif cmd == "fitting":
        if a.get("index") is not None:
            fr = fitting_ideal(jacobian_matrix(R), _int(a, "index"), R.defining_ideal)
            result = {"index": fr.index, "generators": ideal_json(fr.ideal), "convention": fr.convention or "minors"}
        else:
            result = {
                "chain": [
                    {"index": fr.index, "generators": ideal_json(fr.ideal), "convention": fr.convention or "minors"}
                    for fr in fitting_chain(R)
                ]
            }
    elif cmd == "jacobian-ideal":
        comp = ctx.components()
        caveats += _component_caveats(comp)
        J = jacobian_ideal(R, comp)
        result = {"big_height": big_height(R.defining_ideal, comp), "generators": ideal_json(J)}
    elif cmd == "rank-at":
        q = PrimeWitness.of(ctx.ideal(_need(a, "prime")))
        if not q.verified:
            caveats.append("prime witness: primality asserted by user")
        result = {"rank": rank_at_prime(jacobian_matrix(R), q), "prime": ideal_json(q.ideal)}
    elif cmd == "regular-at":
        comp = ctx.components()
        q = PrimeWitness.of(ctx.ideal(_need(a, "prime")))
        caveats += caveats_for(R) + _component_caveats(comp)
        if not q.verified:
            caveats.append("prime witness: primality asserted by user")
        result = {"regular": regular_at(R, q, comp, char_p_ok=True), "prime": ideal_json(q.ideal)}
    elif cmd == "sing-locus":
        comp = ctx.components()
        caveats += caveats_for(R) + _component_caveats(comp)
        branch = "equidimensional" if is_equiheight(R, comp) else "component-intersection"
        result = {"branch": branch, "generators": ideal_json(singular_locus(R, comp))}
    elif cmd == "frob-power":
        I = ctx.ideal(a.get("ideal"))
        q = _int(a, "q", minimum=1)
        result = {"q": q, "generators": ideal_json(charp.frobenius_power(I, q))}
    elif cmd == "tc-certify":
        cp = _ctx_charp(ctx, a)
        c = ctx.poly(_need(a, "c"))
        comp = ctx.components(required=False)
        v = charp.tc_certify_in(R, ctx.poly(_need(a, "u")), ctx.ideal(_need(a, "ideal")), c, cp, comp)
        result = {"verdict": v.to_dict()}
        caveats += _flag_caveats(ctx)
    elif cmd == "tc-refute":
        comp = ctx.components(required=False)
        v = charp.tc_refute_in(R, ctx.poly(_need(a, "u")), ctx.ideal(_need(a, "ideal")), comp)
        result = {"verdict": v.to_dict()}
        caveats += _flag_caveats(ctx) + _component_caveats(comp)
    elif cmd == "frob-closure":
        cp = _ctx_charp(ctx, a)
        v = charp.frobenius_closure_member(R, ctx.poly(_need(a, "u")), ctx.ideal(_need(a, "ideal")), cp)
        result = {"verdict": v.to_dict()}
    elif cmd == "harness":
        cp = _ctx_charp(ctx, a)
        comp = ctx.components(required=False)
        report = charp.test_multiplier_harness(
            R, ctx.ideal(_need(a, "ideal")), ctx.polys(_need(a, "candidates")), cp, comp
        )
        result = report.to_dict()
        caveats += _flag_caveats(ctx) + _component_caveats(comp)
        if report.status == "FAIL":
            status = EXIT_VERIFY
    elif cmd == "krull-check":
        m = ctx.ideal(a.get("m") or ",".join(ctx.ring.names))
        rep = charp.krull_truncation_check(
            ctx.poly(_need(a, "delta")), ctx.poly(_need(a, "u")), ctx.ideal(_need(a, "ideal")),
            m, _int(a, "n-max", 4, 1), R,
        )
        result = rep.to_dict()
    elif cmd == "truncate":
        N = _int(a, "N", minimum=1)
        m = ctx.ideal(a["m"]) if a.get("m") else None
        T = charp.truncate_presentation(R, N, m)
        pairs = zip(R.defining_ideal.nonzero_generators, T.defining_ideal.generators)
        result = {
            "N": N,
            "truncations": [{"generator": str(f), "truncated": str(t)} for f, t in pairs],
            "residuals_in_m_power": True,
        }
    else:
        raise UsageError(f"unknown command {cmd!r}")
    doc = {
        "schema": SCHEMA,
        "command": cmd,
        "args": {k: v for k, v in sorted(a.items()) if v is not None},
        "ring": ring_summary(ctx),
        "result": result,
        "caveats": caveats,
    }
    return doc, status


def dump_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def render_text(doc: dict) -> str:
    lines = [f"{doc['command']}:"]
    for k, v in doc.get("result", {}).items():
        lines.append(f"  {k}: {json.dumps(v, sort_keys=True, ensure_ascii=False)}")
    for c in doc.get("caveats", []):
        lines.append(f"  caveat: {c}")
    return "\n".join(lines) + "\n"


# sweep


def _sweep_row(job: tuple) -> dict:
    text, name, p, query, qargs, timing = job
    row = {c: "" for c in CSV_COLUMNS}
    row.update(instance=name, p=str(p), query=query)
    start = time.perf_counter()
    try:
        rf = parse_ring_file(text).instantiate(p) if parse_ring_file(text).is_family else parse_ring_file(text)
        ctx = Context(rf)
        comp = ctx.components(required=False)
        if query != "frob-closure" and comp is not None and not charp.jacobian_multipliers(ctx.algebra, comp):
            row.update(
                status=charp.UNDETERMINED,
                bound_e=qargs.get("e-max", "3"),
                caveats=f"Jacobian ideal is zero in R at p={p}; outside the test-element hypotheses",
            )
        else:
            doc, _ = run_command(JobSpec(query, dict(qargs)), ctx)
            res = doc["result"]
            if query == "harness":
                row.update(status=res["status"], bound_e=qargs.get("e-max", "3"), caveats=" | ".join(res["reasons"]))
            else:
                v = res["verdict"]
                row.update(
                    status=v["status"],
                    bound_e=str(v["bound_e"]),
                    witness=" ; ".join(ev["witness"] for ev in v["evidence"]) if v["status"] == charp.REFUTED else "",
                    caveats=" | ".join(v["caveats"]),
                )
    except AlgebraError as exc:
        row["error"] = f"{exc.code}: {exc}"
    if timing:
        row["wall_time"] = f"{time.perf_counter() - start:.3f}"
    return row


def sweep_experiment(text: str, name: str, primes, query: str, qargs: dict, timing=True, jobs=1) -> str:
    """One CSV row per (instance, p, query), in input order."""
    if query not in SWEEP_QUERIES:
        raise UsageError(f"sweep query must be one of {', '.join(SWEEP_QUERIES)}")
    work = [(text, name, p, query, qargs, timing) for p in primes]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_sweep_row, work))
    else:
        rows = [_sweep_row(w) for w in work]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


# golden suite

GOLDEN_JOBS = (
    ("plane_and_line.ring", "jacobian", {}),
    ("plane_and_line.ring", "fitting", {}),
    ("plane_and_line.ring", "fitting", {"index": "1"}),
    ("plane_and_line.ring", "fitting", {"index": "2"}),
    ("plane_and_line.ring", "jacobian-ideal", {}),
    ("plane_and_line.ring", "min-primes", {}),
    ("plane_and_line.ring", "dim", {}),
    ("plane_and_line.ring", "height", {}),
    ("plane_and_line.ring", "equiheight", {}),
    ("plane_and_line.ring", "sing-locus", {}),
    ("plane_and_line.ring", "rank-at", {"prime": "z"}),
    ("plane_and_line.ring", "regular-at", {"prime": "z"}),
    ("plane_and_line.ring", "regular-at", {"prime": "x,y,z"}),
    ("plane_and_line.ring", "gb", {}),
    ("fermat_cubic.ring", "gb", {"ideal": "x, y, x^3+y^3+z^3"}),
    ("fermat_cubic.ring", "jacobian-ideal", {}),
    ("fermat_cubic.ring", "sing-locus", {}),
    ("fermat_cubic.ring", "frob-power", {"ideal": "I", "q": "7"}),
    ("fermat_cubic.ring", "tc-certify", {"u": "u", "ideal": "I", "c": "c", "e-max": "2"}),
    ("fermat_cubic.ring", "tc-refute", {"u": "1", "ideal": "I"}),
    ("fermat_cubic.ring", "frob-closure", {"u": "u", "ideal": "I", "e-max": "1"}),
    ("fermat_cubic.ring", "harness", {"ideal": "I", "candidates": "z^2, z, 1", "e-max": "2"}),
    ("fermat_cubic.ring", "krull-check", {"delta": "1", "u": "z", "ideal": "I", "m": "m", "n-max": "3"}),
    ("fermat_cubic.ring", "truncate", {"N": "2"}),
    ("fermat_cubic.ring", "truncate", {"N": "3"}),
)


def golden_name(ring: str, cmd: str, args: dict) -> str:
    suffix = "".join(f"_{k}-{v}" for k, v in sorted(args.items()) if k in ("index", "prime", "N"))
    suffix = suffix.replace(",", "").replace(" ", "")
    return f"{ring.rsplit('.', 1)[0]}__{cmd}{suffix}.json"


def run_golden(out_dir: Path) -> list[Path]:
    from .instances import data_text

    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    contexts = {}
    for ring, cmd, args in GOLDEN_JOBS:
        if ring not in contexts:
            contexts[ring] = Context(parse_ring_file(data_text(ring)))
        doc, _ = run_command(JobSpec(cmd, dict(args)), contexts[ring])
        path = out_dir / golden_name(ring, cmd, args)
        path.write_text(dump_json(doc), encoding="utf-8")
        written.append(path)
    csv_text = sweep_experiment(
        data_text("fermat_family.ring"), "fermat_family", [3, 7, 13], "tc-certify",
        {"u": "u", "ideal": "I", "c": "c", "e-max": "2"}, timing=False,
    )
    path = out_dir / "fermat_family__sweep.csv"
    path.write_text(csv_text, encoding="utf-8")
    written.append(path)
    return written


# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", metavar="FILE", help="ring file")
    common.add_argument("--order", metavar="NAME", help="override the monomial order")
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    common.add_argument("--e-max", dest="e_max", metavar="N", help="Frobenius exponent bound (default 3)")
    common.add_argument("--n-max", dest="n_max", metavar="N", help="truncation bound for krull-check (default 4)")
    common.add_argument("--components", metavar="FILE", help="file of 'component ...;' statements")

    parser = argparse.ArgumentParser(prog="tclab", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    opts = {
        "gb": ["ideal"], "dim": [], "height": ["ideal"], "min-primes": [], "equiheight": [],
        "jacobian": [], "fitting": ["index"], "jacobian-ideal": [], "rank-at": ["prime"],
        "regular-at": ["prime"], "sing-locus": [], "frob-power": ["ideal", "q"],
        "tc-certify": ["u", "ideal", "c"], "tc-refute": ["u", "ideal"], "frob-closure": ["u", "ideal"],
        "harness": ["ideal", "candidates"], "krull-check": ["delta", "u", "ideal", "m"],
        "truncate": ["N", "m"],
    }
    helps = {
        "gb": "reduced Groebner basis of --ideal (default: the defining ideal)",
        "dim": "Krull dimension of R",
        "height": "height of --ideal in the polynomial ring",
        "min-primes": "minimal primes and their heights",
        "equiheight": "whether all minimal primes have the same height",
        "jacobian": "Jacobian matrix of the defining generators",
        "fitting": "Fitting ideal --index, or the whole chain",
        "jacobian-ideal": "Jacobian ideal (big-height minors plus I)",
        "rank-at": "rank of the Jacobian matrix at --prime",
        "regular-at": "Jacobian criterion at --prime",
        "sing-locus": "ideal of the singular locus",
        "frob-power": "bracket power I^[q]",
        "tc-certify": "bounded certificate for u in the tight closure of I",
        "tc-refute": "refute u in the tight closure via Jacobian multipliers",
        "frob-closure": "bounded check for u in the Frobenius closure of I",
        "harness": "check d*u in I for every certified candidate u",
        "krull-check": "delta*u in I + m^N for N = 1..n_max",
        "truncate": "truncate the defining generators at degree N",
    }
    for name, extra in opts.items():
        p = sub.add_parser(name, parents=[common], help=helps[name])
        for o in extra:
            p.add_argument(f"--{o}", dest=o.replace("-", "_"))
    sw = sub.add_parser("sweep", parents=[common], help="run one query over a family for several primes")
    sw.add_argument("--family", metavar="FILE", help="ring file with 'char p;' (defaults to --ring)")
    sw.add_argument("--primes", default="", help="comma-separated primes")
    sw.add_argument("--query", default="tc-certify", choices=SWEEP_QUERIES)
    for o in ("u", "ideal", "c", "candidates"):
        sw.add_argument(f"--{o}", dest=o)
    sw.add_argument("--no-timing", action="store_true", help="leave wall_time empty (byte-stable output)")
    sw.add_argument("--jobs", type=int, default=1, help="worker processes")
    gd = sub.add_parser("golden", help="write the bundled golden outputs")
    gd.add_argument("--out", metavar="DIR", required=True)
    return parser


def _job_args(ns: argparse.Namespace) -> dict:
    keys = ("ideal", "index", "prime", "q", "u", "c", "candidates", "delta", "m", "N")
    out = {k: getattr(ns, k) for k in keys if getattr(ns, k, None) is not None}
    if getattr(ns, "e_max", None) is not None:
        out["e-max"] = ns.e_max
    if getattr(ns, "n_max", None) is not None:
        out["n-max"] = ns.n_max
    return out


def _load_ring(path: str | None, order: str | None) -> RingFile:
    if not path:
        raise UsageError("missing --ring")
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read ring file: {exc}") from None
    rf = parse_ring_file(data)
    if order:
        rf = parse_ring_file(replace(rf, order=order).dumps())
    return rf


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    cmd = ns.command
    want_json = getattr(ns, "json", False)
    try:
        if cmd == "golden":
            for path in run_golden(Path(ns.out)):
                print(path)
            return EXIT_OK
        if cmd == "sweep":
            text_path = ns.family or ns.ring
            if not text_path:
                raise UsageError("missing --family")
            text = Path(text_path).read_text(encoding="utf-8")
            primes = [int(p) for p in ns.primes.split(",") if p.strip()]
            csv_text = sweep_experiment(
                text, Path(text_path).stem, primes, ns.query, _job_args(ns),
                timing=not ns.no_timing, jobs=max(ns.jobs, 1),
            )
            _emit(csv_text, ns.out)
            return EXIT_OK
        rf = _load_ring(ns.ring, ns.order)
        comp_text = Path(ns.components).read_text(encoding="utf-8") if ns.components else None
        if rf.is_family:
            raise UsageError("ring file describes a family (char p); use sweep")
        doc, status = run_command(JobSpec(cmd, _job_args(ns)), Context(rf, comp_text))
    except (AlgebraError, ValueError, OSError) as exc:
        code = getattr(exc, "code", "E_ARG")
        err = {"schema": SCHEMA, "command": cmd, "error": {"code": code, "message": str(exc)}}
        if isinstance(exc, AlgebraError) and getattr(exc, "failed_checks", None):
            err["error"]["failed_checks"] = exc.failed_checks
        if want_json:
            _emit(dump_json(err), getattr(ns, "out", None))
        else:
            sys.stderr.write(f"tclab {cmd}: {code}: {exc}\n")
        return EXIT_FOR_CODE.get(code, EXIT_USAGE)
    _emit(dump_json(doc) if want_json else render_text(doc), ns.out)
    return status


if __name__ == "__main__":
    sys.exit(main())
