"""Command-line front end: ``gjcluster {tables,series,verify,cluster,network}``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import contfrac as cf
from . import paths as P
from . import verify as V
from .cluster import PatternSet, cluster_gf, enumerate_clusters, length_homomorphism
from .network import (
    ConfigurationError,
    avoidance_probability,
    gj_network_entry,
    load_network,
    validate_network,
)
from .series import TPoly, XSeries, format_rational, format_tpoly, rational

DEFAULT_N = 12
MAX_TABLE_N = 20

# Cells whose commonly printed form disagrees with enumeration.
MISPRINTS = {
    ("peak", 4): "4+4+t^2",
    ("pv", 5): "8+8t1+2t1t2+t1^2+2t^2t2",
}


@dataclass
class Table:
    name: str
    k: int
    rows: list = field(default_factory=list)  # (n, TPoly, note or "")

    def add(self, n, value, note=""):
        if not isinstance(value, TPoly):
            value = TPoly.constant(value, self.k)
        self.rows.append((n, value, note))


def _series_table(name, s, note_key=None):
    tab = Table(name, s.k)
    for n in range(s.N + 1):
        note = ""
        if note_key and (note_key, n) in MISPRINTS:
            note = f"commonly misprinted as {MISPRINTS[(note_key, n)]}; value checked by path enumeration"
        tab.add(n, s.coeff(n), note)
    return tab


# -- rendering ----------------------------------------------------------------

def _var_names(k):
    return ["t"] if k == 1 else [f"t{i + 1}" for i in range(k)]


def _monomial(exps, k):
    names = _var_names(k)
    return "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e) or "1"


def render(tables, fmt):
    if fmt == "json":
        doc = {
            "series": [
                {
                    "name": t.name,
                    "variables": _var_names(t.k) if t.k else [],
                    "rows": [
                        {
                            "n": n,
                            "terms": [{"exp": list(e), "coeff": format_rational(c)} for e, c in p.items()],
                            **({"note": note} if note else {}),
                        }
                        for n, p, note in t.rows
                    ],
                }
                for t in tables
            ]
        }
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["series", "n", "monomial", "coefficient", "note"])
        for t in tables:
            for n, p, note in t.rows:
                items = list(p.items()) or [((0,) * t.k, 0)]
                for i, (e, c) in enumerate(items):
                    w.writerow([t.name, n, _monomial(e, t.k), format_rational(c), note if i == 0 else ""])
        return buf.getvalue()
    out = []
    for t in tables:
        out.append(f"# {t.name}")
        for n, p, note in t.rows:
            line = f"{n:>3}  {format_tpoly(p)}"
            out.append(f"{line}    [{note}]" if note else line)
    return "\n".join(out) + "\n"


def _parse_plain_poly(text, names):
    terms = {}
    text = text.strip()
    if text == "0":
        return terms
    tokens = re.split(r" ([+-]) ", text)
    signs = ["-" if tokens[0].startswith("-") else "+"] + tokens[1::2]
    bodies = [tokens[0].lstrip("-")] + tokens[2::2]
    for sign, body in zip(signs, bodies):
        exps = [0] * len(names)
        coef = Fraction(1)
        for factor in body.split("*"):
            if factor and factor[0].isdigit():
                coef = Fraction(factor)
                continue
            var, _, e = factor.partition("^")
            exps[names.index(var)] += int(e or 1)
        terms[tuple(exps)] = -coef if sign == "-" else coef
    return terms


def parse_rendering(text, fmt):
    """Coefficient data as ``{(series, n): {exponents: Fraction}}``."""
    data = {}
    if fmt == "json":
        for s in json.loads(text)["series"]:
            for row in s["rows"]:
                data[(s["name"], row["n"])] = {
                    tuple(t["exp"]): Fraction(t["coeff"]) for t in row["terms"]
                }
        return data
    if fmt == "csv":
        rows = list(csv.DictReader(io.StringIO(text)))
        names_by_series = {}
        for r in rows:
            for f in r["monomial"].split("*"):
                if f != "1":
                    names_by_series.setdefault(r["series"], set()).add(f.partition("^")[0])
        for r in rows:
            names = sorted(names_by_series.get(r["series"], ()))
            cell = data.setdefault((r["series"], int(r["n"])), {})
            exps = [0] * len(names)
            if r["monomial"] != "1":
                for f in r["monomial"].split("*"):
                    v, _, e = f.partition("^")
                    exps[names.index(v)] += int(e or 1)
            c = Fraction(r["coefficient"])
            if c:
                cell[tuple(exps)] = c
        return data
    blocks, name = {}, None
    for line in text.splitlines():
        if line.startswith("# "):
            name = line[2:]
            blocks[name] = []
        elif line.strip():
            n, _, rest = line.strip().partition("  ")
            blocks[name].append((int(n), rest.split("    [")[0]))
    for name, rows in blocks.items():
        names = sorted({v for _, poly in rows for v in re.findall(r"t\d*", poly)})
        for n, poly in rows:
            data[(name, n)] = _parse_plain_poly(poly, names)
    return data


def normalize(data):
    """Drop unused variables so renderings with different arities compare equal."""
    out = {}
    for key, terms in data.items():
        out[key] = {e: c for e, c in terms.items() if c}
    used = {}
    for (name, _), terms in out.items():
        for e in terms:
            used.setdefault(name, set()).update(i for i, v in enumerate(e) if v)
    final = {}
    for (name, n), terms in out.items():
        keep = sorted(used.get(name, ()))
        final[(name, n)] = {tuple(e[i] for i in keep): c for e, c in terms.items()}
    return final


# -- commands -----------------------------------------------------------------

TABLE_NAMES = ("asc", "peak", "plt1", "plt", "pv", "asc-parity", "pv-parity")


def build_tables(name, N):
    if N > MAX_TABLE_N:
        raise ValueError(f"--n {N} exceeds the table budget {MAX_TABLE_N}")
    if name == "asc-parity":
        return [
            _series_table("asc-E", P.gf_asc_height_restricted(P.EVEN, N)),
            _series_table("asc-O", P.gf_asc_height_restricted(P.ODD, N)),
        ]
    if name == "pv-parity":
        return [_series_table(k, P.gf_pv_height_restricted(ps, vs, N)) for k, (ps, vs) in V.PV_PARITY.items()]
    try:
        stat = P.statistic(name)
    except ValueError:
        raise ValueError(f"unknown table {name!r}; choose from {', '.join(TABLE_NAMES)} or pltK") from None
    return [_series_table(str(stat), P.gf_statistic(stat, None, N), note_key=str(stat))]


def _parse_heights(spec):
    if spec in P.NAMED_SETS:
        return P.NAMED_SETS[spec]
    if spec in ("", "none"):
        return frozenset()
    return frozenset(int(h) for h in spec.split(","))


ROUTES = ("network", "cf", "ratio", "closed")


def build_series(name, N, route="network", bound=None):
    """One named series.

    ``name`` is a statistic, a closed-form name (``motzkin``, ``asc-E`` ...),
    a lattice count (``dyck``, ``schroeder``), or a restricted family:
    ``asc-end:A``, ``asc-start:A``, ``pv:P/V`` with sets ``N P E O E0`` or
    comma lists of heights.
    """
    if name in ("dyck", "schroeder") or (name == "motzkin" and route == "network"):
        return P.gamma_paths(name, N, bound)
    if ":" in name:
        fam, _, arg = name.partition(":")
        if fam == "asc-end":
            return P.gf_asc_height_restricted(_parse_heights(arg), N, bound)
        if fam == "asc-start":
            return P.gf_asc_start_restricted(_parse_heights(arg), N, bound)
        if fam == "pv":
            ps, _, vs = arg.partition("/")
            return P.gf_pv_height_restricted(_parse_heights(ps), _parse_heights(vs), N, bound)
        raise ValueError(f"unknown family {fam!r}")
    if route == "closed" or name in cf.CLOSED_FORMS and name not in ("asc", "peak", "plt", "pv"):
        return cf.closed_form(name, N)
    if route in ("cf", "ratio"):
        m = P.resolve_bound(bound, N)
        if route == "cf":
            return cf.cf_eval(cf.stat_cf(name, m, N))
        return cf.bounded_ratio(name, m, N)
    return P.gf_statistic(name, bound, N)


def parse_t(spec, k):
    """``"0"`` / ``"t=1"`` / ``"t1=1,t2=0"`` -> list of k rationals."""
    if spec is None:
        return None
    vals = [None] * k
    for i, part in enumerate(p.strip() for p in spec.split(",")):
        lhs, eq, rhs = part.partition("=")
        if not eq:
            lhs, rhs = None, lhs
        if lhs is None:
            idx = i
        elif lhs == "t":
            idx = 0
        else:
            idx = int(lhs.lstrip("t")) - 1
        if not 0 <= idx < k:
            raise ValueError(f"no marking variable {lhs or idx + 1} (series has {k})")
        vals[idx] = rational(Fraction(rhs))
    if len(vals) == k and None not in vals:
        return vals
    if spec.count(",") == 0 and "=" not in spec:
        return [vals[0]] * k
    raise ValueError(f"--t {spec!r} must assign all {k} variables")


def _maybe_evaluate(s, t_spec):
    vals = parse_t(t_spec, s.k)
    return s if vals is None else s.evaluate_t(vals)


def _parse_patterns(spec):
    """``"acb,bc"`` (one variable each) or ``"acb:1,bc:1"``."""
    items = []
    for tok in spec.split(","):
        w, _, v = tok.strip().partition(":")
        items.append((w, int(v)) if v else w)
    return PatternSet(items)


def cmd_tables(args, out):
    out.write(render(build_tables(args.name or "asc", args.n), args.format))
    return 0


def cmd_series(args, out):
    s = build_series(args.name or "asc", args.n, args.route, args.bound)
    s = _maybe_evaluate(s, args.t)
    label = args.name or "asc"
    out.write(render([_series_table(label, s)], args.format))
    return 0


def cmd_verify(args, out):
    names = list(V.SUITES) if args.suite in (None, "all") else args.suite.split(",")
    for n in names:
        if n not in V.SUITES:
            raise ValueError(f"unknown suite {n!r}; choose from {', '.join(V.SUITES)}")
    status = 0
    for name in names:
        res = V.SUITES[name]() if args.n is None else V.SUITES[name](args.n)
        total = res.passed + res.failed
        out.write(f"{name}: {'PASS' if res.ok else 'FAIL'} ({res.passed}/{total} checks)\n")
        for line in res.info:
            out.write(f"  info: {line}\n")
        if not res.ok:
            out.write(f"  first counterexample: {res.first_failure}\n")
            status = 1
    return status


def cmd_cluster(args, out):
    if not args.patterns:
        raise ValueError("cluster needs --patterns, e.g. --patterns acb,bc")
    B = _parse_patterns(args.patterns)
    N = args.n
    clusters = enumerate_clusters(B, N)
    if args.format == "plain":
        for c in clusters:
            out.write(f"{c}\n")
        out.write(f"# {len(clusters)} clusters of length <= {N}\n")
    letters = sorted({a for w in B.words for a in w})
    L = cluster_gf(B, length_homomorphism(letters, N, B.k))
    tab = _series_table("cluster_gf", L)
    if args.format == "plain":
        out.write(render([tab], "plain"))
    elif args.format == "json":
        doc = json.loads(render([tab], "json"))
        doc["clusters"] = [
            {"word": "".join(c.word), "marks": [[s, "".join(B[u])] for s, u in c.marks]} for c in clusters
        ]
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        out.write(render([tab], "csv"))
    return 0


def cmd_network(args, out):
    if not args.file:
        raise ValueError("network needs --file")
    try:
        net, B = load_network(args.file)
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"{args.file}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    bad = validate_network(net, min(args.n, 8))
    if bad is not None:
        word = "".join(bad.word)
        lab = net.labels
        w1 = "->".join(str(lab[v]) for v in bad.walk1)
        w2 = "->".join(str(lab[v]) for v in bad.walk2)
        raise ConfigurationError(
            f"not a monoid network: word {word!r} from {lab[bad.start]} to {lab[bad.end]} along {w1} and {w2}"
        )
    if args.avoid:
        B = PatternSet([(w.strip(), 1) for w in args.avoid.split(",")])
    elif args.patterns:
        B = _parse_patterns(args.patterns)
    i, j = (int(v) for v in (args.entry or "1,1").split(","))
    if not (1 <= i <= net.n and 1 <= j <= net.n):
        raise ValueError(f"--entry {i},{j} outside 1..{net.n}")
    i, j = i - 1, j - 1
    tag = f"F[{i + 1},{j + 1}]"
    if args.prob:
        tab = Table(f"P(avoid) {tag}", 0)
        for n in range(args.n + 1):
            tab.add(n, avoidance_probability(net, B, n, i, j))
        out.write(render([tab], args.format))
        return 0
    k = B.k
    hom = {a: XSeries.x(args.n, k) for a in net.letters}
    s = gj_network_entry(net, B, hom, i, j, weighted=args.weighted)
    s = _maybe_evaluate(s, args.t)
    out.write(render([_series_table(tag, s)], args.format))
    return 0


COMMANDS = {
    "tables": cmd_tables,
    "series": cmd_series,
    "verify": cmd_verify,
    "cluster": cmd_cluster,
    "network": cmd_network,
}


def build_parser():
    p = argparse.ArgumentParser(prog="gjcluster", description=__doc__)
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--n", type=int, default=None, help="truncation order (default 12)")
    p.add_argument("--name", help="table or series name")
    p.add_argument("--format", choices=("plain", "csv", "json"), default="plain")
    p.add_argument("--file", help="network JSON file")
    p.add_argument("--t", help="marking variable values, e.g. 0 or t1=1,t2=0")
    p.add_argument("--entry", help="1-based matrix entry i,j")
    p.add_argument("--suite", help="verification suite(s), comma separated, or all")
    p.add_argument("--avoid", help="forbidden word(s), comma separated")
    p.add_argument("--prob", action="store_true", help="print avoidance probabilities")
    p.add_argument("--patterns", help="pattern words, comma separated, optional :var")
    p.add_argument("--route", choices=ROUTES, default="network")
    p.add_argument("--bound", type=int, help="height bound (default unbounded)")
    p.add_argument("--weighted", action="store_true", help="use arc weights")
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if args.n is not None and args.n < 0:
        print("gjcluster: --n must be >= 0", file=sys.stderr)
        return 2
    if args.n is None and args.command != "verify":
        args.n = 6 if args.command == "cluster" else DEFAULT_N
    try:
        return COMMANDS[args.command](args, out)
    except (ValueError, KeyError, ConfigurationError, ArithmeticError, OSError) as exc:
        print(f"gjcluster {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
