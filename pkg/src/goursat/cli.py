"""Command-line front end: compute, render, verify, and serialize.

Exit codes: 0 success, 1 invalid input, 2 verification mismatch,
3 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import invariants, oracle, proximity, symcalc
from .codeword import (
    Chart,
    GoursatWord,
    RvtWord,
    canonical_chart_point,
    enumerate_goursat_words,
    is_goursat,
    lift,
    parse_word,
    rvt_of_chart_point,
)
from .errors import (
    GoursatError,
    IndexRange,
    RouteMismatch,
    StepBudgetExceeded,
    TruncationTooSmall,
    WordError,
)
from .invariants import InvariantBundle, PuiseuxCharacteristic
from .polynomial import Poly, var_names

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_MISMATCH = 2
EXIT_BUDGET = 3

# Brute-force small growth is exponential in the worst case; past this many
# levels the symbolic verification refuses to run rather than hang.
SYMBOLIC_LEVEL_LIMIT = 6


# ---------------------------------------------------------------------------
# Serialization


def bundle_to_json(b: InvariantBundle) -> dict:
    return {
        "word": str(b.word),
        "goursat_word": str(b.goursat_word),
        "k": b.k,
        "beta": list(b.beta),
        "der": list(b.der),
        "der2": list(b.der2),
        "sg": list(b.sg),
        "mult_vector": list(b.mult_vector),
        "m0": b.m0,
        "vo": list(b.vo),
        "b": list(b.b),
        "e_table": {
            "h_first": 2,
            "rows": [list(row) for row in b.e_table.rows],
            "sg": list(b.e_table.sg),
        },
        "puiseux": {
            "lambda0": b.puiseux.lambda0,
            "exponents": list(b.puiseux.exponents),
        },
        "nonholonomy_degree": b.nonholonomy_degree,
    }


def bundle_from_json(data: dict) -> InvariantBundle:
    vo = tuple(data["vo"])
    k = data["k"]
    table = invariants.e_table(vo, k)
    if [list(r) for r in table.rows] != data["e_table"]["rows"]:
        raise ValueError("serialized e-table rows are inconsistent with vo")
    if list(table.sg) != data["e_table"]["sg"]:
        raise ValueError("serialized e-table SG column is inconsistent with vo")
    return InvariantBundle(
        word=parse_word(data["word"]),
        goursat_word=GoursatWord(data["goursat_word"]),
        k=k,
        beta=tuple(data["beta"]),
        der=tuple(data["der"]),
        der2=tuple(data["der2"]),
        sg=tuple(data["sg"]),
        mult_vector=tuple(data["mult_vector"]),
        m0=data["m0"],
        vo=vo,
        b=tuple(data["b"]),
        e_table=table,
        puiseux=PuiseuxCharacteristic(
            data["puiseux"]["lambda0"], tuple(data["puiseux"]["exponents"])
        ),
        nonholonomy_degree=data["nonholonomy_degree"],
    )


def dumps_bundle(b: InvariantBundle) -> str:
    return json.dumps(bundle_to_json(b), sort_keys=True, indent=2)


# ---------------------------------------------------------------------------
# Rendering


def _vec(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def render_bundle(b: InvariantBundle) -> str:
    lines = [
        f"word:                 {b.word}",
        f"goursat word:         {b.goursat_word}",
        f"k:                    {b.k}",
        f"beta:                 {_vec(b.beta)}",
        f"der:                  {_vec(b.der)}",
        f"der2:                 {_vec(b.der2)}",
        f"sg:                   {' '.join(str(s) for s in b.sg)}",
        f"mult vector:          {_vec(b.mult_vector)}",
        f"m0:                   {b.m0}",
        f"vo:                   {_vec(b.vo)}",
        f"b:                    {_vec(b.b)}",
        f"puiseux:              {b.puiseux}",
        f"nonholonomy degree:   {b.nonholonomy_degree}",
    ]
    return "\n".join(lines) + "\n"


def render_etable(table: invariants.ETable) -> str:
    """ASCII e-table: one row per h with the SG column; rows h in the b
    vector (where a column first vanishes) are marked with '*'."""
    red = set(table.b)
    width = max(
        2, max((len(str(e)) for row in table.rows for e in row), default=1)
    )
    hwidth = max(2, len(str(table.height)))
    cols = list(range(2, table.k + 2))
    header = " " * 2 + "h".rjust(hwidth) + " |"
    for i in cols:
        header += str(i).rjust(width + 1)
    header += " | SG"
    sep = "-" * len(header)
    lines = [header, sep]
    for idx, row in enumerate(table.rows):
        h = idx + 2
        mark = "*" if h in red else " "
        line = mark + " " + str(h).rjust(hwidth) + " |"
        for i in cols:
            if i - 2 < len(row):
                line += str(row[i - 2]).rjust(width + 1)
            else:
                line += " " * (width + 1)
        line += f" | {table.sg[idx]}"
        lines.append(line)
    return "\n".join(lines) + "\n"


def render_proximity(d: proximity.ProximityDiagram) -> str:
    cells = [str(v) for v in range(d.k + 1)]
    labels = ["-"] + [d.label(v) for v in range(1, d.k + 1)]
    mults = [str(m) for m in d.mult]
    width = max(len(s) for s in cells + labels + mults) + 2
    rows = [
        "vertex:" + "".join(c.rjust(width) for c in cells),
        "label: " + "".join(c.rjust(width) for c in labels),
        "mult:  " + "".join(c.rjust(width) for c in mults),
        "edges: " + " ".join(f"{i}-{j}" for i, j in sorted(d.edges)),
    ]
    return "\n".join(rows) + "\n"


def render_bracket_table(table: symcalc.BracketTable) -> str:
    k = table.chart.k
    names = var_names(k)
    rows = [("v", i) for i in range(k + 1)] + [("f", i) for i in range(k + 1)]
    cols = list(range(k + 1))
    cells = {}
    width = 0
    for kind, i in rows:
        for j in cols:
            text = table.render_entry(kind, i, j)
            cells[(kind, i, j)] = text
            width = max(width, len(text))
    width = max(width, 6) + 2
    head = " " * 5 + "".join(f"f{j}".rjust(width) for j in cols)
    lines = [f"chart {table.chart.choices}  (left slot x rows, [row, column]):", head]
    for kind, i in rows:
        line = f"{kind}{i}".rjust(4) + " "
        line += "".join(cells[(kind, i, j)].rjust(width) for j in cols)
        lines.append(line)
        if (kind, i) == ("v", k):
            lines.append("")
    return "\n".join(lines) + "\n"


def _wired_m0(word: RvtWord) -> int | None:
    """For non-Goursat words, m_0 = m_1 + VO_2 with VO_2 from the oracle."""
    if is_goursat(word):
        return None
    point = canonical_chart_point(word)
    vo2 = oracle.vo_at_point(point)[0]
    gw = invariants.goursat_normalize(word)
    mv = proximity.multiplicity_vector(proximity.build_diagram(gw))
    m1 = mv[-1] if mv else 1
    return m1 + vo2


# ---------------------------------------------------------------------------
# Verification


def verify_word(
    word: RvtWord,
    depth: int | None = None,
    seed: int = 0,
    symbolic: bool = False,
) -> tuple[bool, list[str]]:
    """Run the cross-checks for one word; returns (ok, report lines)."""
    lines = []
    ok = True
    bundle = invariants.bundle(word, m0=_wired_m0(word))
    lines.append(f"{word}: three-route invariants agree (beta ends {bundle.beta[-1]})")

    point = canonical_chart_point(word)
    vo_oracle = oracle.vo_at_point(point)
    if word.k >= 2 and vo_oracle[1:] != bundle.vo[1:]:
        ok = False
        lines.append(
            f"{word}: MISMATCH restricted vertical orders "
            f"oracle={vo_oracle[1:]} combinatorial={bundle.vo[1:]}"
        )
    else:
        lines.append(f"{word}: focal-order vertical orders agree {vo_oracle}")
    if word.k >= 2 and vo_oracle[0] != bundle.vo[0]:
        ok = False
        lines.append(
            f"{word}: MISMATCH VO_2 oracle={vo_oracle[0]} bundle={bundle.vo[0]}"
        )

    if word.k >= 2:
        for i in range(3, word.k + 2):
            oracle.pathway_sections(point, i)
        lines.append(f"{word}: pathway orders match the e-table for all columns")

    if symbolic:
        if word.k > SYMBOLIC_LEVEL_LIMIT:
            raise StepBudgetExceeded(
                f"symbolic verification is limited to k <= {SYMBOLIC_LEVEL_LIMIT}"
            )
        max_steps = depth if depth is not None else bundle.nonholonomy_degree + 2
        sg = oracle.small_growth_bruteforce(point, max_steps)
        if sg != bundle.sg:
            ok = False
            lines.append(
                f"{word}: MISMATCH small growth brute={sg} combinatorial={bundle.sg}"
            )
        else:
            lines.append(f"{word}: brute-force small growth agrees ({len(sg)} steps)")

        report = symcalc.verify_structure(point.chart)
        if not report.ok:
            ok = False
            for failure in report.failures():
                lines.append(
                    f"{word}: MISMATCH structure check {failure.name}: {failure.detail}"
                )
        else:
            lines.append(
                f"{word}: structure lemmas verified on chart {point.chart.choices}"
            )

        fo = oracle.focal_orders(point)
        for var in range(point.chart.nvars):
            a = Poly.variable(point.chart.nvars, var)
            jet_order = oracle.focal_order_generic_jet(a=a, p=point, seed=seed)
            if jet_order != fo.o_coord[var]:
                ok = False
                lines.append(
                    f"{word}: MISMATCH generic-jet order of {var_names(word.k)[var]} "
                    f"jet={jet_order} procedural={fo.o_coord[var]}"
                )
        lines.append(f"{word}: generic-jet focal orders agree")
    return ok, lines


# ---------------------------------------------------------------------------
# Commands


def cmd_invariants(args) -> int:
    word = parse_word(args.word)
    bundle = invariants.bundle(word, m0=_wired_m0(word))
    if args.json:
        print(dumps_bundle(bundle))
    else:
        print(render_bundle(bundle), end="")
    return EXIT_OK


def cmd_etable(args) -> int:
    word = parse_word(args.word)
    bundle = invariants.bundle(word, m0=_wired_m0(word))
    print(render_etable(bundle.e_table), end="")
    return EXIT_OK


def cmd_prox(args) -> int:
    word = invariants.goursat_normalize(parse_word(args.word))
    diagram = proximity.build_diagram(word)
    if args.dot:
        print(proximity.to_dot(diagram), end="")
    else:
        print(render_proximity(diagram), end="")
    return EXIT_OK


def cmd_lift(args) -> int:
    word = parse_word(args.word)
    if not is_goursat(word):
        raise WordError(f"lift needs a Goursat word, got {word}")
    print(str(lift(word)))
    return EXIT_OK


def cmd_puiseux(args) -> int:
    word = parse_word(args.word)
    pc = invariants.puiseux_of_word(word, m0=_wired_m0(word))
    print(str(pc))
    return EXIT_OK


def cmd_chart(args) -> int:
    word = parse_word(args.word)
    point = canonical_chart_point(word)
    chart = point.chart
    print(f"word:        {word}")
    print(f"chart:       {chart.choices}")
    print(f"IP:          {{{', '.join(str(j) for j in sorted(chart.ip))}}}")
    names = var_names(word.k)
    coords = " ".join(
        f"{names[v]}={point.coords[v]}" for v in range(chart.nvars)
    )
    print(f"point:       {coords}")
    alt = " ".join(
        f"{names[v]}={chart.alt_names[v]}" for v in range(chart.nvars)
    )
    print(f"alt names:   {alt}")
    print(f"round trip:  {rvt_of_chart_point(point)}")
    return EXIT_OK


def cmd_bracket_table(args) -> int:
    chart = Chart(args.chartword)
    table = symcalc.bracket_table(chart)
    print(render_bracket_table(table), end="")
    return EXIT_OK


def _verify_task(task: tuple[str, int | None, int, bool]) -> tuple[bool, list[str]]:
    word, depth, seed, symbolic = task
    return verify_word(parse_word(word), depth=depth, seed=seed, symbolic=symbolic)


def cmd_verify(args) -> int:
    if args.all_words is not None:
        words = list(enumerate_goursat_words(args.all_words))
        if not words:
            raise WordError(f"no Goursat words of length {args.all_words}")
    elif args.word is not None:
        words = [parse_word(args.word)]
    else:
        raise WordError("verify needs a word or --all-words N")

    tasks = [(str(w), args.depth, args.seed, args.symbolic) for w in words]
    if len(tasks) > 1:
        # per-word checks are pure and independent; fan out across workers
        import concurrent.futures

        with concurrent.futures.ProcessPoolExecutor() as pool:
            results = list(pool.map(_verify_task, tasks))
    else:
        results = [_verify_task(tasks[0])]

    all_ok = True
    for ok, lines in results:
        all_ok = all_ok and ok
        for line in lines:
            print(line)
    if all_ok:
        print("PASS")
        return EXIT_OK
    print("FAIL")
    return EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="goursat",
        description=(
            "Exact invariants of rank-2 Goursat distributions from RVT code "
            "words: growth vectors, proximity diagrams, e-tables, Puiseux "
            "characteristics, and symbolic cross-checks."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="compute the full invariant bundle")
    p.add_argument("word")
    p.add_argument("--json", action="store_true", help="deterministic JSON output")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("etable", help="render the e-table with its SG column")
    p.add_argument("word")
    p.set_defaults(func=cmd_etable)

    p = sub.add_parser(
        "prox", help="render the proximity diagram (of the normalized Goursat word)"
    )
    p.add_argument("word")
    p.add_argument("--dot", action="store_true", help="Graphviz output")
    p.set_defaults(func=cmd_prox)

    p = sub.add_parser("lift", help="print the lifted Goursat word")
    p.add_argument("word")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("puiseux", help="print the Puiseux characteristic")
    p.add_argument("word")
    p.set_defaults(func=cmd_puiseux)

    p = sub.add_parser("chart", help="show the canonical chart realization")
    p.add_argument("word")
    p.set_defaults(func=cmd_chart)

    p = sub.add_parser("bracket-table", help="full Lie bracket table of a chart")
    p.add_argument("chartword", help="choice word over o/i, e.g. ooioii")
    p.set_defaults(func=cmd_bracket_table)

    p = sub.add_parser("verify", help="cross-validate all computation routes")
    p.add_argument("word", nargs="?")
    p.add_argument("--all-words", type=int, default=None, metavar="N",
                   help="verify every Goursat word of length N")
    p.add_argument("--depth", type=int, default=None,
                   help="step budget for brute-force small growth")
    p.add_argument("--seed", type=int, default=0, help="seed for generic jets")
    p.add_argument("--symbolic", action="store_true",
                   help="include brute-force and chart-lemma verification")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except WordError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INVALID
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INVALID
    except (StepBudgetExceeded, TruncationTooSmall) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_BUDGET
    except (RouteMismatch, IndexRange, GoursatError) as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
