"""Command line interface: series, compare, toric, export."""

import json
import re
import sys

import click

from .exactalg import rat_equal, ratfun_to_text, series_expand
from .langlib import (
    builtin_pair,
    builtin_single,
    ideal_gap_series,
)
from .monoracle import (
    CONVENTIONS,
    GeneratorFamily,
    compare_report,
)
from .toric import (
    Binomial,
    build_gen_family,
    binomial_str,
    fiber_report,
    g2,
    gen_degree_stats,
    kernel_test,
    quadric_family,
    reduce_binomial,
)

SAFE_CAP = 10
SINGLES = ("poly-ring", "window-squares", "gap")
PAIRS = ("segre", "concat")


def _cap(ctx, value, what):
    if value is None:
        return value
    if value > SAFE_CAP and not ctx.params.get("unsafe"):
        raise click.UsageError(
            "%s=%d exceeds the safety cap %d; pass --unsafe to override"
            % (what, value, SAFE_CAP)
        )
    return value


def _emit(fmt, payload, text_lines):
    if fmt == "json":
        click.echo(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            click.echo(line)


@click.group()
def main():
    """Equivariant Hilbert series of shift-invariant monomial algebras."""


def _build_language(selector, c, a, a_c, b, b_c, checked):
    if selector in SINGLES:
        lang = builtin_single(selector, c)
        if checked:
            ok, bad, _ = lang.check(6)
            if not ok:
                raise click.ClickException("automaton/predicate mismatch at %r" % (bad,))
        return lang
    if selector in PAIRS:
        return builtin_pair(selector, a, a_c, b, b_c, checked=checked)
    raise click.UsageError("unknown selector %r" % selector)


@main.command()
@click.argument("selector")
@click.option("--c", type=int, default=None, help="bandwidth for poly-ring / window-squares")
@click.option("--a", default="poly-ring", help="first factor for segre/concat")
@click.option("--a-c", type=int, default=1)
@click.option("--b", default="poly-ring", help="second factor for segre/concat")
@click.option("--b-c", type=int, default=1)
@click.option("--expand", default=None, help="comma-separated coefficient bounds")
@click.option("--checked", is_flag=True, help="verify predicate against automaton first")
@click.option("--unsafe", is_flag=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json", "csv"]), default="text")
@click.pass_context
def series(ctx, selector, c, a, a_c, b, b_c, expand, checked, unsafe, fmt):
    """Print the equivariant Hilbert series of a built-in language."""
    if selector == "ideal-gap":
        computed, stated = ideal_gap_series()
        eq = rat_equal(computed, stated)
        payload = {
            "command": "series",
            "params": {"selector": selector},
            "results": {
                "computed": ratfun_to_text(computed),
                "stated": ratfun_to_text(stated),
                "equal": eq,
            },
        }
        lines = [
            "ideal-gap (ambient minus algebra):",
            "  computed: %s" % ratfun_to_text(computed),
            "  stated:   %s" % ratfun_to_text(stated),
            "  rat_equal: %s" % eq,
        ]
        if not eq:
            lines.append("  MISMATCH between computed identity and stated form")
        _emit(fmt, payload, lines)
        return
    lang = _build_language(selector, c, a, a_c, b, b_c, checked)
    ser = lang.series()
    results = {"series": ratfun_to_text(ser)}
    lines = ["%s:" % lang.name, "  series: %s" % ratfun_to_text(ser)]
    for label, ref in lang.reference_series:
        eq = rat_equal(lang.transfer(), ref)
        results[label] = {"value": ratfun_to_text(ref), "matches_transfer": eq}
        lines.append("  %s (transfer): %s  [%s]" % (label, ratfun_to_text(ref), "agrees" if eq else "DIFFERS"))
    alt = lang.alt_series()
    if alt is not None:
        eq = rat_equal(lang.transfer(), alt)
        results["alt automaton"] = {"value": ratfun_to_text(alt), "matches_transfer": eq}
        lines.append(
            "  alt automaton (transfer): %s  [%s]"
            % (ratfun_to_text(alt), "agrees" if eq else "DIFFERS")
        )
    if lang.notes:
        lines.append("  note: %s" % lang.notes)
    payload = {
        "command": "series",
        "params": {"selector": selector, "c": c},
        "results": results,
    }
    if expand:
        try:
            bounds = tuple(int(x) for x in expand.split(","))
        except ValueError:
            raise click.UsageError("bad --expand %r" % expand)
        if len(bounds) != len(lang.vars):
            raise click.UsageError(
                "--expand needs %d bounds for %s" % (len(lang.vars), lang.name)
            )
        for bound in bounds:
            _cap(ctx, bound, "--expand")
        axes = ("d", "n") if len(bounds) == 2 else ("d", "m", "n")
        table = series_expand(ser, bounds, axes=axes)
        payload["results"]["table"] = {
            ",".join(map(str, k)): v for k, v in sorted(table.data.items())
        }
        if fmt == "csv":
            click.echo(table.to_csv(), nl=False)
            return
        lines.append("  coefficients (bounds %s):" % (bounds,))
        for k in table.keys_sorted():
            lines.append("    %s: %d" % (",".join(map(str, k)), table[k]))
    elif fmt == "csv":
        raise click.UsageError("csv output needs --expand")
    _emit(fmt, payload, lines)


@main.command()
@click.argument("family", type=click.Choice(SINGLES))
@click.option("--c", type=int, default=None)
@click.option("--conv", type=click.Choice(CONVENTIONS), default="string-bounded")
@click.option("--dmax", type=int, default=4)
@click.option("--nmax", type=int, default=4)
@click.option("--strict", is_flag=True, help="exit 1 on any mismatch")
@click.option("--unsafe", is_flag=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json", "csv"]), default="text")
@click.pass_context
def compare(ctx, family, c, conv, dmax, nmax, strict, unsafe, fmt):
    """Compare language counts against the brute-force monomial oracle."""
    _cap(ctx, dmax, "--dmax")
    _cap(ctx, nmax, "--nmax")
    lang = builtin_single(family, c)
    if family == "gap":
        fam = GeneratorFamily("gap")
    else:
        fam = GeneratorFamily(family, c if c is not None else 2)
    report = compare_report(lang, fam, nmax, dmax, conv)
    lines = [
        "%s vs %r, convention %s:" % (lang.name, fam, conv),
    ]
    for cell in report["cells"]:
        mark = "ok" if cell["equal"] else "MISMATCH"
        lines.append(
            "  d=%d n=%d language=%d oracle=%d %s"
            % (cell["d"], cell["n"], cell["language"], cell["oracle"], mark)
        )
    lines.append("all cells equal: %s" % report["all_equal"])
    payload = {
        "command": "compare",
        "params": {"family": family, "c": c, "conv": conv, "dmax": dmax, "nmax": nmax},
        "results": report,
    }
    if fmt == "csv":
        rows = ["d,n,language,oracle,equal"]
        for cell in report["cells"]:
            rows.append(
                "%d,%d,%d,%d,%s"
                % (cell["d"], cell["n"], cell["language"], cell["oracle"], cell["equal"])
            )
        click.echo("\n".join(rows))
    else:
        _emit(fmt, payload, lines)
    if strict and not report["all_equal"]:
        ctx.exit(1)


@main.group()
def toric():
    """Kernel families, fiber graphs, and binomial reduction."""


@toric.command()
@click.option("--dmax", type=int, default=8)
@click.option("--unsafe", is_flag=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@click.pass_context
def gens(ctx, dmax, unsafe, fmt):
    """List the kernel generator family up to a degree."""
    if dmax > 20:
        raise click.UsageError("--dmax too large")
    fam = build_gen_family(max_degree=dmax)
    census = {}
    rows = []
    ok_all = True
    items = [("g2", None, g2(), 2, 4, True)]
    for g in fam:
        ok = g.structure_check()
        ok_all = ok_all and ok
        items.append((g.label(), g.s, g.binomial(), g.degree(), g.span(), ok))
    for label, s, b, deg, span, ok in items:
        census[deg] = census.get(deg, 0) + 1
        ok_all = ok_all and kernel_test(b)
        rows.append(
            {
                "label": label,
                "degree": deg,
                "span": span,
                "binomial": binomial_str(b),
                "kernel": kernel_test(b),
                "structure": ok,
            }
        )
    lines = []
    for r in rows:
        lines.append(
            "%-12s deg=%-2d span=%-2d %s" % (r["label"], r["degree"], r["span"], r["binomial"])
        )
    lines.append("census by degree: %s" % {d: census[d] for d in sorted(census)})
    lines.append("all kernel+structure checks: %s" % ok_all)
    payload = {
        "command": "toric gens",
        "params": {"dmax": dmax},
        "results": {"elements": rows, "census": {str(d): census[d] for d in sorted(census)}},
    }
    _emit(fmt, payload, lines)


MONO_RE = re.compile(r"x\[(\d+),(\d+)\](?:\^(\d+))?|x(\d+)(?:\^(\d+))?")


def parse_edge_monomial(text):
    out = {}
    text = text.strip()
    if text == "1":
        return out
    for part in text.split("*"):
        part = part.strip()
        m = MONO_RE.fullmatch(part)
        if not m or m.group(4) is not None:
            raise click.UsageError("bad edge monomial %r" % part)
        e = (int(m.group(1)), int(m.group(2)))
        out[e] = out.get(e, 0) + int(m.group(3) or 1)
    return out


def parse_x_monomial(text):
    out = {}
    for part in text.strip().split("*"):
        part = part.strip()
        m = MONO_RE.fullmatch(part)
        if not m or m.group(4) is None:
            raise click.UsageError("bad x-monomial %r" % part)
        v = int(m.group(4))
        out[v] = out.get(v, 0) + int(m.group(5) or 1)
    return out


def parse_binomial(text):
    depth_split = text.split(" - ")
    if len(depth_split) != 2:
        raise click.UsageError("binomial must look like 'mono - mono'")
    return Binomial(parse_edge_monomial(depth_split[0]), parse_edge_monomial(depth_split[1]))


def _move_set(name, kind, c, n, degree_cap):
    if name == "none":
        return []
    if name == "quadrics":
        return [("q%d" % i, b) for i, b in enumerate(quadric_family(c, n))]
    if name == "gens":
        fam = build_gen_family(max_degree=degree_cap)
        moves = [("g2", g2())]
        moves.extend((g.label(), g.binomial()) for g in fam)
        return moves
    raise click.UsageError("unknown move set %r" % name)


@toric.command()
@click.option("--map", "kind", type=click.Choice(["gap", "window-squares"]), default="gap")
@click.option("--c", type=int, default=2)
@click.option("--n", type=int, required=True)
@click.option("--degree", type=int, default=None, help="scan all targets of this degree")
@click.option("--target", default=None, help="explicit x-monomial target")
@click.option("--moves", default=None, help="gens | quadrics | none")
@click.option("--exclude", multiple=True, help="move labels to drop, e.g. g()")
@click.option("--unsafe", is_flag=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@click.pass_context
def fibers(ctx, kind, c, n, degree, target, moves, exclude, unsafe, fmt):
    """Fiber-graph connectivity reports."""
    _cap(ctx, n, "--n")
    _cap(ctx, degree, "--degree")
    if moves is None:
        moves = "gens" if kind == "gap" else "quadrics"
    if target is None and degree is None:
        raise click.UsageError("need --target or --degree")
    use_shifts = moves == "gens"
    degree_cap = degree if degree is not None else SAFE_CAP
    move_list = _move_set(moves, kind, c, n, degree_cap)
    if exclude:
        move_list = [(lbl, b) for lbl, b in move_list if lbl not in exclude]
    targets = []
    if target is not None:
        targets.append(parse_x_monomial(target))
    else:
        from .toric import window_edges
        import itertools as _it

        seen = set()
        for combo in _it.combinations_with_replacement(window_edges(kind, c, n), degree):
            m = {}
            for (i, j) in combo:
                m[i] = m.get(i, 0) + 1
                m[j] = m.get(j, 0) + 1
            key = tuple(sorted(m.items()))
            if key not in seen:
                seen.add(key)
                targets.append(dict(key))
    reports = []
    lines = []
    disconnected = 0
    for tgt in targets:
        rep = fiber_report(kind, c, n, tgt, move_list, use_shifts=use_shifts)
        reports.append(rep)
        if not rep["connected"]:
            disconnected += 1
        if target is not None or not rep["connected"]:
            lines.append(
                "target %s: fiber %d, components %d%s"
                % (
                    rep["target"],
                    rep["fiber_size"],
                    len(rep["components"]),
                    "" if rep["connected"] else "  DISCONNECTED",
                )
            )
            if not rep["connected"] or target is not None:
                for comp in rep["components"]:
                    lines.append("    [%s]" % ", ".join(comp))
    lines.append(
        "%d target(s), %d disconnected fiber(s)" % (len(targets), disconnected)
    )
    payload = {
        "command": "toric fibers",
        "params": {
            "map": kind,
            "c": c,
            "n": n,
            "degree": degree,
            "target": target,
            "moves": moves,
            "exclude": list(exclude),
        },
        "results": reports if target is None else reports[0],
    }
    _emit(fmt, payload, lines)


@toric.command()
@click.option("--binomial", "binomial_text", required=True)
@click.option("--moves", default="quadrics")
@click.option("--map", "kind", type=click.Choice(["gap", "window-squares"]), default="window-squares")
@click.option("--c", type=int, default=2)
@click.option("--n", type=int, default=8)
@click.option("--unsafe", is_flag=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@click.pass_context
def reduce(ctx, binomial_text, moves, kind, c, n, unsafe, fmt):
    """Reduce a kernel binomial by a move set; report zero or the remainder."""
    _cap(ctx, n, "--n")
    h = parse_binomial(binomial_text)
    if not kernel_test(h):
        raise click.UsageError("not a kernel binomial: %s" % binomial_str(h))
    move_list = _move_set(moves, kind, c, n, h.degree())
    out = reduce_binomial(h, move_list)
    lines = [
        "input:     %s" % binomial_str(h),
        "remainder: %s" % binomial_str(out),
        "reduced to zero: %s" % out.is_zero(),
    ]
    payload = {
        "command": "toric reduce",
        "params": {"binomial": binomial_text, "moves": moves, "map": kind, "c": c, "n": n},
        "results": {"remainder": binomial_str(out), "zero": out.is_zero()},
    }
    _emit(fmt, payload, lines)


@toric.command("degree-stats")
@click.option("--nmin", type=int, default=6)
@click.option("--nmax", type=int, default=15)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
def degree_stats(nmin, nmax, fmt):
    """Max fitting degree of the kernel family vs the closed formula."""
    rows = gen_degree_stats(nmin, nmax)
    lines = []
    for r in rows:
        lines.append(
            "n=%-3d computed=%-3d formula=%-3d %s"
            % (r["n"], r["computed"], r["formula"], "ok" if r["equal"] else "MISMATCH")
        )
    bad = [r["n"] for r in rows if not r["equal"]]
    if bad:
        lines.append("formula disagrees at n in %s" % bad)
    payload = {
        "command": "toric degree-stats",
        "params": {"nmin": nmin, "nmax": nmax},
        "results": rows,
    }
    _emit(fmt, payload, lines)


@main.command()
@click.argument("selector")
@click.option("--c", type=int, default=None)
@click.option("--a", default="poly-ring")
@click.option("--a-c", type=int, default=1)
@click.option("--b", default="poly-ring")
@click.option("--b-c", type=int, default=1)
@click.option("--what", type=click.Choice(["dfa", "alt-dfa"]), default="dfa")
def export(selector, c, a, a_c, b, b_c, what):
    """Emit the automaton of a built-in language as DOT."""
    lang = _build_language(selector, c, a, a_c, b, b_c, False)
    dfa = lang.dfa if what == "dfa" else lang.alt_dfa
    if dfa is None:
        raise click.UsageError("%s has no %s" % (lang.name, what))
    title = re.sub(r"[^A-Za-z0-9_]", "_", lang.name)
    click.echo(dfa.to_dot(title), nl=False)


if __name__ == "__main__":
    sys.exit(main())
