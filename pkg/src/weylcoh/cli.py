"""Command-line interface: ``weylcoh <command> [options]``."""

from __future__ import annotations

import csv
import functools
import io
import sys
from pathlib import Path

import click
import numpy as np

from . import golden
from . import pointcount as pc
from . import reference as ref
from .cache import Cache, ENV_VAR

EXIT_VERIFY_FAILED = 1
EXIT_INTERNAL = 3


class Output:
    """Collects rows and prints them as aligned text or CSV."""

    def __init__(self, fmt: str):
        self.fmt = fmt

    def table(self, header, rows) -> str:
        if self.fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
            if header:
                w.writerow(header)
            w.writerows(rows)
            return buf.getvalue()
        cells = ([list(map(str, header))] if header else []) + [list(map(str, r)) for r in rows]
        if not cells:
            return ""
        ncol = max(len(r) for r in cells)
        widths = [max(len(r[i]) for r in cells if i < len(r)) for i in range(ncol)]
        # the last column holds free text and is left unpadded
        fmt = lambda i, c: c if i == ncol - 1 else c.rjust(widths[i])
        return "".join("  ".join(fmt(i, c) for i, c in enumerate(r)).rstrip() + "\n" for r in cells)


def _int_list(text: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(t) for t in text.replace(" ", "").split(",") if t)
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {text!r}") from None
    if not vals:
        raise click.BadParameter("empty list")
    return vals


def _common(f):
    @click.option("--cache-dir", type=click.Path(file_okay=False), envvar=ENV_VAR,
                  help=f"Artifact cache directory (also ${ENV_VAR}).")
    @click.option("--threads", type=click.IntRange(min=1), default=1, show_default=True,
                  help="Worker processes for independent tasks.")
    @click.option("--format", "fmt", type=click.Choice(["text", "csv"]), default="text", show_default=True)
    @click.option("--stats", is_flag=True, help="Print cache statistics to stderr.")
    @functools.wraps(f)
    def wrapper(*args, cache_dir, threads, fmt, stats, **kw):
        from . import moduli

        cache = Cache(cache_dir)
        moduli.set_cache(cache)
        try:
            return f(*args, out=Output(fmt), threads=threads, **kw)
        except click.exceptions.Exit:
            raise
        except (click.ClickException, click.Abort):
            raise
        except (KeyError, ValueError) as exc:
            raise click.UsageError(str(exc.args[0]) if exc.args else str(exc)) from None
        except (ArithmeticError, AssertionError, RuntimeError) as exc:
            click.echo(f"internal error: {type(exc).__name__}: {exc}", err=True)
            sys.exit(EXIT_INTERNAL)
        finally:
            if stats:
                click.echo(cache.stats(), err=True)

    return wrapper


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def main():
    """Equivariant cohomology of del Pezzo moduli via point counts and arrangements."""


def _root_system(root_type: str):
    from .moduli import standard_root_system

    return standard_root_system(root_type)


TYPE_OPTION = click.option("--type", "root_type", required=True, help="Root system type, e.g. E6, D5, F4, A2.")


@main.command()
@TYPE_OPTION
@_common
def roots(root_type, out, threads):
    """List the positive roots (ambient coordinates L, E1, ...)."""
    rs = _root_system(root_type)
    rows = [[i, *map(int, rs.roots[j])] for i, j in enumerate(rs.positive)]
    header = ["index"] + ["L"] + [f"E{i}" for i in range(1, rs.ambient.rank)]
    click.echo(out.table(header, rows), nl=False)
    click.echo(f"# type {rs.type_label} rank {rs.rank} roots {len(rs.roots)} positive {len(rs.positive)}",
               err=out.fmt == "csv")


@main.command()
@TYPE_OPTION
@_common
def group(root_type, out, threads):
    """Order and conjugacy classes of the Weyl group."""
    from .weyl import WeylGroup

    w = WeylGroup(_root_system(root_type))
    rows = []
    for c, cl in enumerate(w.classes):
        m = w.matrix(cl.representative)
        rows.append([c, cl.order, cl.size, int(np.trace(m))])
    click.echo(out.table(["class", "order", "size", "trace"], rows), nl=False)
    click.echo(f"# order {w.order} classes {len(w.classes)}", err=out.fmt == "csv")


@main.command()
@TYPE_OPTION
@_common
def chartab(root_type, out, threads):
    """Character table with phi_{d}^{b} labels (rows) by class (columns).

    Irreducibles sharing d and b (as in F4) are told apart by primes.
    """
    from .chartab import weyl_character_table
    from .weyl import WeylGroup

    w = WeylGroup(_root_system(root_type))
    t = weyl_character_table(w, primes=True)
    rows = [[lab, *map(int, row)] for lab, row in zip(t.labels, t.values)]
    click.echo(out.table(["irreducible"] + [f"C{c}" for c in range(len(w.classes))], rows), nl=False)


def _ct_label(ct) -> str:
    return "(" + " ".join(map(str, ct)) + ")"


def _cycle_types(n, cycle_type):
    if cycle_type is None:
        return [tuple(p) for p in pc.partitions(n)]
    ct = _int_list(cycle_type)
    if sum(ct) != n:
        raise click.BadParameter(f"{ct} is not a partition of {n}", param_hint="--cycle-type")
    return [tuple(sorted(ct, reverse=True))]


@main.command()
@click.option("--n", "n", type=click.Choice(["5", "6"]), required=True)
@click.option("--cycle-type", default=None, help="Comma-separated partition of n (default: all).")
@click.option("--q", "q", type=int, default=None, help="A single field size.")
@click.option("--q-samples", default=None, help="Comma-separated field sizes.")
@_common
def count(n, cycle_type, q, q_samples, out, threads):
    """Frobenius-twisted orbit counts of n points in general position."""
    n = int(n)
    qs = (q,) if q is not None else (_int_list(q_samples) if q_samples else pc.DEFAULT_SAMPLES)
    cts = _cycle_types(n, cycle_type)
    samples = pc.count_samples(n, qs, cycle_types=cts, workers=threads)
    if len(cts) == 1 and len(qs) == 1 and out.fmt == "text":
        click.echo(samples[cts[0]][0][1])
        return
    rows = []
    for ct in cts:
        for qq, v in samples[ct]:
            rows.append([_ct_label(ct), qq, v * pc.pgl3_order(qq), v])
    header = ["cycle_type", "q", "raw", "orbits"]
    click.echo(out.table(header, rows), nl=False)


@main.command()
@click.option("--n", "n", type=click.Choice(["5", "6"]), required=True)
@click.option("--q-samples", default=None, help="Comma-separated field sizes (first 2(n-4) fit, rest verify).")
@_common
def interp(n, q_samples, out, threads):
    """Interpolate the counts to monic polynomials in q, one row per cycle type."""
    n = int(n)
    qs = _int_list(q_samples) if q_samples else pc.DEFAULT_SAMPLES
    dim = 2 * (n - 4)
    samples = pc.count_samples(n, qs, workers=threads)
    rows = []
    for ct in sorted(samples, reverse=True):
        poly = pc.interpolate(samples[ct], dim)
        rows.append([_ct_label(ct), *reversed(poly.coefficients), str(poly)])
    header = ["cycle_type"] + [f"q^{i}" for i in range(dim, -1, -1)] + ["polynomial"]
    click.echo(out.table(header, rows), nl=False)


KIND_OPTION = click.option("--kind", type=click.Choice(["toric", "linear"]), default="toric", show_default=True)


def _poset(root_type, kind):
    from .moduli import STANDARD_SYSTEMS, arrangement_poset

    rs = _root_system(root_type)
    label = f"{rs.type_label}:{STANDARD_SYSTEMS[root_type][1]}"
    return rs, arrangement_poset(rs.roots_in_basis[rs.positive], rs.rank, kind, label)


@main.command()
@TYPE_OPTION
@KIND_OPTION
@_common
def poset(root_type, kind, out, threads):
    """Layer counts of the intersection poset by dimension."""
    rs, p = _poset(root_type, kind)
    by_dim = p.counts_by_dimension()
    rows = [[d, by_dim[d]] for d in sorted(by_dim, reverse=True)]
    click.echo(out.table(["dimension", "layers"], rows), nl=False)
    if kind == "toric":
        click.echo(f"components {len(p)}")
        click.echo(f"total {p.distinct_masks()}  (distinct sets of hypertori)")
    else:
        click.echo(f"total {len(p)}")


@main.command()
@TYPE_OPTION
@KIND_OPTION
@click.option("--class", "classes", default=None, help="Comma-separated class indices (default: all).")
@_common
def poincare(root_type, kind, classes, out, threads):
    """Equivariant compact-support Poincare polynomial per Weyl group class."""
    from .weyl import WeylGroup

    rs, p = _poset(root_type, kind)
    w = WeylGroup(rs)
    idx = _int_list(classes) if classes else range(len(w.classes))
    rows = []
    for c in idx:
        if not 0 <= c < len(w.classes):
            raise click.BadParameter(f"class {c} out of range", param_hint="--class")
        poly = p.equivariant_poincare(w.matrix(w.classes[c].representative))
        rows.append([c, w.classes[c].order, *poly])
    width = max(len(r) for r in rows) - 2
    rows = [r + [0] * (width + 2 - len(r)) for r in rows]
    click.echo(out.table(["class", "order"] + [f"t^{i}" for i in range(width)], rows), nl=False)


def _table_rows(t):
    return [[f"H^{i}", *r] for i, r in enumerate(t.rows)]


@main.command()
@click.argument("identifier")
@_common
def moduli(identifier, out, threads):
    """Irreducible multiplicities of one space (run without an id to list them)."""
    from . import moduli as m

    t = m.compute_cohomology(identifier)
    click.echo(out.table(["degree", *t.columns], _table_rows(t)), nl=False)


@main.command()
@_common
def sieve(out, threads):
    """Run the candidate sieve for the cubic surface moduli space."""
    from . import sieve as sv

    run = sv.run_sieve()
    for line in run.final.log:
        click.echo(f"# {line}", err=out.fmt == "csv")
    rows = []
    for i in sorted(run.after_bounds.candidates):
        for c in run.after_bounds.candidates[i]:
            status = "kept" if run.final.known.get(i) == c else "discarded"
            rows.append([f"H^{i}", "candidate", status, sv.format_rep(c)])
    for i in sorted(run.final.known):
        rows.append([f"H^{i}", "result", "", sv.format_rep(run.final.known[i])])
    click.echo(out.table(["degree", "kind", "status", "representation"], rows), nl=False)


def _all_tables():
    """(file stem, header, rows) for every reproduced table."""
    from . import moduli as m
    from . import sieve as sv

    out = []
    for n, label in ((5, "P5"), (6, "P6")):
        polys = sv.pointcount_polynomials(n)
        dim = 2 * (n - 4)
        rows = [[_ct_label(ct), *reversed(polys[ct].coefficients)]
                for ct in sorted(polys, reverse=True)]
        out.append((f"{label}_point_counts", ["cycle_type"] + [f"q^{i}" for i in range(dim, -1, -1)], rows))
        t = sv.pointcount_table(n)
        out.append((f"{label}_cohomology", ["degree", *t.columns], _table_rows(t)))
    for ident in golden.E6_SPACES + golden.D4_BLOCKS + ("D3n_union_c", "D3_2n_union_tn", "D3_3n_union_tp"):
        t = m.compute_cohomology(ident)
        cols = ref.E6_COLUMNS if t.group == "W(E6)" else ref.S5_COLUMNS
        t = t.reordered(cols)
        out.append((ident, ["degree", *t.columns], _table_rows(t)))
    d4 = sv.d4_cohomology()
    out.append(("D4", ["degree", "representation"], [[f"H^{i}", sv.format_rep(r, d4.columns)] for i, r in enumerate(d4.rows)]))
    d3 = sv.d3_cohomology()
    out.append(("D3", ["degree", *d3.columns], _table_rows(d3)))
    return out


@main.command()
@click.option("--all", "all_", is_flag=True, help="Emit every table.")
@click.option("--name", "names", multiple=True, help="Emit only these tables (repeatable).")
@click.option("--output", type=click.Path(file_okay=False), default=None,
              help="Write one file per table into this directory instead of stdout.")
@_common
def tables(all_, names, output, out, threads):
    """Emit the reproduced tables."""
    if not all_ and not names:
        raise click.UsageError("give --all or at least one --name")
    items = _all_tables()
    known = [stem for stem, _, _ in items]
    for nme in names:
        if nme not in known:
            raise click.UsageError(f"unknown table {nme!r}; choose from {', '.join(known)}")
    chosen = [it for it in items if all_ or it[0] in names]
    ext = "csv" if out.fmt == "csv" else "txt"
    for stem, header, rows in chosen:
        text = out.table(header, rows)
        if output:
            d = Path(output)
            d.mkdir(parents=True, exist_ok=True)
            (d / f"{stem}.{ext}").write_text(text)
        else:
            click.echo(f"## {stem}")
            click.echo(text, nl=False)
    if output:
        click.echo(f"wrote {len(chosen)} tables to {output}")


@main.command()
@click.option("--group", "groups", multiple=True, type=click.Choice(list(golden.GROUPS)),
              help="Run only these check groups (repeatable).")
@click.option("--accept-documented", is_flag=True,
              help="Do not fail on literal mismatches whose cause is documented.")
@_common
def verify(groups, accept_documented, out, threads):
    """Compare every computed result with the published values."""
    checks = golden.run_checks(groups or None)
    rows = [[c.status, c.name, c.detail] for c in checks]
    click.echo(out.table(["status", "check", "detail"], rows), nl=False)
    failed = [c for c in checks if c.status == "fail" or (c.status == "conflict" and not accept_documented)]
    n_conf = sum(c.status == "conflict" for c in checks)
    click.echo(f"# {len(checks)} checks: {sum(c.ok for c in checks)} pass, "
               f"{n_conf} documented conflicts, {sum(c.status == 'fail' for c in checks)} fail", err=True)
    if failed:
        sys.exit(EXIT_VERIFY_FAILED)


if __name__ == "__main__":
    main()
