"""Command-line front end. Every command is a thin wrapper over the
library; no arithmetic lives here."""

from __future__ import annotations

import json
import sys

import click

from . import arith, cyclotomic, matrix as matrix_mod, search, singular, verify
from .errors import DemjanenkoError

TABLE1_EXPECTED = {3: 31, 4: 3121, 5: 127681, 6: 25858561}
_TABLE1_LIMITS = {3: 10_000, 4: 10_000, 5: 200_000, 6: 26_000_000}

_format_option = click.option(
    "--format", "fmt", type=click.Choice(["plain", "json", "csv"]), default="plain"
)


def _fail_usage(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(2)


def _context_or_exit(ell: int) -> arith.PrimeContext:
    try:
        return arith.make_context(ell)
    except DemjanenkoError as exc:
        _fail_usage(str(exc))


def _census_csv_row(rep: singular.KSetReport) -> str:
    j = rep.to_json()
    return (
        f"{j['ell']},{j['alpha']},{j['beta']},{j['m']},{j['count']},"
        f"{j['main_term']},{j['error_bound']},{str(j['within_bound']).lower()}"
    )


_CENSUS_CSV_HEADER = "ell,alpha,beta,m,count,main_term,bound,within"


@click.group()
def main():
    """Exact computations around the singularity of Demjanenko matrices."""


@main.command()
@click.option("--ell", type=int, required=True)
@_format_option
def kset(ell, fmt):
    """Singular-set report for one prime."""
    ctx = _context_or_exit(ell)
    rep = singular.k_set(ctx)
    if fmt == "json":
        click.echo(json.dumps(rep.to_json()))
    elif fmt == "csv":
        click.echo(_CENSUS_CSV_HEADER)
        click.echo(_census_csv_row(rep))
    else:
        j = rep.to_json()
        click.echo(
            f"ell={ell} alpha={j['alpha']} beta={j['beta']} m={j['m']} "
            f"count={j['count']} main_term={j['main_term']} "
            f"bound={j['error_bound']} within={j['within_bound']}"
        )
        if rep.members:
            click.echo("members: " + " ".join(map(str, rep.members)))


@main.command()
@click.option("--max-ell", type=int, required=True)
@click.option("--workers", type=int, default=1)
@click.option("--checkpoint", type=click.Path(), default=None)
@_format_option
def census(max_ell, workers, checkpoint, fmt):
    """Reports for every odd prime up to the limit."""
    if max_ell < 3:
        _fail_usage("--max-ell must be at least 3")
    cfg = search.SearchConfig(
        max_ell=max_ell, workers=workers, checkpoint_path=checkpoint
    )
    stream = search.census(cfg)
    if fmt == "json":
        click.echo(json.dumps([rep.to_json() for rep in stream]))
    elif fmt == "csv":
        click.echo(_CENSUS_CSV_HEADER)
        for rep in stream:
            click.echo(_census_csv_row(rep))
    else:
        for rep in stream:
            j = rep.to_json()
            click.echo(f"ell={j['ell']} count={j['count']} within={j['within_bound']}")


@main.command("matrix")
@click.option("--ell", type=int, required=True)
@click.option("--k", type=int, required=True)
def matrix_cmd(ell, k):
    """Dump the sign matrix as a +/- grid."""
    ctx = _context_or_exit(ell)
    try:
        hps = matrix_mod.half_plane_set(ctx, k)
        stab = matrix_mod.stabilizer(hps)
        dm = matrix_mod.build_matrix(ctx, k)
    except DemjanenkoError as exc:
        _fail_usage(str(exc))
    click.echo(matrix_mod.dump_matrix(dm, len(stab.elements)))


@main.command()
@click.option("--ell", type=int, required=True)
@click.option("--k", type=int, required=True)
@_format_option
def rank(ell, k, fmt):
    """Exact rational rank of one matrix."""
    ctx = _context_or_exit(ell)
    try:
        dm = matrix_mod.build_matrix(ctx, k)
        r = matrix_mod.exact_rank(dm)
    except DemjanenkoError as exc:
        _fail_usage(str(exc))
    singular_flag = r < dm.dimension
    if fmt == "json":
        click.echo(
            json.dumps(
                {"ell": ell, "k": k, "dim": dm.dimension, "rank": r,
                 "singular": singular_flag}
            )
        )
    else:
        click.echo(f"ell={ell} k={k} dim={dm.dimension} rank={r} singular={singular_flag}")


@main.command("verify")
@click.option(
    "--mode",
    type=click.Choice(["oracle", "theorem1", "identities", "rankformula"]),
    required=True,
)
@click.option("--max-ell", type=int, required=True)
@click.option("--workers", type=int, default=1)
@click.option("--checkpoint", type=click.Path(), default=None)
def verify_cmd(mode, max_ell, workers, checkpoint):
    """Run one cross-checking suite; exit 1 if any check fails."""
    if mode == "oracle":
        failures = verify.oracle_suite(max_ell, workers=workers)
    elif mode == "theorem1":
        failures = verify.theorem1_suite(
            max_ell, workers=workers, checkpoint_path=checkpoint
        )
    elif mode == "identities":
        failures = verify.identities_suite(max_ell)
    else:
        failures = verify.rankformula_suite(max_ell, workers=workers)
    for msg in failures:
        click.echo(msg, err=True)
    if failures:
        click.echo(f"{mode}: {len(failures)} failure(s)", err=True)
        sys.exit(1)
    click.echo(f"{mode}: all checks passed up to {max_ell}")


def _fact_str(factors) -> str:
    return "·".join(f"{p}^{e}" if e > 1 else f"{p}" for p, e in factors)


@main.command()
@click.option("--skip-s6", is_flag=True, default=False)
@click.option("--limit-s6", type=int, default=_TABLE1_LIMITS[6])
def table1(skip_s6, limit_s6):
    """Smallest empty-set primes by number of factors of ell-1;
    exits 1 on mismatch with the embedded expected values."""
    mismatch = False
    top = 5 if skip_s6 else 6
    for s in range(3, top + 1):
        limit = limit_s6 if s == 6 else _TABLE1_LIMITS[s]
        rec = search.find_ls(s, limit)
        if not rec.found:
            click.echo(f"s={s}: NOT-FOUND below {limit}", err=True)
            mismatch = True
            continue
        click.echo(f"s={s}  {rec.ell}, {_fact_str(rec.factorization)}")
        if TABLE1_EXPECTED.get(s) != rec.ell:
            click.echo(
                f"s={s}: got {rec.ell}, expected {TABLE1_EXPECTED.get(s)}", err=True
            )
            mismatch = True
    if mismatch:
        sys.exit(1)


@main.command("search-712")
def search_712():
    """The finite list of candidate primes with 2 || ell-1 and 3 | ell-1."""
    for ell in search.corollary712_search():
        click.echo(str(ell))


@main.command()
@click.option("--a", type=int, required=True)
@click.option("--b", type=int, required=True)
@click.option("--d", type=int, default=1)
@click.option("--e", type=int, default=1)
@_format_option
def lset(a, b, d, e, fmt):
    """Cyclotomic resultant record and its prime divisors."""
    try:
        rec = cyclotomic.l_set(a, b, d, e)
    except (DemjanenkoError, ValueError) as exc:
        _fail_usage(str(exc))
    if fmt == "json":
        click.echo(json.dumps(rec.to_json()))
    else:
        click.echo(
            f"(a,b,d,e)=({a},{b},{d},{e}) resultant={rec.resultant} "
            f"primes={{{', '.join(map(str, rec.prime_divisors))}}}"
        )


@main.command()
@click.option("--beta", type=int, required=True)
@click.option("--m", type=int, required=True)
@click.option("--alpha-max", type=int, default=40)
@click.option("--budget", type=int, default=search.DEFAULT_LBM_BUDGET)
def lbm(beta, m, alpha_max, budget):
    """Scan the family 2^alpha 3^beta m + 1 for non-empty singular sets."""
    try:
        rows = search.lbm_scan(beta, m, alpha_max, budget=budget)
    except ValueError as exc:
        _fail_usage(str(exc))
    for row in rows:
        status = "SKIPPED" if row.skipped else ("in_L=true" if row.in_l else "in_L=false")
        click.echo(f"alpha={row.alpha} ell={row.ell} {status}")


@main.command()
@click.option("--ell", type=int, required=True)
@_format_option
def mstats(ell, fmt):
    """lcm statistic M(k) over the singular set of one prime."""
    ctx = _context_or_exit(ell)
    rep = singular.k_set(ctx)
    stats = [singular.m_value(ctx, k) for k in rep.members]
    if fmt == "json":
        click.echo(
            json.dumps(
                {
                    "ell": ell,
                    "count": len(stats),
                    "min_m": min((s.M for s in stats), default=None),
                    "values": [{"k": s.k, "M": s.M} for s in stats],
                }
            )
        )
    else:
        for s in stats:
            click.echo(f"k={s.k} M={s.M}")
        mn = min((s.M for s in stats), default=None)
        click.echo(f"count={len(stats)} min_M={mn}")


@main.command()
@click.option("--x", type=int, required=True)
@_format_option
def density(x, fmt):
    """Empirical census of empty-set primes up to x."""
    if x < 2:
        _fail_usage("--x must be at least 2")
    rep = search.density_census(x)
    if fmt == "json":
        click.echo(json.dumps(rep.to_json()))
    else:
        click.echo(
            f"x={x} count={rep.count} reference=x^(3/4)(log x)^3={rep.reference:.1f}"
        )
        click.echo("primes: " + " ".join(map(str, rep.primes)))


if __name__ == "__main__":
    main()
