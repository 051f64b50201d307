"""Exit criteria.  All comparisons are exact; there is no tolerance anywhere.

Each test prints one PASS/FAIL line in the "acceptance criteria" section of
the pytest summary.
"""

import itertools
import json
import math
import subprocess
import sys
import time
from fractions import Fraction as F

import pytest

from umbral import cli
from umbral import families as fam
from umbral import identities as ids
from umbral.algebra import Polynomial, TruncatedSeries, X
from umbral.engine import ShefferPair, connection_matrix, pair, sheffer_poly
from umbral.identities import IDENTITY_TAGS, PROFILES, hb_four_ways, verify_grid

FULL = PROFILES["full"]

def synthetic_pair(N):
    return ShefferPair(TruncatedSeries([1, -1], N).reciprocal(), TruncatedSeries.exp(N) - 1)

def criterion_pairs(N):
    """(label, pair, member) for criteria 4 and 5."""
    out = []
    for nu, k in itertools.product(FULL.nus, FULL.ks):
        out.append((f"hb nu={nu} k={k}", fam.hb_pair(nu, k, N), lambda n, nu=nu, k=k: fam.hb(n, nu, k)))
    for k in FULL.ks:
        out.append((f"poly_bernoulli k={k}", fam.poly_bernoulli_pair(k, N), lambda n, k=k: fam.poly_bernoulli(n, k)))
    for nu in FULL.nus:
        out.append((f"hermite nu={nu}", fam.hermite_pair(nu, N), lambda n, nu=nu: fam.hermite(n, nu)))
    for r in FULL.rs:
        out.append((f"bernoulli r={r}", fam.bernoulli_pair(r, N), lambda n, r=r: fam.bernoulli_poly(n, r)))
    for r, lam in itertools.product(FULL.rs, FULL.lams):
        out.append((f"frobenius_euler r={r} lambda={lam}", fam.frobenius_euler_pair(r, lam, N),
                    lambda n, r=r, lam=lam: fam.frobenius_euler(n, r, lam)))
    sp = synthetic_pair(N)
    out.append(("synthetic g=1/(1-t) f=e^t-1", sp, lambda n, sp=sp: sheffer_poly(sp, n)))
    return out

def _grid_run(profile):
    t0 = time.perf_counter()
    reports = verify_grid(IDENTITY_TAGS, profile)
    elapsed = time.perf_counter() - t0
    failures = [r.describe() for r in reports if not r.equal]
    tags = {r.identity for r in reports}
    return reports, failures, tags, elapsed

def test_criterion_1_quick_grid(criterion):
    reports, failures, tags, elapsed = _grid_run("quick")
    assert tags == set(IDENTITY_TAGS)
    assert not failures, failures[:10]
    assert all(r.n >= ids.IDENTITIES[r.identity].floor for r in reports)
    assert elapsed < 10, f"quick grid took {elapsed:.1f}s"
    criterion(f"{len(reports)} reports, {elapsed:.1f}s")

@pytest.mark.slow
def test_criterion_2_full_grid(criterion):
    reports, failures, tags, elapsed = _grid_run("full")
    assert tags == set(IDENTITY_TAGS)
    assert not failures, failures[:10]
    assert max(r.n for r in reports) == 24
    assert elapsed < 60, f"full grid took {elapsed:.1f}s"
    criterion(f"{len(reports)} reports, {elapsed:.1f}s")

def test_criterion_3_four_way_hb(criterion):
    count = 0
    for nu, k in itertools.product(FULL.nus, FULL.ks):
        for n in range(21):
            series, prop26, thm27, thm30 = hb_four_ways(n, nu, k)
            assert series == prop26 == thm27 == thm30, (n, nu, k)
            count += 1
    criterion(f"{count} (n, nu, k) points")

def test_criterion_4_biorthogonality(criterion):
    N = 13
    for label, sp, member in criterion_pairs(N):
        for n in range(13):
            s_n = member(n)
            g_fk = sp.g
            for k in range(13):
                expected = math.factorial(n) if n == k else 0
                assert pair(g_fk.truncate(max(n, 1)), s_n) == expected, (label, n, k)
                g_fk = g_fk * sp.f
    criterion(f"{len(criterion_pairs(N))} pairs")

def test_criterion_5_representation_agreement(criterion):
    N = 17
    pairs = criterion_pairs(N)
    for label, sp, member in pairs:
        for n in range(17):
            gen = sheffer_poly(sp, n, "generating")
            assert gen == sheffer_poly(sp, n, "conjugate"), (label, n)
            assert gen == member(n), (label, n)
    criterion(f"{len(pairs)} pairs, n <= 16")

def test_criterion_6_spot_checks(criterion):
    assert fam.bernoulli_number(2) == F(1, 6)
    assert fam.bernoulli_poly(2, 2) == Polynomial([F(5, 6), -2, 1])
    for k in range(-3, 4):
        assert fam.poly_bernoulli(1, k)[0] == F(2) ** (-k)
    for nu in (F(1), F(-1), F(1, 2), F(3), F(-7, 4)):
        assert fam.hermite(3, nu) == X ** 3 - X * (3 * nu)
        for k in range(-3, 4):
            expected = Polynomial([2 * F(3) ** (-k) - F(2) ** (-k) - nu, F(2) ** (1 - k), 1])
            assert fam.hb(2, nu, k) == expected
    assert fam.polylog_series(1, 30) == TruncatedSeries.t(30)
    assert fam.stirling2(4, 2) == 7 and fam.stirling2(5, 3) == 25
    criterion()

def test_criterion_7_connection_round_trip(criterion):
    n_max = 16
    N = n_max + 1
    points = [(F(1), 1), (F(-1), -3), (F(1, 2), 2), (F(3), 0)]
    checked = 0
    for nu, k in points:
        src = fam.hb_pair(nu, k, N)
        hb_rows = [fam.hb(n, nu, k) for n in range(n_max + 1)]
        targets = [(fam.bernoulli_pair(r, N), lambda m, r=r: fam.bernoulli_poly(m, r)) for r in range(5)]
        targets += [(fam.frobenius_euler_pair(r, lam, N), lambda m, r=r, lam=lam: fam.frobenius_euler(m, r, lam))
                    for r in range(5) for lam in FULL.lams]
        for tgt, member in targets:
            C = connection_matrix(src, tgt, n_max)
            basis = [member(m) for m in range(n_max + 1)]
            for n in range(n_max + 1):
                assert C.resum(n, basis) == hb_rows[n]
            assert (C @ connection_matrix(tgt, src, n_max)).is_identity()
            assert (connection_matrix(tgt, src, n_max) @ C).is_identity()
            checked += 1
    criterion(f"{checked} source/target combinations")

def test_criterion_8_cli_contract(criterion, monkeypatch, capsys):
    proc = subprocess.run([sys.executable, "-m", "umbral", "verify", "all", "--profile", "quick"],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr[-2000:]
    lines = proc.stdout.strip().split("\n")
    assert all(json.loads(line)["equal"] for line in lines)

    # output stability
    again = subprocess.run([sys.executable, "-m", "umbral", "verify", "thm29", "--profile", "quick"],
                           capture_output=True, text=True)
    assert again.stdout == "\n".join(l for l in lines if '"thm29"' in l) + "\n"

    # mutation: one coefficient of one recipe is wrong
    original = ids.IDENTITIES["bernoulli_connection50"]

    def corrupted(n, p):
        lhs, rhs = original.recipe(n, p)
        if n == 5 and p.r == 2:
            rhs = rhs + Polynomial.monomial(3, F(1, 7))
        return lhs, rhs

    monkeypatch.setitem(ids.IDENTITIES, "bernoulli_connection50",
                        ids.Identity("bernoulli_connection50", corrupted, axes=original.axes))
    code = cli.main(["verify", "all", "--profile", "quick"])
    err = capsys.readouterr().err
    assert code == 1
    assert "FAIL bernoulli_connection50 n=5 nu=1 k=-2 r=2" in err
    assert err.count("FAIL ") == 10  # 2 nus x 5 ks, all at n=5, r=2
    monkeypatch.undo()

    # table and compute round trips
    for argv, parse, dump in [
        (["table", "hb", "--n-max", "8", "--nu", "1/2", "--k", "-2", "--format", "json"],
         cli.records_from_json, cli.records_to_json),
        (["table", "frobenius_euler", "--n-max", "8", "--r", "2", "--lambda", "-1", "--format", "csv"],
         cli.records_from_csv, cli.records_to_csv),
        (["table", "bernoulli_number", "--n-max", "8", "--format", "csv"],
         cli.records_from_csv, cli.records_to_csv),
    ]:
        assert cli.main(argv) == 0
        out = capsys.readouterr().out
        assert dump(parse(out)) == out
    assert cli.main(["compute", "hb", "--n", "5", "--nu", "3", "--k", "2"]) == 0
    out = capsys.readouterr().out
    assert Polynomial.from_strings(json.loads(out)) == fam.hb(5, 3, 2)
    assert json.dumps(Polynomial.from_strings(json.loads(out)).to_strings()) + "\n" == out
    criterion()
