import oracles
import pytest

from goldindex.codec import dumps
from goldindex.effnum import EvenTarget, census, is_prime
from goldindex.errors import GoldbachCounterexample, InvalidTarget, LimitExceeded
from goldindex.index import WitnessSource
from goldindex.scan import (
    AuditRecord,
    PrimeSieve,
    audit_claims,
    audit_record,
    goldbach_witness_sieve,
    iter_scan,
    scan_range,
    sieve,
    summarize,
)


@pytest.fixture(scope="module")
def primes():
    return PrimeSieve(100_000)


class TestSieve:
    def test_small(self):
        s = sieve(100)
        assert s.count() == 25 and 67 in s and 63 not in s
        assert s.primes().tolist()[:5] == [2, 3, 5, 7, 11]

    @pytest.mark.parametrize("limit", list(range(40)) + [100, 101, 121, 1000, 1001])
    def test_edges(self, limit):
        s = sieve(limit)
        want = [n for n in range(limit + 1) if oracles.is_prime_td(n)]
        assert s.primes().tolist() == want and s.count() == len(want)
        assert s.pi(limit) == len(want)

    def test_matches_is_prime(self, primes):
        flags = [primes.is_prime(n) for n in range(primes.limit + 1)]
        assert flags == [is_prime(n) for n in range(primes.limit + 1)]
        assert flags == oracles.prime_flags(primes.limit).tolist()

    def test_pi(self, primes):
        assert [primes.pi(x) for x in (0, 1, 2, 3, 10, 100, 100_000)] == [0, 0, 1, 2, 4, 25, 9592]

    def test_bounds(self):
        with pytest.raises(LimitExceeded):
            PrimeSieve(10**9)
        with pytest.raises(LimitExceeded):
            sieve(100).is_prime(101)
        with pytest.raises(ValueError):
            PrimeSieve(-1)


class TestWitness:
    @pytest.mark.parametrize("n2, pair", [(68, (7, 61)), (8, (3, 5)), (10, (3, 7))])
    def test_examples(self, primes, n2, pair):
        w = goldbach_witness_sieve(EvenTarget.of(n2), primes)
        assert (w.p, w.q) == pair and w.source is WitnessSource.Sieve

    def test_half_prime(self, primes):
        # 6 = 3 + 3 is below range; 14 = 3 + 11, while 2N = 2p with no smaller pair needs p + p
        w = goldbach_witness_sieve(EvenTarget.of(12), primes)
        assert (w.p, w.q) == (5, 7)
        for n2 in range(8, 2000, 2):
            w = goldbach_witness_sieve(EvenTarget.of(n2), primes)
            assert w.source is (WitnessSource.HalfPrime if w.p == w.q else WitnessSource.Sieve)

    def test_smallest(self, primes):
        for n2 in range(8, 3000, 2):
            w = goldbach_witness_sieve(EvenTarget.of(n2), primes)
            assert (w.p, w.q) == oracles.goldbach_pairs(n2)[0]

    def test_sieve_too_small(self):
        with pytest.raises(LimitExceeded):
            goldbach_witness_sieve(EvenTarget.of(200), sieve(100))


class TestScan:
    def test_sieve_only_small(self):
        recs = scan_range(8, 100)
        assert len(recs) == 47 and all(r.has_sieve_witness for r in recs)
        assert [r.n2 for r in recs] == list(range(8, 101, 2))

    def test_fast_counts_match_census(self, primes):
        for n2 in range(8, 3000, 2):
            fast = audit_record(n2, primes)
            c = census(EvenTarget.of(n2))
            assert (fast.s, fast.product_count) == (c.s, c.product_count)

    def test_full_68(self, primes):
        (r,) = scan_range(68, 68, full=True, primes=primes)
        assert r.coverage_base_found == 3 and r.collision_witness_count >= 2
        assert set(r.collision_witnesses) >= {(7, 61), (31, 37)}
        assert r.pigeonhole and (r.s, r.product_count) == (16, 14)
        assert r.composite_probe_summary.period == 4

    def test_full_24(self, primes):
        (r,) = scan_range(24, 24, full=True, primes=primes)
        assert r.coverage_base_found is None and r.collision_witness_count == 0
        assert r.composite_probe_summary is not None

    def test_criterion_mismatch(self, primes):
        # 2N = 2p^k: a generator reaches f = F but hits only F/2 partitions
        r = audit_record(38, primes, full=True)
        assert r.paper_criterion_mismatch

    @pytest.mark.parametrize("lo, hi", [(7, 10), (8, 11), (6, 10), (20, 10)])
    def test_bad_range(self, lo, hi):
        with pytest.raises(InvalidTarget):
            scan_range(lo, hi)

    def test_limits(self):
        with pytest.raises(LimitExceeded):
            scan_range(8, 200, sieve_limit=100)
        with pytest.raises(LimitExceeded):
            scan_range(8, 2_000_002, full=True, full_limit=10**6, sieve_limit=10**7)

    def test_skip(self):
        recs = scan_range(8, 20, skip={10, 12})
        assert [r.n2 for r in recs] == [8, 14, 16, 18, 20]

    def test_parallel_matches_serial(self):
        serial = scan_range(8, 1200, full=True)
        pooled = scan_range(8, 1200, full=True, jobs=2, chunk=64)
        assert [dumps(r) for r in serial] == [dumps(r) for r in pooled]

    def test_deterministic(self):
        a = [dumps(r) for r in scan_range(8, 600, full=True)]
        b = [dumps(r) for r in scan_range(8, 600, full=True)]
        assert a == b

    def test_counterexample_path(self, monkeypatch):
        import goldindex.scan as scan_mod

        real = scan_mod.goldbach_witness_sieve
        monkeypatch.setattr(scan_mod, "goldbach_witness_sieve",
                            lambda t, p: None if t.n2 == 14 else real(t, p))
        seen = []
        with pytest.raises(GoldbachCounterexample) as exc:
            for rec in iter_scan(8, 20):
                seen.append(rec.n2)
        assert seen == [8, 10, 12, 14]
        assert exc.value.record.n2 == 14 and not exc.value.record.has_sieve_witness


class TestAudit:
    def test_68(self):
        s = audit_claims(68, 68)
        assert s.pigeonhole == (68,) and s.coverage_count == 1 and s.collisions_sound

    def test_summary_small(self):
        s = audit_claims(8, 300)
        assert s.witness_rate == 1.0 and s.full
        assert 24 in s.no_coverage
        assert {n for n, _ in s.no_coverage_probes} == set(s.no_coverage)
        assert s.collisions_sound and s.collision_witness_total > 0

    def test_unconfirmed_collision_reported(self):
        fake = AuditRecord(n2=68, s=16, product_count=14, has_sieve_witness=True, smallest_witness=(7, 61),
                           coverage_base_found=3, collision_witness_count=1, collision_witnesses=((5, 63),),
                           full=True)
        s = summarize([fake], sieve(100), 68, 68)
        assert s.unconfirmed_collisions == ((68, 5, 63),) and not s.collisions_sound
