"""Tests for target sweeps."""

from unittest.mock import MagicMock, patch

import pytest

from mixhom.constructions import alternating_cycle, cactus, circuit
from mixhom.sweep import (
    SweepResult,
    TargetSweep,
    admissible_targets,
    complete_targets,
    mixed_chromatic_number,
    planar_targets,
    sweep_planar_targets,
)
from mixhom.targets import builtin_target, enumerate_tournaments, isomorphic


class FakePool:
    """In-process stand-in for multiprocessing.Pool."""

    def __init__(self, processes=None):
        self.processes = processes

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        return False

    def imap(self, func, iterable):
        return map(func, iterable)


class TestTargetSweep:
    """Tests for TargetSweep."""

    def test_invalid_workers(self):
        with pytest.raises(ValueError):
            TargetSweep(workers=0)

    def test_invalid_chunk_size(self):
        with pytest.raises(ValueError):
            TargetSweep(chunk_size=0)

    def test_sequential(self):
        targets = enumerate_tournaments(3)
        result = TargetSweep(show_progress=False).refute(circuit(3), targets)
        assert len(result.admitting) == 1
        assert isomorphic(targets[result.admitting[0]], circuit(3))
        assert not result.refuted

    @patch("mixhom.sweep.Pool", FakePool)
    def test_pool_matches_sequential(self):
        targets = enumerate_tournaments(4)
        source = circuit(4)
        sequential = TargetSweep(show_progress=False).refute(source, targets)
        pooled = TargetSweep(workers=3, chunk_size=1, show_progress=False).refute(source, targets)
        assert pooled.admitting == sequential.admitting
        assert pooled.targets == sequential.targets

    @patch("mixhom.sweep.Pool")
    def test_single_chunk_stays_in_process(self, mock_pool):
        TargetSweep(workers=4, show_progress=False).refute(circuit(3), enumerate_tournaments(3))
        mock_pool.assert_not_called()

    def test_refuted(self):
        t4 = builtin_target("t4_oriented")
        result = TargetSweep(show_progress=False).refute(cactus(3), [t4])
        assert result.refuted
        assert result.targets == [(4, 6)]

    def test_frame(self):
        result = SweepResult(source_vertices=3, targets=[(3, 3), (3, 2)], admitting=[0])
        frame = result.to_frame()
        assert list(frame["admits"]) == [True, False]
        assert list(frame["links"]) == [3, 2]


class TestChromaticNumber:
    """Tests for complete targets and the mixed chromatic number."""

    def test_complete_targets(self):
        assert len(complete_targets(4, 1, 0)) == 4
        assert len(complete_targets(3, 0, 2)) == 4

    def test_admissible_targets(self):
        targets = complete_targets(3, 1, 0)
        assert len(admissible_targets(circuit(3), targets)) == 1

    def test_circuits(self):
        assert mixed_chromatic_number(circuit(3), 5) == 3
        assert mixed_chromatic_number(circuit(4), 5) == 4

    def test_alternating_cycle(self):
        assert mixed_chromatic_number(alternating_cycle(6), 5) == 5

    def test_cactus_needs_five(self):
        assert mixed_chromatic_number(cactus(3), 4) is None


class TestPlanarTargets:
    """Tests for planar target enumeration."""

    def test_small_orders(self):
        # one vertex; two vertices with or without an arc
        assert len(planar_targets(2, 1, 0)) == 3

    def test_link_limit(self):
        for target in planar_targets(5, 1, 0):
            if target.num_vertices >= 3:
                assert target.num_links <= 3 * target.num_vertices - 6

    def test_order_limit(self):
        with pytest.raises(ValueError):
            planar_targets(6, 1, 0)

    def test_sweep_finds_t5(self):
        result = sweep_planar_targets(cactus(3), 5)
        assert not result.refuted
        assert all(order == 5 for order, _ in (result.targets[i] for i in result.admitting))
