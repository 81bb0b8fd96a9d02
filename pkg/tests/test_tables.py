import pytest

from proxikey.errors import EngineInvariantError
from proxikey.search.tables import (
    FragmentMatcher,
    LemmaTable,
    PositionTable,
    shift_origin,
)

WHO, I, NEED, YOU = 0, 1, 2, 3  # local lemma numbers for the trace fixture


def test_shift_origin_formula():
    assert shift_origin(15, 7) == 8
    assert shift_origin(3, 7) == 0
    assert shift_origin(0, 5) == 0


class TestPositionTable:
    def test_window_size_bounds(self):
        with pytest.raises(ValueError):
            PositionTable(9, 5)
        with pytest.raises(ValueError):
            PositionTable(65, 5)
        PositionTable(10, 5)
        PositionTable(64, 5)

    def test_trace_fixture_buffer_coordinates(self):
        pt = PositionTable(14, 7)
        pt.shift(4)
        assert pt.set(15, WHO) == 0
        assert pt.set(19, I) == 1
        assert pt.set(20, NEED) == 1
        assert pt.set(21, YOU) == 1
        assert pt.flush_border == 21

    def test_mask_union_at_one_position(self):
        pt = PositionTable(14, 7)
        pt.shift(0)
        pt.set(5, WHO)
        pt.set(5, YOU)
        assert pt.drain_first() == [(5, (1 << WHO) | (1 << YOU))]

    def test_records_expand_masks(self):
        pt = PositionTable(14, 7)
        pt.shift(0)
        pt.set(5, YOU)
        pt.set(5, WHO)
        assert pt.drain_records() == [(5, WHO), (5, YOU)]

    def test_set_idempotent(self):
        pt = PositionTable(14, 7)
        pt.shift(0)
        pt.set(3, WHO)
        pt.set(3, WHO)
        assert pt.drain_records() == [(3, WHO)]

    def test_drain_is_sorted_and_clears(self):
        pt = PositionTable(16, 5)
        pt.shift(0)
        for pos in (9, 2, 14, 0):
            pt.set(pos, I)
        assert [p for p, _ in pt.drain_first()] == [0, 2, 9, 14]
        assert pt.drain_first() == []
        assert not pt.occupied

    def test_out_of_range_rejected(self):
        pt = PositionTable(14, 7)
        pt.shift(10)
        with pytest.raises(EngineInvariantError):
            pt.set(9, WHO)
        with pytest.raises(EngineInvariantError):
            pt.set(10 + 3 * 14, WHO)

    def test_switch_rotates_and_advances(self):
        pt = PositionTable(14, 7)
        pt.shift(4)
        pt.set(15, WHO)   # buffer 0
        pt.set(19, I)     # buffer 1
        assert pt.drain_records() == [(15, WHO)]
        pt.switch()
        assert pt.start == 18
        assert pt.drain_records() == [(19, I)]

    def test_trace_fixture_drain_after_switch(self):
        pt = PositionTable(14, 7)
        pt.shift(4)
        for pos, lem in ((15, WHO), (19, I), (20, NEED), (21, YOU), (22, YOU)):
            pt.set(pos, lem)
        assert pt.drain_records() == [(15, WHO)]
        pt.switch()
        assert pt.drain_records() == [(19, I), (20, NEED), (21, YOU), (22, YOU)]


class TestLemmaTable:
    def test_add_and_complete(self):
        lt = LemmaTable([1, 1, 1, 1])
        assert lt.total_max == 4
        assert not lt.add(WHO)
        assert not lt.add(I)
        assert not lt.add(NEED)
        assert lt.add(YOU)
        assert lt.complete

    def test_surplus_add_keeps_total(self):
        lt = LemmaTable([1, 1])
        lt.add(0)
        lt.add(0)
        assert lt.total == 1
        assert lt.counts[0] == 2
        lt.check_consistency()

    def test_fresh_single_slot_completes(self):
        lt = LemmaTable([1])
        assert lt.add(0)

    def test_remove_reverses(self):
        lt = LemmaTable([2, 1])
        for lem in (0, 0, 1):
            lt.add(lem)
        assert lt.complete
        lt.remove(0)
        assert not lt.complete
        lt.check_consistency()


class TestFragmentMatcher:
    def trace_matcher(self):
        matcher = FragmentMatcher([1, 1, 1, 1])
        for pos, lem in ((15, WHO), (19, I), (20, NEED)):
            assert not matcher.add(pos, lem)
        return matcher

    def test_trace_sequence_emits_15_21(self):
        matcher = self.trace_matcher()
        assert matcher.add(21, YOU)
        assert matcher.emit(21, 1 << YOU, 7) == (15, 21)

    def test_surplus_completion_suppressed(self):
        matcher = self.trace_matcher()
        matcher.add(21, YOU)
        matcher.emit(21, 1 << YOU, 7)
        matcher.add(22, YOU)
        assert matcher.table.complete
        assert matcher.emit(22, 1 << YOU, 7) is None

    def test_new_window_after_front_pop(self):
        matcher = self.trace_matcher()
        matcher.add(21, YOU)
        matcher.emit(21, 1 << YOU, 7)
        matcher.add(22, WHO)  # surplus who lets the front shrink to 19
        assert matcher.emit(22, 1 << WHO, 7) == (19, 22)

    def test_duplicate_front_popped_before_emission(self):
        matcher = FragmentMatcher([1, 1])
        matcher.add(1, 0)
        matcher.add(2, 0)
        assert matcher.add(5, 1)
        assert matcher.emit(5, 1 << 1, 5) == (2, 5)

    def test_wide_window_returns_none_but_keeps_state(self):
        matcher = FragmentMatcher([1, 1])
        matcher.add(0, 0)
        assert matcher.add(30, 1)
        assert matcher.emit(30, 1 << 1, 5) is None
        assert not matcher.empty

    def test_atomic_position_not_half_popped(self):
        # both lemmas share position 5; a surplus at 6 must not re-emit
        matcher = FragmentMatcher([1, 1])
        matcher.add(5, 0)
        assert matcher.add(5, 1)
        assert matcher.emit(5, (1 << 0) | (1 << 1), 5) == (5, 5)
        matcher.add(6, 0)
        assert matcher.emit(6, 1 << 0, 5) is None

    def test_prune_reverses_counts(self):
        matcher = FragmentMatcher([1, 1])
        matcher.add(1, 0)
        matcher.prune_older_than(2)
        assert matcher.empty
        assert matcher.table.counts == [0, 0]
        matcher.table.check_consistency()

    def test_prune_threshold_is_exclusive(self):
        matcher = FragmentMatcher([1, 1, 1, 1])
        matcher.add(15, WHO)
        # switch with start=4, window=14, max_distance=7: threshold 4+14-14=4
        matcher.prune_older_than(4)
        assert not matcher.empty
