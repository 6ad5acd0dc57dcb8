"""Course generation, geometry profile, and file round-trip."""

import numpy as np
import pytest

from linefollow.course import (CourseProfile, CourseSpec, KIND_DIFFICULT,
                               KIND_SIMPLE, Segment, diagonal_fraction,
                               generate_course, load_bundled_course,
                               load_course, save_course, segment_runs,
                               turn_density)


class TestSegments:
    def test_dx_per_angle(self):
        expected = {30: 2, 45: 1, 90: 0, 135: -1, 150: -2}
        for angle, dx in expected.items():
            assert Segment(angle).dx_per_scroll_px == dx

    def test_height(self):
        assert Segment(90).height == 48

    def test_bad_angle(self):
        with pytest.raises(ValueError):
            Segment(60)


class TestGeneration:
    def test_lap_lengths(self):
        rng = np.random.default_rng(0)
        assert generate_course(KIND_SIMPLE, rng).frames_per_lap == 1500
        assert generate_course(KIND_DIFFICULT, rng).frames_per_lap == 4500

    def test_deterministic(self):
        a = generate_course(KIND_SIMPLE, np.random.default_rng(3))
        b = generate_course(KIND_SIMPLE, np.random.default_rng(3))
        assert [s.angle for s in a.segments] == [s.angle for s in b.segments]

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            generate_course("medium", np.random.default_rng(0))

    def test_difficult_is_denser_and_more_diagonal(self):
        rng = np.random.default_rng(4)
        simple = generate_course(KIND_SIMPLE, rng)
        difficult = generate_course(KIND_DIFFICULT, rng)
        assert diagonal_fraction(difficult) > diagonal_fraction(simple)
        assert turn_density(difficult) > turn_density(simple)

    def test_generated_courses_close(self):
        for kind in (KIND_SIMPLE, KIND_DIFFICULT):
            for seed in range(5):
                spec = generate_course(kind, np.random.default_rng(seed))
                CourseProfile(spec)  # raises if the loop does not close


class TestProfile:
    def test_closure_wraps_to_zero(self):
        spec = load_bundled_course(KIND_SIMPLE)
        prof = CourseProfile(spec)
        assert prof.line_x[0] == 0
        dx = np.diff(np.append(prof.line_x, prof.line_x[0]))
        assert dx.sum() == 0

    def test_turn_arrays_consistent(self):
        spec = load_bundled_course(KIND_DIFFICULT)
        prof = CourseProfile(spec)
        lap = prof.frames_per_lap
        assert prof.dist_to_turn.min() >= 1
        for f in (0, 7, 1000, lap - 1):
            nxt = (f + prof.dist_to_turn[f]) % lap
            assert prof.turn_x[f] == prof.line_x[nxt]

    def test_too_short_course_rejected(self):
        spec = CourseSpec(kind=KIND_SIMPLE, segments=[Segment(90)] * 3,
                          frames_per_lap=1500)
        with pytest.raises(ValueError):
            CourseProfile(spec)

    def test_open_loop_rejected(self):
        segments = [Segment(30)] * 20 + [Segment(90)] * 20
        spec = CourseSpec(kind=KIND_SIMPLE, segments=segments,
                          frames_per_lap=1500)
        with pytest.raises(ValueError):
            CourseProfile(spec)


class TestFiles:
    def test_roundtrip(self, tmp_path):
        spec = generate_course(KIND_SIMPLE, np.random.default_rng(8))
        path = tmp_path / "c.course"
        save_course(spec, path)
        loaded = load_course(path)
        assert loaded.kind == spec.kind
        assert loaded.frames_per_lap == spec.frames_per_lap
        assert [s.angle for s in loaded.segments] == [s.angle for s in spec.segments]

    def test_bundled_courses_load(self):
        simple = load_bundled_course(KIND_SIMPLE)
        difficult = load_bundled_course(KIND_DIFFICULT)
        assert simple.frames_per_lap == 1500
        assert difficult.frames_per_lap == 4500
        assert diagonal_fraction(difficult) > diagonal_fraction(simple)
        assert turn_density(difficult) > turn_density(simple)

    def test_malformed_file(self, tmp_path):
        path = tmp_path / "bad.course"
        path.write_text("# course\nkind simple\n")
        with pytest.raises(ValueError):
            load_course(path)

    def test_run_length_encoding(self):
        spec = CourseSpec(kind=KIND_SIMPLE,
                          segments=[Segment(90), Segment(90), Segment(30)],
                          frames_per_lap=144)
        assert segment_runs(spec) == [(90, 2), (30, 1)]
