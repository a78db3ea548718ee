import json

import numpy as np
import pytest

from hyperchron import jsonio as j
from hyperchron import projection as p
from hyperchron.chronometry import causal_classify
from hyperchron.errors import NonHermitianInput, TracefulGenerator
from hyperchron.sampling import random_hermitian
from hyperchron.symmetry import random_poincare
from hyperchron.verify import random_system


class TestFloats:
    @pytest.mark.parametrize("x, text", [(1.0, "1"), (0.1, "0.10000000000000001"), (-2 / 3, "-0.66666666666666663")])
    def test_seventeen_digits(self, x, text):
        assert j.format_float(x) == text

    def test_round_trip_exact(self, rng):
        for x in rng.normal(size=200) * 10.0 ** rng.integers(-30, 30, size=200):
            assert float(j.format_float(x)) == x

    @pytest.mark.parametrize("x", [float("nan"), float("inf")])
    def test_non_finite(self, x):
        with pytest.raises(ValueError):
            j.format_float(x)


class TestDumps:
    def test_is_valid_json_with_fixed_order(self):
        obj = {"b": 1, "a": [0.5, 2], "c": {"z": None, "y": True}, "d": [[1.0, 2.0], [3.0, 4.0]]}
        text = j.dumps(obj)
        assert json.loads(text) == obj
        assert list(json.loads(text)) == ["b", "a", "c", "d"]
        assert "[1, 2]" in text

    def test_numpy_scalars(self):
        assert j.dumps({"x": np.float64(0.25), "k": np.int64(3), "f": np.bool_(False)}, indent=None) == \
            '{"x":0.25,"k":3,"f":false}'

    def test_rejects_objects(self):
        with pytest.raises(TypeError):
            j.dumps({"x": object()})


class TestSchemas:
    def test_event_round_trip(self, rng):
        v = random_hermitian(3, rng)
        d = j.event_to_json(v)
        assert list(d) == ["r", "re", "im"]
        back = j.event_from_json(json.loads(j.dumps(d)))
        np.testing.assert_array_equal(back, v)

    def test_event_missing_imag_defaults_to_zero(self):
        np.testing.assert_array_equal(j.event_from_json({"r": 2, "re": [[1, 0], [0, 1]]}), np.eye(2))

    def test_non_hermitian(self):
        with pytest.raises(NonHermitianInput) as info:
            j.event_from_json({"r": 2, "re": [[1, 0.5], [0, 1]], "im": [[0, 0], [0, 0]]})
        assert info.value.max_asymmetry == pytest.approx(0.5)

    @pytest.mark.parametrize("bad", [
        [[1, 0], [0, 1]],
        {"re": [[1]], "im": [[0]]},
        {"r": 3, "re": [[1, 0], [0, 1]], "im": [[0, 0], [0, 0]]},
        {"r": 2, "re": [[1, 0], [0, 1]], "im": [[0, 0]]},
        {"r": 2, "re": "abc", "im": [[0, 0], [0, 0]]},
    ])
    def test_malformed(self, bad):
        with pytest.raises(j.MalformedInput):
            j.event_from_json(bad)

    def test_broken_event(self, rng):
        X = random_hermitian(4, rng)
        d = j.broken_event_to_json(X)
        assert d["n"] == 2
        np.testing.assert_array_equal(j.broken_event_from_json(d), X)
        with pytest.raises(j.MalformedInput):
            j.broken_event_from_json({**d, "n": 3})

    def test_poincare(self, rng):
        g = random_poincare(3, rng)
        back = j.poincare_from_json(json.loads(j.dumps(j.poincare_to_json(g))))
        np.testing.assert_array_equal(back.lam.matrix, g.lam.matrix)
        np.testing.assert_array_equal(back.beta, g.beta)

    def test_system(self, rng):
        sys = random_system(2, rng)
        back = j.system_from_json(json.loads(j.dumps(j.system_to_json(sys))))
        np.testing.assert_array_equal(back.p, sys.p)
        np.testing.assert_array_equal(back.l, sys.l)
        with pytest.raises(TracefulGenerator):
            j.system_from_json({"P": j.event_to_json(np.eye(2)), "l": j.matrix_to_json(np.eye(2))})

    def test_density(self):
        d = j.density_to_json(p.DensityMatrix(np.eye(2) / 2))
        assert d == {"n": 2, "re": [[0.5, 0.0], [0.0, 0.5]], "im": [[0.0, 0.0], [0.0, 0.0]]}
        np.testing.assert_array_equal(j.density_from_json(d), np.eye(2) / 2)
        with pytest.raises(j.MalformedInput):
            j.density_from_json({"n": 3, "re": [[1]], "im": [[0]]})

    def test_class(self):
        assert j.class_to_json(causal_classify(np.diag([1.0, 1.0, -1.0]))) == {
            "rank": 3, "p": 2, "q": 1, "label": "FutureSemiSpacelike"}

    def test_counterexample(self):
        cx = p.falsify_non_psd(np.diag([2.0, -1.0]))
        d = j.counterexample_to_json(cx)
        assert list(d) == ["counterexample_X", "image", "input_class", "image_class"]
        assert d["input_class"]["label"] == "FutureNull"
        assert d["image_class"]["label"] == "PastNull"
        assert d["counterexample_X"]["n"] == 2
