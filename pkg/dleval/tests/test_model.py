import pytest

from dleval.model import build_model, load_model_spec


def test_parameter_budget():
    spec = load_model_spec()
    model = build_model(spec)
    n = model.count_params()
    assert 26_800 * 0.8 <= n <= 26_800 * 1.2
    assert model.output_shape == (None, 3)


def test_structure_matches_spec():
    spec = load_model_spec()
    model = build_model(spec)
    names = [layer.__class__.__name__ for layer in model.layers]
    assert names.count("Conv1D") == 3
    assert names.count("MaxPooling1D") == 3
    assert names.count("Dropout") == 2
    assert names.count("Dense") == 3  # two hidden + softmax head


def test_oversized_spec_rejected():
    spec = load_model_spec()
    fat = dict(spec, dense_stages=[{"units": 400, "dropout": 0.3},
                                   {"units": 100, "dropout": 0.3}])
    with pytest.raises(ValueError):
        build_model(fat)
