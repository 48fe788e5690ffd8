"""The 1D CNN: three convolution+pooling stages, two dense+dropout
stages, all ReLU, and a 3-way softmax head, sized to land near 26,800
trainable parameters.  The exact layer configuration is frozen in the
versioned ``model_spec.json`` next to this module."""

from __future__ import annotations

import json
from importlib import resources

import keras
from keras import layers


def load_model_spec() -> dict:
    with resources.files("dleval").joinpath("model_spec.json").open() as fh:
        return json.load(fh)


def build_model(spec: dict | None = None) -> keras.Model:
    """Build and size-check the classifier; raises if the trainable
    parameter count strays outside the declared budget."""
    spec = spec or load_model_spec()
    stack = [layers.Input((spec["input_length"], spec["channels"]))]
    for conv in spec["conv_stages"]:
        stack.append(layers.Conv1D(conv["filters"], conv["kernel"],
                                   padding="same", activation="relu"))
        stack.append(layers.MaxPooling1D(spec["pool_size"]))
    stack.append(layers.Flatten())
    for dense in spec["dense_stages"]:
        stack.append(layers.Dense(dense["units"], activation="relu"))
        stack.append(layers.Dropout(dense["dropout"]))
    stack.append(layers.Dense(spec["n_classes"], activation="softmax"))
    model = keras.Sequential(stack)

    target = spec["target_params"]
    tol = spec["param_tolerance"]
    n_params = model.count_params()
    if not (target * (1 - tol) <= n_params <= target * (1 + tol)):
        raise ValueError(
            f"model has {n_params} parameters, outside {target} +/- {tol:.0%}"
        )
    return model
