"""Hyperedge classifier: a single-hidden-layer network trained from scratch.

The network is ``scaled features -> 100 ReLU units -> sigmoid`` trained
full-batch with adaptive-moment gradient steps on (optionally class-weighted)
cross entropy.  Training is deterministic given the seed: initialization is
symmetric uniform with fan-in scaling drawn from the seeded generator, and
the data order is fixed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Sequence

import numpy as np
from sklearn.base import BaseEstimator

from ._validation import check_feature_matrix, check_binary_labels
from .features import MotifContext, resolve_extractor
from .sampler import CandidateSet

ADAM_BETA1 = 0.9
ADAM_BETA2 = 0.999
ADAM_EPS = 1e-8


@dataclass(frozen=True)
class TrainConfig:
    """Full-batch training hyperparameters (adaptive-moment optimizer on
    cross-entropy loss)."""

    epochs: int = 2000
    learning_rate: float = 1e-4
    hidden: int = 100
    class_weight: str | None = "balanced"
    seed: int = 0

    def __post_init__(self):
        if self.epochs <= 0:
            raise ValueError("epochs must be positive")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        if self.class_weight not in (None, "balanced"):
            raise ValueError("class_weight must be None or 'balanced'")


@dataclass(frozen=True)
class Model:
    """Fitted classifier weights plus feature-scaling metadata.

    ``scale`` entries for zero-variance features are 1 so scaling never
    divides by zero.  ``schema`` records which feature extractor produced the
    training matrix ("count" or "motif").
    """

    w1: np.ndarray
    b1: np.ndarray
    w2: np.ndarray
    b2: float
    mean: np.ndarray
    scale: np.ndarray
    threshold: float = 0.5
    seed: int = 0
    schema: str | None = None

    @property
    def input_dim(self) -> int:
        return self.w1.shape[0]

    @property
    def hidden_dim(self) -> int:
        return self.w1.shape[1]

    def to_json(self) -> str:
        return json.dumps(
            {
                "input_dim": self.input_dim,
                "hidden_dim": self.hidden_dim,
                "w1": self.w1.ravel().tolist(),
                "b1": self.b1.tolist(),
                "w2": self.w2.tolist(),
                "b2": self.b2,
                "mean": self.mean.tolist(),
                "scale": self.scale.tolist(),
                "threshold": self.threshold,
                "seed": self.seed,
                "schema": self.schema,
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "Model":
        data = json.loads(text)
        d, h = int(data["input_dim"]), int(data["hidden_dim"])
        return cls(
            w1=np.array(data["w1"], dtype=float).reshape(d, h),
            b1=np.array(data["b1"], dtype=float),
            w2=np.array(data["w2"], dtype=float),
            b2=float(data["b2"]),
            mean=np.array(data["mean"], dtype=float),
            scale=np.array(data["scale"], dtype=float),
            threshold=float(data["threshold"]),
            seed=int(data["seed"]),
            schema=data.get("schema"),
        )

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json() + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "Model":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))

    def with_threshold(self, threshold: float) -> "Model":
        return replace(self, threshold=threshold)


def _forward_loss_grads(
    params: dict[str, np.ndarray],
    x: np.ndarray,
    y: np.ndarray,
    sample_weight: np.ndarray,
):
    """Weighted cross-entropy loss and its gradients for one full batch.

    Kept separate from the training loop so tests can check the analytic
    gradients against finite differences.
    """
    n = x.shape[0]
    z1 = x @ params["w1"] + params["b1"]
    h = np.maximum(z1, 0.0)
    z = h @ params["w2"] + params["b2"]
    # log(1 + e^z) - y*z, computed stably
    loss = float(np.mean(sample_weight * (np.logaddexp(0.0, z) - y * z)))
    dz = sample_weight * (_sigmoid(z) - y) / n
    grads = {
        "w2": h.T @ dz,
        "b2": np.array(dz.sum()),
        "w1": None,
        "b1": None,
    }
    dh = np.outer(dz, params["w2"])
    dh[z1 <= 0.0] = 0.0
    grads["w1"] = x.T @ dh
    grads["b1"] = dh.sum(axis=0)
    return loss, grads


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z, dtype=float)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def _init_params(rng: np.random.Generator, dim: int, hidden: int) -> dict[str, np.ndarray]:
    lim1 = 1.0 / math.sqrt(dim)
    lim2 = 1.0 / math.sqrt(hidden)
    return {
        "w1": rng.uniform(-lim1, lim1, size=(dim, hidden)),
        "b1": np.zeros(hidden),
        "w2": rng.uniform(-lim2, lim2, size=hidden),
        "b2": np.array(0.0),
    }


def train(
    x: np.ndarray,
    y: Sequence[bool] | np.ndarray,
    cfg: TrainConfig | None = None,
    threshold: float = 0.5,
    schema: str | None = None,
    loss_history: list[float] | None = None,
) -> Model:
    """Fit the classifier on a feature matrix and binary labels.

    Requires at least one example of each class and fully finite features.
    When ``cfg.class_weight == 'balanced'`` positive examples are weighted by
    the negative/positive count ratio, compensating for the low precision of
    sampled candidate pools.
    """
    cfg = cfg or TrainConfig()
    x = check_feature_matrix(x)
    y = check_binary_labels(y, x.shape[0])

    mean = x.mean(axis=0)
    std = x.std(axis=0)
    scale = np.where(std > 0, std, 1.0)
    xs = (x - mean) / scale

    pos = float(y.sum())
    weight = np.ones_like(y)
    if cfg.class_weight == "balanced":
        weight = np.where(y > 0.5, (len(y) - pos) / pos, 1.0)

    rng = np.random.default_rng(cfg.seed)
    params = _init_params(rng, x.shape[1], cfg.hidden)
    moments = {k: (np.zeros_like(v), np.zeros_like(v)) for k, v in params.items()}
    for t in range(1, cfg.epochs + 1):
        loss, grads = _forward_loss_grads(params, xs, y, weight)
        if loss_history is not None:
            loss_history.append(loss)
        for key, g in grads.items():
            m, v = moments[key]
            m *= ADAM_BETA1
            m += (1 - ADAM_BETA1) * g
            v *= ADAM_BETA2
            v += (1 - ADAM_BETA2) * g * g
            m_hat = m / (1 - ADAM_BETA1**t)
            v_hat = v / (1 - ADAM_BETA2**t)
            params[key] = params[key] - cfg.learning_rate * m_hat / (np.sqrt(v_hat) + ADAM_EPS)
            moments[key] = (m, v)
    return Model(
        w1=params["w1"],
        b1=params["b1"],
        w2=params["w2"],
        b2=float(params["b2"]),
        mean=mean,
        scale=scale,
        threshold=threshold,
        seed=cfg.seed,
        schema=schema,
    )


def predict_proba(model: Model, features: np.ndarray) -> np.ndarray | float:
    """Sigmoid output of the network on scaled features (row or matrix)."""
    arr = np.asarray(features, dtype=float)
    single = arr.ndim == 1
    mat = np.atleast_2d(arr)
    if mat.shape[1] != model.input_dim:
        raise ValueError(f"expected {model.input_dim} features, got {mat.shape[1]}")
    xs = (mat - model.mean) / model.scale
    z = np.maximum(xs @ model.w1 + model.b1, 0.0) @ model.w2 + model.b2
    p = _sigmoid(z)
    return float(p[0]) if single else p


def classify(
    model: Model,
    candidates: CandidateSet,
    ctx: MotifContext,
    extractor: str | None = None,
) -> tuple[tuple[int, ...], ...]:
    """Candidates whose predicted probability reaches the model threshold."""
    extractor = extractor or model.schema
    if extractor is None:
        raise ValueError("no extractor given and the model has no schema")
    fn, name = resolve_extractor(extractor)
    if name is not None and model.schema is not None and name != model.schema:
        raise ValueError(f"model was trained on {model.schema!r} features, not {name!r}")
    if not candidates.candidates:
        return ()
    matrix = np.vstack([fn(c, ctx) for c in candidates.candidates])
    probs = predict_proba(model, matrix)
    return tuple(
        c for c, p in zip(candidates.candidates, probs) if p >= model.threshold
    )


class HyperedgeClassifier(BaseEstimator):
    """sklearn-style wrapper around :func:`train` / :func:`predict_proba`."""

    def __init__(
        self,
        epochs: int = 2000,
        learning_rate: float = 1e-4,
        hidden: int = 100,
        class_weight: str | None = "balanced",
        threshold: float = 0.5,
        seed: int = 0,
    ):
        self.epochs = epochs
        self.learning_rate = learning_rate
        self.hidden = hidden
        self.class_weight = class_weight
        self.threshold = threshold
        self.seed = seed

    def _config(self) -> TrainConfig:
        return TrainConfig(
            epochs=self.epochs,
            learning_rate=self.learning_rate,
            hidden=self.hidden,
            class_weight=self.class_weight,
            seed=self.seed,
        )

    def fit(self, X, y):
        self.model_ = train(X, y, self._config(), threshold=self.threshold)
        self.classes_ = np.array([0, 1])
        return self

    def predict_proba(self, X) -> np.ndarray:
        p = np.atleast_1d(predict_proba(self.model_, np.atleast_2d(np.asarray(X, dtype=float))))
        return np.column_stack([1.0 - p, p])

    def predict(self, X) -> np.ndarray:
        return (self.predict_proba(X)[:, 1] >= self.model_.threshold).astype(int)
