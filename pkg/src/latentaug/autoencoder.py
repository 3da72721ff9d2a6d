"""Dense undercomplete autoencoder trained by hand-rolled backpropagation.

The network is symmetric around a bottleneck whose width is round(1 + sqrt(m))
for m input features; the single hidden width on each side is the floor of the
midpoint between input and bottleneck widths. All activations are tanh, which
matches inputs normalized to [-1, 1].

Besides the reconstruction model itself, fitting collects the bottleneck
activations of the training set at the end of every epoch in the trailing
`harvest_fraction` window of the epoch budget; the concatenation of those
per-epoch latent matrices is an enlarged, lower-dimensional training set for
downstream one-class detectors.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .validation import check_fitted, check_matrix

__all__ = [
    "DenseLayer",
    "HarvestedLatents",
    "bottleneck_width",
    "build_network",
    "forward_pass",
    "smooth_l1_loss",
    "backward_pass",
    "sgd_update",
    "rmsprop_update",
    "init_rmsprop_state",
    "default_batch_size",
    "Autoencoder",
    "model_to_json",
    "model_from_json",
]


@dataclass
class DenseLayer:
    weights: np.ndarray  # (out, in)
    bias: np.ndarray  # (out,)
    activation: str = "tanh"  # "tanh" | "identity"

    def __post_init__(self):
        if self.weights.ndim != 2 or self.bias.shape != (self.weights.shape[0],):
            raise ValueError("inconsistent layer shapes")
        if self.activation not in ("tanh", "identity"):
            raise ValueError(f"unknown activation {self.activation!r}")


@dataclass(frozen=True)
class HarvestedLatents:
    """Latent training sets concatenated across late epochs."""

    matrix: np.ndarray  # (rows_per_epoch * len(source_epochs), bottleneck width)
    source_epochs: list[int]
    rows_per_epoch: int

    def __post_init__(self):
        expected = self.rows_per_epoch * len(self.source_epochs)
        if self.matrix.shape[0] != expected:
            raise ValueError(
                f"harvest has {self.matrix.shape[0]} rows, expected {expected}"
            )


def bottleneck_width(n_features: int) -> int:
    """round(1 + sqrt(m)), clamped below the input width."""
    w = int(round(1.0 + math.sqrt(n_features)))
    return min(w, n_features - 1)


def build_network(n_features: int, rng: np.random.Generator,
                  bottleneck: int | None = None) -> tuple[list[DenseLayer], int]:
    """Build the 5-layer (input/hidden/bottleneck/hidden/output) network.

    Weights are uniform in +-1/sqrt(fan_in), biases zero. Returns the layer
    list and the index of the layer whose output is the bottleneck.
    """
    if n_features < 2:
        raise ValueError("need at least 2 features for an undercomplete network")
    m_b = bottleneck if bottleneck is not None else bottleneck_width(n_features)
    if not 1 <= m_b < n_features:
        raise ValueError(f"bottleneck width {m_b} must be in [1, {n_features})")
    h = (n_features + m_b) // 2
    widths = [n_features, h, m_b, h, n_features]
    layers = []
    for fan_in, fan_out in zip(widths[:-1], widths[1:]):
        bound = 1.0 / math.sqrt(fan_in)
        layers.append(
            DenseLayer(
                weights=rng.uniform(-bound, bound, size=(fan_out, fan_in)),
                bias=np.zeros(fan_out),
                activation="tanh",
            )
        )
    bottleneck_layer = 1  # output of the second dense layer
    return layers, bottleneck_layer


def _activate(z: np.ndarray, kind: str) -> np.ndarray:
    return np.tanh(z) if kind == "tanh" else z


def forward_pass(layers: list[DenseLayer], X: np.ndarray) -> list[np.ndarray]:
    """Return the list of activations, a[0] = X through a[-1] = reconstruction."""
    acts = [X]
    a = X
    for layer in layers:
        a = _activate(a @ layer.weights.T + layer.bias, layer.activation)
        acts.append(a)
    return acts


def smooth_l1_loss(recon: np.ndarray, target: np.ndarray) -> float:
    """Mean SmoothL1: 0.5*d^2 where |d| < 1, |d| - 0.5 otherwise."""
    if recon.shape != target.shape:
        raise ValueError("shape mismatch between reconstruction and target")
    d = recon - target
    ad = np.abs(d)
    per_elem = np.where(ad < 1.0, 0.5 * d * d, ad - 0.5)
    return float(per_elem.mean())


def backward_pass(
    layers: list[DenseLayer], acts: list[np.ndarray], target: np.ndarray
) -> list[tuple[np.ndarray, np.ndarray]]:
    """Analytic gradients of the mean SmoothL1 loss w.r.t. every W and b."""
    recon = acts[-1]
    if recon.shape != target.shape:
        raise ValueError("shape mismatch between reconstruction and target")
    d = recon - target
    # dLoss/d(recon); clip(d, -1, 1) equals d where |d| < 1 and sign(d) outside
    da = np.clip(d, -1.0, 1.0) / d.size
    grads: list[tuple[np.ndarray, np.ndarray]] = [None] * len(layers)
    for i in range(len(layers) - 1, -1, -1):
        layer = layers[i]
        a_out, a_in = acts[i + 1], acts[i]
        if layer.activation == "tanh":
            dz = da * (1.0 - a_out * a_out)
        else:
            dz = da
        grads[i] = (dz.T @ a_in, dz.sum(axis=0))
        if i > 0:
            da = dz @ layer.weights
    return grads


def sgd_update(layers, grads, lr: float) -> None:
    for layer, (gw, gb) in zip(layers, grads):
        layer.weights -= lr * gw
        layer.bias -= lr * gb


def init_rmsprop_state(layers) -> list[tuple[np.ndarray, np.ndarray]]:
    return [
        (np.zeros_like(l.weights), np.zeros_like(l.bias)) for l in layers
    ]


def rmsprop_update(layers, grads, state, lr: float, decay: float, eps: float) -> None:
    """v <- decay*v + (1-decay)*g^2; p <- p - lr*g/(sqrt(v) + eps)."""
    for layer, (gw, gb), (vw, vb) in zip(layers, grads, state):
        vw *= decay
        vw += (1.0 - decay) * gw * gw
        vb *= decay
        vb += (1.0 - decay) * gb * gb
        layer.weights -= lr * gw / (np.sqrt(vw) + eps)
        layer.bias -= lr * gb / (np.sqrt(vb) + eps)


def default_batch_size(n_rows: int) -> int:
    return 64 if n_rows > 2000 else 16


class Autoencoder(BaseEstimator, TransformerMixin):
    """Undercomplete tanh autoencoder with epoch-latent harvesting.

    Parameters mirror the training protocol: SmoothL1 loss minimized by SGD
    (lr 0.01) or RMSProp (lr 0.001, decay 0.9), mini-batches of 64 when the
    training set exceeds 2000 rows and 16 otherwise, early stopping on
    validation loss. After fit:

    layers_            trained DenseLayer list
    bottleneck_layer_  index of the layer whose output is the bottleneck
    harvest_           HarvestedLatents from the trailing window of epochs
    loss_history_      list of (train_loss, val_loss) per executed epoch
    """

    def __init__(
        self,
        n_epochs: int = 100,
        harvest_fraction: float = 0.25,
        batch_size: int | None = None,
        optimizer: str = "sgd",
        learning_rate: float | None = None,
        rmsprop_decay: float = 0.9,
        rmsprop_eps: float = 1e-8,
        early_stop_patience: int = 20,
        early_stop_min_delta: float = 1e-5,
        bottleneck: int | None = None,
        random_state: int = 0,
    ):
        self.n_epochs = n_epochs
        self.harvest_fraction = harvest_fraction
        self.batch_size = batch_size
        self.optimizer = optimizer
        self.learning_rate = learning_rate
        self.rmsprop_decay = rmsprop_decay
        self.rmsprop_eps = rmsprop_eps
        self.early_stop_patience = early_stop_patience
        self.early_stop_min_delta = early_stop_min_delta
        self.bottleneck = bottleneck
        self.random_state = random_state

    def _check_config(self):
        if self.n_epochs < 1:
            raise ValueError("n_epochs must be >= 1")
        if not 0.0 < self.harvest_fraction <= 1.0:
            raise ValueError("harvest_fraction must be in (0, 1]")
        if self.batch_size is not None and self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if self.optimizer not in ("sgd", "rmsprop"):
            raise ValueError(f"unknown optimizer {self.optimizer!r}")

    def fit(self, X, y=None, X_val=None):
        """Train and harvest. X_val, when given, drives early stopping."""
        self._check_config()
        X = check_matrix(X, "X")
        if X.shape[0] == 0:
            raise ValueError("training set is empty")
        Xv = None if X_val is None else check_matrix(X_val, "X_val", X.shape[1])

        rng = np.random.default_rng(self.random_state)
        layers, bn_layer = build_network(X.shape[1], rng, self.bottleneck)
        lr = self.learning_rate
        if lr is None:
            lr = 0.01 if self.optimizer == "sgd" else 0.001
        batch = self.batch_size or default_batch_size(X.shape[0])
        rms_state = init_rmsprop_state(layers) if self.optimizer == "rmsprop" else None

        n = X.shape[0]
        harvest_start = (1.0 - self.harvest_fraction) * self.n_epochs
        blocks: list[tuple[int, np.ndarray]] = []
        history: list[tuple[float, float]] = []
        best = math.inf
        stall = 0

        for epoch in range(self.n_epochs):
            order = rng.permutation(n)
            loss_sum = 0.0
            for start in range(0, n, batch):
                idx = order[start : start + batch]
                xb = X[idx]
                acts = forward_pass(layers, xb)
                loss = smooth_l1_loss(acts[-1], xb)
                if not math.isfinite(loss):
                    raise FloatingPointError(
                        f"training diverged at epoch {epoch} (loss={loss})"
                    )
                loss_sum += loss * xb.size
                grads = backward_pass(layers, acts, xb)
                if self.optimizer == "sgd":
                    sgd_update(layers, grads, lr)
                else:
                    rmsprop_update(
                        layers, grads, rms_state, lr,
                        self.rmsprop_decay, self.rmsprop_eps,
                    )
            train_loss = loss_sum / X.size

            in_window = epoch >= harvest_start
            have_val = Xv is not None and Xv.shape[0] > 0
            if in_window or not have_val:
                full_acts = forward_pass(layers, X)
            if in_window:
                blocks.append((epoch, full_acts[bn_layer + 1].copy()))

            if have_val:
                val_acts = forward_pass(layers, Xv)
                monitor = smooth_l1_loss(val_acts[-1], Xv)
            else:
                monitor = smooth_l1_loss(full_acts[-1], X)
            history.append((train_loss, monitor))
            if not math.isfinite(monitor):
                raise FloatingPointError(
                    f"training diverged at epoch {epoch} (monitored loss={monitor})"
                )

            if monitor < best - self.early_stop_min_delta:
                best = monitor
                stall = 0
            else:
                stall += 1
                if stall >= self.early_stop_patience:
                    break

        executed = len(history)
        # On early stop keep only blocks inside the trailing window of the
        # epochs actually executed, falling back to one final-model block.
        cutoff = (1.0 - self.harvest_fraction) * executed
        kept = [(e, z) for e, z in blocks if e >= cutoff]
        if not kept:
            final_latents = forward_pass(layers, X)[bn_layer + 1]
            kept = [(executed - 1, final_latents.copy())]

        self.layers_ = layers
        self.bottleneck_layer_ = bn_layer
        self.n_features_in_ = X.shape[1]
        self.harvest_ = HarvestedLatents(
            matrix=np.vstack([z for _, z in kept]),
            source_epochs=[e for e, _ in kept],
            rows_per_epoch=n,
        )
        self.loss_history_ = history
        return self

    def transform(self, X) -> np.ndarray:
        """Bottleneck activations for every row of X."""
        check_fitted(self, "layers_")
        X = check_matrix(X, "X", self.n_features_in_)
        return forward_pass(self.layers_, X)[self.bottleneck_layer_ + 1]

    def reconstruct(self, X) -> np.ndarray:
        check_fitted(self, "layers_")
        X = check_matrix(X, "X", self.n_features_in_)
        return forward_pass(self.layers_, X)[-1]


def model_to_json(layers: list[DenseLayer], bottleneck_layer: int) -> str:
    return json.dumps(
        {
            "bottleneck_layer": bottleneck_layer,
            "layers": [
                {
                    "weights": l.weights.tolist(),
                    "bias": l.bias.tolist(),
                    "activation": l.activation,
                }
                for l in layers
            ],
        }
    )


def model_from_json(text: str) -> tuple[list[DenseLayer], int]:
    doc = json.loads(text)
    layers = [
        DenseLayer(
            weights=np.asarray(l["weights"], dtype=float),
            bias=np.asarray(l["bias"], dtype=float),
            activation=l["activation"],
        )
        for l in doc["layers"]
    ]
    return layers, int(doc["bottleneck_layer"])
