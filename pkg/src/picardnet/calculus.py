"""Constructive algebra on ReLU networks and their width vectors.

Three width-vector operators mirror three network constructions:

* ``dim_compose`` / ``compose``     -- function composition,
* ``dim_sum`` / ``scaled_sum``      -- coefficient-weighted sums of same-depth
                                       networks with common input/output widths,
* ``dim_merge`` / ``merge``         -- stacking outputs of same-depth networks
                                       over a common input.

Each network operation is exact in real arithmetic: the realization of the
constructed network equals the corresponding combination of the inputs'
realizations, and its width vector is exactly the operator applied to the
inputs' width vectors.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np
from scipy.linalg import block_diag

from .nets import DimVector, NeuralNetwork, dims


# ---------------------------------------------------------------------------
# width-vector operators
# ---------------------------------------------------------------------------

def dim_compose(alpha: DimVector, beta: DimVector) -> DimVector:
    """Width vector of a composition: beta's entries, the fused interface
    entry ``beta[-1] + alpha[0]``, then alpha's remaining entries."""
    return DimVector(tuple(beta)[:-1] + (beta[-1] + alpha[0],) + tuple(alpha)[1:])


def dim_sum(alpha: DimVector, beta: DimVector) -> DimVector:
    """Entrywise interior sum; endpoints must agree and are preserved."""
    if len(alpha) != len(beta):
        raise ValueError("dim_sum needs equal lengths")
    if alpha[0] != beta[0] or alpha[-1] != beta[-1]:
        raise ValueError("dim_sum needs matching endpoint widths")
    mid = tuple(a + b for a, b in zip(tuple(alpha)[1:-1], tuple(beta)[1:-1]))
    return DimVector((alpha[0],) + mid + (beta[-1],))


def dim_merge(alpha: DimVector, beta: DimVector) -> DimVector:
    """Interior and last entries summed; shared first entry preserved."""
    if len(alpha) != len(beta):
        raise ValueError("dim_merge needs equal lengths")
    if alpha[0] != beta[0]:
        raise ValueError("dim_merge needs matching input widths")
    rest = tuple(a + b for a, b in zip(tuple(alpha)[1:], tuple(beta)[1:]))
    return DimVector((alpha[0],) + rest)


def identity_dims(d: int, length: int) -> DimVector:
    """The vector (d, 2d, ..., 2d, d) of a given length >= 3."""
    if length < 3:
        raise ValueError("identity dims need length >= 3")
    return DimVector((d,) + (2 * d,) * (length - 2) + (d,))


# ---------------------------------------------------------------------------
# network constructions
# ---------------------------------------------------------------------------

def identity_network(d: int, hidden_layers: int) -> NeuralNetwork:
    """Network computing the identity on R^d with the given hidden depth.

    Uses the split x = relu(x) - relu(-x); the hidden state (x+, x-) is
    nonnegative, so interior identity layers pass it through ReLU unchanged.
    """
    if d < 1 or hidden_layers < 1:
        raise ValueError("need d >= 1 and hidden_layers >= 1")
    eye = np.eye(d)
    split = np.vstack([eye, -eye])          # 2d x d
    unsplit = np.hstack([eye, -eye])        # d x 2d
    layers = [(split, np.zeros(2 * d))]
    for _ in range(hidden_layers - 1):
        layers.append((np.eye(2 * d), np.zeros(2 * d)))
    layers.append((unsplit, np.zeros(d)))
    return NeuralNetwork(tuple(layers))


def zero_network(d_in: int, d_out: int, length: int = 3) -> NeuralNetwork:
    """Network of the given dims-length realizing the zero map R^in -> R^out."""
    if length < 3:
        raise ValueError("need length >= 3")
    layers = [(np.zeros((1, d_in)), np.zeros(1))]
    for _ in range(length - 3):
        layers.append((np.zeros((1, 1)), np.zeros(1)))
    layers.append((np.zeros((d_out, 1)), np.zeros(d_out)))
    return NeuralNetwork(tuple(layers))


def compose(f_net: NeuralNetwork, g_net: NeuralNetwork) -> NeuralNetwork:
    """Network realizing x -> f(g(x)).

    g's affine output u is re-expressed through one spliced hidden layer
    carrying (relu(u), relu(-u)); f's first weight is pre-multiplied by
    [I | -I] to recover u.  Width law: ``dim_compose(dims(f), dims(g))``.
    """
    d2 = g_net.output_width
    if f_net.input_width != d2:
        raise ValueError(
            f"compose: f input width {f_net.input_width} != g output width {d2}")
    Wg, Bg = g_net.layers[-1]
    bridge_W = np.vstack([Wg, -Wg])
    bridge_B = np.concatenate([Bg, -Bg])
    Wf, Bf = f_net.layers[0]
    head_W = np.hstack([Wf, -Wf])
    layers = (g_net.layers[:-1]
              + ((bridge_W, bridge_B), (head_W, Bf))
              + f_net.layers[1:])
    return NeuralNetwork(layers)


def scaled_sum(nets: Sequence[NeuralNetwork],
               coeffs: Sequence[float]) -> NeuralNetwork:
    """Network realizing sum_i coeffs[i] * nets[i], all same shape contract.

    First layers are stacked vertically, interior layers block-diagonally,
    and the coefficients are folded into the concatenated output layer.
    Width law: the ``dim_sum`` fold of the inputs' width vectors.
    """
    if len(nets) == 0:
        raise ValueError("scaled_sum of an empty sequence")
    if len(nets) != len(coeffs):
        raise ValueError("one coefficient per network")
    depth = len(nets[0].layers)
    p, q = nets[0].input_width, nets[0].output_width
    for net in nets:
        if len(net.layers) != depth or net.input_width != p or net.output_width != q:
            raise ValueError("scaled_sum needs same depth and end widths")
    layers = []
    layers.append((np.vstack([n.layers[0][0] for n in nets]),
                   np.concatenate([n.layers[0][1] for n in nets])))
    for i in range(1, depth - 1):
        layers.append((block_diag(*(n.layers[i][0] for n in nets)),
                       np.concatenate([n.layers[i][1] for n in nets])))
    layers.append((np.hstack([h * n.layers[-1][0] for h, n in zip(coeffs, nets)]),
                   sum(h * n.layers[-1][1] for h, n in zip(coeffs, nets))))
    return NeuralNetwork(tuple(layers))


def merge(nets: Sequence[NeuralNetwork]) -> NeuralNetwork:
    """Network realizing x -> (f_1(x), ..., f_M(x)) stacked vertically.

    Width law: the ``dim_merge`` fold of the inputs' width vectors.
    """
    if len(nets) == 0:
        raise ValueError("merge of an empty sequence")
    depth = len(nets[0].layers)
    p = nets[0].input_width
    for net in nets:
        if len(net.layers) != depth or net.input_width != p:
            raise ValueError("merge needs same depth and input width")
    layers = [(np.vstack([n.layers[0][0] for n in nets]),
               np.concatenate([n.layers[0][1] for n in nets]))]
    for i in range(1, depth):
        layers.append((block_diag(*(n.layers[i][0] for n in nets)),
                       np.concatenate([n.layers[i][1] for n in nets])))
    return NeuralNetwork(tuple(layers))


def affine_wrap(net: NeuralNetwork, lam: float,
                b: np.ndarray, a: np.ndarray) -> NeuralNetwork:
    """Network realizing x -> lam * (f(x + b) + a), same width vector as f."""
    b = np.asarray(b, dtype=np.float64)
    a = np.asarray(a, dtype=np.float64)
    if b.shape != (net.input_width,):
        raise ValueError(f"shift b must have length {net.input_width}")
    if a.shape != (net.output_width,):
        raise ValueError(f"offset a must have length {net.output_width}")
    W1, B1 = net.layers[0]
    WL, BL = net.layers[-1]
    layers = ((W1, W1 @ b + B1),) + net.layers[1:-1] + ((lam * WL, lam * (BL + a)),)
    return NeuralNetwork(layers)


def extend_depth(net: NeuralNetwork, extra_hidden: int) -> NeuralNetwork:
    """Same realization, dims-length grown by exactly ``extra_hidden``.

    The output layer is split through (relu(u), relu(-u)) pass-through
    layers, i.e. composed with an identity network on the output side with
    the interface layer fused.
    """
    if extra_hidden < 0:
        raise ValueError("extra_hidden must be >= 0")
    if extra_hidden == 0:
        return NeuralNetwork(net.layers)
    q = net.output_width
    WL, BL = net.layers[-1]
    layers = list(net.layers[:-1])
    layers.append((np.vstack([WL, -WL]), np.concatenate([BL, -BL])))
    for _ in range(extra_hidden - 1):
        layers.append((np.eye(2 * q), np.zeros(2 * q)))
    layers.append((np.hstack([np.eye(q), -np.eye(q)]), np.zeros(q)))
    return NeuralNetwork(tuple(layers))
