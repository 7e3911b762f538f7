"""Linear-chain CRF over the three boundary labels: lattice construction
and exact inference in log space.

The model is linear: score(x, y) = start[y_0] + sum_i unary(x, i)[y_i]
+ sum_i transitions[y_{i-1}, y_i], where unary(x, i) sums the weight rows
of the features active at position i. There is no end weight. All
quantities below are log-potentials; nothing is ever exponentiated until
a normalized probability is formed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .corpus import Label
from .features import FeatureIndex, FeatureTemplateSet, vectorize

N_LABELS = 3


@dataclass
class CrfModel:
    """A trained (or zero-initialized) segmentation model.

    ``unary`` has one row per feature string and one column per label;
    ``transitions[p, y]`` scores label y following label p; ``start[y]``
    scores y at position 0.
    """

    feature_index: FeatureIndex
    templates: FeatureTemplateSet
    unary: np.ndarray
    transitions: np.ndarray
    start: np.ndarray

    @classmethod
    def zeros(cls, feature_index, templates):
        return cls(
            feature_index=feature_index,
            templates=templates,
            unary=np.zeros((len(feature_index), N_LABELS)),
            transitions=np.zeros((N_LABELS, N_LABELS)),
            start=np.zeros(N_LABELS),
        )

    def n_weights(self):
        return self.unary.size + self.transitions.size + self.start.size


def flatten_weights(model):
    """All weights as one vector: unary rows first, then transitions, then start."""
    return np.concatenate(
        [model.unary.ravel(), model.transitions.ravel(), model.start]
    )


def set_flat_weights(model, w):
    """Write a flat vector (as produced by flatten_weights) back into the model."""
    n_unary = model.unary.size
    model.unary = w[:n_unary].reshape(model.unary.shape).copy()
    model.transitions = w[n_unary : n_unary + 9].reshape(N_LABELS, N_LABELS).copy()
    model.start = w[n_unary + 9 :].copy()


@dataclass
class Lattice:
    """Per-sentence scores ready for dynamic programming.

    ``emissions[i, y]`` is the summed unary score of position i under
    label y; transitions and start are copied from the model.
    """

    emissions: np.ndarray
    transitions: np.ndarray
    start: np.ndarray

    @property
    def length(self):
        return self.emissions.shape[0]


def build_lattice(model, chars):
    """Score every (position, label) pair of ``chars`` under ``model``."""
    n = len(chars)
    emissions = np.zeros((n, N_LABELS))
    for i in range(n):
        ids = vectorize(chars, i, model.templates, model.feature_index)
        if ids:
            emissions[i] = model.unary[ids].sum(axis=0)
    return Lattice(emissions, model.transitions.copy(), model.start.copy())


def score_sequence(lattice, labels):
    """Unnormalized log score of one label sequence on a lattice."""
    y = np.asarray(labels, dtype=np.intp)
    total = lattice.start[y[0]] + lattice.emissions[np.arange(len(y)), y].sum()
    if len(y) > 1:
        total += lattice.transitions[y[:-1], y[1:]].sum()
    return float(total)


def _apply_clamp(scores, want):
    """-inf out every label except ``want`` (in place)."""
    keep = scores[want]
    scores[:] = -np.inf
    scores[want] = keep


def decode_lattice(lattice, clamp=None):
    """Viterbi decode of a lattice.

    ``clamp``, when given, is a per-position sequence of Label-or-None;
    a non-None entry forces that position's label. Ties are broken toward
    the earlier label in (I, B_w, B_s) order at every argmax, i.e. the
    returned sequence is the max-scoring one whose labels are smallest
    late-to-early among the maximizers.
    """
    n = lattice.length
    scores = lattice.start + lattice.emissions[0]
    if clamp is not None and clamp[0] is not None:
        _apply_clamp(scores, int(clamp[0]))
    backptr = np.zeros((n, N_LABELS), dtype=np.intp)
    for t in range(1, n):
        cand = scores[:, None] + lattice.transitions
        best_prev = np.argmax(cand, axis=0)  # first max = earlier label
        backptr[t] = best_prev
        scores = cand[best_prev, np.arange(N_LABELS)] + lattice.emissions[t]
        if clamp is not None and clamp[t] is not None:
            _apply_clamp(scores, int(clamp[t]))
    best = int(np.argmax(scores))
    path = [best]
    for t in range(n - 1, 0, -1):
        best = int(backptr[t, best])
        path.append(best)
    path.reverse()
    return [Label(y) for y in path]


def viterbi(model, chars, clamp=None):
    """Most probable label sequence for ``chars`` under ``model``."""
    return decode_lattice(build_lattice(model, chars), clamp=clamp)


@dataclass
class ForwardBackward:
    """Forward-backward quantities for one sentence.

    ``log_alpha[i, y]`` scores prefixes ending in (i, y), ``log_beta[i, y]``
    suffixes starting there; ``marginals[i, y]`` = P(y_i = y | x). The
    partition function is also recomputed from the backward pass as a
    numerical cross-check.
    """

    log_alpha: np.ndarray
    log_beta: np.ndarray
    log_z: float
    log_z_backward: float
    marginals: np.ndarray


def forward_backward_lattice(lattice):
    """Run forward-backward on a prebuilt lattice."""
    em = lattice.emissions
    trans = lattice.transitions
    n = lattice.length

    log_alpha = np.empty((n, N_LABELS))
    log_alpha[0] = lattice.start + em[0]
    for t in range(1, n):
        log_alpha[t] = em[t] + logsumexp(log_alpha[t - 1][:, None] + trans, axis=0)
    log_z = float(logsumexp(log_alpha[-1]))

    log_beta = np.zeros((n, N_LABELS))
    for t in range(n - 2, -1, -1):
        log_beta[t] = logsumexp(trans + em[t + 1] + log_beta[t + 1], axis=1)
    log_z_backward = float(logsumexp(lattice.start + em[0] + log_beta[0]))

    marginals = np.exp(log_alpha + log_beta - log_z)
    return ForwardBackward(log_alpha, log_beta, log_z, log_z_backward, marginals)


def forward_backward(model, chars):
    """Exact marginals and partition function for ``chars`` under ``model``."""
    return forward_backward_lattice(build_lattice(model, chars))
