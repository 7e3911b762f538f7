"""Regularized maximum-likelihood training for the CRF.

The objective is the conditional log-likelihood of the training labels
minus a Gaussian (L2) penalty ||w||^2 / (2 sigma^2). Its gradient is the
classic empirical-minus-expected feature counts, with expectations taken
from forward-backward marginals. Sentences are processed in fixed-size,
fixed-order chunks of padded arrays, so the floating-point reduction
order (and therefore the trained model) is identical from run to run.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
import scipy.optimize

from .crf import N_LABELS, CrfModel, flatten_weights, set_flat_weights
from .errors import DivergenceDetected, EmptyCorpus
from .features import build_index, vectorize

_log = logging.getLogger(__name__)

# Sentences per padded chunk. A constant, not a tuning knob: changing it
# would change the summation order and break run-to-run determinism.
_CHUNK_SENTENCES = 256


@dataclass
class TrainConfig:
    """Training hyperparameters.

    ``l2_sigma`` is the Gaussian prior's standard deviation (larger means
    weaker regularization). ``convergence_tol`` bounds the relative
    objective decrease between accepted iterates; ``optimizer`` is
    "lbfgs" (default) or "gd" (batch gradient descent with backtracking
    line search). ``use_transitions=False`` pins the transition and start
    weights at zero, reducing decoding to per-position classification.
    ``min_count`` drops features seen fewer times when indexing.
    """

    l2_sigma: float = 1.0
    max_iterations: int = 500
    convergence_tol: float = 1e-6
    optimizer: str = "lbfgs"
    use_transitions: bool = True
    min_count: int = 1

    def validate(self):
        if not self.l2_sigma > 0:
            raise ValueError("l2_sigma must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        if not self.convergence_tol > 0:
            raise ValueError("convergence_tol must be positive")
        if self.optimizer not in ("lbfgs", "gd"):
            raise ValueError("optimizer must be 'lbfgs' or 'gd'")
        if self.min_count < 1:
            raise ValueError("min_count must be at least 1")


class _Chunk:
    """A block of sentences padded to a common length.

    ``flat_ids``/``flat_rows`` list every active (feature, position) pair;
    rows index the flattened (sentence, time) grid of this chunk.
    """

    __slots__ = ("labels", "mask", "lengths", "flat_ids", "flat_rows")

    def __init__(self, sentences, templates, index):
        lengths = np.array([len(s) for s in sentences], dtype=np.intp)
        n, width = len(sentences), int(lengths.max())
        labels = np.zeros((n, width), dtype=np.intp)
        mask = np.zeros((n, width), dtype=bool)
        ids, rows = [], []
        for si, seq in enumerate(sentences):
            mask[si, : len(seq)] = True
            labels[si, : len(seq)] = [int(lab) for lab in seq.labels]
            base = si * width
            for t in range(len(seq)):
                for fid in vectorize(seq.chars, t, templates, index):
                    ids.append(fid)
                    rows.append(base + t)
        self.labels = labels
        self.mask = mask
        self.lengths = lengths
        self.flat_ids = np.asarray(ids, dtype=np.intp)
        self.flat_rows = np.asarray(rows, dtype=np.intp)


class _Problem:
    """Featurized corpus plus everything needed to evaluate the objective."""

    def __init__(self, corpus, templates, index, l2_sigma, use_transitions=True):
        if not corpus.sentences:
            raise EmptyCorpus("cannot train on an empty corpus")
        self.n_features = len(index)
        self.l2_sigma = float(l2_sigma)
        self.use_transitions = use_transitions
        self.chunks = [
            _Chunk(corpus.sentences[lo : lo + _CHUNK_SENTENCES], templates, index)
            for lo in range(0, len(corpus.sentences), _CHUNK_SENTENCES)
        ]
        self._count_empirical()

    def _count_empirical(self):
        nf = self.n_features
        self.emp_unary = np.zeros((nf, N_LABELS))
        self.emp_trans = np.zeros((N_LABELS, N_LABELS))
        self.emp_start = np.zeros(N_LABELS)
        for ch in self.chunks:
            gold_per_id = ch.labels.reshape(-1)[ch.flat_rows]
            for y in range(N_LABELS):
                self.emp_unary[:, y] += np.bincount(
                    ch.flat_ids[gold_per_id == y], minlength=nf
                )
            self.emp_start += np.bincount(ch.labels[:, 0], minlength=N_LABELS)
            live = ch.mask[:, 1:]
            pairs = ch.labels[:, :-1][live] * N_LABELS + ch.labels[:, 1:][live]
            self.emp_trans += np.bincount(pairs, minlength=9).reshape(3, 3)

    def _unpack(self, w):
        nu = self.n_features * N_LABELS
        unary = w[:nu].reshape(self.n_features, N_LABELS)
        trans = w[nu : nu + 9].reshape(N_LABELS, N_LABELS)
        start = w[nu + 9 :]
        return unary, trans, start

    def value_and_grad(self, w):
        """Negated objective and gradient (for minimizers)."""
        unary, trans, start = self._unpack(w)
        nf = self.n_features
        ll = 0.0
        exp_unary = np.zeros((nf, N_LABELS))
        exp_trans = np.zeros((N_LABELS, N_LABELS))
        exp_start = np.zeros(N_LABELS)

        for ch in self.chunks:
            n, width = ch.labels.shape
            em = np.zeros((n * width, N_LABELS))
            for y in range(N_LABELS):
                em[:, y] = np.bincount(
                    ch.flat_rows, weights=unary[ch.flat_ids, y], minlength=n * width
                )
            em = em.reshape(n, width, N_LABELS)

            # Forward. Padded positions keep evolving (their em is zero)
            # but are never read: log_z takes each sentence at its own
            # last real position.
            la = np.empty((n, width, N_LABELS))
            la[:, 0] = start + em[:, 0]
            for t in range(1, width):
                x = la[:, t - 1, :, None] + trans
                m = x.max(axis=1)
                la[:, t] = em[:, t] + m + np.log(np.exp(x - m[:, None, :]).sum(axis=1))
            last = la[np.arange(n), ch.lengths - 1]
            m = last.max(axis=1)
            log_z = m + np.log(np.exp(last - m[:, None]).sum(axis=1))

            # Backward, pinned to zero beyond each sentence's end.
            lb = np.zeros((n, width, N_LABELS))
            for t in range(width - 2, -1, -1):
                x = trans[None] + (em[:, t + 1] + lb[:, t + 1])[:, None, :]
                m = x.max(axis=2)
                val = m + np.log(np.exp(x - m[..., None]).sum(axis=2))
                lb[:, t] = np.where(ch.mask[:, t + 1, None], val, 0.0)

            # Gold-path score.
            em_gold = np.take_along_axis(em, ch.labels[..., None], axis=2)[..., 0]
            ll += float(start[ch.labels[:, 0]].sum())
            ll += float((em_gold * ch.mask).sum())
            live = ch.mask[:, 1:]
            ll += float((trans[ch.labels[:, :-1], ch.labels[:, 1:]] * live).sum())
            ll -= float(log_z.sum())

            # Position marginals; -inf at padding so exp() gives exact 0.
            z = la + lb - log_z[:, None, None]
            z = np.where(ch.mask[..., None], z, -np.inf)
            mg = np.exp(z)
            probs = mg.reshape(n * width, N_LABELS)
            for y in range(N_LABELS):
                exp_unary[:, y] += np.bincount(
                    ch.flat_ids, weights=probs[ch.flat_rows, y], minlength=nf
                )
            exp_start += mg[:, 0, :].sum(axis=0)

            if width > 1:
                z2 = (
                    la[:, :-1, :, None]
                    + trans[None, None]
                    + (em[:, 1:] + lb[:, 1:])[:, :, None, :]
                    - log_z[:, None, None, None]
                )
                z2 = np.where(live[:, :, None, None], z2, -np.inf)
                exp_trans += np.exp(z2).sum(axis=(0, 1))

        sigma2 = self.l2_sigma * self.l2_sigma
        ll -= float(w @ w) / (2.0 * sigma2)

        g_unary = self.emp_unary - exp_unary - unary / sigma2
        g_trans = self.emp_trans - exp_trans - trans / sigma2
        g_start = self.emp_start - exp_start - start / sigma2
        if not self.use_transitions:
            g_trans[:] = 0.0
            g_start[:] = 0.0
        grad = np.concatenate([g_unary.ravel(), g_trans.ravel(), g_start])

        if np.isnan(ll) or np.isnan(grad).any():
            raise DivergenceDetected("objective or gradient became NaN")
        return -ll, -grad


def log_likelihood(model, data, l2_sigma):
    """L2-penalized conditional log-likelihood of ``data`` under ``model``."""
    problem = _Problem(data, model.templates, model.feature_index, l2_sigma)
    f, _ = problem.value_and_grad(flatten_weights(model))
    return -f


def gradient(model, data, l2_sigma):
    """Analytic gradient of log_likelihood, flat, in flatten_weights order."""
    problem = _Problem(data, model.templates, model.feature_index, l2_sigma)
    _, g = problem.value_and_grad(flatten_weights(model))
    return -g


def _gradient_descent(problem, x0, config, callback):
    """Batch gradient ascent with Armijo backtracking (on the negated loss)."""
    w = x0.copy()
    f, g = problem.value_and_grad(w)
    step = 1.0
    converged = False
    iterations = 0
    for _ in range(config.max_iterations):
        gnorm2 = float(g @ g)
        if gnorm2 == 0.0:
            converged = True
            break
        step = min(step * 2.0, 1e4)
        accepted = False
        for _ in range(60):
            w_new = w - step * g
            f_new, g_new = problem.value_and_grad(w_new)
            if np.isfinite(f_new) and f_new <= f - 1e-4 * step * gnorm2:
                accepted = True
                break
            step *= 0.5
        if not accepted:
            converged = True  # no descent step exists at any usable scale
            break
        iterations += 1
        drop = f - f_new
        w, f, g = w_new, f_new, g_new
        if callback is not None:
            callback(w.copy())
        if drop / max(1.0, abs(f), abs(f_new)) < config.convergence_tol:
            converged = True
            break
    if not np.isfinite(f):
        raise DivergenceDetected("objective is non-finite after optimization")
    if converged:
        _log.info("gradient descent converged after %d iterations", iterations)
    else:
        _log.info("gradient descent stopped at the iteration cap (%d)", iterations)
    return w


def train(corpus, templates, config=None, callback=None):
    """Train a CRF on an annotated corpus.

    Builds the feature index from the corpus, starts from zero weights,
    and maximizes the penalized likelihood with the configured optimizer.
    ``callback``, when given, is invoked with the flat weight vector
    after every accepted iterate. Training is deterministic: the same
    corpus and config produce bit-identical models.
    """
    if config is None:
        config = TrainConfig()
    config.validate()
    if not corpus.sentences:
        raise EmptyCorpus("cannot train on an empty corpus")
    index = build_index(corpus, templates, config.min_count)
    model = CrfModel.zeros(index, templates)
    problem = _Problem(
        corpus, templates, index, config.l2_sigma, config.use_transitions
    )
    _log.info(
        "training on %d sentences, %d features, optimizer=%s",
        len(corpus.sentences),
        len(index),
        config.optimizer,
    )
    x0 = flatten_weights(model)
    if config.optimizer == "lbfgs":
        result = scipy.optimize.minimize(
            problem.value_and_grad,
            x0,
            jac=True,
            method="L-BFGS-B",
            callback=callback,
            options={
                "maxiter": config.max_iterations,
                "ftol": config.convergence_tol,
                "gtol": 1e-8,
                "maxls": 40,
            },
        )
        if not np.isfinite(result.fun):
            raise DivergenceDetected("objective is non-finite after optimization")
        if result.status == 1:
            _log.info("L-BFGS stopped at the iteration cap (%d)", result.nit)
        else:
            _log.info("L-BFGS converged after %d iterations", result.nit)
        w = result.x
    else:
        w = _gradient_descent(problem, x0, config, callback)
    set_flat_weights(model, w)
    return model
