"""Reference classifiers: ZeroR, OneR, Gaussian naive Bayes, decision stump.

All models are trained on a Dataset with a nominal class attribute and
predict a class-domain index (``predict_index``) or label (``predict``).
String attributes are identifier-like and are never used as features.
Training records with a missing class value are ignored. Ties are always
broken towards the lower class-domain index, so fitting is deterministic
for a given dataset.

Missing feature values are skipped in the naive Bayes product and routed
to the majority branch in OneR and the decision stump.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field

from .model import Dataset
from .transform import ConfigError

CLASSIFIER_KINDS = ("zeror", "oner", "naive-bayes", "decision-stump")

ONER_MAX_BINS = 6
ONER_MIN_BUCKET = 3
NB_VARIANCE_FLOOR = 1e-9


def fit(kind: str, dataset: Dataset, class_attribute: str, seed: int = 0):
    """Train a classifier of the given kind; seed is accepted for API
    uniformity (all four models are deterministic)."""
    normalized = kind.lower()
    if normalized not in _FITTERS:
        raise ConfigError(
            f"unknown classifier {kind!r}; valid kinds: {', '.join(CLASSIFIER_KINDS)}"
        )
    class_index = dataset.attribute_index(class_attribute)
    if dataset.schema[class_index].kind != "nominal":
        raise ConfigError(f"class attribute {class_attribute!r} must be nominal")
    rows = [r for r in dataset.records if r[class_index] is not None]
    if not rows:
        raise ConfigError("empty training set")
    features = [
        j for j, attr in enumerate(dataset.schema)
        if j != class_index and attr.kind != "string"
    ]
    return _FITTERS[normalized](dataset, rows, class_index, features)


def predict(model, record) -> str:
    """Class label for one record."""
    return model.class_values[model.predict_index(record)]


@dataclass
class _BaseModel:
    class_index: int
    class_values: tuple[str, ...]

    def predict(self, record) -> str:
        return self.class_values[self.predict_index(record)]


@dataclass
class ZeroRModel(_BaseModel):
    """Always predicts the majority training class."""

    majority: int = 0

    def predict_index(self, record) -> int:
        return self.majority


@dataclass
class OneRModel(_BaseModel):
    """Single-attribute rule; numeric attributes are discretized."""

    attribute: int | None = None
    kind: str = "none"
    nominal_rule: tuple[int, ...] = ()
    thresholds: tuple[float, ...] = ()
    bin_rule: tuple[int, ...] = ()
    majority_branch: int = 0
    fallback: int = 0

    def predict_index(self, record) -> int:
        if self.attribute is None:
            return self.fallback
        v = record[self.attribute]
        if v is None:
            return self.majority_branch
        if self.kind == "nominal":
            return self.nominal_rule[v]
        return self.bin_rule[bisect_right(self.thresholds, v)]


@dataclass
class NaiveBayesModel(_BaseModel):
    """Gaussian likelihoods for numerics, add-one frequencies for nominals."""

    log_priors: tuple[float, ...] = ()
    # per feature: ("numeric", [(mean, var) or None per class])
    #           or ("nominal", [per-class tuple of log P(value|class)])
    feature_stats: list = field(default_factory=list)

    def class_log_scores(self, record) -> list[float]:
        scores = list(self.log_priors)
        for j, kind, per_class in self.feature_stats:
            v = record[j]
            if v is None:
                continue
            for c in range(len(scores)):
                if kind == "numeric":
                    stats = per_class[c]
                    if stats is None:
                        continue
                    mean, var = stats
                    scores[c] += -0.5 * (math.log(2.0 * math.pi * var) + (v - mean) ** 2 / var)
                else:
                    scores[c] += per_class[c][v]
        return scores

    def posteriors(self, record) -> list[float]:
        scores = self.class_log_scores(record)
        peak = max(scores)
        weights = [math.exp(s - peak) for s in scores]
        total = sum(weights)
        return [w / total for w in weights]

    def predict_index(self, record) -> int:
        scores = self.class_log_scores(record)
        return scores.index(max(scores))


@dataclass
class DecisionStumpModel(_BaseModel):
    """One split on one attribute; each side predicts its majority class."""

    attribute: int | None = None
    kind: str = "none"
    threshold: float = 0.0
    match_value: int = 0
    left_class: int = 0
    right_class: int = 0
    majority_branch_class: int = 0
    fallback: int = 0

    def predict_index(self, record) -> int:
        if self.attribute is None:
            return self.fallback
        v = record[self.attribute]
        if v is None:
            return self.majority_branch_class
        if self.kind == "numeric":
            return self.left_class if v <= self.threshold else self.right_class
        return self.left_class if v == self.match_value else self.right_class


def _majority(counts) -> int:
    best = 0
    for c in range(1, len(counts)):
        if counts[c] > counts[best]:
            best = c
    return best


def _class_counts(rows, class_index, n_classes) -> list[int]:
    counts = [0] * n_classes
    for row in rows:
        counts[row[class_index]] += 1
    return counts


def _fit_zeror(dataset, rows, class_index, features) -> ZeroRModel:
    class_values = dataset.schema[class_index].values
    counts = _class_counts(rows, class_index, len(class_values))
    return ZeroRModel(class_index, class_values, majority=_majority(counts))


def _fit_oner(dataset, rows, class_index, features) -> OneRModel:
    class_values = dataset.schema[class_index].values
    n_classes = len(class_values)
    fallback = _majority(_class_counts(rows, class_index, n_classes))
    best: OneRModel | None = None
    best_errors = None
    for j in features:
        attr = dataset.schema[j]
        if attr.kind == "nominal":
            candidate = _oner_nominal(dataset, rows, class_index, j, len(attr.values), n_classes)
        else:
            candidate = _oner_numeric(dataset, rows, class_index, j, n_classes)
        if candidate is None:
            continue
        errors = sum(1 for row in rows if candidate.predict_index(row) != row[class_index])
        if best_errors is None or errors < best_errors:
            best, best_errors = candidate, errors
    if best is None:
        return OneRModel(class_index, class_values, attribute=None, fallback=fallback)
    return best


def _oner_nominal(dataset, rows, class_index, j, domain_size, n_classes) -> OneRModel:
    buckets = [[0] * n_classes for _ in range(domain_size)]
    for row in rows:
        v = row[j]
        if v is not None:
            buckets[v][row[class_index]] += 1
    rule = tuple(_majority(b) for b in buckets)
    largest = max(range(domain_size), key=lambda v: (sum(buckets[v]), -v))
    return OneRModel(
        class_index,
        dataset.schema[class_index].values,
        attribute=j,
        kind="nominal",
        nominal_rule=rule,
        majority_branch=rule[largest],
    )


def _oner_numeric(dataset, rows, class_index, j, n_classes) -> OneRModel | None:
    pairs = sorted((row[j], row[class_index]) for row in rows if row[j] is not None)
    if not pairs:
        return None
    n = len(pairs)
    n_bins = min(ONER_MAX_BINS, max(1, n // ONER_MIN_BUCKET))
    # equal-frequency cuts, never splitting a run of identical values
    cut_positions: list[int] = []
    next_target = n / n_bins
    pos = 0
    while len(cut_positions) < n_bins - 1 and pos < n - 1:
        pos = max(pos + 1, round(next_target))
        while pos < n and pairs[pos][0] == pairs[pos - 1][0]:
            pos += 1
        if pos >= n:
            break
        cut_positions.append(pos)
        next_target += n / n_bins
    bounds = [0, *cut_positions, n]
    thresholds = tuple(
        (pairs[p - 1][0] + pairs[p][0]) / 2.0 for p in cut_positions
    )
    bin_counts = []
    for lo, hi in zip(bounds, bounds[1:]):
        counts = [0] * n_classes
        for _, c in pairs[lo:hi]:
            counts[c] += 1
        bin_counts.append(counts)
    rule = tuple(_majority(counts) for counts in bin_counts)
    largest = max(range(len(bin_counts)), key=lambda b: (sum(bin_counts[b]), -b))
    return OneRModel(
        class_index,
        dataset.schema[class_index].values,
        attribute=j,
        kind="numeric",
        thresholds=thresholds,
        bin_rule=rule,
        majority_branch=rule[largest],
    )


def _fit_naive_bayes(dataset, rows, class_index, features) -> NaiveBayesModel:
    class_values = dataset.schema[class_index].values
    n_classes = len(class_values)
    counts = _class_counts(rows, class_index, n_classes)
    total = len(rows)
    log_priors = tuple(
        math.log((counts[c] + 1.0) / (total + n_classes)) for c in range(n_classes)
    )
    feature_stats = []
    for j in features:
        attr = dataset.schema[j]
        if attr.kind == "numeric":
            per_class = []
            for c in range(n_classes):
                values = [row[j] for row in rows if row[class_index] == c and row[j] is not None]
                if not values:
                    per_class.append(None)
                    continue
                mean = math.fsum(values) / len(values)
                var = math.fsum((v - mean) ** 2 for v in values) / len(values)
                per_class.append((mean, max(var, NB_VARIANCE_FLOOR)))
            feature_stats.append((j, "numeric", per_class))
        else:
            domain_size = len(attr.values)
            per_class = []
            for c in range(n_classes):
                value_counts = [0] * domain_size
                observed = 0
                for row in rows:
                    if row[class_index] == c and row[j] is not None:
                        value_counts[row[j]] += 1
                        observed += 1
                per_class.append(tuple(
                    math.log((value_counts[v] + 1.0) / (observed + domain_size))
                    for v in range(domain_size)
                ))
            feature_stats.append((j, "nominal", per_class))
    return NaiveBayesModel(
        class_index, class_values, log_priors=log_priors, feature_stats=feature_stats
    )


def _fit_decision_stump(dataset, rows, class_index, features) -> DecisionStumpModel:
    class_values = dataset.schema[class_index].values
    n_classes = len(class_values)
    fallback = _majority(_class_counts(rows, class_index, n_classes))
    best: DecisionStumpModel | None = None
    best_errors = None
    for j in features:
        attr = dataset.schema[j]
        if attr.kind == "numeric":
            candidate = _stump_numeric(dataset, rows, class_index, j, n_classes)
        else:
            candidate = _stump_nominal(dataset, rows, class_index, j, len(attr.values), n_classes)
        if candidate is None:
            continue
        errors = sum(1 for row in rows if candidate.predict_index(row) != row[class_index])
        if best_errors is None or errors < best_errors:
            best, best_errors = candidate, errors
    if best is None:
        return DecisionStumpModel(class_index, class_values, attribute=None, fallback=fallback)
    return best


def _stump_numeric(dataset, rows, class_index, j, n_classes) -> DecisionStumpModel | None:
    pairs = sorted((row[j], row[class_index]) for row in rows if row[j] is not None)
    if len(pairs) < 2 or pairs[0][0] == pairs[-1][0]:
        return None
    n = len(pairs)
    total_counts = [0] * n_classes
    for _, c in pairs:
        total_counts[c] += 1
    left_counts = [0] * n_classes
    best = None  # (errors, threshold, left_class, right_class, left_size)
    for i in range(n - 1):
        left_counts[pairs[i][1]] += 1
        if pairs[i][0] == pairs[i + 1][0]:
            continue
        right_counts = [total_counts[c] - left_counts[c] for c in range(n_classes)]
        lc, rc = _majority(left_counts), _majority(right_counts)
        errors = (i + 1 - left_counts[lc]) + (n - i - 1 - right_counts[rc])
        if best is None or errors < best[0]:
            threshold = (pairs[i][0] + pairs[i + 1][0]) / 2.0
            best = (errors, threshold, lc, rc, i + 1)
    if best is None:
        return None
    _, threshold, lc, rc, left_size = best
    majority_class = lc if left_size >= n - left_size else rc
    return DecisionStumpModel(
        class_index,
        dataset.schema[class_index].values,
        attribute=j,
        kind="numeric",
        threshold=threshold,
        left_class=lc,
        right_class=rc,
        majority_branch_class=majority_class,
    )


def _stump_nominal(dataset, rows, class_index, j, domain_size, n_classes) -> DecisionStumpModel | None:
    value_counts = [[0] * n_classes for _ in range(domain_size)]
    total_counts = [0] * n_classes
    observed = 0
    for row in rows:
        v = row[j]
        if v is not None:
            value_counts[v][row[class_index]] += 1
            total_counts[row[class_index]] += 1
            observed += 1
    if observed == 0:
        return None
    best = None  # (errors, value, left_class, right_class, left_size)
    for v in range(domain_size):
        left = value_counts[v]
        left_size = sum(left)
        if left_size in (0, observed):
            continue
        right = [total_counts[c] - left[c] for c in range(n_classes)]
        lc, rc = _majority(left), _majority(right)
        errors = (left_size - left[lc]) + (observed - left_size - right[rc])
        if best is None or errors < best[0]:
            best = (errors, v, lc, rc, left_size)
    if best is None:
        return None
    _, v, lc, rc, left_size = best
    majority_class = lc if left_size >= observed - left_size else rc
    return DecisionStumpModel(
        class_index,
        dataset.schema[class_index].values,
        attribute=j,
        kind="nominal",
        match_value=v,
        left_class=lc,
        right_class=rc,
        majority_branch_class=majority_class,
    )


_FITTERS = {
    "zeror": _fit_zeror,
    "oner": _fit_oner,
    "naive-bayes": _fit_naive_bayes,
    "decision-stump": _fit_decision_stump,
}
