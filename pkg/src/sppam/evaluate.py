"""Cross-validation harness and original-vs-transformed comparison.

``cross_validate`` runs repeated stratified k-fold evaluation (optionally
group-aware, so correlated records never straddle a train/test boundary)
and reports per-run test accuracies plus a metric suite averaged over the
repeats. ``compare_datasets`` evaluates the same classifiers on an
original dataset and its aggregated counterpart and attaches a corrected
resampled t-test verdict per classifier.

Fold runs are independent; with ``jobs > 1`` they execute on a worker
pool, and results are always reduced in (repeat, fold) order so output is
identical regardless of worker count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import classifiers
from .folds import group_stratified_folds
from .metrics import MetricsReport, ConfusionMatrix, average_metrics, classification_metrics, matrix_from_pairs
from .model import Dataset, SppamError
from .transform import ConfigError
from .ttest import A_BETTER, B_BETTER, TTestResult, corrected_t_test

REFERENCE_CLASSIFIER = "oner"


@dataclass(frozen=True)
class CrossValResult:
    classifier: str
    class_values: tuple[str, ...]
    fold_accuracies: tuple[float, ...]  # percent, repeats * k entries
    repeat_matrices: tuple[ConfusionMatrix, ...]
    metrics: MetricsReport

    @property
    def mean_accuracy(self) -> float:
        return sum(self.fold_accuracies) / len(self.fold_accuracies)


@dataclass(frozen=True)
class ComparisonRow:
    classifier: str
    original: CrossValResult
    transformed: CrossValResult
    cci_delta: float
    ttest: TTestResult

    @property
    def verdict(self) -> str:
        if self.ttest.verdict == A_BETTER:
            return "transformed-better"
        if self.ttest.verdict == B_BETTER:
            return "original-better"
        return "no-difference"


@dataclass(frozen=True)
class EvalReport:
    original_name: str
    transformed_name: str
    rows: tuple[ComparisonRow, ...]


def cross_validate(
    dataset: Dataset,
    classifier_kind: str,
    class_attribute: str,
    k: int = 10,
    repeats: int = 10,
    seed: int = 0,
    group_attribute: str | None = None,
    jobs: int = 1,
) -> CrossValResult:
    """Repeated (group-aware) stratified k-fold evaluation of one classifier.

    Repeat r builds its folds with ``seed + r``. Records with a missing
    class value are left out entirely: they can neither train nor be
    scored.
    """
    if repeats < 1:
        raise ConfigError(f"repeats must be at least 1, got {repeats}")
    class_index = dataset.attribute_index(class_attribute)
    labeled = dataset.replace_records(
        r for r in dataset.records if r[class_index] is not None
    )
    if not labeled.records:
        raise ConfigError("no labeled records to evaluate")
    class_values = labeled.schema[class_index].values

    tasks = []
    for r in range(repeats):
        assignment = group_stratified_folds(
            labeled, k, class_attribute, group_attribute, seed=seed + r
        )
        for fold in range(k):
            tasks.append((r, fold, assignment))

    def run(task):
        _, fold, assignment = task
        train_idx, test_idx = assignment.split(fold)
        train = labeled.replace_records(labeled.records[i] for i in train_idx)
        model = classifiers.fit(classifier_kind, train, class_attribute, seed=seed)
        pairs = [
            (labeled.records[i][class_index], model.predict_index(labeled.records[i]))
            for i in test_idx
        ]
        correct = sum(1 for actual, predicted in pairs if actual == predicted)
        return 100.0 * correct / len(pairs), pairs

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(run, tasks))
    else:
        outcomes = [run(task) for task in tasks]

    accuracies = tuple(accuracy for accuracy, _ in outcomes)
    repeat_matrices = []
    for r in range(repeats):
        pairs = [p for (rr, _, _), (_, ps) in zip(tasks, outcomes) if rr == r for p in ps]
        repeat_matrices.append(matrix_from_pairs(class_values, pairs))
    metrics = average_metrics(classification_metrics(m) for m in repeat_matrices)
    return CrossValResult(
        classifier=classifier_kind.lower(),
        class_values=class_values,
        fold_accuracies=accuracies,
        repeat_matrices=tuple(repeat_matrices),
        metrics=metrics,
    )


def compare_datasets(
    original: Dataset,
    transformed: Dataset,
    classifier_kinds,
    class_attribute: str,
    k: int = 10,
    repeats: int = 10,
    seed: int = 0,
    group_attribute: str | None = None,
    alpha: float = 0.01,
    jobs: int = 1,
    original_name: str = "original",
    transformed_name: str = "transformed",
) -> EvalReport:
    """Evaluate classifiers on both datasets and test the paired deltas.

    Folds on the original respect ``group_attribute`` (correlated records
    stay together); the transformed dataset has one record per group, so
    plain stratified folds apply.
    """
    class_a = original.attribute(class_attribute)
    class_b = transformed.attribute(class_attribute)
    if class_a.values != class_b.values:
        raise SppamError(
            "class domains differ between datasets: "
            f"{class_a.values} vs {class_b.values}"
        )
    rows = []
    for kind in classifier_kinds:
        result_orig = cross_validate(
            original, kind, class_attribute, k, repeats, seed,
            group_attribute=group_attribute, jobs=jobs,
        )
        result_tr = cross_validate(
            transformed, kind, class_attribute, k, repeats, seed, jobs=jobs,
        )
        ttest = corrected_t_test(
            result_tr.fold_accuracies,
            result_orig.fold_accuracies,
            test_fraction=1.0 / (k - 1),
            alpha=alpha,
        )
        rows.append(
            ComparisonRow(
                classifier=kind.lower(),
                original=result_orig,
                transformed=result_tr,
                cci_delta=result_tr.metrics.cci_percent - result_orig.metrics.cci_percent,
                ttest=ttest,
            )
        )
    return EvalReport(original_name, transformed_name, tuple(rows))


def _classifier_label(kind: str) -> str:
    return f"{kind} (reference)" if kind == REFERENCE_CLASSIFIER else kind


def _metric_rows(result: CrossValResult):
    """(label, cci, kappa, precision, recall, f) per class, then the average."""
    m = result.metrics
    for c, label in enumerate(result.class_values):
        yield (f"class={label}", m.cci_percent, m.kappa, m.precision[c], m.recall[c], m.f_measure[c])
    yield ("average", m.cci_percent, m.kappa, m.macro_precision, m.macro_recall, m.macro_f_measure)


def render_eval_text(results) -> str:
    lines = [f"{'classifier':<28}{'row':<16}{'CCI%':>8}{'Kappa':>8}{'Precis.':>9}{'Recall':>8}{'F-Meas.':>9}"]
    for result in results:
        for label, cci, kappa, p, r, f in _metric_rows(result):
            lines.append(
                f"{_classifier_label(result.classifier):<28}{label:<16}"
                f"{cci:>8.2f}{kappa:>8.2f}{p:>9.2f}{r:>8.2f}{f:>9.2f}"
            )
    return "\n".join(lines) + "\n"


def render_eval_csv(results) -> str:
    lines = ["classifier,row,key,cci_percent,kappa,precision,recall,f_measure"]
    for result in results:
        for label, cci, kappa, p, r, f in _metric_rows(result):
            row_kind, _, key = label.partition("=")
            lines.append(
                f"{result.classifier},{row_kind},{key},"
                f"{cci:.6f},{kappa:.6f},{p:.6f},{r:.6f},{f:.6f}"
            )
        for i, accuracy in enumerate(result.fold_accuracies):
            lines.append(f"{result.classifier},run,{i},{accuracy:.6f},,,,")
    return "\n".join(lines) + "\n"


def render_compare_text(report: EvalReport) -> str:
    lines = [
        f"comparison: {report.original_name} vs {report.transformed_name}",
        "",
    ]
    header = (
        f"{'classifier':<28}{'row':<16}"
        f"{'CCI%':>8}{'Kappa':>8}{'Precis.':>9}{'Recall':>8}{'F-Meas.':>9}   "
        f"{'CCI%':>8}{'Kappa':>8}{'Precis.':>9}{'Recall':>8}{'F-Meas.':>9}"
    )
    lines.append(f"{'':<44}{report.original_name:>42}{report.transformed_name:>45}")
    lines.append(header)
    for row in report.rows:
        for (label, *orig), (_, *tr) in zip(
            _metric_rows(row.original), _metric_rows(row.transformed)
        ):
            cci_o, kappa_o, p_o, r_o, f_o = orig
            cci_t, kappa_t, p_t, r_t, f_t = tr
            lines.append(
                f"{_classifier_label(row.classifier):<28}{label:<16}"
                f"{cci_o:>8.2f}{kappa_o:>8.2f}{p_o:>9.2f}{r_o:>8.2f}{f_o:>9.2f}   "
                f"{cci_t:>8.2f}{kappa_t:>8.2f}{p_t:>9.2f}{r_t:>8.2f}{f_t:>9.2f}"
            )
    lines.append("")
    lines.append(f"{'classifier':<28}{'CCI delta':>10}  {'t':>9}  verdict")
    for row in report.rows:
        lines.append(
            f"{_classifier_label(row.classifier):<28}{row.cci_delta:>+10.2f}  "
            f"{row.ttest.t_statistic:>9.3f}  {row.verdict}"
        )
    return "\n".join(lines) + "\n"


def render_compare_csv(report: EvalReport) -> str:
    lines = ["dataset,classifier,row,key,cci_percent,kappa,precision,recall,f_measure,cci_delta,t_statistic,verdict"]
    for row in report.rows:
        for name, result in (
            (report.original_name, row.original),
            (report.transformed_name, row.transformed),
        ):
            for label, cci, kappa, p, r, f in _metric_rows(result):
                row_kind, _, key = label.partition("=")
                lines.append(
                    f"{name},{row.classifier},{row_kind},{key},"
                    f"{cci:.6f},{kappa:.6f},{p:.6f},{r:.6f},{f:.6f},,,"
                )
        lines.append(
            f",{row.classifier},delta,,,,,,,"
            f"{row.cci_delta:.6f},{row.ttest.t_statistic:.6f},{row.verdict}"
        )
    return "\n".join(lines) + "\n"
