"""Command-line front end.

Subcommands wire parsing, transformation, fold generation, evaluation and
dataset comparison into reproducible batch runs. Every subcommand is
deterministic for a given flag set; the seed defaults to 0. Exit codes:
1 parse error, 2 configuration/usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from pathlib import Path

from .arff import ParseError, parse_arff, write_arff
from .classifiers import CLASSIFIER_KINDS
from .csvio import parse_csv, write_csv
from .evaluate import (
    compare_datasets,
    cross_validate,
    render_compare_csv,
    render_compare_text,
    render_eval_csv,
    render_eval_text,
)
from .folds import group_stratified_folds
from .generator import gen_surf
from .model import Dataset, SppamError
from .transform import (
    ConfigError,
    TransformConfig,
    attribute_count,
    derive_output_schema,
    sort_records,
    transform,
)

EXIT_PARSE = 1
EXIT_CONFIG = 2
EXIT_IO = 3


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ConfigError, SppamError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sppam",
        description="Aggregate groups of correlated records and evaluate classifiers "
        "on original vs. transformed datasets.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("transform", help="collapse each pivot group into one record")
    p.add_argument("input")
    p.add_argument("--pivot", required=True, help="grouping attribute")
    p.add_argument("--class", dest="class_attr", required=True, help="class attribute")
    p.add_argument("--id", dest="id_attr", help="record id attribute")
    p.add_argument("--decimals", type=int, help="fractional digits for numeric output")
    p.add_argument("--sort-by", help="stable pre-sort by this attribute")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(handler=_cmd_transform)

    p = sub.add_parser("schema", help="show the derived output schema without data")
    p.add_argument("input")
    p.add_argument("--pivot", required=True)
    p.add_argument("--class", dest="class_attr", required=True)
    p.set_defaults(handler=_cmd_schema)

    p = sub.add_parser("folds", help="write a stratified fold assignment as CSV")
    p.add_argument("input")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--group-by", help="keep whole groups inside one fold")
    p.add_argument("--class", dest="class_attr", help="class attribute (default: last)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(handler=_cmd_folds)

    p = sub.add_parser("eval", help="cross-validate classifiers on one dataset")
    p.add_argument("input")
    p.add_argument("--class", dest="class_attr", required=True)
    p.add_argument("--classifiers", default=",".join(CLASSIFIER_KINDS),
                   help="comma-separated classifier kinds")
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--repeats", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--group-by")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--csv", action="store_true", help="machine-parsable output")
    p.set_defaults(handler=_cmd_eval)

    p = sub.add_parser("compare", help="evaluate on original and transformed datasets")
    p.add_argument("original")
    p.add_argument("transformed")
    p.add_argument("--class", dest="class_attr", required=True)
    p.add_argument("--pivot", help="group attribute for folds on the original")
    p.add_argument("--classifiers", default=",".join(CLASSIFIER_KINDS))
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--repeats", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alpha", type=float, default=0.01)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--csv", action="store_true")
    p.set_defaults(handler=_cmd_compare)

    p = sub.add_parser("gen-surf", help="generate a synthetic surf-shaped dataset")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--days", type=int, default=48)
    p.add_argument("--per-day", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--labels", choices=("record", "group-mean"), default="record")
    p.add_argument("--zero-days", type=int, default=18)
    p.add_argument("--flip-rate", type=float, default=0.15)
    p.set_defaults(handler=_cmd_gen_surf)

    return parser


def _load_dataset(path: str, string_columns=(), nominal_columns=()) -> Dataset:
    suffix = Path(path).suffix.lower()
    text = Path(path).read_text(encoding="utf-8")
    if suffix == ".arff":
        return parse_arff(text)
    if suffix == ".csv":
        return parse_csv(
            text,
            string_columns=tuple(c for c in string_columns if c),
            nominal_columns=tuple(c for c in nominal_columns if c),
        )
    raise ConfigError(f"cannot infer format of {path!r}; use a .arff or .csv extension")


def _write_dataset(path: str, dataset: Dataset, decimals: int | None = None) -> None:
    suffix = Path(path).suffix.lower()
    if suffix == ".csv":
        Path(path).write_text(write_csv(dataset, decimals), encoding="utf-8")
    else:
        Path(path).write_text(write_arff(dataset, decimals), encoding="utf-8")


def _split_kinds(text: str) -> list[str]:
    kinds = [kind.strip().lower() for kind in text.split(",") if kind.strip()]
    if not kinds:
        raise ConfigError("no classifiers given")
    for kind in kinds:
        if kind not in CLASSIFIER_KINDS:
            raise ConfigError(
                f"unknown classifier {kind!r}; valid kinds: {', '.join(CLASSIFIER_KINDS)}"
            )
    return kinds


def _cmd_transform(args) -> int:
    dataset = _load_dataset(
        args.input,
        string_columns=(args.pivot, args.id_attr),
        nominal_columns=(args.class_attr,),
    )
    if args.sort_by:
        dataset = sort_records(dataset, args.sort_by)
    config = TransformConfig(args.pivot, args.class_attr, args.id_attr)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        result = transform(dataset, config)
    _write_dataset(args.output, result, args.decimals)
    print(
        f"{len(result.records)} groups, "
        f"{len(dataset.schema)} -> {len(result.schema)} attributes"
    )
    for warning in caught:
        print(f"warning: {warning.message}", file=sys.stderr)
    return 0


def _cmd_schema(args) -> int:
    dataset = _load_dataset(
        args.input,
        string_columns=(args.pivot,),
        nominal_columns=(args.class_attr,),
    )
    config = TransformConfig(args.pivot, args.class_attr)
    derived = derive_output_schema(dataset.schema, config)
    for attr in derived:
        domain = " {" + ", ".join(attr.values) + "}" if attr.kind == "nominal" else ""
        print(f"{attr.name}: {attr.kind}{domain}")
    count = attribute_count(dataset.schema, config)
    print(
        f"{count} attributes "
        "(1 class + 1 per string + 4 per numeric + domain size + 1 per nominal; "
        "every non-class nominal keeps its LAST column)"
    )
    return 0


def _cmd_folds(args) -> int:
    group_cols = (args.group_by,) if args.group_by else ()
    dataset = _load_dataset(
        args.input,
        string_columns=group_cols,
        nominal_columns=(args.class_attr,) if args.class_attr else (),
    )
    class_attr = args.class_attr or dataset.schema[-1].name
    assignment = group_stratified_folds(
        dataset, args.k, class_attr, args.group_by, seed=args.seed
    )
    lines = ["record_index,fold"]
    lines.extend(f"{i},{f}" for i, f in enumerate(assignment.fold_of_record))
    Path(args.output).write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"{len(assignment.fold_of_record)} records -> {assignment.k} folds")
    return 0


def _cmd_eval(args) -> int:
    group_cols = (args.group_by,) if args.group_by else ()
    dataset = _load_dataset(
        args.input,
        string_columns=group_cols,
        nominal_columns=(args.class_attr,),
    )
    results = [
        cross_validate(
            dataset, kind, args.class_attr, args.k, args.repeats, args.seed,
            group_attribute=args.group_by, jobs=args.jobs,
        )
        for kind in _split_kinds(args.classifiers)
    ]
    sys.stdout.write(render_eval_csv(results) if args.csv else render_eval_text(results))
    return 0


def _cmd_compare(args) -> int:
    original = _load_dataset(
        args.original,
        string_columns=(args.pivot,) if args.pivot else (),
        nominal_columns=(args.class_attr,),
    )
    transformed = _load_dataset(args.transformed, nominal_columns=(args.class_attr,))
    report = compare_datasets(
        original,
        transformed,
        _split_kinds(args.classifiers),
        args.class_attr,
        k=args.k,
        repeats=args.repeats,
        seed=args.seed,
        group_attribute=args.pivot,
        alpha=args.alpha,
        jobs=args.jobs,
        original_name=Path(args.original).name,
        transformed_name=Path(args.transformed).name,
    )
    sys.stdout.write(render_compare_csv(report) if args.csv else render_compare_text(report))
    return 0


def _cmd_gen_surf(args) -> int:
    dataset = gen_surf(
        days=args.days,
        per_day=args.per_day,
        seed=args.seed,
        labels=args.labels,
        zero_days=args.zero_days,
        flip_rate=args.flip_rate,
    )
    _write_dataset(args.output, dataset)
    print(f"wrote {len(dataset.records)} records over {args.days} days to {args.output}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
