"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 computation error. Every command
that draws randomness takes --seed and is bitwise reproducible.
"""

import argparse
import dataclasses
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__, autompg, fileio
from .causal import (
    causal_effect_on_prediction,
    naive_intervention_value,
    observation_specific_plan,
    optimal_intervention_value,
    select_intervention_target,
)
from .datagen import DagGenConfig, generate_random_scm, median_split_labels
from .errors import CausalSteerError
from .models import augment_graph, fit_linear, fit_logistic
from .scm import analytic_means, estimate_noise_means, sample, sample_interventional
from .sweep import run_manifest, run_sweep, sweep_config_from_dict, sweep_result_to_csv


class _Parser(argparse.ArgumentParser):
    # Usage problems exit 1; argparse's default of 2 is reserved for
    # computation errors.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _cmd_gen_scm(args) -> int:
    if args.config:
        config = fileio.datagen_config_from_dict(fileio.load_json(args.config))
    else:
        config = DagGenConfig()
    if args.seed is not None:
        config = dataclasses.replace(config, seed=args.seed)
    scm = generate_random_scm(config)
    _write(json.dumps(fileio.scm_to_dict(scm), indent=2) + "\n", args.out)
    return 0


def _parse_do(spec: str) -> tuple[int, float]:
    idx, _, value = spec.partition("=")
    return int(idx), float(value)


def _cmd_sample(args) -> int:
    scm = fileio.scm_from_dict(fileio.load_json(args.scm))
    if args.do:
        i, c = _parse_do(args.do)
        data = sample_interventional(scm, i, c, args.rows, args.seed)
    else:
        data = sample(scm, args.rows, args.seed)
    _write(fileio.dataset_to_csv(data), args.out)
    return 0


def _parse_indices(text: str) -> tuple[int, ...]:
    return tuple(int(t) for t in text.replace(",", " ").split())


def _cmd_fit(args) -> int:
    data = fileio.load_dataset(args.data)
    predictors = _parse_indices(args.predictors) if args.predictors else None
    if args.kind == "linear":
        model = fit_linear(data, args.target_index, predictors)
    else:
        labels = median_split_labels(data, args.target_index)
        model = fit_logistic(data, labels, predictors, target_index=args.target_index)
    _write(json.dumps(fileio.model_to_dict(model), indent=2) + "\n", args.out)
    return 0


def _cmd_analyze(args) -> int:
    scm = fileio.scm_from_dict(fileio.load_json(args.scm))
    model = fileio.model_from_dict(fileio.load_json(args.model))
    augmented = augment_graph(scm.dag, model)
    effects = [(i, causal_effect_on_prediction(augmented, i)) for i in model.predictor_indices]
    effects.sort(key=lambda pair: (-abs(pair[1]), pair[0]))
    lines = ["variable,name,effect_on_prediction"]
    for i, effect in effects:
        lines.append(f"{i},{scm.dag.name_of(i)},{effect:.6g}")
    _write("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_intervene(args) -> int:
    scm = fileio.scm_from_dict(fileio.load_json(args.scm))
    model = fileio.model_from_dict(fileio.load_json(args.model))
    if args.target_index is not None and args.target_index != model.target_index:
        raise CausalSteerError(
            f"--target-index {args.target_index} conflicts with the model's "
            f"target variable {model.target_index}"
        )
    augmented = augment_graph(scm.dag, model)
    i = args.intervene_index
    if i is None:
        i = select_intervention_target(augmented, model.predictor_indices)

    if args.observation_file:
        observation = np.asarray(json.loads(Path(args.observation_file).read_text()), dtype=float)
        plan = observation_specific_plan(observation, scm.dag, model, i, args.desired)
        naive_x = observation
    else:
        mu = analytic_means(scm)
        plan = optimal_intervention_value(
            mu, scm.dag, estimate_noise_means(scm.dag, mu), model, i, args.desired
        )
        naive_x = mu

    warnings = list(plan.warnings)
    if args.data:
        column = fileio.load_dataset(args.data).column(i)
        lo, hi = float(column.min()), float(column.max())
        if not lo <= plan.value <= hi:
            warnings.append(
                f"value {plan.value:g} lies outside the observed range "
                f"{lo:g} .. {hi:g} of variable {i}"
            )
    plan = dataclasses.replace(plan, warnings=tuple(warnings))

    print(f"do(X{i} = {plan.value:.12g}) steers the expected prediction to {plan.desired_prediction:g}")
    if i in model.predictor_indices and model.coeffs[model.predictor_indices.index(i)] != 0.0:
        print(f"naive per-equation value: {naive_intervention_value(model, naive_x, i, args.desired):.12g}")
    for w in warnings:
        print(f"warning: {w}")
    if args.out:
        fileio.save_json(fileio.plan_to_dict(plan), args.out)
    return 0


def _cmd_sweep(args) -> int:
    config = sweep_config_from_dict(fileio.load_json(args.config))
    if args.seed is not None:
        config = dataclasses.replace(config, seed=args.seed)
    result = run_sweep(config)
    csv_text = sweep_result_to_csv(result)
    _write(csv_text, args.out)
    if args.out:
        fileio.save_json(run_manifest(config, result), Path(args.out).with_suffix(".manifest.json"))
    return 0


def _cmd_fetch_autompg(args) -> int:
    data = autompg.fetch_autompg(args.cache_dir)
    cache = Path(args.cache_dir) if args.cache_dir else autompg.default_cache_dir()
    print(f"{cache / 'auto-mpg.data'}: {data.m} rows x {data.n} columns")
    if args.out:
        fileio.save_dataset(data, args.out)
    return 0


def _cmd_demo_autompg(args) -> int:
    structure_path = args.structure or autompg.bundled_structure_path()
    structure = fileio.dag_from_dict(fileio.load_json(structure_path))
    if args.data_file:
        data = autompg.parse_autompg(Path(args.data_file).read_text())
    else:
        data = autompg.fetch_autompg(args.cache_dir)
    report = autompg.demo_autompg(structure, data, args.desired)
    print(report.format())
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="causalsteer", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=None, help="run seed (reproducible output)")
        p.add_argument("--out", default=None, help="output file (default: stdout)")

    p = sub.add_parser("gen-scm", help="generate a random linear SCM")
    p.add_argument("--config", help="DagGenConfig JSON file (defaults used when omitted)")
    common(p)
    p.set_defaults(func=_cmd_gen_scm)

    p = sub.add_parser("sample", help="draw observations from an SCM file")
    p.add_argument("--scm", required=True)
    p.add_argument("--rows", type=int, default=1000)
    p.add_argument("--do", help="intervention I=C, e.g. --do 3=1.5")
    common(p)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("fit", help="fit a prediction model on a dataset CSV")
    p.add_argument("--data", required=True)
    p.add_argument("--kind", choices=("linear", "logistic"), default="linear")
    p.add_argument("--target-index", type=int, required=True)
    p.add_argument("--predictors", help="predictor indices, e.g. '1,2,5' (default: all others)")
    common(p)
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("analyze", help="rank variables by causal effect on the prediction")
    p.add_argument("--scm", required=True)
    p.add_argument("--model", required=True)
    common(p)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("intervene", help="compute the optimal intervention value")
    p.add_argument("--scm", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--desired", type=float, required=True)
    p.add_argument("--intervene-index", type=int, help="variable to intervene on (default: greatest effect)")
    p.add_argument("--target-index", type=int, help="must match the model's target when given")
    p.add_argument("--observation-file", help="JSON array of all n values for an observation-specific plan")
    p.add_argument("--data", help="dataset CSV for the observed-range warning")
    common(p)
    p.set_defaults(func=_cmd_intervene)

    p = sub.add_parser("sweep", help="run the many-DAG intervention accuracy sweep")
    p.add_argument("--config", required=True, help="SweepConfig JSON file")
    common(p)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("fetch-autompg", help="download and cache the Auto-MPG dataset")
    p.add_argument("--cache-dir")
    common(p)
    p.set_defaults(func=_cmd_fetch_autompg)

    p = sub.add_parser("demo-autompg", help="suggested MPG interventions on the Auto-MPG data")
    p.add_argument("--structure", help="causal-structure JSON (default: bundled illustrative file)")
    p.add_argument("--desired", type=float, nargs="+", default=[15.0, 21.0, 30.0])
    p.add_argument("--cache-dir")
    p.add_argument("--data-file", help="local raw file, skipping download/cache")
    common(p)
    p.set_defaults(func=_cmd_demo_autompg)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CausalSteerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
