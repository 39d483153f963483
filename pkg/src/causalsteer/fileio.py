"""Loading and saving of graphs, SCMs, models, datasets, and plans.

All documents are JSON with 1-based variable indices; datasets are headered
CSV with one column per variable and %.12g numeric formatting.
"""

import csv
import io
import json
from pathlib import Path

import numpy as np

from .causal import InterventionPlan
from .datagen import DagGenConfig
from .graph import Dag, validate
from .models import PredictionModel
from .scm import Dataset, NoiseSpec, Scm


def dag_to_dict(dag: Dag) -> dict:
    edges = [
        {"from": int(j) + 1, "to": int(i) + 1, "weight": float(dag.weights[i, j])}
        for i, j in np.argwhere(dag.weights != 0.0)
    ]
    edges.sort(key=lambda e: (e["from"], e["to"]))
    doc = {"n": dag.n, "edges": edges}
    if dag.names is not None:
        doc["names"] = list(dag.names)
    return doc


def dag_from_dict(doc: dict) -> Dag:
    n = int(doc["n"])
    names = doc.get("names")
    dag = Dag.from_edges(
        n,
        ((int(e["from"]), int(e["to"]), float(e["weight"])) for e in doc.get("edges", [])),
        names,
    )
    validate(dag)
    return dag


_NOISE_FIELDS = {"gaussian": ("mean", "stddev"), "uniform": ("lo", "hi"), "constant": ("value",)}


def noise_to_dict(spec: NoiseSpec) -> dict:
    doc = {"family": spec.family}
    doc.update(zip(_NOISE_FIELDS[spec.family], spec.params))
    return doc


def noise_from_dict(doc: dict) -> NoiseSpec:
    family = doc["family"]
    if family not in _NOISE_FIELDS:
        raise ValueError(f"unknown noise family {family!r}")
    return NoiseSpec(family, tuple(float(doc[k]) for k in _NOISE_FIELDS[family]))


def scm_to_dict(scm: Scm) -> dict:
    doc = dag_to_dict(scm.dag)
    doc["noises"] = [noise_to_dict(s) for s in scm.noises]
    return doc


def scm_from_dict(doc: dict) -> Scm:
    return Scm(dag_from_dict(doc), tuple(noise_from_dict(d) for d in doc["noises"]))


def model_to_dict(model: PredictionModel) -> dict:
    return {
        "kind": model.kind,
        "bias": model.bias,
        "coeffs": [float(c) for c in model.coeffs],
        "predictor_indices": list(model.predictor_indices),
        "target_index": model.target_index,
    }


def model_from_dict(doc: dict) -> PredictionModel:
    return PredictionModel(
        doc["kind"],
        float(doc["bias"]),
        np.asarray(doc["coeffs"], dtype=float),
        tuple(int(i) for i in doc["predictor_indices"]),
        int(doc["target_index"]),
    )


def plan_to_dict(plan: InterventionPlan) -> dict:
    return {
        "target_variable": plan.target_variable,
        "value": plan.value,
        "desired_prediction": plan.desired_prediction,
        "predicted_expectation": plan.predicted_expectation,
        "effects": [float(a) for a in plan.effects],
        "warnings": list(plan.warnings),
    }


def datagen_config_from_dict(doc: dict) -> DagGenConfig:
    kwargs = dict(doc)
    if "noise" in kwargs:
        kwargs["noise"] = noise_from_dict(kwargs["noise"])
    return DagGenConfig(**kwargs)


def datagen_config_to_dict(config: DagGenConfig) -> dict:
    return {
        "n_roots": config.n_roots,
        "n_descendants": config.n_descendants,
        "parent_prob": config.parent_prob,
        "min_parents": config.min_parents,
        "weight_lo": config.weight_lo,
        "weight_hi": config.weight_hi,
        "random_sign": config.random_sign,
        "noise": noise_to_dict(config.noise),
        "seed": config.seed,
    }


def save_json(doc: dict, path) -> None:
    Path(path).write_text(json.dumps(doc, indent=2) + "\n")


def load_json(path) -> dict:
    return json.loads(Path(path).read_text())


def dataset_to_csv(data: Dataset) -> str:
    names = data.names or tuple(f"x{k + 1}" for k in range(data.n))
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(names)
    for row in data.rows:
        writer.writerow([f"{v:.12g}" for v in row])
    return out.getvalue()


def save_dataset(data: Dataset, path) -> None:
    Path(path).write_text(dataset_to_csv(data))


def load_dataset(path) -> Dataset:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [[float(v) for v in row] for row in reader]
    return Dataset(np.asarray(rows, dtype=float), tuple(header))
