"""File formats and bundled assets.

Structured documents are JSON; tabular data is CSV with a header row. Parse
failures raise InputError carrying the file (and where available the line)
so the CLI can exit with a usable message.
"""

from __future__ import annotations

import csv
import json
import os
from pathlib import Path
from typing import Any

from .distributions import QuantileProfile
from .errors import InputError
from .importance import CovarianceMatrix
from .models import ObservationTable, PredictorSummary, RegressionModel
from .scoring import GROUP_PREFIX, Cohort, EventStandard, ScoringStandard

ASSETS_ENV = "REGAUDIT_ASSETS"


def assets_dir() -> Path:
    """Bundled data directory, overridable through REGAUDIT_ASSETS."""
    override = os.environ.get(ASSETS_ENV)
    if override:
        path = Path(override)
        if not path.is_dir():
            raise InputError(f"{ASSETS_ENV} points to {override!r}, which is not a directory")
        return path
    return Path(__file__).parent / "assets"


def asset_path(name: str) -> Path:
    path = assets_dir() / name
    if not path.is_file():
        raise InputError(f"no bundled asset {name!r} in {assets_dir()}")
    return path


def resolve_input(argument: str, extension: str = ".json") -> Path:
    """Turn a CLI argument into a readable path.

    An existing file path wins; otherwise the name is looked up among the
    bundled assets, with the extension appended if needed.
    """
    direct = Path(argument)
    if direct.is_file():
        return direct
    base = assets_dir()
    for candidate in (base / argument, base / f"{argument}{extension}"):
        if candidate.is_file():
            return candidate
    bundled = ", ".join(sorted(p.stem for p in base.glob(f"*{extension}")))
    raise InputError(
        f"{argument!r} is neither a file nor a bundled asset (bundled: {bundled})"
    )


def _read_json(path: Path | str) -> Any:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def _require(document: dict, key: str, path: Path | str) -> Any:
    if not isinstance(document, dict):
        raise InputError(f"{path}: expected a JSON object")
    if key not in document:
        raise InputError(f"{path}: missing field {key!r}")
    return document[key]


def _number(value: Any, where: str) -> float:
    try:
        return float(value)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{where}: not a number: {value!r}") from exc


def load_model(path: Path | str) -> RegressionModel:
    """Model file: label, constant, predictors[], optional reported{mean, sd, r2, n}."""
    document = _read_json(path)
    predictors = []
    entries = _require(document, "predictors", path)
    if not isinstance(entries, list):
        raise InputError(f"{path}: predictors must be a list")
    for i, entry in enumerate(entries):
        where = f"{path}: predictor {i}"
        if not isinstance(entry, dict):
            raise InputError(f"{where}: expected an object")
        for key in ("name", "coefficient", "mean", "sd"):
            if key not in entry:
                raise InputError(f"{where}: missing field {key!r}")
        predictors.append(
            PredictorSummary(
                name=str(entry["name"]),
                coefficient=_number(entry["coefficient"], where),
                mean=_number(entry["mean"], where),
                sd=_number(entry["sd"], where),
            )
        )
    reported = document.get("reported") or {}
    if not isinstance(reported, dict):
        raise InputError(f"{path}: reported must be an object")

    def optional(key: str) -> float | None:
        value = reported.get(key)
        return None if value is None else _number(value, f"{path}: reported.{key}")

    sample_n = reported.get("n")
    return RegressionModel(
        label=str(_require(document, "label", path)),
        constant=_number(_require(document, "constant", path), f"{path}: constant"),
        predictors=tuple(predictors),
        reported_outcome_mean=optional("mean"),
        reported_outcome_sd=optional("sd"),
        reported_r2=optional("r2"),
        sample_n=None if sample_n is None else int(sample_n),
    )


def model_to_dict(model: RegressionModel) -> dict:
    document: dict[str, Any] = {
        "label": model.label,
        "constant": model.constant,
        "predictors": [
            {"name": p.name, "coefficient": p.coefficient, "mean": p.mean, "sd": p.sd}
            for p in model.predictors
        ],
    }
    reported: dict[str, Any] = {}
    if model.reported_outcome_mean is not None:
        reported["mean"] = model.reported_outcome_mean
    if model.reported_outcome_sd is not None:
        reported["sd"] = model.reported_outcome_sd
    if model.reported_r2 is not None:
        reported["r2"] = model.reported_r2
    if model.sample_n is not None:
        reported["n"] = model.sample_n
    if reported:
        document["reported"] = reported
    return document


def dumps_model(model: RegressionModel) -> str:
    return json.dumps(model_to_dict(model), indent=2, sort_keys=True)


def save_model(model: RegressionModel, path: Path | str) -> None:
    Path(path).write_text(dumps_model(model) + "\n", encoding="utf-8")


def load_profile(path: Path | str) -> QuantileProfile:
    """Percentile file: label, direction, and (percentile, score) points."""
    document = _read_json(path)
    points = _require(document, "points", path)
    if not isinstance(points, list):
        raise InputError(f"{path}: points must be a list of [percentile, score] pairs")
    pairs = []
    for i, pair in enumerate(points):
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise InputError(f"{path}: point {i} must be a [percentile, score] pair")
        pairs.append(
            (_number(pair[0], f"{path}: point {i}"), _number(pair[1], f"{path}: point {i}"))
        )
    try:
        return QuantileProfile(
            label=str(_require(document, "label", path)),
            points=tuple(pairs),
            direction=str(_require(document, "direction", path)),
        )
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def load_standard(path: Path | str) -> ScoringStandard:
    """Standards file: events with anchors plus tier minimum points."""
    document = _read_json(path)
    events = []
    for i, entry in enumerate(_require(document, "events", path)):
        where = f"{path}: event {i}"
        if not isinstance(entry, dict):
            raise InputError(f"{where}: expected an object")
        anchors = entry.get("anchors")
        if not isinstance(anchors, list) or not anchors:
            raise InputError(f"{where}: missing anchors")
        pairs = []
        for j, pair in enumerate(anchors):
            if not isinstance(pair, (list, tuple)) or len(pair) != 2:
                raise InputError(f"{where}: anchor {j} must be a [points, threshold] pair")
            pairs.append((int(pair[0]), _number(pair[1], f"{where}: anchor {j}")))
        try:
            events.append(
                EventStandard(
                    name=str(_require(entry, "name", where)),
                    units=str(entry.get("units", "")),
                    direction=str(_require(entry, "direction", where)),
                    anchors=tuple(pairs),
                )
            )
        except ValueError as exc:
            raise InputError(f"{where}: {exc}") from exc
    tiers = _require(document, "tiers", path)
    if not isinstance(tiers, dict) or not tiers:
        raise InputError(f"{path}: tiers must be a nonempty object")
    try:
        return ScoringStandard(
            events=tuple(events),
            tiers=tuple((str(k), int(v)) for k, v in tiers.items()),
        )
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _read_csv(path: Path | str) -> tuple[list[str], list[list[str]], Path]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    reader = csv.reader(text.splitlines())
    rows = [row for row in reader if row and any(cell.strip() for cell in row)]
    if not rows:
        raise InputError(f"{path}: empty CSV")
    header = [cell.strip() for cell in rows[0]]
    return header, [[cell.strip() for cell in row] for row in rows[1:]], path


def load_observations(path: Path | str, outcome: str | None = None) -> ObservationTable:
    """Numeric CSV with a header row."""
    header, body, path = _read_csv(path)
    rows = []
    for ln, row in enumerate(body, start=2):
        if len(row) != len(header):
            raise InputError(f"{path}: line {ln}: {len(row)} cells, expected {len(header)}")
        try:
            rows.append(tuple(float(cell) for cell in row))
        except ValueError as exc:
            raise InputError(f"{path}: line {ln}: {exc}") from exc
    try:
        return ObservationTable(columns=tuple(header), rows=tuple(rows), outcome_column=outcome)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def load_cohort(path: Path | str) -> Cohort:
    """Cohort CSV: numeric event columns plus group-label columns prefixed group:."""
    header, body, path = _read_csv(path)
    group_idx = {i for i, c in enumerate(header) if c.startswith(GROUP_PREFIX)}
    rows = []
    for ln, row in enumerate(body, start=2):
        if len(row) != len(header):
            raise InputError(f"{path}: line {ln}: {len(row)} cells, expected {len(header)}")
        cells: list[object] = []
        for j, cell in enumerate(row):
            if j in group_idx:
                cells.append(cell)
            else:
                try:
                    cells.append(float(cell))
                except ValueError as exc:
                    raise InputError(
                        f"{path}: line {ln}: column {header[j]!r}: not a number: {cell!r}"
                    ) from exc
        rows.append(tuple(cells))
    try:
        return Cohort(columns=tuple(header), rows=tuple(rows))
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def load_covariance(path: Path | str) -> CovarianceMatrix:
    """Square CSV: header names the predictors, rows carry the matrix."""
    header, body, path = _read_csv(path)
    k = len(header)
    if len(body) != k:
        raise InputError(f"{path}: expected {k} matrix rows, got {len(body)}")
    entries = []
    for ln, row in enumerate(body, start=2):
        if len(row) != k:
            raise InputError(f"{path}: line {ln}: {len(row)} cells, expected {k}")
        try:
            entries.append(tuple(float(cell) for cell in row))
        except ValueError as exc:
            raise InputError(f"{path}: line {ln}: {exc}") from exc
    try:
        return CovarianceMatrix(names=tuple(header), entries=tuple(entries))
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def load_rates(path: Path | str) -> dict[str, float]:
    """Selection rates per group, either flat or under a rates key."""
    document = _read_json(path)
    if isinstance(document, dict) and isinstance(document.get("rates"), dict):
        document = document["rates"]
    if not isinstance(document, dict) or not document:
        raise InputError(f"{path}: expected an object mapping group to rate")
    return {str(k): _number(v, f"{path}: rate {k!r}") for k, v in document.items()}


def load_counts(path: Path | str) -> dict[str, dict[str, tuple[int, int]]]:
    """Pass/fail counts per group and test: group -> test -> (fails, total)."""
    document = _read_json(path)
    groups = _require(document, "groups", path)
    if not isinstance(groups, dict) or not groups:
        raise InputError(f"{path}: groups must be a nonempty object")
    out: dict[str, dict[str, tuple[int, int]]] = {}
    for group, tests in groups.items():
        if not isinstance(tests, dict) or not tests:
            raise InputError(f"{path}: group {group!r} must map tests to counts")
        out[str(group)] = {}
        for test, cell in tests.items():
            where = f"{path}: {group}/{test}"
            if not isinstance(cell, dict) or "pass" not in cell or "fail" not in cell:
                raise InputError(f"{where}: expected an object with pass and fail counts")
            passed = int(cell["pass"])
            failed = int(cell["fail"])
            if passed < 0 or failed < 0:
                raise InputError(f"{where}: counts must be nonnegative")
            out[str(group)][str(test)] = (failed, passed + failed)
    return out


def load_anscombe_sets() -> tuple[ObservationTable, ...]:
    """The bundled quartet, one (x, y) table per set, outcome column y."""
    path = asset_path("anscombe.json")
    document = _read_json(path)
    sets = _require(document, "sets", path)
    tables = []
    for label in ("1", "2", "3", "4"):
        if label not in sets:
            raise InputError(f"{path}: missing set {label!r}")
        rows = [
            (
                _number(pair[0], f"{path}: set {label}"),
                _number(pair[1], f"{path}: set {label}"),
            )
            for pair in sets[label]
        ]
        tables.append(
            ObservationTable(columns=("x", "y"), rows=tuple(rows), outcome_column="y")
        )
    return tuple(tables)
