"""Data acquisition and persistence: CSV fixtures, FRED client, snapshots.

Every downstream number is reproducible because series are read from a
*snapshot*: a directory holding one normalized ``date,value`` CSV payload
per series plus a ``manifest.json`` recording the source spec, a SHA-256
per payload, and a vintage label. Loading verifies the hashes, so a
snapshot is immutable in practice; reproduction runs never touch the
network.

CSV conventions: UTF-8, header ``date,value`` (extra columns tolerated and
ignored), ISO-8601 dates, decimal point, LF line endings. The FRED missing
marker ``"."`` (and empty values) drop the row — never coerced to zero —
with a drop count kept in the series metadata.
"""

from __future__ import annotations

import datetime as dt
import hashlib
import json
import time
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Callable, Mapping, Sequence

import requests

from .errors import ConfigError, DataError
from .series import Frequency, TimeSeries, Unit

__all__ = [
    "SeriesSpec",
    "Snapshot",
    "load_csv",
    "write_csv",
    "fetch_fred",
    "parse_fred_observations",
    "snapshot_create",
    "snapshot_load",
]

FRED_OBSERVATIONS_URL = "https://api.stlouisfed.org/fred/series/observations"
MAX_FETCH_ATTEMPTS = 5
MANIFEST_NAME = "manifest.json"
BEA_MAPPING_NAME = "bea_mapping.json"

#: Values in a CSV/FRED payload that mean "no observation".
MISSING_MARKERS = ("", ".")

VALID_SOURCES = ("csv", "fred", "bea_csv")


@dataclass(frozen=True)
class SeriesSpec:
    """Where a series comes from and how to interpret it."""

    series_id: str
    source: str
    source_id: str
    unit: Unit
    freq: Frequency
    transform: str | None = None

    def __post_init__(self) -> None:
        if not self.series_id:
            raise ConfigError("spec-invalid: series_id must be nonempty")
        if not self.source_id:
            raise ConfigError(f"spec-invalid: empty source_id for '{self.series_id}'")
        if self.source not in VALID_SOURCES:
            raise ConfigError(
                f"spec-invalid: source must be one of {VALID_SOURCES}, "
                f"got {self.source!r}"
            )
        object.__setattr__(self, "unit", Unit(self.unit))
        object.__setattr__(self, "freq", Frequency(self.freq))

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["unit"] = self.unit.value
        d["freq"] = self.freq.value
        return d

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "SeriesSpec":
        return cls(
            series_id=d["series_id"],
            source=d["source"],
            source_id=d["source_id"],
            unit=Unit(d["unit"]),
            freq=Frequency(d["freq"]),
            transform=d.get("transform"),
        )


def load_csv(path: str | Path, spec: SeriesSpec) -> TimeSeries:
    """Parse a ``date,value`` CSV into a series per ``spec``.

    Rows whose value is a missing marker are dropped and counted in
    ``meta["dropped_missing"]``. Parse failures name the offending line;
    spacing inconsistent with the declared frequency raises a
    frequency-mismatch error.
    """
    path = Path(path)
    if not path.exists():
        raise DataError(f"missing-file: {path}")
    pairs: list[tuple[dt.date, float]] = []
    dropped = 0
    with path.open(newline="", encoding="utf-8") as fh:
        header_line = fh.readline()
        columns = [c.strip() for c in header_line.rstrip("\r\n").split(",")]
        if "date" not in columns or "value" not in columns:
            raise DataError(
                f"parse-error: {path} line 1: header must contain "
                f"'date' and 'value' columns, got {columns}"
            )
        date_col = columns.index("date")
        value_col = columns.index("value")
        for lineno, line in enumerate(fh, start=2):
            line = line.rstrip("\r\n")
            if not line:
                continue
            cells = line.split(",")
            if len(cells) != len(columns):
                raise DataError(
                    f"parse-error: {path} line {lineno}: expected "
                    f"{len(columns)} fields, got {len(cells)}"
                )
            raw_value = cells[value_col].strip()
            if raw_value in MISSING_MARKERS:
                dropped += 1
                continue
            try:
                date = dt.date.fromisoformat(cells[date_col].strip())
            except ValueError as err:
                raise DataError(f"parse-error: {path} line {lineno}: {err}") from err
            try:
                value = float(raw_value)
            except ValueError as err:
                raise DataError(f"parse-error: {path} line {lineno}: {err}") from err
            pairs.append((date, value))
    try:
        return TimeSeries.from_pairs(
            spec.series_id,
            spec.freq,
            pairs,
            spec.unit,
            {"source": spec.source, "source_id": spec.source_id, "dropped_missing": dropped},
        )
    except DataError as err:
        raise DataError(f"{err} (file {path})") from err


def write_csv(s: TimeSeries, path: str | Path) -> Path:
    """Write a series as a normalized ``date,value`` CSV (round-trips exactly)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = ["date,value"]
    lines += [f"{d.isoformat()},{v!r}" for d, v in s]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
    return path


def fetch_fred(
    series_id: str,
    api_key: str,
    start: dt.date | None = None,
    end: dt.date | None = None,
    *,
    session: requests.Session | None = None,
    base_url: str = FRED_OBSERVATIONS_URL,
    sleep: Callable[[float], None] = time.sleep,
    backoff_base: float = 0.5,
) -> dict[str, Any]:
    """Fetch the raw observations payload for one FRED series.

    Retries with exponential backoff on 429 and 5xx responses (at most
    :data:`MAX_FETCH_ATTEMPTS` attempts); other 4xx responses are never
    retried. Network/transport errors count as retryable attempts.
    """
    if not series_id:
        raise ConfigError("spec-invalid: empty FRED series id")
    if not api_key:
        raise ConfigError(
            "auth-error: FRED API key required (set FRED_API_KEY or pass api_key)"
        )
    params: dict[str, str] = {
        "series_id": series_id,
        "api_key": api_key,
        "file_type": "json",
    }
    if start is not None:
        params["observation_start"] = start.isoformat()
    if end is not None:
        params["observation_end"] = end.isoformat()
    session = session or requests.Session()
    last_status: object = None
    for attempt in range(MAX_FETCH_ATTEMPTS):
        if attempt:
            sleep(backoff_base * 2 ** (attempt - 1))
        try:
            response = session.get(base_url, params=params, timeout=30)
        except requests.RequestException as err:
            last_status = repr(err)
            continue
        status = response.status_code
        if status == 200:
            payload = response.json()
            if "observations" not in payload:
                raise DataError(
                    f"malformed-payload: no 'observations' in FRED response "
                    f"for {series_id}"
                )
            return payload
        if status == 429 or status >= 500:
            last_status = status
            continue
        message = _fred_error_message(response)
        if "does not exist" in message.lower():
            raise DataError(f"unknown-series: {series_id}: {message}")
        raise ConfigError(f"auth-error: FRED returned {status} for {series_id}: {message}")
    raise DataError(
        f"network-exhausted: {MAX_FETCH_ATTEMPTS} attempts for {series_id} "
        f"(last: {last_status})"
    )


def _fred_error_message(response: requests.Response) -> str:
    try:
        return str(response.json().get("error_message", response.text))
    except ValueError:
        return response.text


def parse_fred_observations(payload: Mapping[str, Any], spec: SeriesSpec) -> TimeSeries:
    """Convert a FRED observations payload into a series.

    Missing markers are dropped and counted; the output never contains more
    points than the payload has observations.
    """
    pairs: list[tuple[dt.date, float]] = []
    dropped = 0
    for obs in payload["observations"]:
        raw = str(obs["value"]).strip()
        if raw in MISSING_MARKERS:
            dropped += 1
            continue
        pairs.append((dt.date.fromisoformat(obs["date"]), float(raw)))
    return TimeSeries.from_pairs(
        spec.series_id,
        spec.freq,
        pairs,
        spec.unit,
        {"source": spec.source, "source_id": spec.source_id, "dropped_missing": dropped},
    )


def _pct_yoy(s: TimeSeries) -> TimeSeries:
    from .series import PERIODS_PER_YEAR, period_index

    if s.freq not in PERIODS_PER_YEAR:
        raise ConfigError(f"unknown-transform: pct_yoy unsupported for {s.freq.value}")
    lag = PERIODS_PER_YEAR[s.freq]
    by_period = {period_index(d, s.freq): v for d, v in s}
    pairs = [
        (d, 100.0 * (v / by_period[period_index(d, s.freq) - lag] - 1.0))
        for d, v in s
        if period_index(d, s.freq) - lag in by_period
    ]
    meta = dict(s.meta)
    meta["transform"] = "pct_yoy"
    return TimeSeries.from_pairs(s.series_id, s.freq, pairs, Unit.PERCENT_POINTS, meta)


def _apply_transform(s: TimeSeries, transform: str | None) -> TimeSeries:
    if transform is None:
        return s
    if transform == "pct_yoy":
        return _pct_yoy(s)
    raise ConfigError(f"unknown-transform: {transform!r}")


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


@dataclass(frozen=True)
class Snapshot:
    """A verified, immutable snapshot directory."""

    root: Path
    manifest: dict[str, Any]

    @property
    def vintage(self) -> str:
        return str(self.manifest.get("vintage", ""))

    @property
    def specs(self) -> dict[str, SeriesSpec]:
        return {
            entry["series_id"]: SeriesSpec.from_dict(entry)
            for entry in self.manifest["series"]
        }

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(entry["series_id"] for entry in self.manifest["series"])

    def manifest_sha256(self) -> str:
        return _sha256(self.root / MANIFEST_NAME)

    def series(self, series_id: str) -> TimeSeries:
        for entry in self.manifest["series"]:
            if entry["series_id"] == series_id:
                return load_csv(self.root / entry["file"], SeriesSpec.from_dict(entry))
        raise DataError(f"unknown-series: '{series_id}' not in snapshot {self.root}")

    def all_series(self) -> dict[str, TimeSeries]:
        return {sid: self.series(sid) for sid in self.ids}


def snapshot_create(
    specs: Sequence[SeriesSpec],
    destination: str | Path,
    *,
    vintage: str,
    api_key: str | None = None,
    base_dir: str | Path | None = None,
    bea_mapping: Mapping[str, Any] | None = None,
    session: requests.Session | None = None,
    sleep: Callable[[float], None] = time.sleep,
    offline: bool = False,
    created_utc: str | None = None,
) -> Snapshot:
    """Fetch/normalize every spec and write an immutable snapshot directory.

    CSV-backed specs resolve ``source_id`` relative to ``base_dir``;
    ``bea_csv`` specs additionally require an entry in ``bea_mapping``
    documenting the table and line item they came from. With
    ``offline=True`` any FRED spec raises instead of touching the network.
    """
    destination = Path(destination)
    destination.mkdir(parents=True, exist_ok=True)
    base = Path(base_dir) if base_dir is not None else Path.cwd()
    seen: set[str] = set()
    entries: list[dict[str, Any]] = []
    fetched_utc = created_utc or (
        dt.datetime.now(dt.timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
    )
    for spec in specs:
        if spec.series_id in seen:
            raise ConfigError(f"spec-invalid: duplicate series_id '{spec.series_id}'")
        seen.add(spec.series_id)
        if spec.source == "fred":
            if offline:
                raise DataError(
                    f"network-disabled: cannot fetch '{spec.series_id}' offline"
                )
            payload = fetch_fred(
                spec.source_id, api_key or "", session=session, sleep=sleep
            )
            series = parse_fred_observations(payload, spec)
        else:
            if spec.source == "bea_csv":
                if not bea_mapping or spec.series_id not in bea_mapping:
                    raise DataError(
                        f"bea-mapping-missing: no table mapping for "
                        f"'{spec.series_id}'"
                    )
            series = load_csv(base / spec.source_id, spec)
        series = _apply_transform(series, spec.transform)
        filename = f"{spec.series_id}.csv"
        payload_path = write_csv(series, destination / filename)
        entry = spec.to_dict()
        entry.update(
            file=filename,
            sha256=_sha256(payload_path),
            rows=len(series),
            fetched_utc=fetched_utc,
        )
        entries.append(entry)
    manifest = {
        "format_version": 1,
        "vintage": vintage,
        "created_utc": fetched_utc,
        "series": entries,
    }
    if bea_mapping:
        mapping_path = destination / BEA_MAPPING_NAME
        mapping_path.write_text(
            json.dumps(dict(bea_mapping), indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )
        manifest["bea_mapping_file"] = BEA_MAPPING_NAME
        manifest["bea_mapping_sha256"] = _sha256(mapping_path)
    (destination / MANIFEST_NAME).write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return snapshot_load(destination)


def snapshot_load(path: str | Path) -> Snapshot:
    """Load a snapshot, verifying every payload hash against the manifest."""
    root = Path(path)
    manifest_path = root / MANIFEST_NAME
    if not manifest_path.exists():
        raise DataError(f"no-manifest: {manifest_path} not found")
    try:
        manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as err:
        raise DataError(f"no-manifest: {manifest_path} is not valid JSON: {err}") from err
    if "series" not in manifest:
        raise DataError(f"no-manifest: {manifest_path} lacks a 'series' list")
    for entry in manifest["series"]:
        payload_path = root / entry["file"]
        if not payload_path.exists():
            raise DataError(f"hash-mismatch: payload {payload_path} is missing")
        digest = _sha256(payload_path)
        if digest != entry["sha256"]:
            raise DataError(
                f"hash-mismatch: {payload_path} has sha256 {digest}, "
                f"manifest says {entry['sha256']}"
            )
    return Snapshot(root=root, manifest=manifest)
