"""Scan report files (CSV or JSON) and summary tables."""

from __future__ import annotations

import csv
import io
import json
import math
import os
from dataclasses import dataclass

from .crossval import MeanCI, TripleRecord
from .data import Dataset
from .errors import DataError
from .stats import DatasetSummary

COLUMNS = (
    "index", "f1", "f2", "s", "S_cv", "S_cv_min", "S_cv_max",
    "t_inter_mean", "t_inter_lo", "t_inter_hi",
    "t_elim_mean", "t_elim_lo", "t_elim_hi", "flagged",
)
FORMATS = ("csv", "json")


@dataclass(frozen=True)
class ReportRow:
    """One triple as read back from a report; features are named, not indexed."""

    index: int
    f1: str
    f2: str
    s: str
    ci_inter: MeanCI
    ci_elim: MeanCI
    s_cv_min: float
    s_cv_max: float
    s_cv: float
    flagged: bool


def rows_from_records(d: Dataset, records: list[TripleRecord]) -> list[ReportRow]:
    n = d.feature_names
    return [
        ReportRow(i, n[r.f1], n[r.f2], n[r.s], r.ci_inter, r.ci_elim,
                  r.s_cv_min, r.s_cv_max, r.s_cv, r.flagged)
        for i, r in enumerate(records, start=1)
    ]


def _fields(row: ReportRow) -> dict:
    return {
        "index": row.index, "f1": row.f1, "f2": row.f2, "s": row.s,
        "S_cv": row.s_cv, "S_cv_min": row.s_cv_min, "S_cv_max": row.s_cv_max,
        "t_inter_mean": row.ci_inter.mean, "t_inter_lo": row.ci_inter.lo,
        "t_inter_hi": row.ci_inter.hi,
        "t_elim_mean": row.ci_elim.mean, "t_elim_lo": row.ci_elim.lo,
        "t_elim_hi": row.ci_elim.hi,
        "flagged": row.flagged,
    }


def _g6(v: float) -> str:
    return "nan" if math.isnan(v) else f"{v:.6g}"


def to_csv(rows: list[ReportRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for row in rows:
        f = _fields(row)
        w.writerow([
            f[c] if c in ("index", "f1", "f2", "s")
            else int(f[c]) if c == "flagged"
            else _g6(f[c])
            for c in COLUMNS
        ])
    return buf.getvalue()


def to_json(rows: list[ReportRow], meta: dict | None = None) -> str:
    def clean(v):
        return None if isinstance(v, float) and math.isnan(v) else v

    doc = dict(meta or {})
    doc["n_triples"] = len(rows)
    doc["records"] = [{k: clean(v) for k, v in _fields(r).items()} for r in rows]
    return json.dumps(doc, indent=2) + "\n"


def write_report(path, rows: list[ReportRow], fmt: str = "csv", meta: dict | None = None) -> None:
    if fmt not in FORMATS:
        raise ValueError(f"format must be one of {FORMATS}")
    text = to_csv(rows) if fmt == "csv" else to_json(rows, meta)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _num(v) -> float:
    return math.nan if v is None or v == "" else float(v)


def _row_from_fields(f: dict) -> ReportRow:
    return ReportRow(
        int(f["index"]), str(f["f1"]), str(f["f2"]), str(f["s"]),
        MeanCI(_num(f["t_inter_lo"]), _num(f["t_inter_hi"]), _num(f["t_inter_mean"])),
        MeanCI(_num(f["t_elim_lo"]), _num(f["t_elim_hi"]), _num(f["t_elim_mean"])),
        _num(f["S_cv_min"]), _num(f["S_cv_max"]), _num(f["S_cv"]),
        str(f["flagged"]).strip().lower() in ("1", "true"),
    )


def read_report(path) -> list[ReportRow]:
    """Load a report written by :func:`write_report`; the format is sniffed."""
    path = os.fspath(path)
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        if text.lstrip().startswith("{"):
            doc = json.loads(text)
            return [_row_from_fields(f) for f in doc["records"]]
        reader = csv.DictReader(io.StringIO(text))
        missing = set(COLUMNS) - set(reader.fieldnames or ())
        if missing:
            raise DataError(f"{path}: report lacks columns {sorted(missing)}")
        return [_row_from_fields(f) for f in reader]
    except DataError:
        raise
    except (KeyError, ValueError, TypeError) as exc:
        raise DataError(f"{path}: malformed report ({exc})") from exc


SUMMARY_COLUMNS = ("dataset", "Q", "S_min", "S_median", "S_max", "t_median", "rho", "p_value")


def summary_table(named: list[tuple[str, DatasetSummary]]) -> str:
    """Fixed-width text table, one line per dataset; '--' where rho/p are absent."""
    head = f"{'dataset':<12}{'Q':>6}{'S_min':>9}{'S_median':>10}{'S_max':>9}" \
           f"{'t_median':>10}{'rho':>8}{'p_value':>10}"
    lines = [head]
    for name, sm in named:
        rho = "--" if sm.rho is None else f"{sm.rho:.2f}"
        p = "--" if sm.p_value is None else f"{sm.p_value:.1e}"
        lines.append(
            f"{name:<12}{sm.triple_count:>6}{sm.s_min:>9.2f}{sm.s_median:>10.2f}"
            f"{sm.s_max:>9.2f}{sm.t_median:>10.4f}{rho:>8}{p:>10}")
    return "\n".join(lines) + "\n"


def summary_csv(named: list[tuple[str, DatasetSummary]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SUMMARY_COLUMNS)
    for name, sm in named:
        w.writerow([name, sm.triple_count, _g6(sm.s_min), _g6(sm.s_median), _g6(sm.s_max),
                    _g6(sm.t_median),
                    "--" if sm.rho is None else _g6(sm.rho),
                    "--" if sm.p_value is None else _g6(sm.p_value)])
    return buf.getvalue()
