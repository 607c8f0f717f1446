"""Report files: accuracy CSVs and a template-rendered SVG bar chart."""

import csv
import io
import math
from dataclasses import dataclass
from xml.sax.saxutils import escape

from .evaluation import CLASSIFIER_NAMES, EvalReport, SweepRow

REPORT_COLUMNS = (
    "classifier", "feature_mode", "ngram_lo", "ngram_hi", "max_features",
    "protocol", "accuracy", "seed", "wall_time_s",
)
SWEEP_COLUMNS = REPORT_COLUMNS + ("error",)


@dataclass(frozen=True)
class ReportRow:
    classifier: str
    feature_mode: str
    ngram_lo: int
    ngram_hi: int
    max_features: int
    protocol: str
    accuracy: float
    seed: int
    wall_time_s: float = None
    error: str = None

    @classmethod
    def from_result(cls, result):
        """Row for an ``EvalReport`` or a ``SweepRow``."""
        if isinstance(result, EvalReport):
            cfg = result.config
            feature, kind, protocol, error = cfg.feature, cfg.classifier, cfg.protocol, None
        elif isinstance(result, SweepRow):
            feature, kind, protocol, error = result.feature, result.classifier, result.protocol, result.error
        else:
            raise TypeError(f"cannot report {type(result).__name__}")
        lo, hi = feature.ngram_range
        return cls(
            classifier=kind,
            feature_mode=feature.mode.value,
            ngram_lo=lo,
            ngram_hi=hi,
            max_features=feature.max_features,
            protocol=protocol.value,
            accuracy=result.accuracy,
            seed=result.seed,
            wall_time_s=result.wall_time,
            error=error,
        )

    def cells(self, columns, timing):
        out = []
        for col in columns:
            value = getattr(self, col)
            if col == "wall_time_s":
                value = f"{value:.3f}" if timing and value is not None else ""
            elif col == "accuracy":
                value = "" if value is None or math.isnan(value) else repr(float(value))
            elif value is None:
                value = ""
            out.append(value)
        return out


def rows_to_csv(rows, columns=REPORT_COLUMNS, timing=False):
    """CSV text for ``rows``.

    ``wall_time_s`` is left empty unless ``timing`` is set, so that reruns with
    the same seed produce byte-identical files.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow(row.cells(columns, timing))
    return buf.getvalue()


def report_csv(reports, timing=False):
    return rows_to_csv([ReportRow.from_result(r) for r in reports], REPORT_COLUMNS, timing)


def sweep_csv(result, timing=False):
    return rows_to_csv([ReportRow.from_result(r) for r in result.rows], SWEEP_COLUMNS, timing)


def _opt_float(text):
    return float(text) if text else None


def read_report_csv(fh):
    """Parse a report or sweep CSV back into ``ReportRow`` objects."""
    reader = csv.DictReader(fh)
    missing = [c for c in REPORT_COLUMNS if c not in (reader.fieldnames or ())]
    if missing:
        raise ValueError(f"report CSV lacks columns {missing}")
    rows = []
    for rec in reader:
        acc = _opt_float(rec["accuracy"])
        rows.append(
            ReportRow(
                classifier=rec["classifier"],
                feature_mode=rec["feature_mode"],
                ngram_lo=int(rec["ngram_lo"]),
                ngram_hi=int(rec["ngram_hi"]),
                max_features=int(rec["max_features"]),
                protocol=rec["protocol"],
                accuracy=float("nan") if acc is None else acc,
                seed=int(rec["seed"]),
                wall_time_s=_opt_float(rec["wall_time_s"]),
                error=rec.get("error") or None,
            )
        )
    return rows


def load_report_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return read_report_csv(fh)


# chart geometry
WIDTH, HEIGHT = 800, 400
_LEFT, _RIGHT, _TOP, _BOTTOM = 60, 20, 40, 70
_PALETTE = ("#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3", "#937860")

_SVG = """<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="11">
<rect width="{w}" height="{h}" fill="#ffffff"/>
<text x="{cx}" y="22" text-anchor="middle" font-size="14">{title}</text>
{body}
</svg>
"""


def render_svg(rows, title="Accuracy by classifier"):
    """Bar chart with one bar per classifier, grouped by protocol.

    When a (protocol, classifier) pair occurs several times, the best
    accuracy is drawn. Failed rows are skipped.
    """
    best = {}
    for row in rows:
        if row.accuracy is None or math.isnan(row.accuracy):
            continue
        key = (row.protocol, row.classifier)
        best[key] = max(best.get(key, -1.0), row.accuracy)
    protocols = sorted({p for p, _ in best})
    kinds = [k for k in CLASSIFIER_NAMES if any((p, k) in best for p in protocols)]
    kinds += sorted({k for _, k in best} - set(kinds))

    plot_w = WIDTH - _LEFT - _RIGHT
    plot_h = HEIGHT - _TOP - _BOTTOM
    base_y = _TOP + plot_h
    parts = []
    for tick in range(0, 11, 2):
        y = base_y - plot_h * tick / 10
        parts.append(f'<line x1="{_LEFT}" y1="{y:.1f}" x2="{WIDTH - _RIGHT}" y2="{y:.1f}" stroke="#dddddd"/>')
        parts.append(f'<text x="{_LEFT - 6}" y="{y + 4:.1f}" text-anchor="end">{tick / 10:.1f}</text>')
    parts.append(f'<line x1="{_LEFT}" y1="{base_y}" x2="{WIDTH - _RIGHT}" y2="{base_y}" stroke="#333333"/>')

    if protocols:
        group_w = plot_w / len(protocols)
        bar_w = group_w * 0.8 / max(len(kinds), 1)
        for g, protocol in enumerate(protocols):
            gx = _LEFT + g * group_w + group_w * 0.1
            for b, kind in enumerate(kinds):
                acc = best.get((protocol, kind))
                if acc is None:
                    continue
                x = gx + b * bar_w
                h = plot_h * acc
                color = _PALETTE[kinds.index(kind) % len(_PALETTE)]
                parts.append(
                    f'<rect x="{x + 2:.1f}" y="{base_y - h:.1f}" width="{bar_w - 4:.1f}" height="{h:.1f}" fill="{color}">'
                    f"<title>{escape(kind)} {escape(protocol)}: {acc:.4f}</title></rect>"
                )
                parts.append(
                    f'<text x="{x + bar_w / 2:.1f}" y="{base_y - h - 4:.1f}" text-anchor="middle">{acc * 100:.1f}</text>'
                )
                parts.append(
                    f'<text x="{x + bar_w / 2:.1f}" y="{base_y + 14}" text-anchor="middle">{escape(kind)}</text>'
                )
            parts.append(
                f'<text x="{gx + group_w * 0.4:.1f}" y="{base_y + 34}" text-anchor="middle" font-size="12">'
                f"{escape(protocol)}</text>"
            )
    return _SVG.format(w=WIDTH, h=HEIGHT, cx=WIDTH // 2, title=escape(title), body="\n".join(parts))
