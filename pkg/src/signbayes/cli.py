"""Command-line interface: ``signbayes {fuse,estimate,posterior,curve,coverage}``.

``fuse`` and ``estimate`` print a key/value table, or with ``--json`` one JSON
document. ``posterior``, ``curve`` and ``coverage`` print CSV with a header row.
Output is assembled in memory and written only after the command succeeds.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from importlib import resources
from pathlib import Path

from .errors import CampaignParseError, ConvergenceError, EmptyCampaignError, InvalidMeasurementError
from .estimators import LossKind, estimate, summarize
from .fusion import Campaign, FusionResult, fuse_to_posterior, weighted_mean
from .posterior import Measurement, Side, SignConstraint, TruncatedGaussianPosterior, make_posterior
from .simulation import (
    CURVE_COLUMNS,
    POSTERIOR_COLUMNS,
    CoverageReport,
    coverage,
    estimator_curve,
    parse_grid,
    posterior_curve,
)

HEADER = ("value", "sigma")
PROBS_20_80 = (0.20, 0.80)
_NUMBER = re.compile(r"^[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?$")


class NonPositiveSigmaError(CampaignParseError, InvalidMeasurementError):
    pass


def _number(text, lineno, what):
    text = text.strip()
    if not _NUMBER.match(text):
        raise CampaignParseError(f"cannot read {what} from {text!r}", lineno)
    return float(text)


def parse_campaign_text(text: str, label: str = "") -> Campaign:
    """Parse ``value,sigma`` CSV text; ``#`` lines and blank lines are skipped."""
    rows = []
    header_seen = False
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        fields = [f.strip() for f in stripped.split(",")]
        if not header_seen:
            if tuple(f.lower() for f in fields) != HEADER:
                raise CampaignParseError("expected header 'value,sigma'", lineno)
            header_seen = True
            continue
        if len(fields) != 2:
            raise CampaignParseError(f"expected 2 fields, found {len(fields)}", lineno)
        value = _number(fields[0], lineno, "value")
        sigma = _number(fields[1], lineno, "sigma")
        if not sigma > 0.0:
            raise NonPositiveSigmaError(f"sigma must be positive, got {fields[1]}", lineno)
        rows.append(Measurement(value, sigma))
    if not rows:
        raise EmptyCampaignError(f"no measurements in {label or 'campaign file'}")
    return Campaign(tuple(rows), label)


def resolve_input(name) -> Path:
    """A path on disk, or the name of a file bundled in ``signbayes/data``."""
    path = Path(name)
    if path.exists():
        return path
    bundled = resources.files("signbayes") / "data" / path.name
    if bundled.is_file():
        return Path(str(bundled))
    raise FileNotFoundError(f"no such campaign file: {name}")


def parse_campaign(path) -> Campaign:
    path = resolve_input(path)
    return parse_campaign_text(path.read_text(encoding="utf-8"), label=path.name)


def result_document(
    fusion: FusionResult,
    post: TruncatedGaussianPosterior,
    prob_lo: float,
    prob_hi: float,
    units: str = "arbitrary",
    loss: LossKind | None = None,
):
    summary = summarize(post, prob_lo, prob_hi)
    posterior = summary.as_dict()
    posterior["mode"] = post.mode()
    doc = {
        "ybar": fusion.ybar,
        "sigma_ybar": fusion.sigma_ybar,
        "n": fusion.n,
        "chi2": fusion.chi2,
        "posterior": {k: posterior[k] for k in ("mean", "sd", "median", "mode", "q_lo", "q_hi", "prob_lo", "prob_hi")},
        "constraint": {"side": post.constraint.side.value, "bound": post.bound},
        "units": units,
    }
    if loss is not None:
        doc["loss"] = loss.value
        doc["estimate"] = estimate(post, loss).value
    return doc


def _format_table(doc) -> str:
    lines = []

    def emit(key, value):
        if isinstance(value, float):
            value = f"{value:.12g}"
        lines.append(f"{key:<20} {value}")

    for key, value in doc.items():
        if key == "posterior":
            for k, v in value.items():
                emit(f"posterior.{k}", v)
        elif key == "constraint":
            op = "<=" if value["side"] == Side.NON_POSITIVE.value else ">="
            emit("constraint", f"y {op} {value['bound']:g}")
        else:
            emit(key, value)
    return "\n".join(lines) + "\n"


def _render(doc, as_json) -> str:
    if as_json:
        return json.dumps(doc, indent=2) + "\n"
    return _format_table(doc)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(float(v)) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _probs(args):
    if args.quantiles_20_80:
        return PROBS_20_80
    return args.prob_lo, args.prob_hi


def _constraint(args):
    return SignConstraint(Side.parse(args.sign), args.bound)


def cmd_fuse(args) -> str:
    campaign = parse_campaign(args.input)
    fusion = weighted_mean(campaign)
    post = fuse_to_posterior(campaign, _constraint(args))
    lo, hi = _probs(args)
    return _render(result_document(fusion, post, lo, hi, args.units), args.json)


def cmd_estimate(args) -> str:
    m = Measurement(args.value, args.sigma)
    post = make_posterior(m, _constraint(args))
    fusion = weighted_mean(Campaign((m,)))
    lo, hi = _probs(args)
    doc = result_document(fusion, post, lo, hi, args.units, loss=LossKind.parse(args.loss))
    return _render(doc, args.json)


def cmd_posterior(args) -> str:
    if args.input is not None:
        post = fuse_to_posterior(parse_campaign(args.input), _constraint(args))
    else:
        if args.value is None or args.sigma is None:
            raise ValueError("posterior needs --value and --sigma, or --input")
        post = make_posterior(Measurement(args.value, args.sigma), _constraint(args))
    rows = posterior_curve(post, grid=parse_grid(args.grid))
    return _csv(POSTERIOR_COLUMNS, rows)


def cmd_curve(args) -> str:
    rows = estimator_curve(args.kind, args.start, args.stop, args.step)
    return _csv(CURVE_COLUMNS, [(r.y1, r.estimate, r.band_lo, r.band_hi, r.orthodox) for r in rows])


def cmd_coverage(args) -> str:
    rep = coverage(args.true_value, args.sigma, args.n, args.seed, workers=args.workers)
    return _csv(CoverageReport.FIELDS, [tuple(getattr(rep, f) for f in CoverageReport.FIELDS)])


def _add_sign(p):
    p.add_argument("--sign", default="negative", help="known sign of the measurand: negative (default) or positive")
    p.add_argument("--bound", type=float, default=0.0, help="truncation point of the prior (default 0)")


def _add_summary(p):
    p.add_argument("--prob-lo", type=float, default=0.25, help="lower credible probability (default 0.25)")
    p.add_argument("--prob-hi", type=float, default=0.75, help="upper credible probability (default 0.75)")
    p.add_argument(
        "--quantiles-20-80",
        action="store_true",
        help="report the 0.20/0.80 quantiles (overrides --prob-lo/--prob-hi)",
    )
    p.add_argument("--units", default="arbitrary", help="unit label carried into the output")
    p.add_argument("--json", action="store_true", help="print one JSON document instead of a table")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="signbayes",
        description="Bayesian inference of a sign-constrained quantity from Gaussian measurements.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fuse", help="weighted mean of a campaign file and its truncated posterior")
    p.add_argument("--input", required=True, help="CSV file with header value,sigma (or a bundled name, e.g. itcsf1.csv)")
    _add_sign(p)
    _add_summary(p)
    p.set_defaults(func=cmd_fuse)

    p = sub.add_parser("estimate", help="posterior summaries for a single measurement")
    p.add_argument("--value", type=float, required=True)
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--loss", default="squared", help="squared, absolute or zero-one (default squared)")
    _add_sign(p)
    _add_summary(p)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("posterior", help="posterior pdf and cdf on a grid, as CSV")
    p.add_argument("--value", type=float)
    p.add_argument("--sigma", type=float)
    p.add_argument("--input", help="fuse this campaign file instead of using --value/--sigma")
    p.add_argument("--grid", default="-15:0:301", help="lo:hi:n, inclusive endpoints (default -15:0:301)")
    _add_sign(p)
    p.set_defaults(func=cmd_posterior)

    p = sub.add_parser("curve", help="estimator curve with band versus the measured value, as CSV")
    p.add_argument("--kind", choices=("mean", "median"), default="mean")
    p.add_argument("--from", dest="start", type=float, default=-4.0)
    p.add_argument("--to", dest="stop", type=float, default=4.0)
    p.add_argument("--step", type=float, default=0.05)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("coverage", help="frequency of positive results and of intervals above zero, as CSV")
    p.add_argument("--true-value", type=float, default=0.0)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--n", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_coverage)
    return parser


def _attach_grid_value(argv):
    # "--grid -15:0:301" would otherwise be read as an unknown option
    out = []
    it = iter(argv)
    for tok in it:
        if tok == "--grid":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"--grid={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_attach_grid_value(argv))
    try:
        out = args.func(args)
    except (ValueError, OSError, ArithmeticError, ConvergenceError) as exc:
        print(f"signbayes {args.command}: error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
