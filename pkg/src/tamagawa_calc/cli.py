"""Command line entry point.

    tamagawa-calc compute --config run.json [--format text|structured] [--verbose]

Config (JSON)::

    {
      "group": {"type": "A", "rank": 1,
                "isogeny": "simply_connected" | "adjoint"
                           | {"quotient_order": k, "variant": "special_orthogonal" | "half_spin"}},
      "curve": {"q": 2, "genus": 0, "l_coeffs": [1]}      # or "point_counts": [N_1, ..., N_g]
      "euler_truncation": 25,
      "oracle": {"enabled": true, "cutoff": 20},
      "base_change_check_max": 5,
      "weyl_bound": 10000000
    }

Exit codes: 0 success, 1 invalid config, 2 invariant violation, 3 resource bound.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Mapping

from . import bundle_oracle
from .curve_zeta import CurveZeta, from_point_counts
from .errors import InvalidInputError, InvariantViolation, ResourceBoundError
from .root_datum import DEFAULT_WEYL_BOUND, Isogeny, RootDatum, make_root_datum
from .tamagawa import DEFAULT_TRUNCATION, MassReport, compute_report, vol_k_exact

EXIT_OK, EXIT_CONFIG, EXIT_INVARIANT, EXIT_RESOURCE = 0, 1, 2, 3

_TOP_KEYS = {"group", "curve", "euler_truncation", "oracle", "base_change_check_max", "weyl_bound"}


def _require_int(value: Any, name: str, minimum: int | None = None) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise InvalidInputError(f"{name} must be an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise InvalidInputError(f"{name} must be >= {minimum}")
    return value


def parse_isogeny(raw: Any) -> Isogeny:
    if isinstance(raw, str):
        return Isogeny(raw)
    if isinstance(raw, Mapping) and "quotient_order" in raw:
        extra = set(raw) - {"quotient_order", "variant"}
        if extra:
            raise InvalidInputError(f"unknown isogeny keys {sorted(extra)}")
        return Isogeny("quotient", _require_int(raw["quotient_order"], "quotient_order", 1), raw.get("variant"))
    raise InvalidInputError(f"cannot parse isogeny {raw!r}")


def parse_curve(raw: Mapping[str, Any]) -> CurveZeta:
    q = _require_int(raw.get("q"), "curve.q", 2)
    g = _require_int(raw.get("genus"), "curve.genus", 0)
    has_l, has_n = "l_coeffs" in raw, "point_counts" in raw
    if has_l == has_n:
        raise InvalidInputError("curve needs exactly one of l_coeffs or point_counts")
    if has_l:
        return CurveZeta(q, g, tuple(_require_int(a, "l_coeffs entry") for a in raw["l_coeffs"]))
    return from_point_counts(q, g, [_require_int(n, "point_counts entry") for n in raw["point_counts"]])


def load_config(path: str | Path) -> dict[str, Any]:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise InvalidInputError(f"config file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InvalidInputError("config must be a JSON object")
    unknown = set(data) - _TOP_KEYS
    if unknown:
        raise InvalidInputError(f"unknown config keys {sorted(unknown)}")
    for key in ("group", "curve"):
        if not isinstance(data.get(key), dict):
            raise InvalidInputError(f"config needs a '{key}' object")
    return data


def oracle_group(datum: RootDatum) -> str | None:
    """SL2 or PGL2 when the datum is of type A_1, else None."""
    if str(datum.dynkin) != "A_1":
        return None
    return "SL2" if datum.pi1_order == 1 else "PGL2"


def run_config(config: Mapping[str, Any], verbose: bool = False) -> MassReport:
    group = config["group"]
    datum = make_root_datum(
        group.get("type"),
        _require_int(group.get("rank"), "group.rank", 1),
        parse_isogeny(group.get("isogeny", "simply_connected")),
        weyl_bound=_require_int(config.get("weyl_bound", DEFAULT_WEYL_BOUND), "weyl_bound", 1),
    )
    curve = parse_curve(config["curve"])
    truncation = _require_int(config.get("euler_truncation", DEFAULT_TRUNCATION), "euler_truncation", 1)
    bc_max = _require_int(config.get("base_change_check_max", 5), "base_change_check_max", 0)

    oracle_cfg = config.get("oracle", {})
    if not isinstance(oracle_cfg, dict):
        raise InvalidInputError("oracle must be an object")
    og = oracle_group(datum)
    enabled = oracle_cfg.get("enabled", og is not None and curve.genus == 0)
    cutoff = _require_int(oracle_cfg.get("cutoff", 20), "oracle.cutoff", 0)
    if enabled and (og is None or curve.genus != 0):
        raise InvalidInputError("the bundle oracle only covers type A_1 over a genus-0 curve")

    report = compute_report(datum, curve, truncation, bc_max, keep_euler_rows=verbose)
    if enabled:
        section = bundle_oracle.oracle_summary(og, curve.q, cutoff, verbose=verbose)
        if section["limit"] != report.siegel_mass:
            raise InvariantViolation(f"oracle mass {section['limit']} != predicted {report.siegel_mass}")
        for comp in section.get("components", {}).values():
            if comp["limit"] != 1 / vol_k_exact(datum, curve):
                raise InvariantViolation("component mass differs from 1/vol(K)")
        report.oracle_section = section
    return report


def _fmt(value: Any) -> Any:
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}" if value.denominator != 1 else str(value.numerator)
    if isinstance(value, float):
        return float(f"{value:.12g}")
    if isinstance(value, bundle_oracle.StratumRecord):
        return {k: _fmt(v) for k, v in vars(value).items()}
    if isinstance(value, dict):
        return {k: _fmt(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_fmt(v) for v in value]
    return value


def report_to_dict(report: MassReport) -> dict[str, Any]:
    out: dict[str, Any] = {
        "group": report.datum_echo,
        "curve": report.curve_echo,
        "tamagawa_number": report.tamagawa_number,
        "component_count": report.component_count,
        "vol_k": report.vol_k,
        "siegel_mass": report.siegel_mass,
        "vol_k_truncated": {"value": report.vol_k_truncated, "degree_bound": report.truncation_bound},
        "assumptions": list(report.assumptions),
        "base_change_checked_up_to": report.base_change_checked_up_to,
    }
    if report.oracle_section is not None:
        oracle = dict(report.oracle_section)
        oracle["gap_float"] = float(oracle["gap"])
        out["oracle"] = oracle
    if report.euler_rows:
        out["euler_factors"] = [
            {"degree": m, "closed_points": b, "log_factor": lf} for m, b, lf in report.euler_rows
        ]
    return _fmt(out)


def render_text(report: MassReport) -> str:
    d = report_to_dict(report)
    g, c = d["group"], d["curve"]
    lines = [
        f"group            {g['type']} {g['isogeny']}",
        f"  dim            {g['dim']}",
        f"  roots          {g['num_roots']}",
        f"  degrees        {' '.join(map(str, g['invariant_degrees']))}",
        f"  |W|            {g['weyl_order']}",
        f"  |pi_1|         {g['pi1_order']}",
        f"curve            q={c['q']} genus={c['genus']} L={c['l_coeffs']}",
        f"tamagawa number  {d['tamagawa_number']}",
        f"components       {d['component_count']}",
        f"vol(K)           {d['vol_k']}",
        f"siegel mass      {d['siegel_mass']}",
        f"vol(K) truncated {d['vol_k_truncated']['value']!r} (degree <= {d['vol_k_truncated']['degree_bound']})",
    ]
    if d["base_change_checked_up_to"]:
        lines.append(f"base change      invariant for m <= {d['base_change_checked_up_to']}")
    lines.append("assumptions")
    lines.extend(f"  - {a}" for a in d["assumptions"])
    if "euler_factors" in d:
        lines.append("euler factors    degree  closed_points  log_factor")
        lines.extend(
            f"                 {r['degree']:>6}  {r['closed_points']:>13}  {r['log_factor']!r}" for r in d["euler_factors"]
        )
    if "oracle" in d:
        o = d["oracle"]
        lines += [
            f"oracle           {o['group']} on P^1 over F_{o['q']}, cutoff {o['cutoff']}",
            f"  partial sum    {o['partial_sum']}",
            f"  limit          {o['limit']}",
            f"  gap            {o['gap_float']!r}",
        ]
        for parity, comp in o.get("components", {}).items():
            lines.append(f"  component {parity:<4} partial {comp['partial_sum']} limit {comp['limit']}")
        for row in o.get("strata", []):
            lines.append(
                f"  stratum n={row['n']:<3} m={row['instability_degree']:<3} codim={row['codim']:<3} "
                f"|Aut|={row['aut_order']} mass={row['mass']}"
            )
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tamagawa-calc", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    compute = sub.add_parser("compute", help="compute tau, vol(K), Siegel mass and oracle checks")
    compute.add_argument("--config", required=True, help="path to a JSON config file")
    compute.add_argument("--format", choices=("text", "structured"), default="text")
    compute.add_argument("--verbose", action="store_true", help="per-degree Euler factors and per-stratum rows")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = run_config(load_config(args.config), verbose=args.verbose)
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except ResourceBoundError as exc:
        print(f"resource bound: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    if args.format == "structured":
        sys.stdout.write(json.dumps(report_to_dict(report), indent=2) + "\n")
    else:
        sys.stdout.write(render_text(report))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
