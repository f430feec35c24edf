"""Command-line driver: ``tgeom <command> <config.json> [--out PATH]``.

Every run is described by a single JSON config holding a ``space`` spec and
the parameters of the command. Exit codes: 0 success, 1 config or usage
error, 2 negative verdict (not embeddable).
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .collinearity import cone_sample
from .errors import TGeometryError
from .objects import EnvelopeObject, TubeClass, classify_tube, grid_sample
from .reconstruct import build_frame, detect_dimension, menger_embed_test, verify_conditions
from .sigma_core import TOL_REL
from .spaces import PRNG_NAME, MinkowskiSpace, TabulatedSpace, space_from_spec, uniform_points

EXIT_OK, EXIT_ERROR, EXIT_NEGATIVE = 0, 1, 2
COMMANDS = ("reconstruct", "embed-test", "sample-object", "tube-classify", "cone-sample")


class ConfigError(TGeometryError, ValueError):
    pass


def _get(cfg, key, where="config", default=...):
    if key in cfg:
        return cfg[key]
    if default is ...:
        raise ConfigError(f"{where}: missing field '{key}'")
    return default


def _positive(value, name):
    try:
        ok = float(value) > 0
    except (TypeError, ValueError):
        ok = False
    if not ok:
        raise ConfigError(f"config: field '{name}' must be a positive number")
    return float(value)


def _resolution(value, name="resolution"):
    if isinstance(value, bool) or not isinstance(value, int) or value < 2:
        raise ConfigError(f"config: field '{name}' must be an integer >= 2")
    return value


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _sample_points(cfg, space):
    """Explicit ``points``, a seeded ``sample`` block, or all ids of a table."""
    extra = {}
    if "points" in cfg:
        pts = cfg["points"]
    elif "sample" in cfg:
        block = cfg["sample"]
        seed = _get(block, "seed", "sample")
        count = _get(block, "count", "sample")
        if not space.has_coordinates:
            raise ConfigError("sample: random sampling needs a coordinate backend")
        pts = uniform_points(count, space.dim, seed, block.get("low", -1.0), block.get("high", 1.0))
        extra = {"prng": PRNG_NAME, "seed": seed}
    elif isinstance(space, TabulatedSpace):
        pts = np.arange(space.count)
    else:
        raise ConfigError("config: missing field 'points' (or 'sample')")
    return space.as_points(pts), extra


def cmd_reconstruct(cfg, space, out):
    tol = _positive(cfg.get("tol", TOL_REL), "tol")
    n_max = cfg.get("n_max")
    if n_max is not None and (isinstance(n_max, bool) or not isinstance(n_max, int) or n_max < 1):
        raise ConfigError("config: field 'n_max' must be a positive integer")
    pts, extra = _sample_points(cfg, space)
    _, basis = detect_dimension(space, pts, tol, n_max)
    frame = build_frame(space, basis, tol)
    report = verify_conditions(space, pts, frame, tol)
    out(report.to_json(**extra) + "\n")
    return EXIT_OK if report.embeddable else EXIT_NEGATIVE


def cmd_embed_test(cfg, space, out):
    tol = _positive(cfg.get("tol", TOL_REL), "tol")
    n_max = cfg.get("n_max", 8)
    if isinstance(n_max, bool) or not isinstance(n_max, int) or n_max < 1:
        raise ConfigError("config: field 'n_max' must be a positive integer")
    report = menger_embed_test(space, n_max, tol)
    out(report.to_json() + "\n")
    return EXIT_OK if report.embeddable else EXIT_NEGATIVE


def _box(cfg, default=None):
    region = cfg.get("region", default)
    if region is None:
        raise ConfigError("config: missing field 'region'")
    return _get(region, "low", "region"), _get(region, "high", "region")


def cmd_sample_object(cfg, space, out):
    if not space.has_coordinates:
        raise ConfigError("sampling requires coordinates")
    spec = _get(cfg, "object")
    obj = EnvelopeObject(_get(spec, "kind", "object"), tuple(_get(spec, "skeleton", "object")), spec.get("anchor"))
    low, high = _box(cfg)
    res = _resolution(_get(cfg, "resolution"))
    tol = _positive(cfg.get("tol", TOL_REL), "tol")
    out(grid_sample(space, obj, low, high, res, tol).to_csv())
    return EXIT_OK


def cmd_tube_classify(cfg, space, out):
    if not isinstance(space, MinkowskiSpace):
        raise ConfigError("space: tube-classify needs a minkowski backend")
    x, xp = _get(cfg, "x"), _get(cfg, "x_prime")
    cls = classify_tube(space, x, xp)
    if cls is TubeClass.NULL:
        out(_dumps({"class": cls.value}))
        return EXIT_OK
    low, high = _box(cfg, {"low": -2.0, "high": 2.0})
    resolutions = [_resolution(r, "resolutions") for r in cfg.get("resolutions", [41, 81])]
    if len(resolutions) != 2 or resolutions[0] == resolutions[1]:
        raise ConfigError("config: field 'resolutions' must hold two distinct values")
    tol = _positive(cfg.get("tol", TOL_REL), "tol")
    obj = EnvelopeObject("tube", (tuple(x), tuple(xp)))
    counts = [len(grid_sample(space, obj, low, high, r, tol)) for r in resolutions]
    if min(counts) > 0:
        exponent = math.log(counts[1] / counts[0]) / math.log(resolutions[1] / resolutions[0])
    else:
        exponent = None
    result = {
        "class": cls.value,
        "sigma": space.sigma(x, xp),
        "dimension_witness": {"resolutions": resolutions, "member_counts": counts, "exponent": exponent},
    }
    out(_dumps(result))
    return EXIT_OK


def cmd_cone_sample(cfg, space, out, csv_out):
    samples = _resolution(cfg.get("samples", 2000), "samples")
    tol = cfg.get("tol")
    if tol is not None:
        tol = _positive(tol, "tol")
    radius = _positive(cfg.get("radius", 1.0), "radius")
    cone = cone_sample(space, _get(cfg, "p0"), _get(cfg, "p1"), _get(cfg, "q0"), samples, tol, radius)
    summary = cone.summary()
    if csv_out is None:
        summary["directions"] = cone.directions.tolist()
    else:
        csv_out(cone.to_csv())
    out(_dumps(summary))
    return EXIT_OK


def _writer(path):
    def write(text):
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)

    return write


def _stdout(text):
    sys.stdout.write(text)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # usage errors share exit code 1 with config errors; 2 means "negative verdict"
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser():
    p = _Parser(prog="tgeom", description="Geometry from a world function.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("config", help="JSON run configuration")
    p.add_argument("--out", help="write the artifact here instead of stdout")
    return p


def run(command, cfg, out_path=None):
    if not isinstance(cfg, dict):
        raise ConfigError("config: expected a JSON object")
    space = space_from_spec(_get(cfg, "space"))
    if command == "cone-sample":
        # summary always on stdout; the CSV goes to --out when given
        return cmd_cone_sample(cfg, space, _stdout, _writer(out_path) if out_path else None)
    out = _writer(out_path) if out_path else _stdout
    handler = {
        "reconstruct": cmd_reconstruct,
        "embed-test": cmd_embed_test,
        "sample-object": cmd_sample_object,
        "tube-classify": cmd_tube_classify,
    }[command]
    return handler(cfg, space, out)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with open(args.config, encoding="utf-8") as fh:
            cfg = json.load(fh)
        return run(args.command, cfg, args.out)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"tgeom: cannot read config: {exc}", file=sys.stderr)
    except (TGeometryError, ValueError, TypeError) as exc:
        print(f"tgeom: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
