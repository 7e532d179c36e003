"""Command-line entry point: ``automizer-lab {check,automizer,verify,catalog}``.

Exit codes: 0 on success (property values never matter), 1 when a verifier
fails, 2 on bad input or any library error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import harness
from .catalog import CATALOG_ENV, by_name, catalog_path, default_catalog, load_catalog, save_catalog
from .config import Caps, using_caps
from .errors import CatalogIoError, GroupError
from .group import Group, Subgroup, cycle_string, group_from_json, parse_permutation
from .predicates import PREDICATES, has_large_automizer, has_small_automizer, property_report
from .subgroups import automizer, generated_subgroup

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


@dataclass
class Config:
    caps: Caps = field(default_factory=Caps)
    catalog: Path | None = None
    fmt: str = "table"
    only: list[str] = field(default_factory=list)


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError("caps must be positive")
    return v


def _verifier_ids(text: str) -> list[str]:
    ids = [t.strip() for t in text.split(",") if t.strip()]
    bad = [t for t in ids if t not in harness.KNOWN_IDS]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown verifier ids: {', '.join(bad)} (known: {', '.join(harness.KNOWN_IDS)})")
    return ids


def _property_names(text: str) -> list[str]:
    names = [t.strip() for t in text.split(",") if t.strip()]
    bad = [t for t in names if t not in PREDICATES]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown properties: {', '.join(bad)}")
    return names


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--catalog", type=Path, help="catalog JSON file (default: $AUTOMIZER_LAB_CATALOG or ./catalog.json)")
    p.add_argument("--format", dest="fmt", choices=("json", "table"), default="table")
    p.add_argument("--cap-closure", type=_positive)
    p.add_argument("--cap-lattice", type=_positive)
    p.add_argument("--cap-iso", type=_positive)
    p.add_argument("--cap-aut", type=_positive)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="automizer-lab", description="Finite-group predicates and theorem checks on small groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="property report for one group")
    p.add_argument("source", help="group JSON file, '-' for stdin, or a catalog entry name")
    p.add_argument("--properties", type=_property_names, help="comma-separated subset, e.g. pnc,cp")

    p = sub.add_parser("automizer", parents=[common], help="N_G(H)/C_G(H) for a subgroup given by generators")
    p.add_argument("source")
    p.add_argument("--gens", nargs="+", required=True, help="element indices, labels, or cycles for permutation groups")

    p = sub.add_parser("verify", parents=[common], help="run the theorem verifiers over the catalog")
    p.add_argument("--only", type=_verifier_ids, default=[], help="comma-separated verifier ids")

    p = sub.add_parser("catalog", parents=[common], help="list, build or describe catalog entries")
    p.add_argument("action", choices=("list", "build", "describe"))
    p.add_argument("name", nargs="?")
    return parser


def config_from_args(args: argparse.Namespace) -> Config:
    overrides = {k: getattr(args, f"cap_{k}") for k in ("closure", "lattice", "iso", "aut") if getattr(args, f"cap_{k}", None)}
    return Config(
        caps=Caps(**overrides),
        catalog=args.catalog,
        fmt=args.fmt,
        only=getattr(args, "only", []) or [],
    )


def load_entries(cfg: Config):
    """Explicit or environment paths must exist; otherwise fall back to the built-in catalog."""
    path = catalog_path(cfg.catalog)
    if path.exists():
        return load_catalog(path)
    if cfg.catalog is not None or os.environ.get(CATALOG_ENV):
        raise CatalogIoError(f"catalog file {path} not found")
    return default_catalog()


def load_source(source: str, cfg: Config) -> tuple[Group, int | None]:
    """Return the group and, for permutation input, its degree."""
    if source == "-":
        data = json.load(sys.stdin)
    elif Path(source).is_file():
        try:
            data = json.loads(Path(source).read_text())
        except json.JSONDecodeError as exc:
            raise GroupError(f"{source}: invalid JSON: {exc}") from None
    else:
        entries = by_name(load_entries(cfg))
        if source not in entries:
            raise GroupError(f"{source!r} is neither a file nor a catalog entry")
        return entries[source].group, None
    degree = int(data["degree"]) if isinstance(data, dict) and "degree" in data else None
    g = group_from_json(data)
    if not g.name:
        g = g.relabel("stdin" if source == "-" else Path(source).stem)
    return g, degree


def resolve_element(g: Group, token: str, degree: int | None) -> int:
    if token in g.labels:
        return g.labels.index(token)
    if degree is not None and token.strip().startswith(("(", "[")):
        label = cycle_string(parse_permutation(token, degree))
        if label in g.labels:
            return g.labels.index(label)
    if token.isdigit() and int(token) < g.order:
        return int(token)
    raise GroupError(f"{token!r} is not an element of {g.name}")


def _emit(cfg: Config, payload: dict, table_lines: list[str]) -> None:
    if cfg.fmt == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print("\n".join(table_lines))


def cmd_check(args, cfg: Config) -> int:
    g, _ = load_source(args.source, cfg)
    rep = property_report(g, args.properties)
    lines = [f"{rep.group} (order {rep.order})"]
    for name, v in rep.values().items():
        detail = rep.properties[name].detail if name in rep.properties else rep.errors[name]
        lines.append(f"  {name:<22} {json.dumps(v):<6} {detail}")
    _emit(cfg, rep.to_json(), lines)
    return EXIT_OK


def _maybe(fn, *a):
    try:
        return fn(*a)
    except GroupError as exc:
        return f"unavailable: {exc}"


def cmd_automizer(args, cfg: Config) -> int:
    g, degree = load_source(args.source, cfg)
    elems = [resolve_element(g, t, degree) for t in args.gens]
    h: Subgroup = generated_subgroup(g, elems)
    a = automizer(g, h)
    out = {
        "group": g.name,
        "subgroup_order": h.order,
        "normalizer_order": a.normalizer.order,
        "centralizer_order": a.centralizer.order,
        "automizer_order": a.order,
        "small": _maybe(has_small_automizer, g, h),
        "large": _maybe(has_large_automizer, g, h),
    }
    _emit(cfg, out, [f"{k:<18} {v}" for k, v in out.items()])
    return EXIT_OK


def cmd_verify(args, cfg: Config) -> int:
    entries = load_entries(cfg)
    t0 = time.perf_counter()
    rep = harness.run_all(entries, cfg.only or None)
    if cfg.fmt == "json":
        print(rep.dumps())
    else:
        print(rep.table())
        vac = [r.id for r in rep.results if r.status == "vacuous"]
        if vac:
            print(f"vacuous: {', '.join(vac)}")
    print(f"verify: {len(rep.results)} results in {time.perf_counter() - t0:.1f}s", file=sys.stderr)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_catalog(args, cfg: Config) -> int:
    if args.action == "build":
        path = catalog_path(cfg.catalog)
        entries = default_catalog()
        save_catalog(entries, path)
        print(f"wrote {len(entries)} entries to {path}")
        return EXIT_OK
    entries = load_entries(cfg)
    if args.action == "list":
        rows = [{"name": e.name, "order": e.group.order, "tags": sorted(e.tags)} for e in entries]
        _emit(cfg, {"entries": rows}, [f"{r['name']:<12} {r['order']:>4}  {' '.join(r['tags'])}" for r in rows])
        return EXIT_OK
    if not args.name:
        raise GroupError("catalog describe needs an entry name")
    found = by_name(entries).get(args.name)
    if found is None:
        raise GroupError(f"no catalog entry named {args.name!r}")
    g = found.group
    rep = property_report(g)
    lines = [f"{found.name}: order {g.order}, construction {json.dumps(found.construction, sort_keys=True)}"]
    if g.order <= 24:
        width = max(len(s) for s in g.labels)
        lines += ["  " + " ".join(g.labels[int(x)].rjust(width) for x in row) for row in g.table]
    lines += [f"  {k:<22} {json.dumps(v)}" for k, v in rep.values().items()]
    payload = {"entry": found.to_json(), "report": rep.to_json()}
    _emit(cfg, payload, lines)
    return EXIT_OK


COMMANDS = {"check": cmd_check, "automizer": cmd_automizer, "verify": cmd_verify, "catalog": cmd_catalog}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = config_from_args(args)
    try:
        with using_caps(**{k: getattr(cfg.caps, k) for k in ("closure", "lattice", "iso", "aut")}):
            return COMMANDS[args.command](args, cfg)
    except (GroupError, KeyError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
