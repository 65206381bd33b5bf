"""Command line front end.

    ergopart COMMAND --config FILE [--point X]... [--depth K] [--format text|machine]

Exit status: 0 all checks pass, 1 some check failed, 2 parse error,
3 semantic error.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional, Sequence

import click

from . import oracles, scenarios
from .config import Config, ConfigError, ConfigSemanticError, ConfigSyntaxError, parse_config
from .chains import PosetError, check_monotone
from .inverse_limit import (
    InverseSystemError,
    build_system,
    check_inverse_system,
    enumerate_threads,
    is_thread,
    theorem_thread,
)
from .partitions import Partition, PartitionError, psi
from .report import EXIT_PARSE_ERROR, EXIT_SEMANTIC_ERROR, Report
from .sets import render_set
from .state_space import TableMap
from .visits import InvalidSelection, chain_block_intersection, delta

COMMANDS = ("validate", "delta", "intersect", "threads", "build-thread", "verify", "examples")


class CommandError(ConfigSemanticError):
    """The config lacks something the command needs."""


def _label(lab):
    return lab if isinstance(lab, (int, str)) else str(lab)


def _block_list(partition: Partition, ids: Sequence[int]) -> list:
    return [{"id": i, "set": render_set(partition.blocks[i])} for i in ids]


def _thread_rows(chain, thread) -> list:
    return [[_label(lab), b, render_set(chain[lab].blocks[b])] for lab, b in thread.choices]


def _points(cfg: Config) -> list[int]:
    if not cfg.points:
        raise CommandError("no query points: use --point or a 'points' statement")
    return cfg.points


def _need_map(cfg: Config):
    if cfg.transformation is None:
        raise CommandError("no map declared")
    return cfg.transformation


def _need_chain(cfg: Config):
    if cfg.chain is None:
        raise CommandError("this command needs a chain or poset")
    return cfg.chain


def _targets(cfg: Config) -> list[tuple]:
    targets = list(cfg.partitions.items())
    if cfg.chain is not None:
        named = {id(p) for p in cfg.partitions.values()}
        targets += [(f"chain[{lab}]", cfg.chain[lab]) for lab in cfg.chain.index if id(cfg.chain[lab]) not in named]
    if not targets:
        raise CommandError("no partitions declared")
    return targets


def _cmd_validate(cfg: Config, report: Report) -> None:
    for name, part in cfg.partitions.items():
        report.results.append({"kind": "partition", "partition": name, "blocks": _block_list(part, range(len(part)))})
        report.add_check(f"partition {name} is a finite partition", True)
    if cfg.chain is not None:
        mono = check_monotone(cfg.chain)
        detail = {} if mono.passed else {"violation": [_label(v) for v in mono.violation]}
        report.add_check("chain is monotone under refinement", mono.passed, **detail)
        if not cfg.chain.index.omega:
            witness = cfg.chain.index.directedness_witness()
            report.results.append({"kind": "index poset", "directed": witness is None})
            if cfg.cofinal is not None:
                report.add_check("index poset is directed", witness is None)


def _cmd_delta(cfg: Config, report: Report) -> None:
    m = _need_map(cfg)
    for x in _points(cfg):
        for name, part in _targets(cfg):
            v = delta(part, m, x)
            report.results.append({"kind": "visit set", "point": x, "partition": name,
                                   "blocks": _block_list(part, v.block_ids), "m": v.m})
            report.add_check(f"visit set of x={x} in {name} is nonempty", v.m >= 1)


def _cmd_intersect(cfg: Config, report: Report) -> None:
    m, chain = _need_map(cfg), _need_chain(cfg)
    if not chain.index.is_total():
        raise CommandError("intersect needs a totally ordered chain")
    for x in _points(cfg):
        r = chain_block_intersection(chain, m, x, depth=cfg.depth)
        report.results.append({
            "kind": "chain intersection", "point": x,
            "chosen": [[_label(lab), b] for lab, b in zip(r.labels, r.chosen)],
            "minima": list(r.minima), "intersection": render_set(r.intersection), "verdict": r.verdict,
        })


def _cmd_threads(cfg: Config, report: Report) -> None:
    m, chain = _need_map(cfg), _need_chain(cfg)
    for x in _points(cfg):
        system = build_system(chain, m, x)
        threads = enumerate_threads(system)
        report.results.append({"kind": "threads", "point": x, "count": len(threads),
                               "threads": [_thread_rows(chain, t) for t in threads]})
        report.add_check(f"inverse limit at x={x} is nonempty", bool(threads))


def _cmd_build_thread(cfg: Config, report: Report) -> None:
    m, chain = _need_map(cfg), _need_chain(cfg)
    for x in _points(cfg):
        system = build_system(chain, m, x)
        try:
            cofinal_chain, thread = theorem_thread(system, cfg.cofinal)
        except PosetError as exc:
            raise CommandError(str(exc)) from exc
        res = {"kind": "constructed thread", "point": x,
               "cofinal_chain": [_label(c) for c in cofinal_chain], "thread": _thread_rows(chain, thread)}
        if thread.certificate:
            res["certificate"] = thread.certificate
        report.results.append(res)
        report.add_check(f"constructed thread at x={x} is compatible", is_thread(system, thread))
        report.add_check(f"constructed thread at x={x} is among the enumerated threads",
                         thread in enumerate_threads(system))


def _oracle_delta(part: Partition, m, x: int) -> tuple:
    if isinstance(m, TableMap):
        return oracles.finite_delta(part, m, x)
    return oracles.sampling_delta(part, m, x)


def _cmd_verify(cfg: Config, report: Report) -> None:
    m = _need_map(cfg)
    points = _points(cfg)
    for x in points:
        for name, part in _targets(cfg):
            v = delta(part, m, x)
            report.add_check(f"visit set of x={x} in {name} is nonempty", v.m >= 1)
            oracle = _oracle_delta(part, m, x)
            report.add_check(f"visit set of x={x} in {name} matches simulation", v.block_ids == oracle,
                             expected=list(oracle), actual=list(v.block_ids))
    if cfg.chain is None:
        return
    chain = cfg.chain
    mono = check_monotone(chain)
    report.add_check("chain is monotone under refinement", mono.passed)
    if not mono.passed:
        return
    for x in points:
        levels = {lab: delta(chain[lab], m, x) for lab in chain.index}
        lemma = all(
            set(psi(chain[hi], chain[lo])(a) for a in levels[hi]) <= set(levels[lo])
            for lo, hi in chain.index.comparable_pairs()
        )
        report.add_check(f"projections of visited blocks are visited (x={x})", lemma)
        system = build_system(chain, m, x)
        laws = check_inverse_system(system)
        report.add_check(f"identity law (x={x})", laws.identity.passed)
        report.add_check(f"composition law (x={x})", laws.composition.passed)
        report.add_check(f"restricted projections are onto (x={x})", laws.surjectivity.passed)
        threads = enumerate_threads(system)
        if chain.index.is_directed():
            report.add_check(f"inverse limit is nonempty (x={x})", bool(threads))
            _, thread = theorem_thread(system, cfg.cofinal)
            report.add_check(f"constructed thread is enumerated (x={x})", thread in threads)
        else:
            report.results.append({"kind": "note", "point": x,
                                   "note": f"index poset is not directed; {len(threads)} thread(s)"})


def _cmd_examples(depth: Optional[int], report: Report) -> None:
    for check in scenarios.run_all(depth if depth is not None else 10):
        report.add_check(check.name, check.passed, expected=check.expected, actual=check.actual)


_HANDLERS = {
    "validate": _cmd_validate,
    "delta": _cmd_delta,
    "intersect": _cmd_intersect,
    "threads": _cmd_threads,
    "build-thread": _cmd_build_thread,
    "verify": _cmd_verify,
}


def run(command: str, config_text: Optional[str] = None, points: Sequence[int] = (),
        depth: Optional[int] = None) -> Report:
    """Execute ``command`` on the given config text and return its report."""
    report = Report(command, {"points": list(points), "depth": depth})
    if command not in COMMANDS:
        report.error = {"kind": "usage", "message": f"unknown command {command!r}"}
        report.status = EXIT_PARSE_ERROR
        return report
    if command == "examples":
        _cmd_examples(depth, report)
        return report.finalize()
    if config_text is None:
        report.error = {"kind": "usage", "message": "--config is required"}
        report.status = EXIT_PARSE_ERROR
        return report
    try:
        cfg = parse_config(config_text)
        if points:
            cfg.points = list(points)
            for x in cfg.points:
                if not cfg.space.contains(x):
                    raise CommandError(f"point {x} outside the space")
        if depth is not None:
            cfg.depth = depth
        _HANDLERS[command](cfg, report)
    except ConfigSyntaxError as exc:
        report.error = {"kind": "syntax", "message": exc.message, "line": exc.line, "column": exc.column}
        report.status = EXIT_PARSE_ERROR
        return report
    except ConfigError as exc:
        report.error = {"kind": "semantic", "message": exc.message, "line": exc.line, "column": exc.column}
        report.status = EXIT_SEMANTIC_ERROR
        return report
    except (PartitionError, PosetError, InverseSystemError, InvalidSelection) as exc:
        report.error = {"kind": "semantic", "message": str(exc), "line": 0, "column": 0}
        report.status = EXIT_SEMANTIC_ERROR
        return report
    return report.finalize()


def _emit(report: Report, fmt: str) -> None:
    if fmt == "machine":
        click.echo(report.to_machine())
    else:
        click.echo(report.to_text())


def _common(f):
    f = click.option("--format", "fmt", type=click.Choice(["text", "machine"]), default=None,
                     help="Output format (default: the config's, else text).")(f)
    f = click.option("--depth", type=click.IntRange(min=0), default=None, help="Truncation depth K.")(f)
    f = click.option("--point", "points", type=click.IntRange(min=0), multiple=True, help="Query point (repeatable).")(f)
    f = click.option("--config", "config_path", type=click.Path(dir_okay=False, path_type=Path), default=None,
                     help="Config file.")(f)
    return f


@click.group()
def main():
    """Visit sets, refinement chains and inverse-limit threads of self-maps."""


def _make_command(name: str):
    @main.command(name)
    @_common
    def command(config_path, points, depth, fmt):
        text = None
        if config_path is not None:
            try:
                text = config_path.read_text(encoding="utf-8")
            except OSError as exc:
                report = Report(name, error={"kind": "io", "message": str(exc)}, status=EXIT_PARSE_ERROR)
                _emit(report, fmt or "text")
                raise SystemExit(report.status)
        report = run(name, text, points, depth)
        if fmt is None:
            fmt = _config_format(text)
        _emit(report, fmt)
        raise SystemExit(report.status)

    command.__doc__ = _DOCS[name]
    command.help = _DOCS[name]
    return command


def _config_format(text: Optional[str]) -> str:
    if text is None:
        return "text"
    try:
        return parse_config(text).format
    except ConfigError:
        return "text"


_DOCS = {
    "validate": "Check partitions and chain monotonicity.",
    "delta": "Blocks visited infinitely often, per query point.",
    "intersect": "Intersect visited blocks along a chain and report the trend.",
    "threads": "Enumerate every thread of the inverse limit.",
    "build-thread": "Construct one thread via a cofinal chain and extend it.",
    "verify": "Run every invariant check on the configured instance.",
    "examples": "Run the built-in worked scenarios against their known answers.",
}

for _name in COMMANDS:
    _make_command(_name)


if __name__ == "__main__":
    main()
