#!/usr/bin/env python

# Copyright 2022 Canonical Ltd.
# See LICENSE file for licensing details.

"""Main execution for the cgwk command line."""

import argparse
import json
import logging
import os
import pathlib
import sys
import time
import typing
from functools import partial

from src import config, run, types_
from src.exceptions import InputError


class ArgumentParser(argparse.ArgumentParser):
    """Argument parser exiting with the usage exit code."""

    def error(self, message: str) -> typing.NoReturn:
        """Print the usage and exit.

        Args:
            message: The error.
        """
        self.print_usage(sys.stderr)
        self.exit(types_.ExitCode.USAGE, f"{self.prog}: error: {message}\n")


def _parser() -> ArgumentParser:
    """Build the command line parser.

    Returns:
        The parser.
    """
    parser = ArgumentParser(
        prog="cgwk", description="K-theory of CGW categories on finite instances."
    )
    parser.add_argument("command", choices=[command.value for command in types_.Command])
    parser.add_argument(
        "--instance",
        choices=[name.value for name in types_.InstanceName],
        default=types_.InstanceName.FINSET.value,
    )
    parser.add_argument("--file", help="matroid file, or span file for matroid-amalgam")
    parser.add_argument("--max-size", type=int, default=3, help="largest object size")
    parser.add_argument("--dim", type=int, default=1, help="simplex dimension for enumerate")
    parser.add_argument(
        "--scheme",
        choices=[scheme.value for scheme in types_.Scheme],
        default=types_.Scheme.BASELINE.value,
    )
    parser.add_argument(
        "--query", action="append", default=[], help="element query such as '+l_tau -e_2'"
    )
    parser.add_argument("--seed", type=int, default=0, help="sampling seed")
    parser.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    parser.add_argument("--mutant", help="broken finite set variant")
    parser.add_argument("--config", help="YAML or JSON configuration, or an earlier report")
    parser.add_argument("--out", help="report path, standard output if omitted")
    return parser


def _run_config(args: argparse.Namespace) -> types_.RunConfig:
    """Build the configuration of the parsed arguments.

    Args:
        args: The parsed arguments.

    Returns:
        The configuration, read from --config if given.
    """
    if args.config is not None:
        return config.load(pathlib.Path(args.config))
    return config.from_mapping(
        {
            "command": args.command,
            "instance": args.instance,
            "file": args.file,
            "budget": {"max_object_size": args.max_size, "rng_seed": args.seed},
            "dim": args.dim,
            "scheme": args.scheme,
            "queries": args.query,
            "workers": args.workers,
            "mutant": args.mutant,
            "out": args.out,
        },
        "command line",
    )


def main(argv: list[str] | None = None) -> int:
    """Execute the command line.

    Args:
        argv: The arguments, sys.argv if None.

    Returns:
        The exit code.
    """
    logging.basicConfig(level=logging.INFO)

    # Read input
    args = _parser().parse_args(argv)
    try:
        run_config = _run_config(args)
    except InputError as exc:
        logging.error("invalid configuration: %s", exc)
        return types_.ExitCode.USAGE

    # Execute command
    start = time.perf_counter()
    report = run(run_config)
    logging.info("%s finished in %.3fs", report.command, time.perf_counter() - start)

    # Write output
    compact_json = partial(json.dumps, separators=(",", ":"))
    output = compact_json(
        {
            "command": report.command,
            "config": report.config,
            "result": report.result,
            "version": report.version,
        }
    )
    if run_config.out is None:
        print(output)
    else:
        pathlib.Path(run_config.out).write_text(f"{output}\n", encoding="utf-8")
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
