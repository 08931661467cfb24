"""
command routers

a router groups the subcommands of one top-level command the way an api
router groups endpoints under a prefix; main installs every router into one
argparse tree
"""
import argparse
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple, Type, TypeVar

from pydantic import BaseModel, ValidationError

from distort_lab.config import RunConfig, Settings
from distort_lab.models.metric_space import MetricSpace
from distort_lab.models.ordinal import Ordinal, parse_ordinal
from distort_lab.schemas.metric_space import MetricSpaceSchema
from distort_lab.utils.exceptions import UsageError
from distort_lab.utils.io import read_json

Schema = TypeVar("Schema", bound=BaseModel)
Argument = Tuple[Tuple[str, ...], Dict[str, Any]]


@dataclass
class CommandContext:
    settings: Settings
    run: RunConfig


@dataclass
class CommandOutput:
    """what a command hands back: a json payload, its text rendering, and an exit code"""
    payload: Dict[str, Any]
    text: str
    exit_code: int = 0
    csv: Optional[str] = None


Handler = Callable[[argparse.Namespace, CommandContext], CommandOutput]


@dataclass
class _Command:
    name: str
    help: str
    arguments: List[Argument]
    handler: Handler


def arg(*flags: str, **kwargs) -> Argument:
    return flags, kwargs


@dataclass
class CommandRouter:
    prefix: str
    help: str
    commands: List[_Command] = field(default_factory=list)

    def command(self, name: str, help: str, *arguments: Argument):
        def decorator(func: Handler) -> Handler:
            self.commands.append(_Command(name, help, list(arguments), func))
            return func
        return decorator

    def install(self, subparsers, parents: List[argparse.ArgumentParser], parser_class) -> None:
        group = subparsers.add_parser(self.prefix, help=self.help)
        actions = group.add_subparsers(dest="action", metavar="ACTION", parser_class=parser_class)
        actions.required = True
        for command in self.commands:
            parser = actions.add_parser(command.name, help=command.help, parents=parents)
            for flags, kwargs in command.arguments:
                parser.add_argument(*flags, **kwargs)
            parser.set_defaults(handler=command.handler, command=f"{self.prefix} {command.name}")


# argument types

def int_list(text: str) -> Tuple[int, ...]:
    """comma separated integers; the empty string is the empty list"""
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}")


def count(text: str) -> int:
    """positive integer, also accepting forms like 1e6"""
    try:
        value = float(text) if any(c in text for c in ".eE") else int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if value != int(value) or value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return int(value)


def dims_range(text: str) -> List[int]:
    """accepts 2, 1..4 or 1,3"""
    if ".." in text:
        lo, hi = text.split("..", 1)
        start, stop = count(lo), count(hi)
        if stop < start:
            raise argparse.ArgumentTypeError(f"empty range {text!r}")
        return list(range(start, stop + 1))
    return [count(part) for part in text.split(",")]


def ordinal(text: str) -> Ordinal:
    return parse_ordinal(text)


def label_pairs(text: str) -> List[Tuple[str, str]]:
    """accepts 1,2 or 1,2;a1_1,a1_2"""
    pairs = []
    for chunk in text.split(";"):
        parts = [p.strip() for p in chunk.split(",")]
        if len(parts) != 2 or not all(parts):
            raise argparse.ArgumentTypeError(f"expected label pairs like 1,2 got {chunk!r}")
        pairs.append((parts[0], parts[1]))
    return pairs


# payloads

def parse_payload(schema: Type[Schema], payload: Any, what: str) -> Schema:
    try:
        return schema.model_validate(payload)
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(p) for p in first["loc"])
        raise UsageError(f"invalid {what}: {where}: {first['msg']}") from exc


def load_space(path: str) -> MetricSpace:
    return parse_payload(MetricSpaceSchema, read_json(path), "metric space").to_domain()
