"""Line-oriented text formats for algebras, structures and frames.

A bundle file holds any number of blocks; ``#`` starts a comment anywhere.

    algebra NAME
    size N
    meet
    <N rows of N integers>     (same for join, mult, impl)
    end

    structure NAME over ALGNAME
    forall
    <N integers>
    exists
    <N integers>
    end

    frame NAME over ALGNAME
    worlds M
    pi
    <M integers>
    end

Builtin spec strings build algebras directly: ``mv:N``, ``godel:N``,
``bool:K``, ``osum:mv2+mv3``, ``prod:godel2xgodel3``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .config import DEFAULT_SIZE_CAP
from .core import (
    FiniteBLAlgebra,
    bl_algebra,
    boolean_algebra,
    direct_product,
    godel_chain,
    mv_chain,
    ordinal_sum,
)
from .epistemic import EpistemicStructure, epistemic_structure
from .errors import MalformedInputError
from .frames import PossibilisticFrame, possibilistic_frame

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_.-]*$")


@dataclass
class RawAlgebra:
    name: str
    n: int
    meet: list
    join: list
    mult: list
    impl: list

    def tables(self):
        return self.meet, self.join, self.mult, self.impl


@dataclass
class RawStructure:
    name: str
    over: str
    forall: list
    exists: list


@dataclass
class RawFrame:
    name: str
    over: str
    worlds: int
    pi: list


@dataclass
class Bundle:
    """Parsed but unvalidated file contents, in declaration order."""

    algebras: dict[str, RawAlgebra] = field(default_factory=dict)
    structures: dict[str, RawStructure] = field(default_factory=dict)
    frames: dict[str, RawFrame] = field(default_factory=dict)
    _validated: dict[str, FiniteBLAlgebra] = field(default_factory=dict)

    def algebra(self, name: str) -> FiniteBLAlgebra:
        """Validate (once) and return the named algebra."""
        if name not in self.algebras:
            raise MalformedInputError(f"no algebra named {name!r} in bundle")
        if name not in self._validated:
            raw = self.algebras[name]
            self._validated[name] = bl_algebra(raw.name, *raw.tables())
        return self._validated[name]

    def structure(self, name: str) -> EpistemicStructure:
        raw = self.raw_structure(name)
        return epistemic_structure(
            self.algebra(raw.over), raw.forall, raw.exists, name=raw.name
        )

    def raw_structure(self, name: str) -> RawStructure:
        if name not in self.structures:
            raise MalformedInputError(f"no structure named {name!r} in bundle")
        return self.structures[name]

    def frame(self, name: str) -> PossibilisticFrame:
        if name not in self.frames:
            raise MalformedInputError(f"no frame named {name!r} in bundle")
        raw = self.frames[name]
        if len(raw.pi) != raw.worlds:
            raise MalformedInputError(
                f"frame {name!r}: declared {raw.worlds} worlds, got {len(raw.pi)} values"
            )
        return possibilistic_frame(self.algebra(raw.over), raw.pi, name=raw.name)


class _Reader:
    def __init__(self, text: str, source: str):
        self.source = source
        self.lines = text.splitlines()
        self.pos = 0

    def error(self, message: str, lineno: Optional[int] = None):
        where = self.pos if lineno is None else lineno
        raise MalformedInputError(f"{self.source}:{where}: {message}")

    def next_tokens(self) -> Optional[list[str]]:
        while self.pos < len(self.lines):
            line = self.lines[self.pos].split("#", 1)[0].strip()
            self.pos += 1
            if line:
                return line.split()
        return None

    def take_ints(self, count: int, what: str) -> list[int]:
        out: list[int] = []
        while len(out) < count:
            tokens = self.next_tokens()
            if tokens is None:
                self.error(f"unexpected end of file reading {what}")
            for tok in tokens:
                try:
                    out.append(int(tok))
                except ValueError:
                    self.error(f"bad integer {tok!r} in {what}")
        if len(out) > count:
            self.error(f"too many values for {what} (expected {count})")
        return out

    def take_matrix(self, n: int, what: str) -> list[list[int]]:
        rows = []
        for _ in range(n):
            tokens = self.next_tokens()
            if tokens is None:
                self.error(f"unexpected end of file reading {what}")
            if len(tokens) != n:
                self.error(f"{what} row must have {n} entries, got {len(tokens)}")
            try:
                rows.append([int(tok) for tok in tokens])
            except ValueError:
                self.error(f"bad integer in {what} row")
        return rows

    def expect_keyword(self, keyword: str):
        tokens = self.next_tokens()
        if tokens is None or tokens != [keyword]:
            self.error(f"expected {keyword!r}" + (f", got {tokens}" if tokens else ""))


def _check_name(reader: _Reader, name: str):
    if not _NAME_RE.match(name):
        reader.error(f"bad name {name!r}")


def parse_bundle(text: str, source: str = "<string>") -> Bundle:
    bundle = Bundle()
    reader = _Reader(text, source)
    while True:
        tokens = reader.next_tokens()
        if tokens is None:
            return bundle
        head = tokens[0]
        if head == "algebra":
            if len(tokens) != 2:
                reader.error("expected: algebra NAME")
            name = tokens[1]
            _check_name(reader, name)
            size_tokens = reader.next_tokens()
            if not size_tokens or size_tokens[0] != "size" or len(size_tokens) != 2:
                reader.error("expected: size N")
            try:
                n = int(size_tokens[1])
            except ValueError:
                reader.error(f"bad size {size_tokens[1]!r}")
            if n < 1:
                reader.error("size must be positive")
            matrices = {}
            for section in ("meet", "join", "mult", "impl"):
                reader.expect_keyword(section)
                matrices[section] = reader.take_matrix(n, section)
            reader.expect_keyword("end")
            if name in bundle.algebras:
                reader.error(f"duplicate algebra {name!r}")
            bundle.algebras[name] = RawAlgebra(name, n, **matrices)
        elif head == "structure":
            if len(tokens) != 4 or tokens[2] != "over":
                reader.error("expected: structure NAME over ALGNAME")
            name, over = tokens[1], tokens[3]
            _check_name(reader, name)
            if over not in bundle.algebras:
                reader.error(f"structure {name!r} references unknown algebra {over!r}")
            n = bundle.algebras[over].n
            reader.expect_keyword("forall")
            forall = reader.take_ints(n, "forall")
            reader.expect_keyword("exists")
            exists = reader.take_ints(n, "exists")
            reader.expect_keyword("end")
            if name in bundle.structures:
                reader.error(f"duplicate structure {name!r}")
            bundle.structures[name] = RawStructure(name, over, forall, exists)
        elif head == "frame":
            if len(tokens) != 4 or tokens[2] != "over":
                reader.error("expected: frame NAME over ALGNAME")
            name, over = tokens[1], tokens[3]
            _check_name(reader, name)
            if over not in bundle.algebras:
                reader.error(f"frame {name!r} references unknown algebra {over!r}")
            worlds_tokens = reader.next_tokens()
            if not worlds_tokens or worlds_tokens[0] != "worlds" or len(worlds_tokens) != 2:
                reader.error("expected: worlds M")
            try:
                worlds = int(worlds_tokens[1])
            except ValueError:
                reader.error(f"bad world count {worlds_tokens[1]!r}")
            if worlds < 1:
                reader.error("worlds must be positive")
            reader.expect_keyword("pi")
            pi = reader.take_ints(worlds, "pi")
            reader.expect_keyword("end")
            if name in bundle.frames:
                reader.error(f"duplicate frame {name!r}")
            bundle.frames[name] = RawFrame(name, over, worlds, pi)
        else:
            reader.error(f"unknown block keyword {head!r}")


def load_bundle(path) -> Bundle:
    with open(path, encoding="utf-8") as fh:
        return parse_bundle(fh.read(), source=str(path))


# ---------------------------------------------------------------------------
# writers


def format_algebra(alg: FiniteBLAlgebra) -> str:
    lines = [f"algebra {alg.name}", f"size {alg.n}"]
    for section, table in (
        ("meet", alg.meet),
        ("join", alg.join),
        ("mult", alg.mult),
        ("impl", alg.impl),
    ):
        lines.append(section)
        for row in np.asarray(table):
            lines.append(" ".join(str(int(v)) for v in row))
    lines.append("end")
    return "\n".join(lines) + "\n"


def format_structure(structure: EpistemicStructure, over: Optional[str] = None) -> str:
    lines = [
        f"structure {structure.name or 'structure'} over {over or structure.algebra.name}",
        "forall",
        " ".join(str(int(v)) for v in structure.forall),
        "exists",
        " ".join(str(int(v)) for v in structure.exists),
        "end",
    ]
    return "\n".join(lines) + "\n"


def format_frame(frame: PossibilisticFrame, over: Optional[str] = None) -> str:
    lines = [
        f"frame {frame.name or 'frame'} over {over or frame.base.name}",
        f"worlds {frame.worlds}",
        "pi",
        " ".join(str(int(v)) for v in frame.pi),
        "end",
    ]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# builtin algebra specs

_COMPONENT_RE = re.compile(r"(mv|godel|bool)(\d+)$")


def _component(token: str, size_cap: int) -> FiniteBLAlgebra:
    match = _COMPONENT_RE.match(token)
    if not match:
        raise MalformedInputError(f"bad builtin component {token!r} (want e.g. mv3)")
    kind, arg = match.group(1), int(match.group(2))
    if kind == "mv":
        return mv_chain(arg)
    if kind == "godel":
        return godel_chain(arg)
    return boolean_algebra(arg, size_cap)


def builtin(spec: str, size_cap: int = DEFAULT_SIZE_CAP) -> FiniteBLAlgebra:
    """Resolve a builtin spec string (``mv:4``, ``osum:mv2+mv3``, ...)."""
    kind, sep, arg = spec.partition(":")
    if not sep:
        raise MalformedInputError(f"bad builtin spec {spec!r} (want KIND:ARG)")
    if kind in ("mv", "godel", "bool"):
        if not arg.isdigit():
            raise MalformedInputError(f"bad builtin size {arg!r}")
        return _component(kind + arg, size_cap)
    if kind == "osum":
        parts = [p for p in arg.split("+") if p]
        if not parts:
            raise MalformedInputError("osum needs at least one component")
        return ordinal_sum([_component(p, size_cap) for p in parts], size_cap)
    if kind == "prod":
        parts = [p for p in arg.split("x") if p]
        if len(parts) < 2:
            raise MalformedInputError("prod needs at least two components")
        result = _component(parts[0], size_cap)
        for part in parts[1:]:
            result = direct_product(result, _component(part, size_cap), size_cap)
        return result
    raise MalformedInputError(f"unknown builtin kind {kind!r}")
