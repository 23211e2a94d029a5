"""Out-of-process classifiers over a line-based TCP protocol.

The client ships symbolic feature values, never local integer ids, so a
server process with its own vocabulary can answer without coordination.
Requests and replies are UTF-8, LF-terminated::

    -> HELLO 1                  <- OK 1
    -> CLASSIFY v1,v2,...,vF    <- CATEGORY label
                                <- RANKED l1,l2,...
                                <- ERROR message
    -> QUIT

Values and labels are escaped: backslash doubles itself, commas become
``\\,`` and newlines the two characters ``\\n``.  A missing value (NULL)
is the literal ``__NULL__``.

Training for a remote classifier means exporting the instances to the
same comma-separated format, one line per instance with the class label
last; the server loads that file out of band.
"""

from __future__ import annotations

import socket
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .classifiers.base import Classifier, ModelContext
from .features import NULL_ID, FeatureModel, Instance

__all__ = [
    "ConnectionLost",
    "LengthMismatch",
    "NULL_VALUE",
    "ProtocolError",
    "RemoteClassifier",
    "RemoteClassifierConfig",
    "RemoteError",
    "Timeout",
    "UnknownLabel",
    "escape_value",
    "export_training_file",
    "instance_symbols",
    "split_escaped",
    "unescape_value",
]

NULL_VALUE = "__NULL__"
PROTOCOL_VERSION = "1"
TRAINING_FILE_NAME = "training.csv"


class RemoteError(Exception):
    pass


class ProtocolError(RemoteError):
    pass


class Timeout(RemoteError):
    pass


class ConnectionLost(RemoteError):
    pass


class UnknownLabel(RemoteError):
    pass


class LengthMismatch(ValueError):
    pass


def escape_value(value: str) -> str:
    return value.replace("\\", "\\\\").replace(",", "\\,").replace("\n", "\\n")


def unescape_value(value: str) -> str:
    out: list[str] = []
    i = 0
    while i < len(value):
        ch = value[i]
        if ch != "\\":
            out.append(ch)
            i += 1
            continue
        if i + 1 >= len(value):
            raise ProtocolError("dangling backslash in escaped value")
        follower = value[i + 1]
        if follower == "\\":
            out.append("\\")
        elif follower == ",":
            out.append(",")
        elif follower == "n":
            out.append("\n")
        else:
            raise ProtocolError(f"bad escape sequence \\{follower}")
        i += 2
    return "".join(out)


def split_escaped(line: str) -> list[str]:
    """Split on unescaped commas and unescape each field."""
    fields: list[str] = []
    current: list[str] = []
    i = 0
    while i < len(line):
        ch = line[i]
        if ch == "\\":
            if i + 1 >= len(line):
                raise ProtocolError("dangling backslash in escaped value")
            current.append(line[i : i + 2])
            i += 2
        elif ch == ",":
            fields.append("".join(current))
            current = []
            i += 1
        else:
            current.append(ch)
            i += 1
    fields.append("".join(current))
    return [unescape_value(f) for f in fields]


def instance_symbols(instance: Instance, model: FeatureModel) -> list[str]:
    """Symbolic values of a training instance (NULL as the sentinel literal)."""
    symbols = []
    for template, value in zip(model.templates, instance.values):
        if value == NULL_ID:
            symbols.append(NULL_VALUE)
        else:
            symbols.append(model.table_for(template).symbol_of(value))
    return symbols


def export_training_file(instances: Sequence[Instance], ctx: ModelContext) -> bytes:
    """One CSV line per instance: escaped values, then the class label."""
    n_templates = len(ctx.feature_model.templates)
    lines = []
    for instance in instances:
        if len(instance.values) != n_templates:
            raise LengthMismatch(
                f"instance has {len(instance.values)} values, model has {n_templates} templates"
            )
        fields = instance_symbols(instance, ctx.feature_model)
        fields.append(ctx.label_table.symbol_of(instance.label))
        lines.append(",".join(escape_value(f) for f in fields) + "\n")
    return "".join(lines).encode("utf-8")


@dataclass
class RemoteClassifierConfig:
    host: str
    port: int
    timeout: float = 30.0
    retries: int = 3

    def __post_init__(self):
        if not 1 <= self.port <= 65535:
            raise ValueError(f"port {self.port} out of range")
        if self.timeout <= 0:
            raise ValueError("timeout must be positive")


class _Connection:
    """One socket plus its line reader; HELLO handshake on connect."""

    def __init__(self, config: RemoteClassifierConfig):
        self.socket = socket.create_connection(
            (config.host, config.port), timeout=config.timeout
        )
        self.reader = self.socket.makefile("rb")
        self.send(f"HELLO {PROTOCOL_VERSION}")
        reply = self.read_line()
        if reply != f"OK {PROTOCOL_VERSION}":
            self.close()
            raise ProtocolError(f"handshake failed: {reply!r}")

    def send(self, line: str) -> None:
        self.socket.sendall(line.encode("utf-8") + b"\n")

    def read_line(self) -> str:
        raw = self.reader.readline()
        if not raw:
            raise ConnectionLost("server closed the connection")
        if not raw.endswith(b"\n"):
            raise ProtocolError("unterminated reply line")
        return raw[:-1].decode("utf-8")

    def close(self) -> None:
        try:
            self.reader.close()
            self.socket.close()
        except OSError:
            pass


class RemoteClassifier(Classifier):
    kind = "remote"
    wants_symbols = True

    def __init__(self, config: RemoteClassifierConfig):
        self.config = config
        self._ctx: ModelContext | None = None
        self._connection: _Connection | None = None
        self._instances: list[Instance] = []

    def train(self, instances: Sequence[Instance], ctx: ModelContext) -> None:
        """Record context; the training file itself is written by save()."""
        self._ctx = ctx
        self._instances = list(instances)

    def bind(self, ctx: ModelContext) -> None:
        self._ctx = ctx

    def predict(self, values: Sequence[int]) -> list[tuple[int, float]]:
        assert self._ctx is not None, "remote classifier is unbound"
        symbols: list[str | None] = []
        for template, value in zip(self._ctx.feature_model.templates, values):
            if value == NULL_ID:
                symbols.append(None)
            else:
                symbols.append(self._ctx.feature_model.table_for(template).symbol_of(value))
        return self.predict_symbols(symbols)

    def predict_symbols(self, symbols: Sequence[str | None]) -> list[tuple[int, float]]:
        payload = ",".join(
            escape_value(NULL_VALUE if s is None else s) for s in symbols
        )
        reply = self._request(f"CLASSIFY {payload}")
        verb, _, body = reply.partition(" ")
        if verb == "CATEGORY":
            labels = [unescape_value(body)]
        elif verb == "RANKED":
            labels = split_escaped(body)
        elif verb == "ERROR":
            raise ProtocolError(f"server error: {body}")
        else:
            raise ProtocolError(f"unrecognized reply {reply!r}")
        assert self._ctx is not None
        ranked = []
        for position, label in enumerate(labels):
            if label not in self._ctx.label_table:
                raise UnknownLabel(f"server label {label!r} not in the training label set")
            ranked.append((self._ctx.label_table.id_of(label), float(len(labels) - position)))
        return ranked

    def _request(self, line: str) -> str:
        last_error: RemoteError | None = None
        for _ in range(self.config.retries + 1):
            try:
                if self._connection is None:
                    self._connection = _Connection(self.config)
                self._connection.send(line)
                return self._connection.read_line()
            except socket.timeout:
                self._drop_connection()
                last_error = Timeout(f"no reply within {self.config.timeout}s")
            except (ConnectionLost, OSError) as exc:
                self._drop_connection()
                last_error = exc if isinstance(exc, ConnectionLost) else ConnectionLost(str(exc))
                time.sleep(0.05)
        assert last_error is not None
        raise last_error

    def _drop_connection(self) -> None:
        if self._connection is not None:
            self._connection.close()
            self._connection = None

    def close(self) -> None:
        if self._connection is not None:
            try:
                self._connection.send("QUIT")
            except OSError:
                pass
            self._drop_connection()

    def hyperparameters(self) -> dict[str, str]:
        return {
            "host": self.config.host,
            "port": str(self.config.port),
            "timeout": repr(self.config.timeout),
            "retries": str(self.config.retries),
        }

    def save(self, path: Path) -> None:
        """classifier.txt is the exported training file for the server."""
        assert self._ctx is not None
        path.write_bytes(export_training_file(self._instances, self._ctx))

    @classmethod
    def load(cls, path: Path, ctx: ModelContext, hyper: dict[str, str]) -> "RemoteClassifier":
        config = RemoteClassifierConfig(
            host=hyper["host"],
            port=int(hyper["port"]),
            timeout=float(hyper.get("timeout", "30.0")),
            retries=int(hyper.get("retries", "3")),
        )
        model = cls(config)
        model.bind(ctx)
        return model
