"""Compression-complexity baselines.

The built-in ``zip-family`` backend is zlib at level 9. ``7z-family``,
``zpaq-family`` and any ``custom`` backends shell out to external tools
through command templates with ``{input}`` and ``{output}`` placeholders.
A backend that is missing or fails is reported as skipped, never as a
measurement.
"""

from __future__ import annotations

import os
import shlex
import shutil
import subprocess
import tempfile
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from .measures import MeasureReport, measure, relative_information
from .pattern import Pattern

ZIP = "zip-family"
SEVENZIP = "7z-family"
ZPAQ = "zpaq-family"
BUILTIN_LEVEL = 9
DEFAULT_TIMEOUT = 60.0
# below this many input bits compressed sizes are mostly container overhead
TINY_INPUT_BITS = 1024

ENV_OVERRIDES = {SEVENZIP: "INFOMETER_7Z_CMD", ZPAQ: "INFOMETER_ZPAQ_CMD"}

_DEFAULT_TEMPLATES = {
    SEVENZIP: (("7z", "7zz", "7za"), "{exe} a -t7z -mx=9 -bd -y {output} {input}"),
    ZPAQ: (("zpaq",), "{exe} a {output} {input} -m5"),
}


class BackendUnavailable(RuntimeError):
    """An external compressor is missing or failed; carries the transcript."""

    def __init__(self, backend: str, message: str, transcript: str = ""):
        super().__init__(f"{backend}: {message}")
        self.backend = backend
        self.reason = message
        self.transcript = transcript


@dataclass(frozen=True)
class CompressionResult:
    backend: str
    input_bits: int
    output_bits: int
    ratio: float
    container_overhead_included: bool
    raw_bits: Optional[int] = None
    version: str = ""


@dataclass(frozen=True)
class Backend:
    id: str
    template: Optional[str] = None
    timeout: float = DEFAULT_TIMEOUT
    version_template: Optional[str] = None

    @property
    def builtin(self) -> bool:
        return self.id == ZIP

    def available(self) -> bool:
        if self.builtin:
            return True
        if not self.template:
            return False
        argv = shlex.split(self.template)
        return bool(argv) and shutil.which(argv[0]) is not None

    def version(self) -> str:
        if self.builtin:
            return f"zlib {zlib.ZLIB_RUNTIME_VERSION} level {BUILTIN_LEVEL}"
        if self.version_template:
            argv = shlex.split(self.version_template)
        elif self.template:
            argv = shlex.split(self.template)[:1]
        else:
            return "unknown"
        try:
            proc = subprocess.run(argv, capture_output=True, text=True, timeout=self.timeout,
                                  stdin=subprocess.DEVNULL)
        except (OSError, subprocess.TimeoutExpired):
            return "unknown"
        for line in (proc.stdout + proc.stderr).splitlines():
            if line.strip():
                return line.strip()
        return "unknown"

    def compress(self, data: bytes) -> CompressionResult:
        if self.builtin:
            return _deflate(data)
        return _external(self, data)


def _deflate(data: bytes) -> CompressionResult:
    wrapped = zlib.compress(data, BUILTIN_LEVEL)
    raw = zlib.compressobj(BUILTIN_LEVEL, zlib.DEFLATED, -15)
    raw_len = len(raw.compress(data) + raw.flush())
    in_bits = 8 * len(data)
    out_bits = 8 * len(wrapped)
    return CompressionResult(ZIP, in_bits, out_bits, out_bits / in_bits if in_bits else 0.0,
                             True, 8 * raw_len, Backend(ZIP).version())


def _external(backend: Backend, data: bytes) -> CompressionResult:
    if not backend.template:
        raise BackendUnavailable(backend.id, "no command configured")
    if not backend.available():
        raise BackendUnavailable(backend.id, f"command not found: {shlex.split(backend.template)[0]}")
    with tempfile.TemporaryDirectory(prefix="infometer-") as tmp:
        src = Path(tmp, "input.bin")
        dst = Path(tmp, "output.bin")
        src.write_bytes(data)
        cmd = backend.template.format(input=shlex.quote(str(src)), output=shlex.quote(str(dst)))
        argv = shlex.split(cmd)
        try:
            proc = subprocess.run(argv, capture_output=True, timeout=backend.timeout,
                                  stdin=subprocess.DEVNULL)
        except subprocess.TimeoutExpired as e:
            raise BackendUnavailable(backend.id, f"timed out after {backend.timeout:g} s",
                                     _transcript(cmd, e.stdout, e.stderr)) from e
        except OSError as e:
            raise BackendUnavailable(backend.id, str(e), cmd) from e
        transcript = _transcript(cmd, proc.stdout, proc.stderr)
        if proc.returncode != 0:
            raise BackendUnavailable(backend.id, f"exit status {proc.returncode}", transcript)
        if "{output}" in backend.template:
            if not dst.exists():
                raise BackendUnavailable(backend.id, "no output file produced", transcript)
            size = dst.stat().st_size
        else:
            size = len(proc.stdout)
    in_bits = 8 * len(data)
    out_bits = 8 * size
    return CompressionResult(backend.id, in_bits, out_bits, out_bits / in_bits if in_bits else 0.0,
                             True, None, backend.version())


def _transcript(cmd: str, out, err) -> str:
    def text(x):
        if x is None:
            return ""
        return x.decode("utf-8", "replace") if isinstance(x, bytes) else x
    return f"$ {cmd}\n{text(out)}{text(err)}"


def compression_complexity(data: bytes, backend: Union[Backend, str] = ZIP) -> CompressionResult:
    if isinstance(backend, str):
        backend = resolve([backend])[0]
    return backend.compress(bytes(data))


def load_config(path: Union[str, os.PathLike, None]) -> dict[str, str]:
    """Read ``key = value`` lines; ``#`` starts a comment.

    Recognised keys: ``7z.cmd``, ``zpaq.cmd``, ``custom.<name>.cmd``,
    ``<backend>.version_cmd`` and ``timeout``.
    """
    if path is None:
        return {}
    out = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key = value")
        key, value = line.split("=", 1)
        out[key.strip()] = value.strip()
    return out


_CONFIG_PREFIX = {SEVENZIP: "7z", ZPAQ: "zpaq"}


def resolve(ids: Iterable[str], config: Optional[dict] = None,
            env: Optional[dict] = None) -> list[Backend]:
    """Turn backend ids into configured backends.

    External templates come from the environment first, then the config,
    then the first default executable found on ``PATH``.
    """
    config = config or {}
    env = os.environ if env is None else env
    timeout = float(config.get("timeout", DEFAULT_TIMEOUT))
    out = []
    for id in ids:
        if id in (ZIP, "zip", "deflate"):
            out.append(Backend(ZIP, timeout=timeout))
            continue
        if id in ("7z", "zpaq"):
            id = SEVENZIP if id == "7z" else ZPAQ
        if id in (SEVENZIP, ZPAQ):
            prefix = _CONFIG_PREFIX[id]
            template = env.get(ENV_OVERRIDES[id]) or config.get(f"{prefix}.cmd")
            if not template:
                names, default = _DEFAULT_TEMPLATES[id]
                exe = next((n for n in names if shutil.which(n)), names[0])
                template = default.format(exe=exe, input="{input}", output="{output}")
            out.append(Backend(id, template, timeout, config.get(f"{prefix}.version_cmd")))
            continue
        name = id[len("custom:"):] if id.startswith("custom:") else id
        template = config.get(f"custom.{name}.cmd")
        if template is None:
            raise ValueError(f"unknown backend {id!r}")
        out.append(Backend(f"custom:{name}", template, timeout,
                           config.get(f"custom.{name}.version_cmd")))
    return out


@dataclass(frozen=True)
class Skip:
    backend: str
    reason: str
    transcript: str = ""


@dataclass
class Comparison:
    report: MeasureReport
    results: list[CompressionResult] = field(default_factory=list)
    skipped: list[Skip] = field(default_factory=list)
    input_bytes: int = 0

    @property
    def overhead_dominated(self) -> bool:
        return 8 * self.input_bytes < TINY_INPUT_BITS

    def absolute_rows(self) -> list[tuple[str, float]]:
        rows = [("i_max", self.report.i_max), ("i_s", self.report.i_shannon),
                ("i_ssm", self.report.i_ssm)]
        rows += [(r.backend, float(r.output_bits)) for r in self.results]
        return rows

    def relative_rows(self) -> list[tuple[str, float]]:
        i_max = self.report.i_max
        return [(name, relative_information(bits, i_max)) for name, bits in self.absolute_rows()
                if name != "i_max"]


def compare(p: Pattern, backends: Sequence[Backend], data: Optional[bytes] = None,
            report: Optional[MeasureReport] = None, workers: int = 4) -> Comparison:
    """Measure ``p`` and compress ``data`` (default: the joined symbols) with each backend."""
    if data is None:
        data = b"".join(p)
    report = report or measure(p)
    cmp = Comparison(report, input_bytes=len(data))

    def run(backend: Backend):
        try:
            return backend.compress(data)
        except BackendUnavailable as e:
            return Skip(backend.id, e.reason, e.transcript)

    with ThreadPoolExecutor(max(1, min(workers, len(backends) or 1))) as pool:
        outcomes = list(pool.map(run, backends))
    for outcome in sorted(outcomes, key=lambda o: o.backend):
        if isinstance(outcome, Skip):
            cmp.skipped.append(outcome)
        else:
            cmp.results.append(outcome)
    return cmp
