"""Matrix file loading for the command-line tools.

Two formats are accepted:

* JSON: a self-describing object
  ``{"kind": "force"|"transfer", "n": 2, "tau": 1.0, "label": "...",
  "matrix": [[...], ...]}`` where only "matrix" is mandatory, and
* plain text: the dimension 2n on the first line followed by 2n
  whitespace-separated rows; blank lines and ``#`` comments are ignored.

Numbers are decimal doubles.  The text format carries no metadata; the
consuming command decides the kind.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = ["MatrixFile", "MatrixFileError", "load_matrix", "save_matrix_json"]

KINDS = ("force", "transfer")


class MatrixFileError(Exception):
    """Unreadable or malformed matrix file."""


@dataclass(frozen=True)
class MatrixFile:
    """A parsed matrix with its metadata."""

    matrix: np.ndarray
    kind: str | None = None
    tau: float | None = None
    label: str | None = None

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def n(self) -> int:
        return self.dim // 2


def _validate(matrix: np.ndarray, where: str) -> np.ndarray:
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise MatrixFileError(f"{where}: matrix must be square, got "
                              f"shape {matrix.shape}")
    if matrix.shape[0] % 2 or matrix.shape[0] == 0:
        raise MatrixFileError(f"{where}: dimension must be even and "
                              f"positive, got {matrix.shape[0]}")
    if not np.all(np.isfinite(matrix)):
        raise MatrixFileError(f"{where}: non-finite entries")
    return matrix


def _load_json(text: str, where: str) -> MatrixFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFileError(
            f"{where}: line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(doc, dict) or "matrix" not in doc:
        raise MatrixFileError(f"{where}: expected an object with a "
                              "'matrix' field")
    try:
        matrix = np.array(doc["matrix"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise MatrixFileError(f"{where}: bad matrix entries: {exc}") from exc
    matrix = _validate(matrix, where)
    kind = doc.get("kind")
    if kind is not None and kind not in KINDS:
        raise MatrixFileError(f"{where}: kind must be one of {KINDS}, "
                              f"got {kind!r}")
    n = doc.get("n")
    if n is not None and 2 * int(n) != matrix.shape[0]:
        raise MatrixFileError(f"{where}: declared n={n} but matrix is "
                              f"{matrix.shape[0]}x{matrix.shape[0]}")
    tau = doc.get("tau")
    return MatrixFile(matrix=matrix, kind=kind,
                      tau=None if tau is None else float(tau),
                      label=doc.get("label"))


def _load_text(text: str, where: str) -> MatrixFile:
    rows = []
    dim = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if dim is None:
            try:
                dim = int(line)
            except ValueError as exc:
                raise MatrixFileError(
                    f"{where}: line {lineno}: expected the dimension, "
                    f"got {line!r}") from exc
            continue
        try:
            row = [float(tok) for tok in line.split()]
        except ValueError as exc:
            raise MatrixFileError(
                f"{where}: line {lineno}: {exc}") from exc
        if len(row) != dim:
            raise MatrixFileError(
                f"{where}: line {lineno}: expected {dim} entries, "
                f"got {len(row)}")
        rows.append(row)
    if dim is None:
        raise MatrixFileError(f"{where}: empty file")
    if len(rows) != dim:
        raise MatrixFileError(f"{where}: expected {dim} rows, got {len(rows)}")
    return MatrixFile(matrix=_validate(np.array(rows), where))


def load_matrix(path) -> MatrixFile:
    """Load a matrix file, auto-detecting JSON versus plain text."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise MatrixFileError(f"{path}: {exc.strerror or exc}") from exc
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return _load_json(text, str(path))
    return _load_text(text, str(path))


def save_matrix_json(path, matrix: np.ndarray, kind: str | None = None,
                     tau: float | None = None,
                     label: str | None = None) -> None:
    """Write a matrix as a self-describing JSON document."""
    matrix = np.asarray(matrix, dtype=float)
    doc = {"matrix": matrix.tolist(), "n": matrix.shape[0] // 2}
    if kind is not None:
        doc["kind"] = kind
    if tau is not None:
        doc["tau"] = tau
    if label is not None:
        doc["label"] = label
    Path(path).write_text(json.dumps(doc, indent=1) + "\n")
