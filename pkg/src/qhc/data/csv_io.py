"""CSV dataset reading and writing.

Files have a header row naming every column; one column holds 0/1 labels and all
others are real-valued features.
"""

from __future__ import annotations

import logging
import math
import re
from pathlib import Path

import numpy as np
import pandas as pd

from qhc.models.dataset import Dataset
from qhc.utils.exceptions import DataError, ParseError
from qhc.utils.io import atomic_write

logger = logging.getLogger(__name__)

# Header occupies line 1, so data row r sits on line r + 2
_FIRST_DATA_LINE = 2
_PANDAS_LINE = re.compile(r"line (\d+)")


def _parse_cell(text: str) -> float:
    """Correctly rounded float, or NaN for anything that is not a plain decimal number."""
    cell = text.strip()
    if "_" in cell:
        return math.nan
    try:
        return float(cell)
    except ValueError:
        return math.nan


def load_csv(path: str | Path, label_column: str = "label") -> Dataset:
    """Read a labelled CSV file.

    Raises:
        DataError: If the file does not exist.
        ParseError: On a missing label column, rows whose field count differs from the
            header's, non-numeric or non-finite cells, or labels other than 0/1. The
            message names the offending line.
    """
    source = Path(path)
    if not source.is_file():
        raise DataError(f"Data file not found: {source}")

    # header=None: the header line fixes the field count, so longer rows are tokenizer
    # errors instead of an inferred index column
    try:
        raw = pd.read_csv(
            source,
            header=None,
            dtype=str,
            keep_default_na=False,
            na_filter=False,
            skip_blank_lines=False,
        )
    except pd.errors.EmptyDataError as e:
        raise ParseError(f"{source} is empty", line=1) from e
    except pd.errors.ParserError as e:
        match = _PANDAS_LINE.search(str(e))
        raise ParseError(str(e), line=int(match.group(1)) if match else None) from e

    columns = [str(c).strip() for c in raw.iloc[0]]
    frame = raw.iloc[1:].reset_index(drop=True)
    if label_column not in columns:
        raise ParseError(f"no '{label_column}' column in header {columns}", line=1)
    if len(set(columns)) != len(columns):
        raise ParseError("duplicate column names in header", line=1)

    missing = frame.isna().any(axis=1).to_numpy()
    if missing.any():
        row = int(np.argmax(missing))
        raise ParseError(
            f"expected {len(columns)} fields", line=row + _FIRST_DATA_LINE
        )

    numeric = np.array(
        [[_parse_cell(cell) for cell in record] for record in frame.itertuples(index=False)],
        dtype=np.float64,
    ).reshape(len(frame), len(columns))

    bad = ~np.isfinite(numeric)
    if bad.any():
        row, col = (int(v) for v in np.argwhere(bad)[0])
        text = frame.iat[row, col]
        raise ParseError(
            f"column '{columns[col]}': not a finite number: {text!r}",
            line=row + _FIRST_DATA_LINE,
        )

    label_idx = columns.index(label_column)
    labels = numeric[:, label_idx]
    invalid = ~np.isin(labels, (0.0, 1.0))
    if invalid.any():
        row = int(np.argmax(invalid))
        raise ParseError(
            f"label must be 0 or 1, got {frame.iat[row, label_idx]!r}",
            line=row + _FIRST_DATA_LINE,
        )

    feature_idx = [i for i in range(len(columns)) if i != label_idx]
    logger.debug("Loaded %d rows x %d features from %s", len(frame), len(feature_idx), source)
    return Dataset(
        features=numeric[:, feature_idx].reshape(len(frame), len(feature_idx)),
        labels=labels.astype(np.int64),
        feature_names=tuple(columns[i] for i in feature_idx),
        label_column=label_column,
    )


def save_csv(dataset: Dataset, path: str | Path) -> None:
    """Write features then the label column, with enough digits to round-trip floats."""
    frame = pd.DataFrame(dataset.features, columns=list(dataset.feature_names))
    frame[dataset.label_column] = dataset.labels.astype(np.int64)
    with atomic_write(path) as handle:
        frame.to_csv(handle, index=False, float_format="%.17g", lineterminator="\n")
    logger.debug("Wrote %d rows to %s", dataset.n_samples, path)
