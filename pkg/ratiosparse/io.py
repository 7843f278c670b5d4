"""
File formats.

Arrays are stored in a little binary container::

    magic    8 bytes   b"RSPARSE1"
    ndim     uint32    little-endian
    dims     ndim x uint64, little-endian
    payload  prod(dims) x float64, little-endian, row-major

and, for inspection, as CSV. Images are written as 16-bit PGM and masks as
PBM.
"""
import logging

import numpy as np

from .exceptions import ConfigError, ParameterError

logger = logging.getLogger(__name__)

MAGIC = b"RSPARSE1"


def write_array(path, a):
    a = np.asarray(a, dtype="<f8")
    with open(path, "wb") as f:
        f.write(MAGIC)
        f.write(np.uint32(a.ndim).astype("<u4").tobytes())
        f.write(np.asarray(a.shape, dtype="<u8").tobytes())
        f.write(a.tobytes(order="C"))


def read_array(path):
    with open(path, "rb") as f:
        buf = f.read()

    if buf[:len(MAGIC)] != MAGIC:
        raise ParameterError(f"{path} is not an array file (bad magic)!")
    offset = len(MAGIC)
    ndim = int(np.frombuffer(buf, dtype="<u4", count=1, offset=offset)[0])
    offset += 4
    shape = tuple(int(d) for d in np.frombuffer(buf, dtype="<u8", count=ndim,
                                                offset=offset))
    offset += 8 * ndim

    size = int(np.prod(shape, dtype="int64"))
    if len(buf) - offset != 8 * size:
        raise ParameterError(f"{path} is truncated or corrupt: expected "
                             f"{8 * size} payload bytes, got "
                             f"{len(buf) - offset}!")

    a = np.frombuffer(buf, dtype="<f8", count=size, offset=offset)
    return a.reshape(shape).astype("float64")


def write_csv_array(path, a):
    """One row per matrix row (one value per line for vectors)."""
    np.savetxt(path, np.asarray(a, dtype="float64"), fmt="%.17g",
               delimiter=",")


def read_csv_array(path):
    return np.loadtxt(path, delimiter=",", ndmin=1)


def write_pgm(path, u):
    """Image in ``[0, 1]`` (clipped) as a 16-bit binary PGM."""
    u = np.asarray(u, dtype="float64")
    if u.ndim != 2:
        raise ParameterError("image must be two-dimensional!")
    n, m = u.shape
    samples = np.rint(np.clip(u, 0., 1.) * 65535.).astype(">u2")
    with open(path, "wb") as f:
        f.write(f"P5\n{m} {n}\n65535\n".encode("ascii"))
        f.write(samples.tobytes(order="C"))


def read_pgm(path):
    with open(path, "rb") as f:
        buf = f.read()
    magic, width, height, maxval, offset = _parse_netpbm_header(buf, 4)
    if magic != b"P5" or maxval != 65535:
        raise ParameterError(f"{path} is not a 16-bit binary PGM!")
    samples = np.frombuffer(buf, dtype=">u2", count=width * height,
                            offset=offset)
    return samples.reshape(height, width) / 65535.


def write_pbm(path, keep):
    """Boolean grid as a binary PBM (kept entries are black)."""
    keep = np.asarray(keep, dtype=bool)
    if keep.ndim != 2:
        raise ParameterError("mask must be two-dimensional!")
    n, m = keep.shape
    with open(path, "wb") as f:
        f.write(f"P4\n{m} {n}\n".encode("ascii"))
        f.write(np.packbits(keep, axis=1).tobytes(order="C"))


def read_pbm(path):
    with open(path, "rb") as f:
        buf = f.read()
    magic, width, height, _, offset = _parse_netpbm_header(buf, 3)
    if magic != b"P4":
        raise ParameterError(f"{path} is not a binary PBM!")
    row_bytes = (width + 7) // 8
    packed = np.frombuffer(buf, dtype="uint8", count=row_bytes * height,
                           offset=offset).reshape(height, row_bytes)
    return np.unpackbits(packed, axis=1, count=width).astype(bool)


def _parse_netpbm_header(buf, num_fields):
    # fields are whitespace separated and followed by a single whitespace
    fields = []
    offset = 0
    while len(fields) < num_fields:
        while buf[offset:offset + 1].isspace():
            offset += 1
        start = offset
        while offset < len(buf) and not buf[offset:offset + 1].isspace():
            offset += 1
        fields.append(buf[start:offset])
    offset += 1

    magic, *numbers = fields
    try:
        numbers = [int(x) for x in numbers]
    except ValueError:
        raise ParameterError("malformed netpbm header!") from None
    width, height = numbers[:2]
    maxval = numbers[2] if len(numbers) > 2 else None
    return magic, width, height, maxval, offset


def write_iteration_log(path, report, columns):
    """
    Per-iteration histories of a `SolveReport` as CSV with an ``iter``
    column, ``columns`` mapping output names to history names.
    """
    frame = report.history_frame()
    frame = frame.rename(columns={v: k for k, v in columns.items()})
    frame[list(columns)].to_csv(path, float_format="%.17g")


def read_config(path):
    """
    Parse a flat ``key=value`` file. Blank lines and ``#`` comments are
    ignored; keys may use dashes or underscores.

    Returns
    -------
    dict
        Values are left as strings.
    """
    config = {}
    try:
        with open(path) as f:
            lines = f.readlines()
    except OSError as e:
        raise ConfigError(f"cannot read config file {path}: {e}") from e

    for lineno, line in enumerate(lines, start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if not sep or not key:
            raise ConfigError(f"{path}:{lineno}: expected `key=value`, "
                              f"got {line!r}")
        if key in config:
            logger.warning(f"{path}:{lineno}: duplicate key {key!r} "
                           "overrides earlier value")
        config[key] = value.strip()

    return config
