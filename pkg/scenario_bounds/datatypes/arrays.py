from typing import Annotated, Any

import numpy as np

from pydantic import BeforeValidator, PlainSerializer, WithJsonSchema


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


def as_vector(value: Any) -> np.ndarray:  # noqa: ANN401
    """
    Coerce a sequence of numbers into a read-only 1-D float array.

    Args:
        value (Any): A list, tuple or array of numbers.

    Returns:
        np.ndarray: A read-only copy with ``ndim == 1``.
    """
    array = np.array(value, dtype=float)
    if array.ndim == 0:
        array = array.reshape(1)
    if array.ndim != 1:
        msg = f"expected a vector, got an array of shape {array.shape}"
        raise ValueError(msg)
    return _frozen(array)


def as_matrix(value: Any) -> np.ndarray:  # noqa: ANN401
    """
    Coerce nested sequences into a read-only 2-D float array.

    An empty sequence becomes a ``(0, 0)`` matrix; callers reshape it once the column count is known.

    Args:
        value (Any): Rows of numbers.

    Returns:
        np.ndarray: A read-only copy with ``ndim == 2``.
    """
    array = np.array(value, dtype=float)
    if array.size == 0:
        array = array.reshape(0, array.shape[1] if array.ndim == 2 else 0)  # noqa: PLR2004
    if array.ndim != 2:  # noqa: PLR2004
        msg = f"expected a matrix, got an array of shape {array.shape}"
        raise ValueError(msg)
    return _frozen(array)


def _to_list(array: np.ndarray) -> list[Any]:
    return array.tolist()


Vector = Annotated[
    np.ndarray,
    BeforeValidator(as_vector),
    PlainSerializer(_to_list, return_type=list),
    WithJsonSchema({"type": "array", "items": {"type": "number"}}),
]

Matrix = Annotated[
    np.ndarray,
    BeforeValidator(as_matrix),
    PlainSerializer(_to_list, return_type=list),
    WithJsonSchema({"type": "array", "items": {"type": "array", "items": {"type": "number"}}}),
]
