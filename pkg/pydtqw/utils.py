import json
import math
from enum import Enum

import numpy as np
import pandas as pd
from pandas import json_normalize


def split_complex(name, values):
    """
    Splits a complex scalar or sequence into paired real/imaginary columns.

    Parameters:
        name (str): Base column name.
        values: complex scalar or array-like of complex numbers.

    Returns:
        dict: ``{f"{name}_re": ..., f"{name}_im": ...}``
    """
    arr = np.asarray(values)
    if arr.ndim == 0:
        return {f"{name}_re": float(arr.real), f"{name}_im": float(arr.imag)}
    return {f"{name}_re": arr.real.tolist(), f"{name}_im": arr.imag.tolist()}


def _flatten_complex(record):
    flat = {}
    for key, value in record.items():
        if isinstance(value, complex | np.complexfloating):
            flat.update(split_complex(key, value))
        elif isinstance(value, np.generic):
            flat[key] = value.item()
        else:
            flat[key] = value
    return flat


def convert_to_dataframe(data, logger=None):
    """
    Converts a list of dictionaries, a single dictionary, or a simple list to a pandas DataFrame.
    Complex values become paired ``<name>_re`` / ``<name>_im`` columns; nested dictionaries are flattened.

    Parameters:
        data: dict, list of dicts, or a simple list
        logger: logging.Logger, optional logger for capturing debug/error output

    Returns:
        DataFrame: A pandas DataFrame, or None if conversion fails.
    """
    try:
        if isinstance(data, dict):
            df = json_normalize(_flatten_complex(data))
        elif isinstance(data, list):
            if all(isinstance(item, dict) for item in data):
                records = [_flatten_complex(item) for item in data]
                df = json_normalize(records) if any(any(isinstance(value, dict) for value in item.values()) for item in records) else pd.DataFrame(records)
            elif all(not isinstance(item, dict) for item in data):
                if any(isinstance(item, complex | np.complexfloating) for item in data):
                    df = pd.DataFrame(split_complex("value", data))
                else:
                    df = pd.DataFrame(data, columns=["value"])
            else:
                raise ValueError("Data contains mixed types. Expected either a list of dictionaries or a simple list.")
        else:
            raise ValueError("Data must be a dictionary, list of dictionaries, or a plain list.")

        return df

    except ValueError as e:
        if logger:
            logger.error(f"Data conversion failed: {e}")
        return None


def _header_lines(header_comment):
    if header_comment is None:
        return []
    if isinstance(header_comment, dict):
        return [f"# {key} = {value}" for key, value in header_comment.items()]
    return [f"# {line}" for line in str(header_comment).splitlines()]


def export_to_csv(data, file_name="export.csv", logger=None, header_comment=None):
    """
    Converts data to a DataFrame and exports it to a CSV file.

    Parameters:
        data: dict, list of dicts, or a simple list
        file_name (str): Name of the CSV file to export
        logger: logging.Logger, optional logger for capturing debug/error output
        header_comment: dict or str, optional block written as ``# `` lines before the table
            (units and resolved parameters)

    Returns:
        str or None: The file name on success, None when the data could not be converted.
    """
    df = convert_to_dataframe(data, logger=logger)
    if df is None:
        if logger:
            logger.error(f"Failed to export {file_name} due to invalid input format.")
        return None

    with open(file_name, "w", newline="") as handle:
        for line in _header_lines(header_comment):
            handle.write(line + "\n")
        df.to_csv(handle, index=False, lineterminator="\n")

    if logger:
        logger.info(f"Data successfully exported to {file_name}")
    return file_name


def to_jsonable(value):
    """
    Converts NumPy scalars/arrays, complex numbers and enums into plain JSON values.

    Complex numbers become ``{"re": x, "im": y}``; non-finite floats become None.
    """
    if isinstance(value, dict):
        return {str(key): to_jsonable(item) for key, item in value.items()}
    if isinstance(value, list | tuple):
        return [to_jsonable(item) for item in value]
    if isinstance(value, np.ndarray):
        return [to_jsonable(item) for item in value.tolist()]
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, complex):
        return {"re": to_jsonable(value.real), "im": to_jsonable(value.imag)}
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def export_to_json(data, file_name="export.json", logger=None):
    """
    Exports nested data to a JSON file with sorted keys, so identical inputs give identical files.

    Parameters:
        data: dict or list
        file_name (str): Name of the JSON file to export
        logger: logging.Logger, optional logger

    Returns:
        str: The file name.
    """
    with open(file_name, "w") as handle:
        json.dump(to_jsonable(data), handle, sort_keys=True, indent=2)
        handle.write("\n")

    if logger:
        logger.info(f"Data successfully exported to {file_name}")
    return file_name
