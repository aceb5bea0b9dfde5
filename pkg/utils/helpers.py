# utils/helpers.py

import os
import logging

import pandas as pd


def ensure_dir_exists(directory_path: str):
    """
    Checks if a directory exists, and if not, creates it.

    Args:
        directory_path (str): The path to the directory.
    """
    if not os.path.exists(directory_path):
        os.makedirs(directory_path)
        logging.info(f"Created directory: {directory_path}")


def save_dataframe_to_csv(df: pd.DataFrame, directory: str, filename: str) -> str:
    """
    Saves a report table to a CSV file in the specified directory.

    Args:
        df (pd.DataFrame): The table to save.
        directory (str): The directory where the file will be saved.
        filename (str): The name of the CSV file.

    Returns:
        str: The output path, or "" when the table was empty and nothing was written.
    """
    if df.empty:
        logging.warning(f"DataFrame is empty. Skipping save for '{filename}'.")
        return ""

    ensure_dir_exists(directory)
    output_path = os.path.join(directory, filename)

    try:
        df.to_csv(output_path, index=False)
        logging.info(f"✅ Successfully saved results to '{output_path}'")
    except OSError as e:
        logging.error(f"Failed to save DataFrame to '{output_path}'. Error: {e}")
        raise
    return output_path


def save_text(text: str, directory: str, filename: str) -> str:
    """
    Writes rendered output (DOT, JSON) to a UTF-8 file.

    Args:
        text (str): The content.
        directory (str): The directory where the file will be saved.
        filename (str): The file name.

    Returns:
        str: The output path.
    """
    ensure_dir_exists(directory)
    output_path = os.path.join(directory, filename)
    try:
        with open(output_path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        logging.info(f"✅ Successfully saved output to '{output_path}'")
    except OSError as e:
        logging.error(f"Failed to write '{output_path}'. Error: {e}")
        raise
    return output_path
