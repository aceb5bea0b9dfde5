# tests/test_helpers.py

import pandas as pd

from utils.helpers import ensure_dir_exists, save_dataframe_to_csv, save_text


def test_save_dataframe_to_csv(tmp_path):
    target = tmp_path / "out"
    path = save_dataframe_to_csv(pd.DataFrame([{"rank": 2, "size": 9}]), str(target), "layers.csv")
    assert path == str(target / "layers.csv")
    assert pd.read_csv(path).to_dict(orient="records") == [{"rank": 2, "size": 9}]


def test_empty_frame_is_not_written(tmp_path):
    assert save_dataframe_to_csv(pd.DataFrame(), str(tmp_path), "empty.csv") == ""
    assert not (tmp_path / "empty.csv").exists()


def test_save_text_keeps_unicode(tmp_path):
    path = save_text('digraph "∅" {\n}\n', str(tmp_path / "dot"), "g.dot")
    with open(path, encoding="utf-8") as handle:
        assert handle.read() == 'digraph "∅" {\n}\n'


def test_ensure_dir_exists_is_idempotent(tmp_path):
    target = tmp_path / "a" / "b"
    ensure_dir_exists(str(target))
    ensure_dir_exists(str(target))
    assert target.is_dir()
