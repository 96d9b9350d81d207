import pathlib

import pytest

from tree_partitions.config import SettingsMgr

DATA_DIR = pathlib.Path(__file__).parent / "data_files"


@pytest.fixture
def data_dir():
    return DATA_DIR


@pytest.fixture(autouse=True)
def default_settings():
    SettingsMgr.reset()
    yield
    SettingsMgr.reset()
