import os

import pytest

from textnet import create_config
from textnet.constants import *
from textnet.exceptions import InvalidConfig

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def _write(directory, text, name="run.ini"):
    path = os.path.join(str(directory), name)
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)
    return path


def test_defaults():
    """
    Without a file or overrides every key takes its default value.
    """

    config = create_config()
    assert config.lists == ()
    assert config.limit == 20000
    assert config.f_hub == 0.05
    assert config.f_intermediary == 0.15
    assert config.strip_quotes is True
    assert config.direction == INFORMATION
    assert config.lexicon == DEFAULT_MANIFEST
    assert os.path.isabs(config.out)


def test_config_file():
    """
    Values come from the [run] section and list paths resolve against the file's
    directory.
    """

    config = create_config(path=os.path.join(FIXTURES, "config.ini"))
    assert config.components == 3
    assert len(config.lists) == 1
    source = config.lists[0]
    assert source.name == "fixture"
    assert source.format == "mbox"
    assert source.path == os.path.join(FIXTURES, "list.mbox")


def test_overrides(tmp_path):
    """
    Overrides win over the file; None means "not given".
    """

    path = _write(tmp_path, "[run]\nlimit = 10\nstrip_quotes = off\n")
    config = create_config({"limit": 5, "strip_quotes": None}, path=path)
    assert config.limit == 5
    assert config.strip_quotes is False
    assert config.to_record()["limit"] == 5


def test_bad_files(tmp_path):
    """
    Missing files, unknown keys, unparsable values and list sections without a path
    are refused.
    """

    with pytest.raises(InvalidConfig):
        create_config(path=str(tmp_path / "absent.ini"))
    with pytest.raises(InvalidConfig) as info:
        create_config(path=_write(tmp_path, "[run]\ncolour = blue\n"))
    assert "colour" in str(info.value)
    with pytest.raises(InvalidConfig):
        create_config(path=_write(tmp_path, "[run]\nlimit = many\n"))
    with pytest.raises(InvalidConfig):
        create_config(path=_write(tmp_path, "[list:x]\nformat = mbox\n"))


def test_fractions():
    """
    Each fraction stays in its range and their sum stays below one.
    """

    assert create_config({"f_hub": 0.5, "f_intermediary": 0.0}).f_intermediary == 0.0
    for overrides in ({"f_hub": 0.0}, {"f_hub": 1.0}, {"f_intermediary": -0.1}, {"f_hub": 0.6, "f_intermediary": 0.4}):
        with pytest.raises(InvalidConfig):
            create_config(overrides)
    assert InvalidConfig("x").exit_code == EXIT_CONFIG


def test_lists(tmp_path):
    """
    List names are unique and restricted to a safe alphabet; formats are mbox or jsonl.
    """

    archive = str(tmp_path / "a.mbox")
    with pytest.raises(InvalidConfig):
        create_config({"lists": [{"name": "a", "path": archive}, {"name": "a", "path": archive}]})
    with pytest.raises(InvalidConfig):
        create_config({"lists": [{"name": "../up", "path": archive}]})
    with pytest.raises(InvalidConfig):
        create_config({"lists": [{"name": "a", "path": archive, "format": "maildir"}]})
    with pytest.raises(InvalidConfig):
        create_config({"unknown": 1})

    config = create_config({"lists": [{"name": "a", "path": archive}]})
    assert config.lists[0].format == "mbox"
