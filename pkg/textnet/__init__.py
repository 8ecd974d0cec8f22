import configparser
import logging
import os

from jsonschema import ValidationError, validate

from textnet.constants import *
from textnet.exceptions import InvalidConfig
from textnet.models import ListSource, RunConfig

__version__ = "0.1.0"

logger = logging.getLogger(__name__)

LIST_PREFIX = "list:"


def _read_config_file(path):
    parser = configparser.ConfigParser()
    try:
        with open(path, encoding="utf-8") as handle:
            parser.read_file(handle)
    except OSError:
        raise InvalidConfig("Config file '{}' wasn't found.".format(path))
    except configparser.Error as e:
        raise InvalidConfig("Config file '{}' is malformed: {}".format(path, e))

    values = {}
    if parser.has_section("run"):
        section = parser["run"]
        for key in section:
            if key not in DEFAULTS:
                raise InvalidConfig("Unknown key '{}' in [run].".format(key))
            default = DEFAULTS[key]
            try:
                if isinstance(default, bool):
                    values[key] = section.getboolean(key)
                elif isinstance(default, int):
                    values[key] = section.getint(key)
                elif isinstance(default, float):
                    values[key] = section.getfloat(key)
                else:
                    values[key] = section.get(key)
            except ValueError:
                raise InvalidConfig("Key '{}' has an invalid value '{}'.".format(key, section.get(key)))

    lists = []
    for name in parser.sections():
        if not name.startswith(LIST_PREFIX):
            continue
        section = parser[name]
        if "path" not in section:
            raise InvalidConfig("Section [{}] has no path.".format(name))
        lists.append({
            "name": name[len(LIST_PREFIX):],
            "path": section.get("path"),
            "format": section.get("format", "mbox")
        })
    if lists:
        values["lists"] = lists
    return values


def _resolve(path, base):
    if os.path.isabs(path):
        return path
    return os.path.normpath(os.path.join(base, path))


def create_config(test_config=None, path=None):
    """
    Builds the RunConfig of an analysis run.

    : param dict test_config: overrides applied last (command line flags or tests)
    : param str path: INI config file with a [run] section and [list:NAME] sections
    """

    values = dict(DEFAULTS)
    values["lists"] = []
    base = os.getcwd()
    if path is not None:
        base = os.path.dirname(os.path.abspath(path))
        file_values = _read_config_file(path)
        for key in ("lexicon", "out"):
            if key in file_values:
                file_values[key] = _resolve(file_values[key], base)
        for source in file_values.get("lists", []):
            source["path"] = _resolve(source["path"], base)
        values.update(file_values)

    if test_config is not None:
        values.update({k: v for k, v in test_config.items() if v is not None})

    values["lists"] = [dict(source) for source in values["lists"]]
    for source in values["lists"]:
        source.setdefault("format", "mbox")
        if "path" in source:
            source["path"] = _resolve(source["path"], base)
    values["lexicon"] = _resolve(values["lexicon"], base)
    values["out"] = _resolve(values["out"], base)

    try:
        validate(values, RunConfig.get_schema())
    except ValidationError as e:
        raise InvalidConfig("Invalid configuration: {}".format(e.message))

    unknown = set(values) - set(DEFAULTS) - {"lists"}
    if unknown:
        raise InvalidConfig("Unknown keys: {}".format(", ".join(sorted(unknown))))
    if values["f_hub"] + values["f_intermediary"] >= 1:
        raise InvalidConfig(
            "f_hub + f_intermediary must be below 1 (got {} + {}).".format(
                values["f_hub"], values["f_intermediary"]
            )
        )
    names = [source["name"] for source in values["lists"]]
    if len(names) != len(set(names)):
        raise InvalidConfig("List names must be unique.")

    lists = tuple(ListSource(**source) for source in values.pop("lists"))
    logger.debug("configuration with %d lists", len(lists))
    return RunConfig(lists=lists, **values)
