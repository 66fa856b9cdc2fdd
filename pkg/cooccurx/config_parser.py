"""Command line defaults read from an INI file.

    [cooccurx]
    mode = byte
    format = text
    seed = 0
    variant = bucketed
    log_level = warning
"""

import configparser
from typing import Dict

SECTION = 'cooccurx'

DEFAULTS = {
    'mode': 'byte',
    'format': 'text',
    'seed': '0',
    'variant': 'bucketed',
    'log_level': '',
}


def load_config(path: str = None) -> Dict[str, str]:
    """
    Returns the defaults, overridden by the [cooccurx] section of ``path`` when given.

    :param path: INI file path; missing sections fall back to DEFAULTS.
    :raises OSError: when the file cannot be read.
    """
    config = configparser.ConfigParser()
    config[SECTION] = DEFAULTS
    if path:
        with open(path, encoding='utf-8') as f:
            config.read_file(f)
    return dict(config[SECTION])


def write_default_config(path: str) -> None:
    config = configparser.ConfigParser()
    config[SECTION] = DEFAULTS

    # Write the configuration to a file
    with open(path, 'w', encoding='utf-8') as configfile:
        config.write(configfile)
