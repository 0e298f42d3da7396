#
# This file is part of motzkinfree.
#
# SPDX-License-Identifier: LGPL-3.0-only
#

"""Manage the configuration file."""

import builtins
import os
import sys
from configparser import ConfigParser, NoOptionError, NoSectionError

from motzkinfree.globals import conf_path
from motzkinfree.logger import logger


def user_config_dir():
    r"""Return a list of per-user config dir (full path).

    - Linux, *BSD, macOS: ~/.config/motzkinfree
    - Windows: %APPDATA%\motzkinfree
    """
    if sys.platform.startswith('win'):
        path = os.environ.get('APPDATA')
    else:
        path = os.environ.get('XDG_CONFIG_HOME') or os.path.expanduser('~/.config')
    return [os.path.join(path, 'motzkinfree') if path is not None else '']


def system_config_dir():
    r"""Return a list of system-wide config dir (full path).

    - Linux: /etc/motzkinfree
    - *BSD, macOS: /usr/local/etc/motzkinfree
    - Windows: %APPDATA%\motzkinfree
    """
    if sys.platform.startswith('linux'):
        path = '/etc'
    elif sys.platform.startswith('win'):
        path = os.environ.get('APPDATA')
    else:
        path = '/usr/local/etc'
    if path is None:
        return ['']
    return [os.path.join(path, 'motzkinfree')]


def default_config_dir():
    """Return the directory holding the packaged default configuration."""
    return [conf_path, os.path.join(sys.prefix, 'share', 'doc', 'motzkinfree')]


class Config:
    """This class is used to access/read config file, if it exists.

    :param config_file: path of a configuration file given with -C
    :type config_file: str or None
    """

    def __init__(self, config_file=None):
        self.config_file = config_file
        self.config_filename = 'motzkinfree.conf'
        self._config_file_paths = self.config_file_paths()

        self.parser = ConfigParser(interpolation=None)

        self.read()

    def config_file_paths(self):
        r"""Get a list of config file paths.

        The config file will be searched in the following order of priority:
            * /path/to/file (via -C flag)
            * user's home directory (per-user settings)
            * system-wide directory (system-wide settings)
            * packaged default (conf/motzkinfree.conf)
        """
        paths = []

        if self.config_file:
            paths.append(self.config_file)

        paths.extend([os.path.join(path, self.config_filename) for path in user_config_dir()])
        paths.extend([os.path.join(path, self.config_filename) for path in system_config_dir()])
        paths.extend([os.path.join(path, self.config_filename) for path in default_config_dir()])

        return paths

    def read(self):
        """Read the config file, if it exists. Using defaults otherwise."""
        for config_file in self._config_file_paths:
            logger.debug(f'Search motzkinfree.conf file in {config_file}')
            if os.path.exists(config_file):
                try:
                    with builtins.open(config_file, encoding='utf-8') as f:
                        self.parser.read_file(f)
                    logger.info(f"Read configuration file '{config_file}'")
                except UnicodeDecodeError as err:
                    logger.error(f"Can not read configuration file '{config_file}': {err}")
                    sys.exit(2)
                break

        # Set the default values for section not configured
        self.sections_set_default()

    def sections_set_default(self):
        # Globals
        if not self.parser.has_section('global'):
            self.parser.add_section('global')
        self.set_default('global', 'jet_order', '3')
        self.set_default('global', 'seed', '0')

        # Verification suites
        if not self.parser.has_section('verify'):
            self.parser.add_section('verify')
        self.set_default('verify', 'n_max', '6')
        self.set_default('verify', 'cases', '50')
        self.set_default('verify', 'order', '2')
        self.set_default('verify', 'suites', 'all')
        self.set_default('verify', 'log_level', 'INFO')

        # Oracles
        if not self.parser.has_section('oracle'):
            self.parser.add_section('oracle')
        self.set_default('oracle', 'memoize', 'true')

        # Reports
        if not self.parser.has_section('report'):
            self.parser.add_section('report')
        self.set_default('report', 'format', 'json')

    def set_default(self, section, option, default):
        """If the option did not exist, create a default value."""
        if not self.parser.has_option(section, option):
            self.parser.set(section, option, default)

    def get_value(self, section, option, default=None):
        """Get the value of an option, if it exists.

        If it did not exist, then return the default value.
        """
        try:
            return self.parser.get(section, option)
        except (NoOptionError, NoSectionError):
            return default

    def get_list_value(self, section, option, default=None, separator=','):
        """Get the list value of an option, if it exists."""
        try:
            return [i.strip() for i in self.parser.get(section, option).split(separator)]
        except (NoOptionError, NoSectionError):
            return default

    def get_int_value(self, section, option, default=0):
        """Get the int value of an option, if it exists."""
        try:
            return self.parser.getint(section, option)
        except (NoOptionError, NoSectionError):
            return int(default)

    def get_bool_value(self, section, option, default=True):
        """Get the bool value of an option, if it exists."""
        try:
            return self.parser.getboolean(section, option)
        except (NoOptionError, NoSectionError):
            return bool(default)

    def get_suite_int(self, suite, option):
        """Return an integer option of a verification suite.

        A per-suite option (e.g. pyramid_n_max) wins over the [verify] one.
        """
        default = self.get_int_value('verify', option)
        return self.get_int_value('verify', f"{suite.replace('-', '_')}_{option}", default=default)
