#
# This file is part of motzkinfree.
#
# SPDX-License-Identifier: LGPL-3.0-only
#

"""Init the motzkinfree software."""

# Import system libs
import platform
import signal
import sys

# Global name
# Version should start and end with a numerical char
# See https://packaging.python.org/specifications/core-metadata/#version
__version__ = '1.0.0'
__license__ = 'LGPLv3'

# Import pydantic
try:
    from pydantic import VERSION as pydantic_version
except ImportError:
    print('pydantic library not found. motzkinfree cannot start.')
    sys.exit(1)

# Import motzkinfree libs
from motzkinfree.logger import logger
from motzkinfree.main import run

# Check pydantic version
pydantic_min_version = (2, 0)
pydantic_version_info = tuple(int(num) for num in pydantic_version.split('.')[:2])
if pydantic_version_info < pydantic_min_version:
    print('pydantic 2.0 or higher is needed. motzkinfree cannot start.')
    sys.exit(1)


def __signal_handler(signal, frame):
    logger.debug(f"Signal {signal} caught")
    end(1)


def end(exit_code=0):
    """Stop motzkinfree."""
    logger.info(f"motzkinfree stopped with exit code {exit_code}")

    # The end...
    sys.exit(exit_code)


def main(argv=None):
    """Main entry point for motzkinfree.

    Parse the command line, run the command and exit with its code.
    """
    # SIGHUP not available on Windows
    if sys.platform.startswith('win'):
        signal_list = (signal.SIGTERM, signal.SIGINT)
    else:
        signal_list = (signal.SIGTERM, signal.SIGINT, signal.SIGHUP)
    # Catch the kill signal
    for sig in signal_list:
        signal.signal(sig, __signal_handler)

    # Log motzkinfree and pydantic version
    logger.info(f'Start motzkinfree {__version__}')
    python_impl = platform.python_implementation()
    python_ver = platform.python_version()
    logger.info(f'{python_impl} {python_ver} ({sys.executable}) and pydantic {pydantic_version} detected')

    end(run(argv))
