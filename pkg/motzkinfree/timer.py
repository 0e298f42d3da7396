#
# This file is part of motzkinfree.
#
# SPDX-License-Identifier: LGPL-3.0-only
#

"""The timer manager."""

from datetime import datetime


class Counter:
    """Elapsed seconds since start (timings of the reports)."""

    def __init__(self):
        self.start()

    def start(self):
        self.target = datetime.now()

    def get(self):
        return (datetime.now() - self.target).total_seconds()
