#
# This file is part of motzkinfree.
#
# SPDX-License-Identifier: LGPL-3.0-only
#

"""JSON report interface class."""

from motzkinfree.globals import json_dumps, nativestr, printandflush


class MotzkinReportJson:
    """This class manages the JSON report written to stdout."""

    def __init__(self, config=None, args=None):
        # Init
        self.config = config
        self.args = args

        # Timings make reports differ between runs
        self.timing = not getattr(args, 'no_timing', False)

    def end(self):
        pass

    def build(self, report):
        """Return the report as a JSON string."""
        if not self.timing:
            report = {k: v for k, v in report.items() if k != 'timing'}
        return nativestr(json_dumps(report))

    def update(self, report, rows=None):
        """Display the report on stdout.

        Rows are only used by the CSV report.
        """
        printandflush(self.build(report))
