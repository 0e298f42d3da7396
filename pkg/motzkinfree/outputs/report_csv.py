#
# This file is part of motzkinfree.
#
# SPDX-License-Identifier: LGPL-3.0-only
#

"""CSV report interface class."""

from motzkinfree.globals import printandflush


class MotzkinReportCsv:
    """This class manages the CSV report written to stdout.

    Every row is a flat dict; jets are given as lists and spread over one
    column per coefficient (c0, c1, ...).
    """

    separator = ','
    na = 'N/A'

    def __init__(self, config=None, args=None):
        # Init
        self.config = config
        self.args = args

        # Display the header only on the first line
        self.header = True

        self.timing = not getattr(args, 'no_timing', False)

    def end(self):
        pass

    @staticmethod
    def flatten(row):
        """Spread list values over numbered columns."""
        ret = {}
        for k, v in row.items():
            if isinstance(v, (list, tuple)):
                for i, c in enumerate(v):
                    ret[f'{k}{i}'] = c
            else:
                ret[k] = v
        return ret

    def columns(self, rows):
        """Union of the row keys, in order of first appearance."""
        ret = []
        for row in rows:
            for k in self.flatten(row):
                if k not in ret:
                    ret.append(k)
        if not self.timing and 'seconds' in ret:
            ret.remove('seconds')
        return ret

    def build_header(self, columns):
        """Build and return the header line"""
        return self.separator.join(columns)

    def build_data(self, columns, row):
        """Build and return the data line"""
        row = self.flatten(row)
        return self.separator.join(self._cell(row.get(k, self.na)) for k in columns)

    def _cell(self, value):
        if isinstance(value, bool):
            return str(value).lower()
        value = str(value)
        if self.separator in value or '"' in value:
            value = '"' + value.replace('"', '""') + '"'
        return value

    def update(self, report, rows=None):
        """Display the rows of the report to stdout.

        Without rows, the scalar entries of the report give a single row.
        """
        if rows is None:
            rows = [{k: v for k, v in report.items() if not isinstance(v, dict)}]
        columns = self.columns(rows)
        lines = []
        if self.header:
            lines.append(self.build_header(columns))
        lines.extend(self.build_data(columns, row) for row in rows)
        printandflush('\n'.join(lines))

        # Display header one time
        self.header = False
