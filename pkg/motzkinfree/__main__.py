#
# This file is part of motzkinfree.
#
# SPDX-License-Identifier: LGPL-3.0-only
#

"""Allow user to run motzkinfree as a module."""

# Execute with:
# $ python -m motzkinfree

import motzkinfree

if __name__ == '__main__':
    motzkinfree.main()
