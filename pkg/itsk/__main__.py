"""Run the itsk command line with python -m itsk."""

import sys

from itsk.cli import main


sys.exit(main())
