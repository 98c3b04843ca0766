import sys

from qspace.cli import main

sys.exit(main())
