import sys

from closedchain.cli import main

sys.exit(main())
