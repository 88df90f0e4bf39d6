import sys

from frwshock.cli import main

sys.exit(main())
