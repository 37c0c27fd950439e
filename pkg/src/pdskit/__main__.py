import sys

from pdskit.cli import main

sys.exit(main())
