import sys

from coneseries.cli.main import main

sys.exit(main())
