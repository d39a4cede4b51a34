import sys

from ladderfib.cli import main

sys.exit(main())
