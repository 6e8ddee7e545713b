import sys

from bidouble.cli import main

sys.exit(main())
