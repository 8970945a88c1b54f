import sys

from logret.cli import main

sys.exit(main())
