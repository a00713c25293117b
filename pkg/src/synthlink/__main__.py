import sys

from synthlink.cli import main

sys.exit(main())
