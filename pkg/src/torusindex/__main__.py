import sys

from torusindex.cli import main

sys.exit(main())
