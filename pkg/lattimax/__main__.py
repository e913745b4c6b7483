import sys

from lattimax.harness.cli import main

sys.exit(main())
