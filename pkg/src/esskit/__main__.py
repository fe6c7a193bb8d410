import sys

from esskit.harness.cli import main

sys.exit(main())
