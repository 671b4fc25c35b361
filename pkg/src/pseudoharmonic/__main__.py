import sys

from pseudoharmonic.cli import main

sys.exit(main())
