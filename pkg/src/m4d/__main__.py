import sys

from m4d.cli import main

sys.exit(main())
