import sys

from chein_helper.cli import main

sys.exit(main(["search"] if len(sys.argv) < 2 else sys.argv[1:]))
