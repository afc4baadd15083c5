import sys

from app.cli import main

raise SystemExit(main(sys.argv[1:]))
