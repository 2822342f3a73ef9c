from hankelcert.cli import main
import sys

sys.exit(main())
