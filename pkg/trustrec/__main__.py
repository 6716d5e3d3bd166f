import sys

from trustrec.app import main

sys.exit(main())
