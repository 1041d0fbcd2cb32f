import sys

from fraclap.app import main


sys.exit(main())
