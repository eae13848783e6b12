import sys

from greenroute.main import main

sys.exit(main())
