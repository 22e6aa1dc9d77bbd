from hcn.cli import main

raise SystemExit(main())
