from veronese_lab.cli import main

raise SystemExit(main())
