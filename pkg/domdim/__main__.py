from domdim.app.main import main

raise SystemExit(main())
