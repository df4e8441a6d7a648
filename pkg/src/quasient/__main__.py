"""Enable running as python -m quasient."""

from quasient.cli.main import main

if __name__ == "__main__":
    main()
