"""Entry point for ``python -m spinorfact`` and the ``spinorfact`` console script."""

import sys

from spinorfact import cli


def main() -> None:
    sys.exit(cli.main())


if __name__ == "__main__":
    main()
