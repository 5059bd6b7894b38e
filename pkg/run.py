import sys
from pathlib import Path

# Run from a checkout without installing
sys.path.insert(0, str(Path(__file__).parent / "src"))

from sdgjel.cli import main

if __name__ == "__main__":
    sys.exit(main())
