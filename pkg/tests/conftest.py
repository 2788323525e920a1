import sys
from pathlib import Path

# let test modules import the sibling helpers/oracles regardless of how
# pytest was invoked
sys.path.insert(0, str(Path(__file__).parent))
