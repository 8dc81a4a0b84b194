import itertools
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from divwords.words import Alphabet, Word


def all_words(l, min_len, max_len):
    """Every letter sequence over ranks 1..l of the given lengths."""
    alphabet = Alphabet(l)
    for length in range(min_len, max_len + 1):
        for letters in itertools.product(range(1, l + 1), repeat=length):
            yield Word(letters, alphabet)
