"""Fox calculus on free-group words, kept exact over the integers.

The derivative of a word with respect to a generator is a group-ring
element; the fundamental identity 1 - w = sum_j (1 - x_j) dw/dx_j pins all
sign and ordering conventions, so we verify it on everything we print.
"""

import numpy as np

from surfrep import (
    format_ring,
    format_word,
    fox_derivative,
    parse_word,
    reduce,
    surface_presentation,
    verify_fox_identity,
)


def show(text, n):
    word = parse_word(text)
    print(f"word: {format_word(word)}")
    for j in range(1, n + 1):
        print(f"  d/dx{j}: {format_ring(fox_derivative(word, j))}")
    print(f"  identity holds: {verify_fox_identity(word)}")
    print()


print("-- a commutator and a few small words --")
show("x1*x2*x1^-1*x2^-1", 2)
show("x1^3", 1)
show("x2^-2*x1", 2)

print("-- the genus-2 surface relator --")
pres = surface_presentation(2)
relator = pres.relators[0]
show(format_word(relator), pres.n)

print("-- random stress, exact arithmetic --")
rng = np.random.default_rng(0)
words = []
for _ in range(200):
    letters = [
        (int(rng.integers(1, 5)), int(rng.choice((-1, 1))))
        for _ in range(int(rng.integers(0, 21)))
    ]
    words.append(reduce(letters))
print(f"checked {len(words)} random words:",
      all(verify_fox_identity(w) for w in words))
