"""Words in a free group.

A word is a tuple of nonzero ints; k stands for the generator y_k and -k for
its inverse.  Concatenation is path composition, read left to right.
"""


def reduce(word):
    out = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def inverse(word):
    return tuple(-x for x in reversed(word))


def mul(*words):
    out = []
    for w in words:
        for x in w:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
    return tuple(out)


def power(word, e):
    if e < 0:
        word, e = inverse(word), -e
    return reduce(word * e)


def substitute(word, images):
    """Image of `word` under the endomorphism y_k -> images[k]."""
    out = []
    for x in word:
        img = images.get(abs(x))
        if img is None:
            img = (abs(x),)
        if x < 0:
            img = inverse(img)
        for y in img:
            if out and out[-1] == -y:
                out.pop()
            else:
                out.append(y)
    return tuple(out)


def delete_letters(word, letters):
    """Kill the generators in `letters` and re-index nothing."""
    return reduce(x for x in word if abs(x) not in letters)


def exponent_sums(word):
    sums = {}
    for x in word:
        sums[abs(x)] = sums.get(abs(x), 0) + (1 if x > 0 else -1)
    return {k: v for k, v in sums.items() if v}
