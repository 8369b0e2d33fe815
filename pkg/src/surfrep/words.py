"""Free-group words, presentations, integer group-ring elements, and right Fox derivatives."""

import re
from typing import Iterable, List, Tuple

Letter = Tuple[int, int]

MAX_WORD_LEN = 10**6
MAX_COEF = 10**6


def _check_letter(g, e):
    if g < 1:
        raise ValueError(f"generator index must be >= 1, got {g}")
    if e not in (1, -1):
        raise ValueError(f"letter exponent must be +1 or -1, got {e}")


class Word:
    """A freely reduced word; letters is a tuple of (generator index, +1 or -1)."""

    def __init__(self, letters: Iterable[Letter] = ()):
        letters = tuple((int(g), int(e)) for g, e in letters)
        for g, e in letters:
            _check_letter(g, e)
        for (g1, e1), (g2, e2) in zip(letters, letters[1:]):
            if g1 == g2 and e1 == -e2:
                raise ValueError("letters are not freely reduced, use reduce()")
        self.letters = letters

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other):
        return word_multiply(self, other)

    def __invert__(self):
        return word_invert(self)

    def __repr__(self):
        return format_word(self)

    def is_identity(self):
        return not self.letters

    def max_generator(self):
        return max((g for g, _ in self.letters), default=0)


def reduce(letters: Iterable[Letter]) -> Word:
    """Freely reduce a raw letter sequence (stack cancellation of adjacent inverse pairs)."""
    stack: List[Letter] = []
    n = 0
    for g, e in letters:
        g, e = int(g), int(e)
        _check_letter(g, e)
        n += 1
        if n > MAX_WORD_LEN:
            raise ValueError(f"word length exceeds {MAX_WORD_LEN}")
        if stack and stack[-1][0] == g and stack[-1][1] == -e:
            stack.pop()
        else:
            stack.append((g, e))
    return Word(tuple(stack))


def word_multiply(u: Word, v: Word) -> Word:
    return reduce(u.letters + v.letters)


def word_invert(w: Word) -> Word:
    return Word(tuple((g, -e) for g, e in reversed(w.letters)))


class GroupRingElement:
    """Integer combination of words; terms maps Word -> nonzero int coefficient."""

    def __init__(self, terms=None):
        data = {}
        for word, coef in (terms or {}).items():
            coef = int(coef)
            if coef == 0:
                continue
            if abs(coef) > MAX_COEF:
                raise ValueError(f"coefficient {coef} exceeds bound {MAX_COEF}")
            data[word] = coef
        self.terms = data

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({Word(): 1})

    @classmethod
    def from_word(cls, w, coef=1):
        return cls({w: coef})

    def is_zero(self):
        return not self.terms

    def augmentation(self):
        """Image under all generators -> 1, i.e. the coefficient sum."""
        return sum(self.terms.values())

    def __eq__(self, other):
        return isinstance(other, GroupRingElement) and self.terms == other.terms

    def __add__(self, other):
        data = dict(self.terms)
        for w, c in other.terms.items():
            data[w] = data.get(w, 0) + c
        return GroupRingElement(data)

    def __neg__(self):
        return GroupRingElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElement({w: c * other for w, c in self.terms.items()})
        if isinstance(other, Word):
            other = GroupRingElement.from_word(other)
        data = {}
        for u, cu in self.terms.items():
            for v, cv in other.terms.items():
                uv = word_multiply(u, v)
                data[uv] = data.get(uv, 0) + cu * cv
        return GroupRingElement(data)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __repr__(self):
        return format_ring(self)


def fox_derivative(w: Word, j: int) -> GroupRingElement:
    """Right Fox derivative dw/dx_j, satisfying 1 - w = sum_j (1 - x_j) dw/dx_j.

    Letter-by-letter expansion of the product rule d(uv) = (du)v + dv:
    a positive occurrence of x_j at position k contributes +suffix(k+1),
    a negative one contributes -x_j^-1 suffix(k+1) = -suffix(k).
    """
    if j < 1:
        raise ValueError(f"generator index must be >= 1, got {j}")
    terms = {}
    letters = w.letters
    for k, (g, e) in enumerate(letters):
        if g != j:
            continue
        if e == 1:
            suffix = Word(letters[k + 1:])
            terms[suffix] = terms.get(suffix, 0) + 1
        else:
            suffix = Word(letters[k:])
            terms[suffix] = terms.get(suffix, 0) - 1
    return GroupRingElement(terms)


def verify_fox_identity(w: Word) -> bool:
    """Check 1 - w = sum_j (1 - x_j) dw/dx_j exactly over the integers."""
    lhs = GroupRingElement.one() - GroupRingElement.from_word(w)
    rhs = GroupRingElement.zero()
    for j in range(1, w.max_generator() + 1):
        one_minus_xj = GroupRingElement({Word(): 1, Word(((j, 1),)): -1})
        rhs = rhs + one_minus_xj * fox_derivative(w, j)
    return lhs == rhs


class Presentation:
    """Finitely presented group: n generators and a list of relator Words."""

    def __init__(self, n: int, relators: List[Word], genus=None):
        if n < 1:
            raise ValueError(f"need at least one generator, got {n}")
        for r in relators:
            if r.max_generator() > n:
                raise ValueError(f"relator {r!r} uses a generator beyond x{n}")
        self.n = n
        self.relators = list(relators)
        self.genus = genus

    @property
    def m(self):
        return len(self.relators)


def surface_presentation(genus: int) -> Presentation:
    """Standard one-relator surface presentation: 2*genus generators, relator [x1,x2]...[x_{2g-1},x_{2g}]."""
    if genus < 1:
        raise ValueError(f"genus must be >= 1, got {genus}")
    letters = []
    for i in range(genus):
        a, b = 2 * i + 1, 2 * i + 2
        letters += [(a, 1), (b, 1), (a, -1), (b, -1)]
    return Presentation(2 * genus, [Word(tuple(letters))], genus=genus)


_TERM_RE = re.compile(r"x(\d+)(?:\^(-?\d+))?$")


def parse_word(text: str) -> Word:
    """Parse the textual syntax: word := term ("*" term)*; term := gen ("^" int)?; gen := x<index>."""
    stripped = text.strip()
    if not stripped:
        return Word()
    letters = []
    pos = 0
    for chunk in text.split("*"):
        term = chunk.strip()
        at = pos + chunk.index(term) if term else pos
        m = _TERM_RE.match(term)
        if not m:
            raise ValueError(f"malformed term {term!r} at position {at}")
        g = int(m.group(1))
        if g < 1:
            raise ValueError(f"generator index must be >= 1 at position {at}")
        e = int(m.group(2)) if m.group(2) is not None else 1
        sign = 1 if e >= 0 else -1
        letters += [(g, sign)] * abs(e)
        pos += len(chunk) + 1
    return reduce(letters)


def format_word(w: Word) -> str:
    if w.is_identity():
        return "1"
    parts = []
    run_g, run_e, run_len = None, None, 0
    for g, e in w.letters + ((0, 0),):
        if (g, e) == (run_g, run_e):
            run_len += 1
            continue
        if run_len:
            power = run_e * run_len
            parts.append(f"x{run_g}" if power == 1 else f"x{run_g}^{power}")
        run_g, run_e, run_len = g, e, 1
    return "*".join(parts)


def format_ring(e: GroupRingElement) -> str:
    if e.is_zero():
        return "0"
    items = sorted(e.terms.items(), key=lambda kv: kv[0].letters)
    out = []
    for w, c in items:
        mag = "" if abs(c) == 1 else f"{abs(c)}*"
        body = f"{mag}{format_word(w)}"
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(out)
