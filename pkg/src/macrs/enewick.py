"""Extended-Newick text format for multi-labeled level-1 networks.

Grammar (whitespace insignificant outside taxa; reserved chars ``(),;|#``)::

    network := subtree ';'
    subtree := leafset
             | '(' subtree ',' subtree ')' tag?
             | '(' subtree ')' tag
    tag     := '#H' digits
    leafset := taxon ('|' taxon)*

A tag marks a reticulation. Its defining occurrence is parenthesized and
carries the reticulation's subtree (one child directly, or two children for
an implicit tree vertex below the reticulation); the other occurrence is a
bare ``#Hk`` naming the second incoming edge. The top-level group may be a
single untagged subtree only for the two-vertex singleton network ``(a);``.
"""

from __future__ import annotations

from .canonical import canonical_text
from .model import MacrsError, Network, validate

RESERVED = set("(),;|#")


class ENewickError(MacrsError):
    def __init__(self, message: str, pos: int | None = None):
        if pos is not None:
            message = f"{message} at position {pos}"
        super().__init__(message)
        self.pos = pos


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.edges: list[tuple[int, int]] = []
        self.labels: dict[int, set[str]] = {}
        self.next_id = 0
        # tag -> [reticulation id, defining occurrences, bare references]
        self.tags: dict[str, list] = {}

    def fail(self, message: str) -> None:
        raise ENewickError(message, self.pos)

    def new_vertex(self) -> int:
        self.next_id += 1
        return self.next_id

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            self.fail(f"expected {ch!r}")
        self.pos += 1

    def taxon(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text):
            c = self.text[self.pos]
            if c in RESERVED or c.isspace():
                break
            self.pos += 1
        if self.pos == start:
            self.fail("expected a taxon name")
        return self.text[start : self.pos]

    def tag(self) -> str:
        self.expect("#")
        if self.peek() != "H":
            self.fail("expected 'H' after '#'")
        self.pos += 1
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.fail("expected digits after '#H'")
        return self.text[start : self.pos]

    def tag_vertex(self, name: str) -> int:
        if name not in self.tags:
            self.tags[name] = [self.new_vertex(), 0, 0]
        return self.tags[name][0]

    def leafset(self) -> int:
        v = self.new_vertex()
        taxa = {self.taxon()}
        while self.peek() == "|":
            self.pos += 1
            taxa.add(self.taxon())
        self.labels[v] = taxa
        return v

    def subtree(self, top_level: bool = False) -> int:
        """Parse one subtree and return the vertex id of its root."""
        c = self.peek()
        if c == "#":
            name = self.tag()
            r = self.tag_vertex(name)
            self.tags[name][2] += 1
            return r
        if c != "(":
            return self.leafset()
        self.pos += 1
        first = self.subtree()
        if self.peek() == ",":
            self.pos += 1
            second = self.subtree()
            self.expect(")")
            v = self.new_vertex()
            self.edges.append((v, first))
            self.edges.append((v, second))
            if self.peek() == "#":
                name = self.tag()
                r = self.tag_vertex(name)
                self.tags[name][1] += 1
                self.edges.append((r, v))
                return r
            return v
        self.expect(")")
        if self.peek() != "#":
            if top_level:
                # Singleton form '(a);': the root itself has out-degree 1.
                return -first  # sign marks "wrap with a bare root"
            self.fail("a single-child group must carry a reticulation tag")
        name = self.tag()
        r = self.tag_vertex(name)
        self.tags[name][1] += 1
        self.edges.append((r, first))
        return r


def parse(text: str) -> Network:
    """Parse eNewick text into a validated Network."""
    p = _Parser(text)
    top = p.subtree(top_level=True)
    p.expect(";")
    p.skip_ws()
    if p.pos != len(text):
        p.fail("trailing text after ';'")

    # A two-child top group is itself the root; a leafset, a bare tag, or the
    # singleton form '(a);' hangs under a fresh root vertex.
    tag_ids = {info[0] for info in p.tags.values()}
    if top < 0:
        root = p.new_vertex()
        p.edges.append((root, -top))
    elif top in p.labels or top in tag_ids:
        root = p.new_vertex()
        p.edges.append((root, top))

    for name, (_, defs, refs) in sorted(p.tags.items()):
        if defs != 1 or refs != 1:
            raise ENewickError(
                f"tag #H{name} must appear exactly twice, once defining a "
                f"subtree and once bare (got {defs} definitions, {refs} references)"
            )

    n = Network(p.edges, p.labels)
    report = validate(n)
    if not report.ok:
        raise ENewickError("text describes an invalid network: " + "; ".join(report.violations))
    return n


def serialize(n: Network) -> str:
    """Canonical eNewick form: child order and path orientation chosen by the
    canonical encoding, label sets sorted, tags numbered in first-visit order.

    parse(serialize(n)) is strongly isomorphic to n, and strongly isomorphic
    networks serialize to identical text.
    """
    report = validate(n)
    if not report.ok:
        raise ENewickError("cannot serialize an invalid network: " + "; ".join(report.violations))
    return canonical_text(n)
