# stabcodes/services/documents.py
"""
Code documents: line-oriented text with named sections.

    # comment
    title = toric code             (metadata, before any section)

    [presentation z2]
    dimension = 2
    matrix = [[2, 0],
              [0, 2]]

A value is an atom or a bracketed list of values; it may span lines while
brackets are open. The grammar is written out in docs/GRAMMAR.md.
"""
import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from stabcodes.constants import SECTION_KINDS
from stabcodes.exceptions import DocumentError
from stabcodes.services import formations
from stabcodes.services.formations import Formation, Submodule
from stabcodes.services.linking_forms import LinkingForm, standard_form, validate_form
from stabcodes.services.modules import Presentation, validate_presentation
from stabcodes.services.ring import Domain, LaurentPoly, PolyMatrix
from stabcodes.services.witt import FiniteQuadraticForm

logger = logging.getLogger(__name__)

_HEADER = re.compile(r"^\[\s*(?P<kind>[A-Za-z_]+)\s+(?P<name>[A-Za-z0-9_.\-]+)\s*\]$")
_KEY = re.compile(r"^(?P<key>[A-Za-z_][A-Za-z0-9_]*)\s*=")


@dataclass(frozen=True)
class Atom:
    text: str
    line: int
    column: int

    def plain(self) -> str:
        return self.text


Value = Union[Atom, "ListValue"]


@dataclass(frozen=True)
class ListValue:
    items: tuple
    line: int
    column: int

    def plain(self) -> list:
        return [item.plain() for item in self.items]


@dataclass(frozen=True)
class Entry:
    key: str
    value: Value
    line: int
    column: int


@dataclass
class Section:
    kind: str
    name: str
    line: int
    entries: Dict[str, Entry] = field(default_factory=dict)

    def get(self, key: str) -> Optional[Entry]:
        return self.entries.get(key)

    def require(self, key: str) -> Entry:
        entry = self.entries.get(key)
        if entry is None:
            raise DocumentError(f"[{self.kind} {self.name}] is missing '{key}'", self.line, 1)
        return entry


@dataclass
class CodeDocument:
    sections: Dict[str, Section] = field(default_factory=dict)
    metadata: Dict[str, Entry] = field(default_factory=dict)

    def section(self, name: Optional[str] = None, kind: Optional[str] = None) -> Section:
        if name is not None:
            section = self.sections.get(name)
            if section is None:
                raise DocumentError(f"No section named '{name}'")
            if kind is not None and section.kind != kind:
                raise DocumentError(f"Section '{name}' is a {section.kind}, expected a {kind}", section.line, 1)
            return section
        for section in self.sections.values():
            if kind is None or section.kind == kind:
                return section
        raise DocumentError(f"No {kind or 'section'} in document")

    def names(self, kind: Optional[str] = None) -> List[str]:
        return [s.name for s in self.sections.values() if kind is None or s.kind == kind]

    def data(self) -> dict:
        """Position-free content, for comparisons."""
        return {
            "metadata": {k: e.value.plain() for k, e in self.metadata.items()},
            "sections": [
                (s.kind, s.name, {k: e.value.plain() for k, e in s.entries.items()})
                for s in self.sections.values()
            ],
        }


# ============================================================
# PARSING
# ============================================================

def _strip_comment(line: str) -> str:
    index = line.find("#")
    return line if index < 0 else line[:index]


class _ValueParser:
    """Values over a list of (char, line, column) triples."""

    def __init__(self, chars: List[Tuple[str, int, int]], end: Tuple[int, int]):
        self.chars = chars
        self.pos = 0
        self.end = end

    def _skip_space(self):
        while self.pos < len(self.chars) and self.chars[self.pos][0].isspace():
            self.pos += 1

    def _where(self) -> Tuple[int, int]:
        if self.pos < len(self.chars):
            _, line, column = self.chars[self.pos]
            return line, column
        return self.end

    def parse(self) -> Value:
        self._skip_space()
        if self.pos >= len(self.chars):
            raise DocumentError("Missing value", *self._where())
        value = self._value()
        self._skip_space()
        if self.pos < len(self.chars):
            raise DocumentError(f"Unexpected {self.chars[self.pos][0]!r} after value", *self._where())
        return value

    def _value(self) -> Value:
        self._skip_space()
        line, column = self._where()
        if self.pos < len(self.chars) and self.chars[self.pos][0] == "[":
            self.pos += 1
            items = []
            self._skip_space()
            if self.pos < len(self.chars) and self.chars[self.pos][0] == "]":
                self.pos += 1
                return ListValue((), line, column)
            while True:
                items.append(self._value())
                self._skip_space()
                if self.pos >= len(self.chars):
                    raise DocumentError("Unclosed '['", line, column)
                ch = self.chars[self.pos][0]
                self.pos += 1
                if ch == "]":
                    return ListValue(tuple(items), line, column)
                if ch != ",":
                    raise DocumentError(f"Expected ',' or ']', got {ch!r}", *self.chars[self.pos - 1][1:])
        start = self.pos
        while self.pos < len(self.chars) and self.chars[self.pos][0] not in "[],":
            self.pos += 1
        text = " ".join("".join(c for c, _, _ in self.chars[start:self.pos]).split())
        if not text:
            raise DocumentError("Empty item", line, column)
        return Atom(text, line, column)


def _depth(text: str) -> int:
    return text.count("[") - text.count("]")


def parse_document(text: str) -> CodeDocument:
    lines = text.splitlines()
    doc = CodeDocument()
    current: Optional[Section] = None
    index = 0
    while index < len(lines):
        raw = _strip_comment(lines[index])
        line_no = index + 1
        stripped = raw.strip()
        index += 1
        if not stripped:
            continue
        indent = len(raw) - len(raw.lstrip())
        if stripped.startswith("["):
            match = _HEADER.match(stripped)
            if not match:
                raise DocumentError("Malformed section header", line_no, indent + 1)
            kind, name = match.group("kind"), match.group("name")
            if kind not in SECTION_KINDS:
                raise DocumentError(
                    f"Unknown section kind '{kind}'; expected one of {', '.join(SECTION_KINDS)}",
                    line_no, indent + 1 + raw.lstrip().find(kind),
                )
            if name in doc.sections:
                raise DocumentError(f"Duplicate section '{name}'", line_no, indent + 1)
            current = Section(kind, name, line_no)
            doc.sections[name] = current
            continue

        match = _KEY.match(stripped)
        if not match:
            raise DocumentError("Expected 'key = value' or a section header", line_no, indent + 1)
        key = match.group("key")
        value_offset = indent + match.end()
        chars = [(ch, line_no, value_offset + k + 1) for k, ch in enumerate(raw[value_offset:])]
        depth = _depth(raw[value_offset:])
        end = (line_no, len(raw) + 1)
        while depth > 0 and index < len(lines):
            continuation = _strip_comment(lines[index])
            index += 1
            chars.append(("\n", index - 1, len(lines[index - 2]) + 1))
            chars.extend((ch, index, k + 1) for k, ch in enumerate(continuation))
            depth += _depth(continuation)
            end = (index, len(continuation) + 1)
        value = _ValueParser(chars, end).parse()
        target = current.entries if current is not None else doc.metadata
        if key in target:
            raise DocumentError(f"Duplicate key '{key}'", line_no, indent + 1)
        target[key] = Entry(key, value, line_no, indent + 1)

    if not doc.sections and not doc.metadata:
        raise DocumentError("Empty document", 1, 1)
    logger.debug("Parsed document with sections %s", list(doc.sections))
    return doc


def _format_value(value: Value) -> str:
    if isinstance(value, Atom):
        return value.text
    return "[" + ", ".join(_format_value(item) for item in value.items) + "]"


def print_document(doc: CodeDocument) -> str:
    """Canonical text: comments dropped, whitespace normalized, order kept."""
    blocks = []
    if doc.metadata:
        blocks.append("\n".join(f"{k} = {_format_value(e.value)}" for k, e in doc.metadata.items()))
    for section in doc.sections.values():
        body = [f"[{section.kind} {section.name}]"]
        body.extend(f"{k} = {_format_value(e.value)}" for k, e in section.entries.items())
        blocks.append("\n".join(body))
    return "\n\n".join(blocks) + "\n"


# ============================================================
# VALUE ACCESS
# ============================================================

def _atom(entry: Entry) -> Atom:
    if not isinstance(entry.value, Atom):
        raise DocumentError(f"'{entry.key}' must be a single value", entry.value.line, entry.value.column)
    return entry.value


def _as_int(atom: Atom) -> int:
    try:
        return int(atom.text)
    except ValueError:
        raise DocumentError(f"Expected an integer, got '{atom.text}'", atom.line, atom.column) from None


def _as_fraction(atom: Atom) -> Fraction:
    try:
        return Fraction(atom.text.replace(" ", ""))
    except (ValueError, ZeroDivisionError):
        raise DocumentError(f"Expected a rational number, got '{atom.text}'", atom.line, atom.column) from None


def _as_bool(atom: Atom) -> bool:
    if atom.text in ("true", "false"):
        return atom.text == "true"
    raise DocumentError(f"Expected true or false, got '{atom.text}'", atom.line, atom.column)


def _items(value: Value, what: str) -> tuple:
    if not isinstance(value, ListValue):
        raise DocumentError(f"{what} must be a list", value.line, value.column)
    return value.items


def _rows(entry: Entry) -> List[tuple]:
    return [_items(row, f"Row of '{entry.key}'") for row in _items(entry.value, f"'{entry.key}'")]


def _poly(atom: Atom, dimension: int, domain: Optional[Domain] = None) -> LaurentPoly:
    if not isinstance(atom, Atom):
        raise DocumentError("Expected a polynomial", atom.line, atom.column)
    return LaurentPoly.parse(atom.text, dimension, domain, atom.line, atom.column)


def _poly_matrix(entry: Entry, dimension: int, cols: Optional[int] = None,
                 domain: Optional[Domain] = None) -> PolyMatrix:
    rows = _rows(entry)
    entries = [[_poly(a, dimension, domain) for a in row] for row in rows]
    widths = {len(row) for row in entries}
    if len(widths) > 1:
        raise DocumentError(f"Rows of '{entry.key}' have different lengths", entry.line, entry.column)
    return PolyMatrix(entries, dimension, cols if not entries else None)


# ============================================================
# BUILDERS
# ============================================================

def build_presentation(doc: CodeDocument, name: Optional[str] = None) -> Presentation:
    section = doc.section(name, "presentation")
    dimension = _as_int(_atom(section.require("dimension")))
    if dimension < 0:
        raise DocumentError("dimension must be non-negative", section.line, 1)
    matrix = _poly_matrix(section.require("matrix"), dimension, cols=0, domain=Domain.INTEGER)
    return validate_presentation(matrix)


def build_form(doc: CodeDocument, name: Optional[str] = None) -> LinkingForm:
    section = doc.section(name, "form")
    carrier = build_presentation(doc, _atom(section.require("carrier")).text)
    epsilon_atom = _atom(section.require("epsilon"))
    epsilon = _as_int(epsilon_atom)
    if epsilon not in (1, -1):
        raise DocumentError("epsilon must be 1 or -1", epsilon_atom.line, epsilon_atom.column)
    standard = section.get("standard")
    if standard is not None and _as_bool(_atom(standard)):
        return standard_form(carrier, epsilon)
    gram = _poly_matrix(section.require("gram"), carrier.dimension, cols=0, domain=Domain.RATIONAL)
    return validate_form(carrier, gram, epsilon)


def _submodule(doc: CodeDocument, section: Section, key: str, form: LinkingForm) -> List[list]:
    entry = section.require(key)
    columns = []
    for column in _items(entry.value, f"'{key}'"):
        atoms = _items(column, f"Generator of '{key}'")
        if len(atoms) != form.n:
            raise DocumentError(f"Generator has {len(atoms)} entries, carrier has {form.n}",
                                column.line, column.column)
        columns.append([_poly(a, form.dimension, Domain.INTEGER) for a in atoms])
    return columns


def build_formation(doc: CodeDocument, name: Optional[str] = None, ells=None, cap: Optional[int] = None) -> Formation:
    section = doc.section(name, "formation")
    form = build_form(doc, _atom(section.require("form")).text)
    certificates = {}
    for key in ("square_presentation", "quotient_presentation"):
        entry = section.get(key)
        if entry is not None:
            certificates[key] = build_presentation(doc, _atom(entry).text)
    m = Submodule.from_columns(form.carrier, _submodule(doc, section, "m_generators", form))
    f = Submodule.from_columns(form.carrier, _submodule(doc, section, "f_generators", form), **certificates)
    return formations.build_formation(form, m, f, ells=ells, cap=cap, history=(section.name,))


def build_quadratic(doc: CodeDocument, name: Optional[str] = None) -> FiniteQuadraticForm:
    section = doc.section(name, "quadratic")
    invariants = [_as_int(a) for a in _items(section.require("invariants").value, "'invariants'")]
    q_values = [_as_fraction(a) for a in _items(section.require("q").value, "'q'")]
    b = [[_as_fraction(a) for a in row] for row in _rows(section.require("b"))]
    return FiniteQuadraticForm(invariants, q_values, b, section.name)


@dataclass(frozen=True)
class MajoranaData:
    name: str
    modes: int
    generators: List[tuple]


def build_majorana(doc: CodeDocument, name: Optional[str] = None) -> MajoranaData:
    section = doc.section(name, "majorana")
    modes = _as_int(_atom(section.require("modes")))
    generators = []
    for row in _items(section.require("generators").value, "'generators'"):
        bits = tuple(_as_int(a) for a in _items(row, "Generator"))
        if len(bits) != 2 * modes or any(b not in (0, 1) for b in bits):
            raise DocumentError(f"Generator must be {2 * modes} bits", row.line, row.column)
        generators.append(bits)
    return MajoranaData(section.name, modes, generators)


BUILDERS = {
    "presentation": build_presentation,
    "form": build_form,
    "formation": build_formation,
    "quadratic": build_quadratic,
    "majorana": build_majorana,
}


def build_section(doc: CodeDocument, name: str):
    section = doc.section(name)
    return BUILDERS[section.kind](doc, name)
