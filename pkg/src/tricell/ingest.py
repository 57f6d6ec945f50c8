"""Parsing and auditing of the plain-text boundary-data files.

The shipped files are verbatim transcriptions of the published boundary
formulas, kernel-cycle list and incidence grids, *including* the printed
typographic slips.  All corrections live in a separate errata ledger whose
entries carry a mechanical justification tag, so the repaired complex stays
auditable term by term.

File formats (UTF-8, line oriented, ``#`` comments):

* boundary files  -- ``NAME : NAME + NAME + ...`` (empty right side = zero)
* kernel file     -- ``kerNN : NAME + NAME + ...``
* expansions file -- ``NAME : n1 n2 ...`` (kernel-cycle index sets)
* cells file      -- ``NAME DIM``
* matrix file     -- ``matrix <tag>`` / ``cols L1 L2 ...`` / ``ROW | + . ...``
* errata file     -- ``dN GEN replace OLD -> NEW : tag`` (also add / remove)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .catalog import Cell, UnknownCellError, parse_cell


class DataError(ValueError):
    """Malformed or missing data file."""


# ---------------------------------------------------------------------------
# boundary files


@dataclass(frozen=True)
class BoundaryLine:
    generator: Cell
    terms: tuple[Cell, ...]


@dataclass(frozen=True)
class BoundaryFile:
    degree: int
    lines: tuple[BoundaryLine, ...]

    def line_for(self, generator: Cell) -> BoundaryLine:
        for line in self.lines:
            if line.generator == generator:
                return line
        raise KeyError(generator.name)

    def entry_set(self) -> set[tuple[str, str]]:
        """All (generator, term) name pairs, for cross-checking."""
        return {
            (line.generator.name, t.name) for line in self.lines for t in line.terms
        }


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].rstrip()


def _parse_term_sum(text: str, lineno: int) -> list[Cell]:
    """Parse 'NAME + NAME + ...' (whitespace-separated; signs bind to names)."""
    toks = text.split()
    if not toks:
        return []
    terms = []
    for pos, tok in enumerate(toks):
        if pos % 2 == 1:
            if tok != "+":
                raise DataError(f"line {lineno}: expected '+', got {tok!r}")
            continue
        try:
            terms.append(parse_cell(tok))
        except UnknownCellError as exc:
            raise DataError(f"line {lineno}: {exc}") from None
    if len(toks) % 2 == 0:
        raise DataError(f"line {lineno}: trailing '+'")
    return terms


def parse_boundary_file(text: str, degree: int) -> BoundaryFile:
    lines: list[BoundaryLine] = []
    seen: set[Cell] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = _strip_comment(raw)
        if not body.strip():
            continue
        if ":" not in body:
            raise DataError(f"line {lineno}: expected 'NAME : ...', got {raw!r}")
        left, right = body.split(":", 1)
        try:
            gen = parse_cell(left.strip())
        except UnknownCellError as exc:
            raise DataError(f"line {lineno}: {exc}") from None
        if gen in seen:
            raise DataError(f"line {lineno}: duplicate generator {gen.name}")
        seen.add(gen)
        lines.append(BoundaryLine(gen, tuple(_parse_term_sum(right, lineno))))
    return BoundaryFile(degree, tuple(lines))


def serialize_boundary_file(bf: BoundaryFile) -> str:
    out = []
    for line in bf.lines:
        rhs = " + ".join(t.name for t in line.terms)
        out.append(f"{line.generator.name} : {rhs}".rstrip())
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# errata ledger

JUSTIFICATION_TAGS = ("dimension-lint", "type-lint", "d-squared-localization")


@dataclass(frozen=True)
class ErrataEntry:
    degree: int
    generator: str
    action: str  # add | remove | replace
    term: str
    replacement: str | None
    justification: str

    def describe(self) -> str:
        if self.action == "replace":
            what = f"replace {self.term} -> {self.replacement}"
        else:
            what = f"{self.action} {self.term}"
        return f"d{self.degree} {self.generator}: {what} [{self.justification}]"


@dataclass(frozen=True)
class ErrataLedger:
    entries: tuple[ErrataEntry, ...] = ()


def parse_errata(text: str) -> ErrataLedger:
    entries = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = _strip_comment(raw).strip()
        if not body:
            continue
        if ":" not in body:
            raise DataError(f"errata line {lineno}: missing justification tag")
        head, tag = body.rsplit(":", 1)
        tag = tag.strip()
        if tag not in JUSTIFICATION_TAGS:
            raise DataError(
                f"errata line {lineno}: unknown justification {tag!r};"
                f" expected one of {JUSTIFICATION_TAGS}"
            )
        toks = head.split()
        if len(toks) < 4 or not toks[0].startswith("d"):
            raise DataError(f"errata line {lineno}: malformed entry {raw!r}")
        degree = int(toks[0][1:])
        generator, action = toks[1], toks[2]
        if action == "replace":
            if len(toks) != 6 or toks[4] != "->":
                raise DataError(f"errata line {lineno}: malformed replace {raw!r}")
            term, repl = toks[3], toks[5]
        elif action in ("add", "remove"):
            if len(toks) != 4:
                raise DataError(f"errata line {lineno}: malformed {action} {raw!r}")
            term, repl = toks[3], None
        else:
            raise DataError(f"errata line {lineno}: unknown action {action!r}")
        entries.append(ErrataEntry(degree, generator, action, term, repl, tag))
    return ErrataLedger(tuple(entries))


def serialize_errata(ledger: ErrataLedger) -> str:
    out = []
    for e in ledger.entries:
        if e.action == "replace":
            head = f"d{e.degree} {e.generator} replace {e.term} -> {e.replacement}"
        else:
            head = f"d{e.degree} {e.generator} {e.action} {e.term}"
        out.append(f"{head} : {e.justification}")
    return "\n".join(out) + "\n"


@dataclass(frozen=True)
class ErrataReport:
    applied: tuple[ErrataEntry, ...]
    already_applied: tuple[ErrataEntry, ...]

    @property
    def ok(self) -> bool:
        return True  # dangling entries raise instead


def apply_errata(raw: BoundaryFile, ledger: ErrataLedger) -> tuple[BoundaryFile, ErrataReport]:
    """Return a corrected copy of ``raw``; the input is never mutated.

    Entries already reflected in the data are reported separately (this makes
    the operation idempotent for a fixed ledger); an entry that matches
    neither state is a dangling location and raises DataError.
    """
    lines = {line.generator.name: list(line.terms) for line in raw.lines}
    gens = {line.generator.name: line.generator for line in raw.lines}
    applied: list[ErrataEntry] = []
    already: list[ErrataEntry] = []
    for e in ledger.entries:
        if e.degree != raw.degree:
            continue
        if e.generator not in lines:
            raise DataError(f"errata entry for unknown generator {e.generator}")
        terms = lines[e.generator]
        names = [t.name for t in terms]
        if e.action == "replace":
            if e.term in names:
                terms[names.index(e.term)] = parse_cell(e.replacement)
                applied.append(e)
            elif e.replacement in names:
                already.append(e)
            else:
                raise DataError(f"dangling errata location: {e.describe()}")
        elif e.action == "remove":
            if e.term in names:
                del terms[names.index(e.term)]
                applied.append(e)
            else:
                already.append(e)
        elif e.action == "add":
            if e.term in names:
                already.append(e)
            else:
                terms.append(parse_cell(e.term))
                applied.append(e)
    new_lines = tuple(
        BoundaryLine(gens[name], tuple(terms)) for name, terms in lines.items()
    )
    return BoundaryFile(raw.degree, new_lines), ErrataReport(tuple(applied), tuple(already))


# ---------------------------------------------------------------------------
# lint


@dataclass(frozen=True)
class LintFinding:
    generator: str
    term: str
    reason: str  # dimension | type


@dataclass(frozen=True)
class LintReport:
    degree: int
    findings: tuple[LintFinding, ...]

    @property
    def clean(self) -> bool:
        return not self.findings


def lint(bf: BoundaryFile) -> LintReport:
    """Flag terms violating dimension homogeneity or type closure.

    Every term of a boundary must live one dimension below its generator,
    and the boundary of a second-type cell may contain only second-type
    cells.  Violations are exactly the candidate errata.
    """
    findings = []
    for line in bf.lines:
        want = line.generator.dimension - 1
        for t in line.terms:
            if t.dimension != want:
                findings.append(
                    LintFinding(
                        line.generator.name,
                        t.name,
                        f"dimension: term has dim {t.dimension}, expected {want}",
                    )
                )
            elif line.generator.barred and not t.barred:
                findings.append(
                    LintFinding(
                        line.generator.name,
                        t.name,
                        "type: second-type generator with first-type term",
                    )
                )
    return LintReport(bf.degree, tuple(findings))


# ---------------------------------------------------------------------------
# kernel cycles and expansion index sets


def parse_kernel_file(text: str) -> dict[int, tuple[Cell, ...]]:
    out: dict[int, tuple[Cell, ...]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = _strip_comment(raw)
        if not body.strip():
            continue
        left, right = body.split(":", 1)
        label = left.strip()
        if not label.startswith("ker"):
            raise DataError(f"kernel line {lineno}: bad label {label!r}")
        num = int(label[3:])
        if num in out:
            raise DataError(f"kernel line {lineno}: duplicate {label}")
        out[num] = tuple(_parse_term_sum(right, lineno))
    return out


def parse_expansions_file(text: str) -> dict[str, frozenset[int]]:
    out: dict[str, frozenset[int]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = _strip_comment(raw)
        if not body.strip():
            continue
        left, right = body.split(":", 1)
        name = parse_cell(left.strip()).name
        if name in out:
            raise DataError(f"expansions line {lineno}: duplicate {name}")
        out[name] = frozenset(int(tok) for tok in right.split())
    return out


# ---------------------------------------------------------------------------
# cells census file


def parse_cells_file(text: str) -> dict[str, int]:
    out: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = _strip_comment(raw)
        if not body.strip():
            continue
        toks = body.split()
        if len(toks) != 2:
            raise DataError(f"cells line {lineno}: expected 'NAME DIM'")
        name = parse_cell(toks[0]).name
        if name in out:
            raise DataError(f"cells line {lineno}: duplicate {name}")
        out[name] = int(toks[1])
    return out


# ---------------------------------------------------------------------------
# incidence grids


@dataclass(frozen=True)
class MatrixFile:
    tag: str
    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]
    marks: frozenset[tuple[str, str]]


def parse_matrices(text: str) -> dict[str, MatrixFile]:
    blocks: dict[str, MatrixFile] = {}
    tag = None
    cols: tuple[str, ...] | None = None
    rows: list[str] = []
    marks: set[tuple[str, str]] = set()

    def flush():
        nonlocal tag, cols, rows, marks
        if tag is not None:
            if cols is None:
                raise DataError(f"matrix block {tag}: no column header")
            blocks[tag] = MatrixFile(tag, tuple(rows), cols, frozenset(marks))
        tag, cols, rows, marks = None, None, [], set()

    for lineno, raw in enumerate(text.splitlines(), 1):
        body = _strip_comment(raw)
        if not body.strip():
            continue
        toks = body.split()
        if toks[0] == "matrix":
            flush()
            if len(toks) != 2:
                raise DataError(f"matrix line {lineno}: expected 'matrix TAG'")
            tag = toks[1]
            if tag in blocks:
                raise DataError(f"matrix line {lineno}: duplicate block {tag}")
        elif toks[0] == "cols":
            if tag is None:
                raise DataError(f"matrix line {lineno}: cols outside a block")
            cols = tuple(parse_cell(t).name for t in toks[1:])
        else:
            if tag is None or cols is None:
                raise DataError(f"matrix line {lineno}: row outside a block")
            if "|" not in body:
                raise DataError(f"matrix line {lineno}: expected 'ROW | marks'")
            left, right = body.split("|", 1)
            rname = parse_cell(left.strip()).name
            entries = right.split()
            if len(entries) != len(cols):
                raise DataError(
                    f"matrix line {lineno}: {len(entries)} entries for"
                    f" {len(cols)} columns"
                )
            rows.append(rname)
            for cname, mark in zip(cols, entries):
                if mark == "+":
                    marks.add((rname, cname))
                elif mark != ".":
                    raise DataError(f"matrix line {lineno}: bad mark {mark!r}")
    flush()
    return blocks


def serialize_matrices(blocks: dict[str, MatrixFile]) -> str:
    out: list[str] = []
    for tag, mf in blocks.items():
        out.append(f"matrix {tag}")
        out.append("cols " + " ".join(mf.col_labels))
        for r in mf.row_labels:
            line = " ".join("+" if (r, c) in mf.marks else "." for c in mf.col_labels)
            out.append(f"{r} | {line}")
        out.append("")
    return "\n".join(out)


def merge_matrix_parts(parts: list[MatrixFile], tag: str) -> MatrixFile:
    """Union of several printed parts tiling one labelled grid."""
    rows: list[str] = []
    cols: list[str] = []
    marks: set[tuple[str, str]] = set()
    for p in parts:
        for r in p.row_labels:
            if r not in rows:
                rows.append(r)
        for c in p.col_labels:
            if c not in cols:
                cols.append(c)
        marks |= p.marks
    return MatrixFile(tag, tuple(rows), tuple(cols), frozenset(marks))


@dataclass(frozen=True)
class CrossCheckReport:
    only_in_formulas: tuple[tuple[str, str], ...]
    only_in_matrix: tuple[tuple[str, str], ...]

    @property
    def clean(self) -> bool:
        return not self.only_in_formulas and not self.only_in_matrix


def cross_check_matrices(formulas: BoundaryFile, matrix: MatrixFile) -> CrossCheckReport:
    """Symmetric difference of the (generator, cell) entry sets."""
    f_set = formulas.entry_set()
    m_set = set(matrix.marks)
    return CrossCheckReport(
        tuple(sorted(f_set - m_set)),
        tuple(sorted(m_set - f_set)),
    )


# ---------------------------------------------------------------------------
# dataset loading

BOUNDARY_DEGREES = (2, 3, 4, 5, 6)

REQUIRED_FILES = (
    "cells.txt",
    "boundary_d2.txt",
    "boundary_d3.txt",
    "boundary_d4.txt",
    "boundary_d5.txt",
    "boundary_d6.txt",
    "kernel_generators.txt",
    "expansions_d3.txt",
    "matrices.txt",
)


@dataclass
class Dataset:
    cells: dict[str, int]
    boundaries: dict[int, BoundaryFile]
    kernel_cycles: dict[int, tuple[Cell, ...]]
    expansions: dict[str, frozenset[int]]
    matrices: dict[str, MatrixFile]
    errata: ErrataLedger = field(default_factory=ErrataLedger)


def load_dataset(data_dir: Path, errata_path: Path | None = None) -> Dataset:
    data_dir = Path(data_dir)
    missing = [f for f in REQUIRED_FILES if not (data_dir / f).is_file()]
    if missing:
        raise FileNotFoundError(
            f"data directory {data_dir} is missing: {', '.join(missing)}"
        )
    boundaries = {
        d: parse_boundary_file((data_dir / f"boundary_d{d}.txt").read_text(), d)
        for d in BOUNDARY_DEGREES
    }
    ledger = ErrataLedger()
    if errata_path is not None:
        errata_path = Path(errata_path)
        if not errata_path.is_file():
            raise FileNotFoundError(f"errata file not found: {errata_path}")
        ledger = parse_errata(errata_path.read_text())
    return Dataset(
        cells=parse_cells_file((data_dir / "cells.txt").read_text()),
        boundaries=boundaries,
        kernel_cycles=parse_kernel_file(
            (data_dir / "kernel_generators.txt").read_text()
        ),
        expansions=parse_expansions_file(
            (data_dir / "expansions_d3.txt").read_text()
        ),
        matrices=parse_matrices((data_dir / "matrices.txt").read_text()),
        errata=ledger,
    )
