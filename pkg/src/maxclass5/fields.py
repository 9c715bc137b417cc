"""Field-data ingestion and Galois-group family predictions.

Input rows describe normal closures of pure quintic fields whose 5-class
group is elementary of rank 2; the predictor maps each validated row to
the candidate set of family labels for the Galois group of the relevant
tower, split by where the two-step centralizer sits.  The number theory
behind the rows (class groups, genus fields, unit indices) is out of
scope: rows are inputs, validated only for primality, congruence and
internal consistency.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from importlib import resources
from typing import Optional

from .classify import FamilyLabel
from .errors import FormatError, MissingS, ParamError, PrecondError

HEADER = ["p", "p_mod_25", "h_k5", "type", "rank_sigma"]

SCENARIO_CENTRALIZER_SPLIT = "HL"      # chi_2 fixes one of the two split fields
SCENARIO_CENTRALIZER_OTHER = "Htilde"  # chi_2 fixes one of the three others

VALID_SCENARIOS = (SCENARIO_CENTRALIZER_SPLIT, SCENARIO_CENTRALIZER_OTHER)


@dataclass(frozen=True)
class FieldRecord:
    p: int
    p_mod_25: int
    h_k5: int
    class_type: tuple
    rank_sigma: int

    def to_dict(self) -> dict:
        return {"p": self.p, "p_mod_25": self.p_mod_25, "h_k5": self.h_k5,
                "type": list(self.class_type), "rank_sigma": self.rank_sigma}


def _parse_type(text: str, line: int) -> tuple:
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise FormatError(f"bad type field {text!r}", line=line)
    try:
        return tuple(int(part) for part in text[1:-1].split(";"))
    except ValueError:
        raise FormatError(f"bad type field {text!r}", line=line)


def parse_table(source) -> list:
    """Parse the CSV (path, file object, or text) into unvalidated records.

    Header must be exactly p,p_mod_25,h_k5,type,rank_sigma; the type
    column uses a semicolon separator, e.g. (5;5).
    """
    if hasattr(source, "read"):
        text = source.read()
    else:
        try:
            with open(source, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise FormatError(f"cannot read table: {exc}")
    rows = list(csv.reader(io.StringIO(text)))
    rows = [r for r in rows if r]  # ignore blank lines
    if not rows:
        return []
    if [c.strip() for c in rows[0]] != HEADER:
        raise FormatError(
            f"header must be {','.join(HEADER)}, got {','.join(rows[0])}",
            line=1)
    records = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(HEADER):
            raise FormatError(f"expected {len(HEADER)} fields, got {len(row)}",
                              line=lineno)
        try:
            p, pm, h = int(row[0]), int(row[1]), int(row[2])
            rank = int(row[4])
        except ValueError as exc:
            raise FormatError(str(exc), line=lineno)
        records.append(FieldRecord(
            p=p, p_mod_25=pm, h_k5=h,
            class_type=_parse_type(row[3], lineno), rank_sigma=rank))
    return records


def _is_prime(p: int) -> bool:
    """Deterministic trial division; plenty for table-sized inputs."""
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


FLAG_NOT_PRIME = "not_prime"
FLAG_BAD_CONGRUENCE = "bad_congruence"
FLAG_INCONSISTENT_ORDER = "inconsistent_order"


@dataclass
class RecordValidation:
    record: FieldRecord
    flags: tuple

    @property
    def ok(self) -> bool:
        return not self.flags

    def to_dict(self) -> dict:
        return {"record": self.record.to_dict(), "ok": self.ok,
                "flags": list(self.flags)}


def validate_record(record: FieldRecord) -> RecordValidation:
    """Flags instead of exceptions: not_prime, bad_congruence,
    inconsistent_order."""
    flags = []
    if not _is_prime(record.p):
        flags.append(FLAG_NOT_PRIME)
    if record.p % 25 != 24:  # p = -1 (mod 25)
        flags.append(FLAG_BAD_CONGRUENCE)
    expected = 1
    for part in record.class_type:
        expected *= part
    if record.h_k5 != expected:
        flags.append(FLAG_INCONSISTENT_ORDER)
    return RecordValidation(record=record, flags=tuple(flags))


@dataclass
class Prediction:
    record: FieldRecord
    scenario: str
    s: Optional[int]
    candidates: tuple  # FamilyLabel, deterministic order

    def to_dict(self) -> dict:
        return {"record": self.record.to_dict(), "scenario": self.scenario,
                "s": self.s,
                "candidates": [c.text for c in self.candidates]}


def predict_families(record: FieldRecord, scenario: str,
                     s: Optional[int] = None,
                     claim_n_ge7: bool = False) -> Prediction:
    """Candidate family labels for the tower's Galois group.

    Scenario HL (centralizer over a split field): the twelve labels
    G_a^(n)(z,0) with n in {4,5,6} and a, z in {0,1}.  Scenario Htilde:
    G_1^(n)(0,0) for n in {5,6}, plus G_0^(s+1)(0,0) when the 5-class
    number 5^s of the fixed field is supplied (s >= 6 so n >= 7).
    """
    val = validate_record(record)
    if not val.ok:
        raise PrecondError(
            f"record p={record.p} flagged: {', '.join(val.flags)}")
    if record.class_type != (5, 5):
        raise PrecondError(f"class group type {record.class_type} is not (5, 5)")
    if record.rank_sigma != 1:
        raise PrecondError(f"ambiguous rank {record.rank_sigma} is not 1")
    if scenario not in VALID_SCENARIOS:
        raise ParamError("scenario", f"must be one of {VALID_SCENARIOS}")

    if scenario == SCENARIO_CENTRALIZER_SPLIT:
        candidates = tuple(
            FamilyLabel(n=n, a=a, z=z, w=0)
            for n in (4, 5, 6) for a in ((), (1,)) for z in (0, 1))
        return Prediction(record=record, scenario=scenario, s=None,
                          candidates=candidates)

    if claim_n_ge7 and s is None:
        raise MissingS("scenario Htilde with n >= 7 needs the exponent s "
                       "with 5-class number 5^s")
    labels = [FamilyLabel(n=5, a=(1,), z=0, w=0),
              FamilyLabel(n=6, a=(1,), z=0, w=0)]
    if s is not None:
        if s < 6:
            raise PrecondError(
                f"s = {s} contradicts n = s+1 >= 7 in this scenario")
        labels.append(FamilyLabel(n=s + 1, a=(), z=0, w=0))
    return Prediction(record=record, scenario=scenario, s=s,
                      candidates=tuple(labels))


def bundled_table_path():
    """Path to the packaged ten-row data file."""
    return resources.files("maxclass5").joinpath("data/table1.csv")


def load_bundled_table() -> list:
    with bundled_table_path().open("r", encoding="utf-8") as fh:
        return parse_table(fh)
