"""
Bundled traveller sample.

Two forms ship: the labelled facts (with the schema in listing order) and a
raw disjunctive table whose bits are taken verbatim from the published
matrix. The labelled facts and the raw matrix do not encode the same sample
(e.g. two "Citizen" rows carry different TRAVELLER bits in the matrix), so
the raw table is the one that reproduces the published distances.
"""
from importlib import resources

from .io import load_cdt, parse_facts_table, parse_reference, parse_schema

#: Published distances for mask 011010 on the raw table, one per fact.
PUBLISHED_DISTANCES = (3.573, 3.867, 3.573, 5.147, 3.867, 3.573, 4.507, 3.573, 5.147, 4.507)
PUBLISHED_MASK = "011010"


def _read(name: str) -> str:
    return resources.files(__package__).joinpath("data", name).read_text(encoding="utf-8")


def traveler_schema():
    return parse_schema(_read("traveler.schema"))


def traveler_facts():
    return parse_facts_table(_read("traveler_facts.csv"), traveler_schema())


def traveler_reference():
    return parse_reference(_read("traveler_reference.csv"), traveler_schema())


def traveler_cdt():
    """The 10 x 19 published disjunctive table with its reference row."""
    return load_cdt(_read("traveler_cdt.json"))


BUILTIN_CDTS = {"traveler": traveler_cdt}
