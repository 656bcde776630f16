"""
From labelled facts to a disjunctive table
==========================================

Starting from the schema file and the labelled sample, build the condensed
and complete disjunctive codings, check their integrity and evaluate a
reduction. The modality order in the schema file fixes the column layout.
"""
from olapreduce import (
    DistanceConfig,
    build_cdt,
    build_tcc,
    emit_report,
    parse_mask,
    subset_fitness,
    sweep_all_masks,
    validate_cdt,
)
from olapreduce.fixtures import traveler_facts, traveler_reference, traveler_schema

schema = traveler_schema()
facts = traveler_facts()
ref = traveler_reference()
print("dimensions:", schema.names)
print("reference:", dict(zip(schema.names, ref.values)))

tcc = build_tcc(facts, schema)
for label, row in zip(tcc.labels, tcc.as_strings()):
    print(f"{label:>5}  {row}")

# Every declared modality occurs at least once here, so no column is skipped.
cdt = build_cdt(facts, ref, schema)
print("integrity:", validate_cdt(cdt))
print("occurrence counts:", dict(zip(schema.column_labels(), cdt.occurrence.tolist())))

res = subset_fitness(cdt, parse_mask("011010", schema.p), DistanceConfig("remove", "unit"))
print(emit_report(res, "csv", cdt.fact_labels))

mask, best = sweep_all_masks(cdt, DistanceConfig("zero-facts", "total")).optimum
print(f"best reduction (zero-facts, n/p): {mask} {best.fitness:.4f} -> {best.argmin_labels(cdt)}")
