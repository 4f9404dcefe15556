"""
Pydantic schemas for run configuration, descriptors and reports.

Self-referencing descriptors (GroupSchema, ChannelSchema) are rebuilt in
their own modules, so importing a single schema module is enough.
"""
