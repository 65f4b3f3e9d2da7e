"""Exception hierarchy shared across the pipeline.

Every error carries a ``stage`` name so the service layer can surface
structured error objects instead of bare 500s.
"""


class NlidbError(Exception):
    stage = "unknown"

    def __init__(self, message, stage=None):
        super().__init__(message)
        if stage is not None:
            self.stage = stage


class SchemaError(NlidbError):
    stage = "load_schema"


class GraphError(NlidbError):
    stage = "schema_graph"


class TagError(NlidbError):
    stage = "tagging"


class CorpusError(NlidbError):
    stage = "corpus"


class ExplainError(NlidbError):
    stage = "explain"


class TranslationError(NlidbError):
    stage = "translate"


class UntranslatableQueryError(TranslationError):
    stage = "collect_table_set"


class JoinPathError(TranslationError):
    stage = "extract_join_relation"


class WorkspaceError(NlidbError):
    stage = "workspace"
