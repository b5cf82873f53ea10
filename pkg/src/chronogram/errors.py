"""Exception hierarchy shared by all chronogram modules.

Each class carries a short machine-readable ``code`` used verbatim by the
HTTP API error payloads and mapped to exit codes by the CLI.
"""

from __future__ import annotations


class ChronogramError(Exception):
    code = "error"


class ParameterError(ChronogramError):
    """A caller-supplied argument is out of its documented range."""

    code = "bad_parameter"


class QueryParseError(ChronogramError):
    """The phrase-query string does not match the query grammar."""

    code = "parse_error"


class ManifestError(ChronogramError):
    """Corpus manifest is malformed (duplicate doc_id, bad year, ...)."""

    code = "manifest_error"


class IngestError(ChronogramError):
    """A document referenced by the manifest could not be read."""

    code = "ingest_error"


class TsvImportError(ChronogramError):
    """A line of an imported counts/totals TSV is malformed."""

    code = "import_error"


class IndexLoadError(ChronogramError):
    """A saved index directory is missing files or unparseable."""

    code = "load_error"


class IntegrityError(ChronogramError):
    """A saved index file does not match its recorded checksum."""

    code = "integrity_error"


class CapabilityError(ChronogramError):
    """The operation needs data this corpus was not built with."""

    code = "capability_missing"


class UnknownCorpusError(ChronogramError):
    code = "unknown_corpus"
