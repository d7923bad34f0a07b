"""
Parsers de registros de predição.
"""

from .record_parser import RecordParser, dumps_record, read_fused_records, read_records

__all__ = ["RecordParser", "dumps_record", "read_fused_records", "read_records"]
