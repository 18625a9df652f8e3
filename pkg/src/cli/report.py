"""
Report emission: aligned text tables or one structured JSON document per run
"""
import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence, Tuple

from src.config import Config
from src.utils.formatter import OutputFormatter

TEXT = 'text'
JSON = 'json'


@dataclass
class Table:
    title: str
    columns: Sequence[str]
    rows: List[Sequence[Any]] = field(default_factory=list)


@dataclass
class CommandResult:
    """
    Outcome of one verb: `data` is the structured payload, `tables` and
    `summary` its text rendering.
    """
    command: str
    group: str
    parameters: Dict[str, Any]
    data: Dict[str, Any]
    tables: List[Table] = field(default_factory=list)
    summary: List[Tuple[str, Any]] = field(default_factory=list)
    message: str = ''

    def document(self) -> Dict[str, Any]:
        return {
            'schema_version': Config.SCHEMA_VERSION,
            'command': self.command,
            'group': self.group,
            'config': {**Config.as_dict(), **self.parameters},
            'result': self.data,
        }


def render_text(result: CommandResult) -> str:
    lines = ["=" * 60, f"  {result.command.upper()} on {result.group}", "=" * 60]
    parameters = [(key, value) for key, value in sorted(result.parameters.items()) if value is not None]
    if parameters:
        lines.append(OutputFormatter.format_table(['parameter', 'value'], parameters))
    for table in result.tables:
        lines += ['', table.title, OutputFormatter.format_table(table.columns, table.rows)]
    if result.summary:
        width = max(len(label) for label, _ in result.summary) + 2
        lines.append('')
        lines += [f"{(label + ':').ljust(width)}{value}" for label, value in result.summary]
    if result.message:
        lines += ['', result.message]
    return '\n'.join(lines) + '\n'


def render_json(document: Dict[str, Any]) -> str:
    return json.dumps(document, sort_keys=True, indent=2, default=str) + '\n'


def emit_report(result: CommandResult, mode: str = TEXT) -> str:
    """Text tables or the versioned JSON document; no timestamps, so reruns are byte-identical"""
    if mode == JSON:
        return render_json(result.document())
    return render_text(result)


def error_document(error: Exception, command: str, code: int) -> Dict[str, Any]:
    body = {'type': type(error).__name__, 'message': str(error), 'exit_code': code}
    minimal = getattr(error, 'minimal_growth', None)
    if minimal is not None:
        body['minimal_growth'] = minimal
    return {'schema_version': Config.SCHEMA_VERSION, 'command': command, 'error': body}
