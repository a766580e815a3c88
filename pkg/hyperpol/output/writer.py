"""
Report writer.
Sends reports to stdout or writes them atomically to a file.
"""

import os
import shutil
import tempfile
from pathlib import Path
from typing import Optional

import click

from ..models import OutputFormat, RunReport
from ..utils import get_logger
from .template import ReportTemplateBuilder


class ReportWriter:
    """
    Writes a rendered report to stdout, or to a file via temp file + rename
    so an interrupted run never leaves a truncated report behind.
    """

    def __init__(self, output_file: Optional[str] = None, json_indent: int = 2):
        self.output_file = Path(output_file) if output_file else None
        self.logger = get_logger()
        self.template_builder = ReportTemplateBuilder(json_indent=json_indent)

        if self.output_file is not None:
            self.output_file.parent.mkdir(parents=True, exist_ok=True)

    def render(self, report: RunReport, output_format: OutputFormat) -> str:
        if OutputFormat(output_format) == OutputFormat.JSON:
            return self.template_builder.build_json(report)
        return self.template_builder.build_table(report)

    def write(self, report: RunReport, output_format: OutputFormat):
        content = self.render(report, output_format)

        if self.output_file is None:
            click.echo(content, nl=False)
            return

        self._atomic_write(content)
        self.logger.info(f"Report written to {self.output_file}")

    def _atomic_write(self, content: str):
        """
        Write content atomically using temp file + rename.
        Prevents corruption if process is interrupted.
        """
        temp_fd, temp_path = tempfile.mkstemp(
            dir=self.output_file.parent,
            prefix='.tmp_',
            suffix=self.output_file.suffix or '.txt'
        )

        try:
            with os.fdopen(temp_fd, 'w', encoding='utf-8') as f:
                f.write(content)

            shutil.move(temp_path, self.output_file)

        except Exception:
            try:
                os.unlink(temp_path)
            except Exception:
                pass
            raise
