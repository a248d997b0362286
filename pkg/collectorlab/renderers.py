# collectorlab/renderers.py
import csv
import io
import itertools
import json

from django.conf import settings


def format_float(value, digits=None):
    """Round-trip safe text for a float (17 significant digits by default)"""
    if digits is None:
        digits = settings.COLLECTOR_LAB['FLOAT_SIGNIFICANT_DIGITS']
    return format(value, f'.{digits}g')


def _cell(value):
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def iter_csv(rows, fields):
    """Yield the header line, then one CSV line per row as ``rows`` is consumed"""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    lines = itertools.chain([fields], ([_cell(row.get(field)) for field in fields] for row in rows))
    for line in lines:
        writer.writerow(line)
        yield buffer.getvalue()
        buffer.seek(0)
        buffer.truncate()


def render_csv(rows, fields):
    """CSV with '.' decimals, LF line endings and a header row"""
    return ''.join(iter_csv(rows, fields))


def render_json(document):
    return json.dumps(document, indent=2) + '\n'


def render_table(rows, fields):
    """Fixed-width text table for terminals"""
    cells = [[str(field) for field in fields]]
    cells += [[_cell(row.get(field)) for field in fields] for row in rows]
    widths = [max(len(line[i]) for line in cells) for i in range(len(fields))]
    lines = []
    for index, line in enumerate(cells):
        lines.append('  '.join(cell.ljust(width) for cell, width in zip(line, widths)).rstrip())
        if index == 0:
            lines.append('  '.join('-' * width for width in widths))
    return '\n'.join(lines) + '\n'


def render(rows, fields, fmt):
    rows = list(rows)
    if fmt == 'json':
        return render_json(rows)
    if fmt == 'table':
        return render_table(rows, fields)
    return render_csv(rows, fields)
