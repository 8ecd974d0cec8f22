"""
Turns computed values into the report tables. Each function returns a ReportBuilder;
writing is left to the caller.
"""

import os


def write_table(body, directory, name):
    """
    Writes one table as CSV and returns the file name relative to the directory.

    : param ReportBuilder body: the table
    : param str directory: output directory
    : param str name: file name without extension
    """

    filename = "{}.csv".format(name)
    body.write_csv(os.path.join(directory, filename))
    return filename


def write_rendering(bodies, path):
    """
    Aligned-text rendering of several tables in one file.
    """

    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("\n".join(body.render() for body in bodies))
