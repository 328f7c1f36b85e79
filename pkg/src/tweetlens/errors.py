"""Exception hierarchy shared by the pipeline stages.

The CLI maps these onto exit codes: DataError -> 2, NumericError -> 3.
"""


class TweetlensError(Exception):
    pass


class DataError(TweetlensError):
    """Bad or inconsistent input data (missing columns, duplicates, ...)."""


class IngestError(DataError):
    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}"
            if line is not None:
                where += f":{line}"
            where += ": "
        super().__init__(where + message)


class NumericError(TweetlensError):
    """Non-finite loss or gradient during training."""
