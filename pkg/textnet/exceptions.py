"""
Exception hierarchy of the package. Every family knows the exit code the command line
reports for it, and the pipeline fills in the stage that raised it.
"""

from textnet.constants import EXIT_COMPUTATION, EXIT_CONFIG, EXIT_RESOURCE


class TextnetError(Exception):
    """
    Base class for all errors raised by the package.
    """

    exit_code = EXIT_COMPUTATION
    title = "Computation error"

    def __init__(self, message=None):
        super().__init__(message or self.title)
        self.stage = None


class ConfigError(TextnetError):
    exit_code = EXIT_CONFIG
    title = "Configuration error"


class InvalidConfig(ConfigError):
    pass


class ResourceError(TextnetError):
    exit_code = EXIT_RESOURCE
    title = "Resource error"


class MissingResource(ResourceError):
    def __init__(self, path):
        super().__init__("Resource '{}' wasn't found.".format(path))
        self.path = path


class MalformedResource(ResourceError):
    def __init__(self, path, line):
        super().__init__("Resource '{}' is malformed at line {}.".format(path, line))
        self.path = path
        self.line = line


class ResourceHashMismatch(ResourceError):
    def __init__(self, path):
        super().__init__("Resource '{}' doesn't match its manifest hash.".format(path))
        self.path = path


class MalformedArchive(ResourceError):
    title = "Malformed archive"


class DuplicateId(ResourceError):
    def __init__(self, message_id):
        super().__init__("Message '{}' appears more than once.".format(message_id))
        self.message_id = message_id


class MalformedLine(ResourceError):
    def __init__(self, line_no, details=""):
        super().__init__("Line {} is not a valid JSON object. {}".format(line_no, details).strip())
        self.line_no = line_no


class MissingField(ResourceError):
    def __init__(self, line_no, key):
        super().__init__("Line {} is missing the '{}' field.".format(line_no, key))
        self.line_no = line_no
        self.key = key


class ComputationError(TextnetError):
    exit_code = EXIT_COMPUTATION


class AlreadyInverted(ComputationError):
    title = "Network is already a status network"


class EmptyNetwork(ComputationError):
    title = "Network has no vertices"


class DegenerateNetwork(ComputationError):
    title = "Network is too small to host three sectors"


class PartitionMismatch(ComputationError):
    def __init__(self, author):
        super().__init__("Author '{}' is not covered by the partition.".format(author))
        self.author = author


class EmptyCorpus(ComputationError):
    title = "Corpus has no messages"


class EmptyClass(ComputationError):
    def __init__(self, word_class):
        super().__init__("No words of class '{}' in the corpus.".format(word_class))
        self.word_class = word_class


class EmptySample(ComputationError):
    title = "Sample has no observations"


class TooFewRows(ComputationError):
    title = "At least two rows are needed"


class DegenerateMatrix(ComputationError):
    title = "All features are constant"


class NormalizationMismatch(ComputationError):
    title = "Histograms don't share a normalization"


class OutputError(ResourceError):
    def __init__(self, path, details=""):
        super().__init__("Output '{}' can't be written. {}".format(path, details).strip())
        self.path = path


class NumericalError(ComputationError):
    title = "Linear algebra failed"
