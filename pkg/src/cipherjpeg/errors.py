class CipherJpegError(Exception):
    """Base class for all library errors."""


class InvalidInputError(CipherJpegError):
    """Bad caller-supplied data (empty image, mismatched histogram kinds, ...)."""


class InvalidTransformError(CipherJpegError):
    """A transform matrix failed the orthogonality check."""


class EncodeRangeError(CipherJpegError):
    """A quantized coefficient exceeds the baseline Huffman category range."""


class JfifParseError(CipherJpegError):
    """Malformed JPEG stream; message carries the byte offset."""

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class UnsupportedFeatureError(CipherJpegError):
    """Well-formed JPEG using a mode outside baseline sequential 4:2:0."""
