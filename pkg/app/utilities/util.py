import hashlib


def stable_hash(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def short_digest(text: str, length: int = 12) -> str:
    """Prefix of ``stable_hash`` used to fingerprint serialized documents."""
    return stable_hash(text)[:length]
